#include <sstream>

#include "doctest.h"
#include "prefmatch/cli.hpp"
#include "prefmatch/report.hpp"

using namespace prefmatch;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scn(const std::string& name) { return std::string(PREFMATCH_SCENARIO_DIR) + "/" + name; }

}  // namespace

TEST_CASE("replicate exits cleanly and reports the pinned fitness") {
  Run r = run({"replicate", "ex3"});
  CHECK(r.code == kExitOk);
  Report rep = parse_report(r.out);
  CHECK(rep.verdicts["all_match"] == true);
  CHECK(r.out.find("\"3/1\"") != std::string::npos);
  CHECK(r.out.find("\"5/1\"") != std::string::npos);
  CHECK(run({"replicate", "nope"}).code == kExitInputError);
}

TEST_CASE("stable-check on the illustrative example") {
  Run r = run({"stable-check", scn("ex1.scn")});
  REQUIRE(r.code == kExitOk);
  Report rep = parse_report(r.out);
  CHECK(rep.verdicts["stable"]["stable"] == true);
  CHECK(rep.verdicts["mixed"]["stable"] == false);
  REQUIRE(rep.witnesses.size() == 1);
  CHECK(rep.witnesses[0]["row"]["status"] == "6/5");
  CHECK(rep.witnesses[0]["verified"] == true);
}

TEST_CASE("solve-ne finds three equilibria") {
  Run r = run({"solve-ne", scn("ex1.scn"), "--game", "theta-theta"});
  REQUIRE(r.code == kExitOk);
  CHECK(parse_report(r.out).verdicts["theta-theta"]["count"] == 3);
}

TEST_CASE("bn-check and fitness on the b4 profile") {
  Run r = run({"bn-check", scn("b4.scn")});
  REQUIRE(r.code == kExitOk);
  Report rep = parse_report(r.out);
  CHECK(rep.verdicts["three_labels"]["stable"] == true);
  CHECK(rep.verdicts["three_labels"]["q_utheta"] == "4/5");
  Run f = run({"fitness", scn("b4.scn")});
  Report fr = parse_report(f.out);
  CHECK(fr.verdicts["three_labels"]["G_theta"] == "26/3");
  CHECK(fr.verdicts["three_labels"]["G_tau"] == "79/9");
  CHECK(fr.verdicts["three_labels"]["comparison"] == "lt");
}

TEST_CASE("case order restricts the search") {
  Run full = run({"bn-check", scn("b2.scn")});
  Report a = parse_report(full.out);
  CHECK(a.verdicts["pooled"]["stable"] == false);
  CHECK(a.witnesses[0]["case"] == "IIIstar");
  Run limited = run({"bn-check", scn("b2.scn"), "--case-order", "I", "II", "III"});
  Report b = parse_report(limited.out);
  CHECK(b.verdicts["pooled"]["stable"] == true);
  CHECK(b.witnesses.empty());
}

TEST_CASE("verdict, enumeration and construction") {
  Run v = run({"verdict", scn("ex2.scn"), "--epsilon-grid", "1/4,1/2,3/4"});
  REQUIRE(v.code == kExitOk);
  CHECK(parse_report(v.out).verdicts["direction"] == "tau_ES_against_theta");
  Run e = run({"stable-enum", scn("ex3.scn")});
  REQUIRE(e.code == kExitOk);
  Report er = parse_report(e.out);
  CHECK(er.verdicts["enumeration"].size() == 3);
  Run c = run({"construct", scn("ex1.scn"), "--epsilon-grid", "1/3"});
  REQUIRE(c.code == kExitOk);
  CHECK(parse_report(c.out).verdicts["constructions"][0]["verified"] == true);
  Run i = run({"verdict", scn("ex4.scn"), "--mode", "incomplete"});
  REQUIRE(i.code == kExitOk);
  CHECK(parse_report(i.out).verdicts["forward"]["aggregate"] == "tau_ES_against_theta");
}

TEST_CASE("reports are byte-identical across runs") {
  for (auto args : std::vector<std::vector<std::string>>{{"stable-check", scn("ex1.scn")},
                                                          {"bn-check", scn("b4.scn")},
                                                          {"replicate", "b2"},
                                                          {"stable-enum", scn("ex2.scn"), "--format", "text"}}) {
    CHECK(run(args).out == run(args).out);
  }
}

TEST_CASE("input errors exit with code 2") {
  CHECK(run({"stable-check", scn("missing.scn")}).code == kExitInputError);
  CHECK(run({"stable-check"}).code == kExitInputError);
  CHECK(run({"frobnicate"}).code == kExitInputError);
  CHECK(run({"stable-enum", scn("ex1.scn"), "--epsilon-grid", "3/2"}).code == kExitInputError);
  CHECK(run({"--format", "xml", "replicate", "ex1"}).code == kExitInputError);
  Run bad = run({"stable-check", scn("ex1.scn"), "--profile", "nope"});
  CHECK(bad.code == kExitInputError);
  CHECK(bad.err.find("unknown profile") != std::string::npos);
}

TEST_CASE("text format and timing") {
  Run t = run({"replicate", "ex1", "--format", "text"});
  CHECK(t.code == kExitOk);
  CHECK(t.out.find("[ex1]") != std::string::npos);
  CHECK(t.out.find("PASS") != std::string::npos);
  Run j = run({"replicate", "ex1", "--timing"});
  CHECK(parse_report(j.out).timing.has_value());
  CHECK_FALSE(parse_report(run({"replicate", "ex1"}).out).timing.has_value());
}

TEST_CASE("the built binary behaves like the library entry point") {
  std::string cmd = std::string("\"") + PREFMATCH_CLI_PATH + "\" replicate ex1 > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
}
