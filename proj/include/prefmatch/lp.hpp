#pragma once

#include <optional>
#include <vector>

#include "prefmatch/rational.hpp"

namespace prefmatch::lp {

enum class Relation { le, ge, eq };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation rel;
  Rational rhs;
};

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  std::vector<Rational> x;
  Rational objective;
};

// maximize c.x subject to the constraints and x >= 0. Two-phase simplex with
// Bland's rule, so it terminates on degenerate problems.
Result maximize(const std::vector<Rational>& c, const std::vector<Constraint>& constraints,
                std::size_t nvars);

// A polyhedron {x >= 0 : closed constraints} intersected with open halfspaces
// coeffs.x > rhs.
struct StrictSystem {
  std::size_t nvars = 0;
  std::vector<Constraint> closed;
  std::vector<std::pair<std::vector<Rational>, Rational>> strict;
};

std::optional<std::vector<Rational>> find_point(const StrictSystem& sys);

// Unique solution of the square system m.v = rhs, or nullopt if singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m,
                                                  std::vector<Rational> rhs);

}  // namespace prefmatch::lp
