"""Python access to the prefmatch solver."""

import json

from ._core import InputError, normalize_scenario, replication_cases, run_cli
from ._core import replicate_json as _replicate_json

__all__ = ["InputError", "normalize_scenario", "replicate", "replication_cases", "run", "run_cli"]


def replicate(case_id):
    """Recompute a worked example; returns the comparison rows as a dict."""
    return json.loads(_replicate_json(case_id))


def run(*args):
    """Run a CLI command in JSON mode and return the parsed report.

    Raises InputError with the error text when the command exits with code 2.
    """
    code, out, err = run_cli([str(a) for a in args])
    if code == 2:
        raise InputError(err.strip())
    report = json.loads(out)
    report["exit_code"] = code
    return report
