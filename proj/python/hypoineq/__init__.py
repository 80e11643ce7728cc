"""Python access to the hypoineq checks."""

import json

from ._hypoineq import (
    DegenerateInput,
    DivergenceError,
    Error,
    InvalidArgument,
    ParseError,
    PreconditionViolation,
    __version__,
    alpha_q,
    alpha_q_htype,
    alpha_q_yang,
    bessel_kernel,
    gamma_table,
    job_seed,
    list_suites,
    phi_truncated,
    ratio,
    riesz_kernel,
    run_json,
)


def run(config, seed=None, jobs=None, with_timing=True):
    """Run the suites of a config text and return the report as a dict."""
    return json.loads(run_json(config, seed=seed, jobs=jobs, with_timing=with_timing))


__all__ = [
    "DegenerateInput",
    "DivergenceError",
    "Error",
    "InvalidArgument",
    "ParseError",
    "PreconditionViolation",
    "__version__",
    "alpha_q",
    "alpha_q_htype",
    "alpha_q_yang",
    "bessel_kernel",
    "gamma_table",
    "job_seed",
    "list_suites",
    "phi_truncated",
    "ratio",
    "riesz_kernel",
    "run",
    "run_json",
]
