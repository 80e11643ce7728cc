import math

import pytest

import hypoineq


def test_version_and_suites():
    assert hypoineq.__version__ == "0.1.0"
    names = [name for name, _ in hypoineq.list_suites()]
    assert names[-1] == "all"
    assert "tm" in names


def test_hardy_sobolev_gaussian():
    r = hypoineq.ratio("hardy-sobolev", "R:3:euclidean", {"p": 2, "q": 2, "a": 1, "b": 2})
    assert r["ratio"] == pytest.approx(math.sqrt(4 / 3), abs=1e-3)
    for key in ("lhs", "rhs", "abs_error", "method"):
        assert key in r


def test_inadmissible_spec_raises():
    with pytest.raises(hypoineq.PreconditionViolation):
        hypoineq.ratio("hardy-sobolev", "R:3:euclidean", {"p": 2, "q": 2, "a": 1, "b": 1})


def test_moser_constants():
    assert hypoineq.alpha_q("R:2:euclidean")["alpha_Q"] == pytest.approx(4 * math.pi, abs=1e-6)
    assert hypoineq.alpha_q_htype(2, 1) == pytest.approx(4 * (math.pi**2 / 4) ** (1 / 3), abs=1e-9)


def test_kernels_and_phi():
    assert hypoineq.riesz_kernel(3, 2.0, 1.0) == pytest.approx(1 / (4 * math.pi), rel=1e-6)
    assert hypoineq.bessel_kernel(3, 2.0, 1.0) < hypoineq.riesz_kernel(3, 2.0, 1.0)
    assert hypoineq.phi_truncated(2.0, 0.5, 1.0) == pytest.approx(math.expm1(0.5), rel=1e-12)
    rows = hypoineq.gamma_table(2.0, [8, 32, 128, 400])
    assert [q for q, _ in rows] == [8, 32, 128, 400]
    assert rows[-1][1] == pytest.approx(1.0, abs=0.03)


def test_run_is_deterministic():
    cfg = "[run]\nsuites = kernels\n"
    a = hypoineq.run(cfg, seed=5, with_timing=False)
    b = hypoineq.run(cfg, seed=5, jobs=2, with_timing=False)
    assert a == b
    assert a["passed"] is True
    assert all(e["seed"] > 0 for e in a["entries"])


def test_parse_error():
    with pytest.raises(hypoineq.ParseError, match="line 2"):
        hypoineq.run("[run]\nsuites = nope\n")
