from fractions import Fraction

import pytest

import dseries


def mobius(n):
    mu = [1] * (n + 1)
    for p in range(2, n + 1):
        if all(p % d for d in range(2, int(p**0.5) + 1)):
            for k in range(p, n + 1, p):
                mu[k] = -mu[k]
            for k in range(p * p, n + 1, p * p):
                mu[k] = 0
    return mu


def test_inverse_of_zeta_is_mobius():
    inv = dseries.invert(dseries.Series.zeta(30))
    mu = mobius(30)
    assert inv.coeffs() == {n: Fraction(mu[n]) for n in range(1, 31) if mu[n]}


def test_exact_coefficients_round_trip():
    f = dseries.Series(12, {1: 1, 6: "3/4", 10: (Fraction(1, 2), -2)})
    assert f.coeff(6) == Fraction(3, 4)
    assert f.coeff(10) == (Fraction(1, 2), Fraction(-2))
    assert dseries.Series.from_json(f.to_json()).identical(f)
    assert (f * dseries.Series.one(12)).identical(f)


def test_lift_drop_and_projection():
    f = dseries.random_series(seed=3, window=40, density=0.3)
    assert dseries.drop(dseries.lift(f), window=40).identical(f)
    g = dseries.Series(36, {2: 1, 3: 5, 6: 2})
    p = dseries.project(g, ["(1 2)"])
    assert p.coeffs() == {2: 3, 3: 3, 6: 2}
    assert dseries.is_invariant(p, ["(1 2)"])["status"] == "invariant"
    assert dseries.group_average(g, ["(1 2)"]).identical(p)


def test_analysis_numbers():
    x1 = dseries.Series(2, {2: 1}, mode="float")
    assert abs(dseries.seminorm(x1, 0.5) - 0.5) < 1e-9
    f = dseries.Series(8, {5: 3}, mode="float")
    res = dseries.perron(f, 5, kappa=2.0, R=2000.0)
    assert abs(res["value"] - 3) <= 1e-3
    g = dseries.random_series(seed=5, window=12, density=0.5, mode="float")
    assert dseries.line_sup(g)["value"] <= dseries.torus_sup(g)["value"] + 1e-9


def test_errors_and_verify():
    with pytest.raises(dseries.DseriesError, match="not-invertible"):
        dseries.invert(dseries.Series(4, {2: 1}))
    with pytest.raises(dseries.DseriesError):
        dseries.verify("no-such-suite")
    (result,) = dseries.verify("lemma6.4", seed=1, trials=3)
    assert result["passed"] and result["trials"] == 3
    assert "thm1.7" in dseries.suites()
