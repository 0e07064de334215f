from fractions import Fraction

import pytest

from k3arith.qseries import (
    PrecisionError, QExpansion, VVQExpansion, eisenstein_e10, mul_scalar_vv, siegel_theta, sigma,
    vmod_support_check,
)


def brute_sigma(k, n):
    return sum(t ** k for t in range(1, n + 1) if n % t == 0)


def brute_theta(d, n_max):
    """Count s in Z with (2ds + gamma)^2 / 4d = n, scanning a generous window."""
    out = {}
    for gamma in range(2 * d):
        for s in range(-60, 61):
            n = Fraction((2 * d * s + gamma) ** 2, 4 * d)
            if n <= n_max:
                out[(n, gamma)] = out.get((n, gamma), 0) + 1
    return out


def test_sigma():
    assert all(sigma(k, n) == brute_sigma(k, n) for k in (0, 1, 9) for n in range(1, 40))
    assert sigma(9, 2) == 513


def test_e10_leading():
    E = eisenstein_e10(2)
    assert E.coeffs == (1, -264, -135432)
    assert eisenstein_e10(30)[17] == -264 * brute_sigma(9, 17)


def test_precision_guard():
    E = eisenstein_e10(3)
    with pytest.raises(PrecisionError):
        E[4]
    th = siegel_theta(1, 2)
    with pytest.raises(PrecisionError):
        th.coefficient(3, 0)


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_theta_brute_force(d):
    th = siegel_theta(d, 12)
    assert dict(th.terms()) == brute_theta(d, 12)


def test_theta_d1_values():
    th = siegel_theta(1, 2)
    assert th.coefficient(0, 0) == 1
    assert th.coefficient(Fraction(1, 4), 1) == 2
    assert th.coefficient(1, 0) == 2


def test_product_brute_force():
    E, th = eisenstein_e10(6), siegel_theta(2, 6)
    prod = mul_scalar_vv(E, th)
    for (n, g), c in prod.terms():
        expect = sum(E[k] * th.coefficient(n - k, g) for k in range(int(n) + 1))
        assert c == expect
    f = mul_scalar_vv(eisenstein_e10(2), siegel_theta(1, 2))
    assert f.coefficient(1, 0) == -262
    assert f.coefficient(2, 0) == -135960
    assert f.coefficient(Fraction(5, 4), 1) == -528


def test_scalar_product_truncates():
    a = QExpansion((Fraction(1), Fraction(1)))
    b = QExpansion((Fraction(1), Fraction(2), Fraction(3)))
    assert (a * b).coeffs == (1, 3)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_support_law(d):
    ok, violations = vmod_support_check(mul_scalar_vv(eisenstein_e10(50), siegel_theta(d, 50)))
    assert ok and not violations


def test_support_violation_detected():
    bad = VVQExpansion(1, 1, {(Fraction(1, 2), 0): 1})
    ok, violations = vmod_support_check(bad)
    assert not ok and violations
    assert not vmod_support_check(VVQExpansion(1, 1, {(0, 1): 1}))[0]


def test_validation():
    with pytest.raises(ValueError):
        VVQExpansion(1, 1, {(Fraction(1, 3), 0): 1})
    with pytest.raises(ValueError):
        VVQExpansion(1, 1, {(-1, 0): 1})
    with pytest.raises(PrecisionError):
        VVQExpansion(1, 1, {(2, 0): 1})


def test_json_roundtrip():
    f = mul_scalar_vv(eisenstein_e10(3), siegel_theta(2, 3))
    js = f.to_json()
    assert js["R"] == 8 and js["d"] == 2
    assert VVQExpansion.from_json(js) == f
    with pytest.raises(ValueError):
        VVQExpansion.from_json({"d": 1})


def test_add_scale_truncate():
    th = siegel_theta(1, 4)
    assert (th + th) == th.scale(2)
    assert th.truncate(1).precision == 1
    with pytest.raises(PrecisionError):
        th.truncate(5)
