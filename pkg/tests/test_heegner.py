from fractions import Fraction

import pytest
import sympy

from k3arith.heegner import (
    HeegnerInvariant, Rank2Lattice, admissible, admissible_exponents, canonical_gamma,
    e10_theta, effective_scan, elliptic_family, functional_for, rank2_invariants, span_test,
)
from k3arith.qseries import PrecisionError, siegel_theta


def test_invariants():
    inv = rank2_invariants(Rank2Lattice(1, 1, 0))
    assert inv.to_json() == {"n": "-1/4", "gamma": 1}
    inv = rank2_invariants(Rank2Lattice(3, 4, 1))
    assert inv.n == 1 - Fraction(16, 12) and inv.gamma == 2


def test_rank2_requires_negative_discriminant():
    with pytest.raises(ValueError):
        Rank2Lattice(1, 1, 1)
    with pytest.raises(ValueError):
        elliptic_family(1, 0)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_elliptic_family_invariants(d):
    for k in range(1, 8):
        inv = rank2_invariants(elliptic_family(d, k))
        assert inv.n == -Fraction(k * k, 4 * d)
        assert inv.gamma == canonical_gamma(k, d)
        assert admissible(d, inv.n, k)


def test_canonical_gamma():
    assert [canonical_gamma(g, 3) for g in range(6)] == [0, 1, 2, 3, 2, 1]
    assert HeegnerInvariant(Fraction(-1, 12), 5, 3).gamma == 1


def test_admissibility():
    assert admissible(1, 0, 0) and not admissible(1, 0, 1)
    assert admissible(2, Fraction(-1, 8), 1)
    assert not admissible(2, Fraction(-1, 4), 1)
    with pytest.raises(ValueError):
        admissible(1, 1, 0)


def test_admissible_exponents():
    assert admissible_exponents(1, 1, 0, 3) == [Fraction(1, 4), Fraction(5, 4), Fraction(9, 4)]
    assert admissible_exponents(2, 0, Fraction(1, 2), 3) == [1, 2, 3]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_effective_scan(d):
    series = e10_theta(d, 20)
    for g in range(2 * d):
        rows = effective_scan(d, g, 20, series)
        for r in rows:
            assert r["coefficient"] == series.coefficient(r["n"], g)
            if r["n"] > Fraction(d, 4) + 1:
                assert r["pass"], r


def test_scan_precision_and_range():
    with pytest.raises(ValueError):
        effective_scan(1, 0, 1)
    with pytest.raises(PrecisionError):
        effective_scan(1, 0, 10, siegel_theta(1, 5))


def test_span_test_against_sympy():
    f = e10_theta(1, 10)
    targets = [functional_for(rank2_invariants(elliptic_family(1, k))) for k in range(1, 6)]
    assert targets[:2] == [(Fraction(1, 4), 1), (Fraction(1), 0)]
    coeffs = span_test([f], targets, (0, 0))
    assert coeffs is not None
    A = sympy.Matrix([[f.coefficient(*t) for t in targets]])
    b = sympy.Matrix([f.coefficient(0, 0)])
    assert A * sympy.Matrix(coeffs) == b
    # sympy agrees that the system is consistent
    assert A.rank() == A.row_join(b).rank()


def test_span_test_unsolvable():
    th = siegel_theta(1, 4)
    assert span_test([th], [(Fraction(1, 2), 0)], (0, 0)) is None
    assert span_test([th], [(Fraction(1, 4), 1)], (0, 0)) == [Fraction(1, 2)]
