"""Kuga-Satake complex structure and polarization on small even Clifford algebras."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .clifford import CliffordAlgebra, CliffordError, reversion
from .lattice import Lattice, signature
from .scalar import factorize

KS_RANK_CAP = 10


class PeriodError(ValueError):
    pass


@dataclass(frozen=True)
class PeriodPoint:
    """omega = x + i y with psi(x, y) = 0 and psi(x, x) = psi(y, y) = c < 0."""

    base: Lattice
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    c: Fraction


def make_period(base: Lattice, x, y) -> PeriodPoint:
    x = tuple(Fraction(t) for t in x)
    y = tuple(Fraction(t) for t in y)
    if len(x) != base.rank or len(y) != base.rank:
        raise PeriodError("x and y must have length equal to the lattice rank")
    xy, xx, yy = base.pair(x, y), base.norm(x), base.norm(y)
    if xy != 0:
        raise PeriodError(f"psi(x, y) = {xy}, expected 0")
    if xx >= 0:
        raise PeriodError(f"psi(x, x) = {xx}, expected a negative value")
    if xx != yy:
        raise PeriodError(f"psi(x, x) = {xx} differs from psi(y, y) = {yy}")
    return PeriodPoint(base, x, y, Fraction(xx))


def _algebra(base: Lattice) -> CliffordAlgebra:
    if base.rank > KS_RANK_CAP:
        raise CliffordError(f"Kuga-Satake computations are capped at rank {KS_RANK_CAP}")
    return CliffordAlgebra(base)


def complex_structure(p: PeriodPoint):
    """J = (1/|c|) * left multiplication by x.y on Cl_+ (basis ``even_basis``)."""
    alg = _algebra(p.base)
    basis = alg.basis("even")
    xy = alg.vector(p.x) * alg.vector(p.y)
    L = alg.left_matrix(xy, basis)
    s = 1 / abs(p.c)
    return [[v * s for v in row] for row in L]


def even_basis(base: Lattice) -> list[int]:
    return _algebra(base).basis("even")


def ks_pairing(base: Lattice, v1, v2):
    """Gram matrix of B(a, b) = Tr(iota(a) b v1 v2) on the even monomial basis."""
    alg = _algebra(base)
    for name, v in (("v1", v1), ("v2", v2)):
        if base.norm(v) != -2:
            raise PeriodError(f"psi({name}, {name}) = {base.norm(v)}, expected -2")
    if base.pair(v1, v2) != 0:
        raise PeriodError(f"psi(v1, v2) = {base.pair(v1, v2)}, expected 0")
    basis = alg.basis("even")
    w = alg.vector(v1) * alg.vector(v2)
    traces = {}

    def tr(z):
        total = Fraction(0)
        for m, c in z.terms.items():
            if m not in traces:
                traces[m] = alg.monomial_trace(m)
            total += c * traces[m]
        return total

    revs = [reversion(alg.element({m: 1})) for m in basis]
    right = [alg.element({m: 1}) * w for m in basis]
    return [[tr(ra * bw) for bw in right] for ra in revs]


def right_multiplication(base: Lattice, mask: int):
    """Matrix of a -> a e_mask on Cl_+ for an even monomial."""
    alg = _algebra(base)
    basis = alg.basis("even")
    return alg.right_matrix(alg.element({mask: 1}), basis)


def _definite_sign(S) -> int | None:
    pos, neg, zero = linalg.inertia(S)
    if zero == 0 and neg == 0:
        return 1
    if zero == 0 and pos == 0:
        return -1
    return None


def polarization_report(p: PeriodPoint, v1, v2) -> dict:
    """Antisymmetry of B, J-invariance, symmetry of S = B(., J .) and its sign."""
    neg = signature(p.base)[1]
    if neg != 2:
        raise PeriodError(f"base must have exactly two negative directions, found {neg}")
    B = ks_pairing(p.base, v1, v2)
    J = complex_structure(p)
    Jt = linalg.transpose(J)
    n = len(B)
    I = linalg.identity(n)
    S = linalg.matmul(B, J)
    pos, neg, zero = linalg.inertia(S) if S == linalg.transpose(S) else (None, None, None)
    return {
        "dimension": n,
        "J_squared_is_minus_identity": linalg.matmul(J, J) == [[-x for x in r] for r in I],
        "antisymmetric": B == [[-x for x in r] for r in linalg.transpose(B)],
        "nondegenerate": linalg.determinant(B) != 0,
        "J_invariant": linalg.matmul(linalg.matmul(Jt, B), J) == B,
        "symmetric": S == linalg.transpose(S),
        "inertia": None if pos is None else [pos, neg, zero],
        "definite_sign": _definite_sign(S) if S == linalg.transpose(S) else None,
    }


def ks_degree_exponents(d: int):
    """d' = 2^a * d^b with (a, b) = (3 * 2^18, 2^19), plus the primes dividing d'."""
    if d < 1:
        raise ValueError("d must be positive")
    primes = sorted({2} | set(factorize(d)))
    return 3 * 2 ** 18, 2 ** 19, primes
