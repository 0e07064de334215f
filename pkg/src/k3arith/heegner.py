"""Heegner-divisor bookkeeping on the coefficient side.

Divisors y_{n,gamma} are formal labels only. A rank-2 lattice
[[2d, a], [a, 2b]] of negative discriminant contributes the label
(n, gamma) = (b - a^2/4d, a mod 2d); in the generating series the label
y_{n,gamma} multiplies q^{-n} v_gamma, so the matching coefficient
functional reads the exponent -n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .qseries import PrecisionError, VVQExpansion, eisenstein_e10, mul_scalar_vv, siegel_theta

E10_LEADING = 264


@dataclass(frozen=True)
class HeegnerInvariant:
    n: Fraction
    gamma: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "n", Fraction(self.n))
        object.__setattr__(self, "gamma", canonical_gamma(self.gamma, self.d))

    @property
    def exponent(self) -> Fraction:
        """Exponent of q carrying this divisor in the generating series."""
        return -self.n

    def to_json(self) -> dict:
        return {"n": str(self.n), "gamma": self.gamma}


@dataclass(frozen=True)
class Rank2Lattice:
    d: int
    a: int
    b: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.disc >= 0:
            raise ValueError(f"discriminant 4db - a^2 = {self.disc} must be negative")

    @property
    def disc(self) -> int:
        return 4 * self.d * self.b - self.a * self.a

    @property
    def gram(self):
        return ((2 * self.d, self.a), (self.a, 2 * self.b))


def canonical_gamma(gamma: int, d: int) -> int:
    """Representative in {0..d} of the class {gamma, -gamma} mod 2d."""
    g = int(gamma) % (2 * d)
    return min(g, (-g) % (2 * d))


def rank2_invariants(lat: Rank2Lattice) -> HeegnerInvariant:
    n = lat.b - Fraction(lat.a * lat.a, 4 * lat.d)
    return HeegnerInvariant(n, lat.a % (2 * lat.d), lat.d)


def elliptic_family(d: int, k: int) -> Rank2Lattice:
    """The lattice [[2d, k], [k, 0]] containing an isotropic class."""
    if k < 1:
        raise ValueError("k must be positive (k = 0 is degenerate)")
    return Rank2Lattice(d, k, 0)


def admissible(d: int, n, gamma: int) -> bool:
    """Can y_{n,gamma} be nonzero? n < 0 needs -n = gamma^2/4d mod 1; n = 0 needs gamma = 0."""
    n = Fraction(n)
    if n > 0:
        raise ValueError("Heegner labels have n <= 0")
    if n == 0:
        return int(gamma) % (2 * d) == 0
    return (-n - Fraction(int(gamma) ** 2, 4 * d)).denominator == 1


def admissible_exponents(d: int, gamma: int, lo, hi):
    """Exponents n in (lo, hi] with n = gamma^2/4d mod 1, ascending."""
    lo, hi = Fraction(lo), Fraction(hi)
    base = Fraction(int(gamma) ** 2, 4 * d)
    base -= base.numerator // base.denominator
    k = int((lo - base) // 1)
    n = base + k
    while n <= lo:
        n += 1
    out = []
    while n <= hi:
        out.append(n)
        n += 1
    return out


def e10_theta(d: int, n_max) -> VVQExpansion:
    n_max = Fraction(n_max)
    return mul_scalar_vv(eisenstein_e10(math.ceil(n_max)), siegel_theta(d, n_max))


def effective_scan(d: int, gamma: int, n_max, series: VVQExpansion | None = None) -> list[dict]:
    """Check |c(n, gamma)| >= 264 (n - d/4)^9 - 1 on E10 * theta_2d.

    Rows cover every n in (d/4, n_max] with n = gamma^2/4d mod 1. The
    unweakened bound without the -1 slack is reported alongside.
    """
    n_max = Fraction(n_max)
    if n_max < Fraction(d, 4) + 1:
        raise ValueError(f"n_max must be at least d/4 + 1 = {Fraction(d, 4) + 1}")
    if series is None:
        series = e10_theta(d, n_max)
    elif series.precision < n_max:
        raise PrecisionError(f"series precision {series.precision} is below n_max {n_max}")
    rows = []
    for n in admissible_exponents(d, gamma, Fraction(d, 4), n_max):
        c = series.coefficient(n, gamma)
        strict = E10_LEADING * (n - Fraction(d, 4)) ** 9
        bound = strict - 1
        rows.append({
            "n": n,
            "gamma": int(gamma) % (2 * d),
            "coefficient": c,
            "bound": bound,
            "strict_bound": strict,
            "pass": c != 0 and abs(c) >= bound,
            "meets_strict_bound": abs(c) >= strict,
        })
    return rows


def span_test(forms, targets, query):
    """Express the functional e_query as a combination of e_targets on span(forms).

    Functionals are (exponent, gamma) pairs read off the q-expansions. Returns
    a list of Fractions (one per target) or None if e_query is not in the
    span of the target functionals restricted to the given forms.
    """
    forms = list(forms)
    if not forms:
        raise ValueError("need at least one form")
    d = forms[0].d
    if any(f.d != d for f in forms):
        raise ValueError("all forms must share d")

    def row(functional):
        n, g = Fraction(functional[0]), int(functional[1])
        return [f.coefficient(n, g) for f in forms]

    target_rows = [row(t) for t in targets]
    query_row = row(query)
    if not target_rows:
        return [] if not any(query_row) else None
    # solve sum_i c_i target_i = query, i.e. (targets^T) c = query
    A = linalg.transpose(target_rows)
    c = linalg.solve(A, query_row)
    return None if c is None else [Fraction(x) for x in c]


def functional_for(inv: HeegnerInvariant) -> tuple[Fraction, int]:
    """Coefficient functional (exponent, gamma) attached to a divisor label."""
    return inv.exponent, inv.gamma
