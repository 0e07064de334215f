"""Truncated scalar and vector-valued q-expansions with exact coefficients.

A vector-valued series for discriminant group Z/2dZ stores coefficients
c(n, gamma) for exponents n in (1/4d)Z with 0 <= n <= precision. Reading a
coefficient past the precision raises instead of returning a silent zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt


class PrecisionError(ValueError):
    pass


def sigma(k: int, n: int) -> int:
    """Divisor power sum sum_{t | n} t^k."""
    if n <= 0:
        raise ValueError("sigma needs n >= 1")
    total = 0
    t = 1
    while t * t <= n:
        if n % t == 0:
            total += t ** k
            if t * t != n:
                total += (n // t) ** k
        t += 1
    return total


@dataclass(frozen=True)
class QExpansion:
    """Scalar series sum_{n=0}^{precision} coeffs[n] q^n (integral exponents)."""

    coeffs: tuple[Fraction, ...]

    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.precision:
            raise PrecisionError(f"coefficient q^{n} requested beyond precision {self.precision}")
        return self.coeffs[n]

    def __mul__(self, other: "QExpansion") -> "QExpansion":
        prec = min(self.precision, other.precision)
        out = [Fraction(0)] * (prec + 1)
        for i in range(prec + 1):
            a = self.coeffs[i]
            if a:
                for j in range(prec + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return QExpansion(tuple(out))

    def to_json(self) -> dict:
        return {"coeffs": [[str(n), str(c)] for n, c in enumerate(self.coeffs)]}


def eisenstein_e10(n_max: int) -> QExpansion:
    """E_10 = 1 - 264 sum sigma_9(n) q^n up to q^n_max."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    return QExpansion((Fraction(1),) + tuple(Fraction(-264 * sigma(9, n)) for n in range(1, n_max + 1)))


@dataclass(frozen=True)
class VVQExpansion:
    """Vector-valued q-series indexed by gamma in Z/2dZ."""

    d: int
    precision: Fraction
    coeffs: dict = field(default_factory=dict)  # (Fraction n, int gamma) -> Fraction

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        prec = Fraction(self.precision)
        if prec < 0:
            raise ValueError("precision must be nonnegative")
        R = self.R
        clean = {}
        for (n, g), c in self.coeffs.items():
            n, c = Fraction(n), Fraction(c)
            if (n * R).denominator != 1:
                raise ValueError(f"exponent {n} is not in (1/{R})Z")
            if n < 0:
                raise ValueError("negative exponents are not allowed (holomorphic at infinity)")
            if n > prec:
                raise PrecisionError(f"exponent {n} exceeds precision {prec}")
            g = int(g) % (2 * self.d)
            if c:
                clean[(n, g)] = clean.get((n, g), 0) + c
        object.__setattr__(self, "precision", prec)
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v})

    @property
    def R(self) -> int:
        return 4 * self.d

    def coefficient(self, n, gamma: int) -> Fraction:
        n = Fraction(n)
        if n > self.precision:
            raise PrecisionError(f"coefficient at n={n} requested beyond precision {self.precision}")
        return self.coeffs.get((n, int(gamma) % (2 * self.d)), Fraction(0))

    def terms(self):
        """Nonzero coefficients sorted by (n, gamma)."""
        return sorted(self.coeffs.items())

    def truncate(self, precision) -> "VVQExpansion":
        precision = Fraction(precision)
        if precision > self.precision:
            raise PrecisionError("cannot raise the precision of a series")
        return VVQExpansion(self.d, precision,
                            {k: v for k, v in self.coeffs.items() if k[0] <= precision})

    def __add__(self, other: "VVQExpansion") -> "VVQExpansion":
        if other.d != self.d:
            raise ValueError("series for different d")
        prec = min(self.precision, other.precision)
        out = {k: v for k, v in self.coeffs.items() if k[0] <= prec}
        for k, v in other.coeffs.items():
            if k[0] <= prec:
                out[k] = out.get(k, 0) + v
        return VVQExpansion(self.d, prec, out)

    def scale(self, c) -> "VVQExpansion":
        c = Fraction(c)
        return VVQExpansion(self.d, self.precision, {k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, VVQExpansion) and self.d == other.d
                and self.precision == other.precision and self.coeffs == other.coeffs)

    __hash__ = None

    def to_json(self) -> dict:
        comps = []
        for g in range(2 * self.d):
            terms = sorted((n, c) for (n, gg), c in self.coeffs.items() if gg == g)
            comps.append({"gamma": g, "terms": [{"exp": str(n), "coeff": str(c)} for n, c in terms]})
        return {"d": self.d, "R": self.R, "precision": str(self.precision), "components": comps}

    @classmethod
    def from_json(cls, obj: dict) -> "VVQExpansion":
        try:
            d = int(obj["d"])
            if "R" in obj and int(obj["R"]) != 4 * d:
                raise ValueError(f"R must equal 4d = {4 * d}")
            coeffs = {}
            for comp in obj["components"]:
                g = int(comp["gamma"])
                for t in comp["terms"]:
                    coeffs[(Fraction(t["exp"]), g)] = Fraction(t["coeff"])
            return cls(d, Fraction(obj["precision"]), coeffs)
        except KeyError as exc:
            raise ValueError(f"missing key {exc.args[0]!r} in series JSON") from None


def siegel_theta(d: int, n_max) -> VVQExpansion:
    """theta_2d = sum_gamma sum_s q^((2ds + gamma)^2 / 4d) v_gamma."""
    n_max = Fraction(n_max)
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    coeffs: dict = {}
    # (2ds + gamma)^2 <= 4d n_max  <=>  |2ds + gamma| <= bound
    bound = isqrt(int(4 * d * n_max))
    for m in range(-bound, bound + 1):
        n = Fraction(m * m, 4 * d)
        if n <= n_max:
            key = (n, m % (2 * d))
            coeffs[key] = coeffs.get(key, 0) + 1
    return VVQExpansion(d, n_max, coeffs)


def mul_scalar_vv(f: QExpansion, g: VVQExpansion) -> VVQExpansion:
    """Componentwise Cauchy product, truncated at the smaller precision."""
    prec = min(Fraction(f.precision), g.precision)
    out: dict = {}
    for (n, gamma), c in g.coeffs.items():
        if n > prec:
            continue
        for k in range(int(prec - n) + 1):
            a = f.coeffs[k]
            if a:
                key = (n + k, gamma)
                out[key] = out.get(key, 0) + a * c
    return VVQExpansion(g.d, prec, out)


def vmod_support_check(f: VVQExpansion):
    """Support law: c(n, gamma) != 0 only if n = gamma^2/4d mod 1, and
    c(0, gamma) = 0 for gamma != 0. Returns (ok, violations)."""
    violations = []
    for (n, g), c in f.terms():
        if (n - Fraction(g * g, 4 * f.d)).denominator != 1:
            violations.append({"n": n, "gamma": g, "coeff": c, "reason": "exponent class"})
        elif n == 0 and g != 0:
            violations.append({"n": n, "gamma": g, "coeff": c, "reason": "constant term"})
    return not violations, violations
