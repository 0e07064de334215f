"""Exact scalars: rationals, prime fields and cyclotomic numbers.

Cyclotomic numbers are kept as integer coordinate vectors over a common
denominator in the power basis of Q(zeta_N), reduced modulo the N-th
cyclotomic polynomial, so equality is plain coefficient comparison.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

__all__ = [
    "QQ",
    "GF",
    "FpElement",
    "CycNum",
    "root_of_unity",
    "e",
    "sqrt_positive_integer",
    "to_complex_approx",
    "factorize",
    "euler_phi",
    "cyclotomic_polynomial",
]


# ---------------------------------------------------------------------------
# fields for generic linear algebra
# ---------------------------------------------------------------------------

class _Rationals:
    """The field Q; calling it coerces ints, strings and Fractions."""

    characteristic = 0
    name = "Q"

    def __call__(self, x) -> Fraction:
        if isinstance(x, FpElement):
            raise TypeError("cannot coerce an F_p element into Q")
        return Fraction(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, _Rationals)

    def __hash__(self):
        return hash("QQ")


QQ = _Rationals()


class FpElement:
    """Element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __pos__(self):
        return self

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return FpElement(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o, self.p) / self

    def __pow__(self, k: int):
        if k < 0:
            return FpElement(pow(self.v, -1, self.p), self.p) ** (-k)
        return FpElement(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            o = self._coerce(other)
            return (self.v - o) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


class GF:
    """Prime field F_p. Only primes are accepted."""

    def __init__(self, p: int):
        if p < 2 or any(p % t == 0 for t in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def __call__(self, x) -> FpElement:
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{x.p}")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return FpElement(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return FpElement(int(x), self.p)

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


# ---------------------------------------------------------------------------
# elementary number theory
# ---------------------------------------------------------------------------

def factorize(m: int) -> dict[int, int]:
    """Trial-division factorization of a positive integer."""
    if m < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    t = 2
    while t * t <= m:
        while m % t == 0:
            out[t] = out.get(t, 0) + 1
            m //= t
        t += 1 if t == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    # a, b little-endian integer polynomials, b monic
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        out[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as a little-endian tuple of integer coefficients."""
    # z^n - 1 = prod_{d | n} Phi_d
    poly = [-1] + [0] * (n - 1) + [1]
    for k in range(1, n):
        if n % k == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(k)))
    return tuple(poly)


def _reduce(coeffs: list[int], n: int) -> list[int]:
    """Reduce an integer polynomial modulo Phi_n in place and truncate."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i]
        if c:
            base = i - deg
            for j in range(deg):
                if phi[j]:
                    coeffs[base + j] -= c * phi[j]
            coeffs[i] = 0
    del coeffs[deg:]
    coeffs.extend([0] * (deg - len(coeffs)))
    return coeffs


# ---------------------------------------------------------------------------
# cyclotomic numbers
# ---------------------------------------------------------------------------

class CycNum:
    """An element of Q(zeta_N), immutable.

    ``num`` holds integer coordinates in the basis 1, z, ..., z^(phi(N)-1)
    and ``den`` a positive common denominator; the pair is kept in lowest
    terms so that two numbers of the same conductor are equal iff their
    stored data agree.
    """

    __slots__ = ("N", "num", "den")

    def __init__(self, N: int, coeffs=None, den: int = 1, _normalized: bool = False):
        if N < 1:
            raise ValueError("conductor must be positive")
        if _normalized:
            self.N, self.num, self.den = N, coeffs, den
            return
        deg = euler_phi(N)
        coeffs = list(coeffs) if coeffs is not None else []
        if any(not isinstance(c, int) for c in coeffs):
            fr = [Fraction(c) for c in coeffs]
            common = 1
            for c in fr:
                common = common * c.denominator // gcd(common, c.denominator)
            coeffs = [int(c * common) for c in fr]
            den *= common
        if len(coeffs) > deg:
            coeffs = _reduce(coeffs, N)
        else:
            coeffs = coeffs + [0] * (deg - len(coeffs))
        self.N = N
        self.num, self.den = _lowest(coeffs, den)

    # construction helpers -------------------------------------------------
    @classmethod
    def from_rational(cls, x, N: int = 1) -> "CycNum":
        x = Fraction(x)
        return cls(N, [x.numerator], x.denominator)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def promote(self, M: int) -> "CycNum":
        """Re-express in Q(zeta_M); M must be a multiple of the conductor."""
        if M % self.N:
            raise ValueError(f"conductor {M} is not a multiple of {self.N}")
        if M == self.N:
            return self
        step = M // self.N
        poly = [0] * ((len(self.num) - 1) * step + 1)
        for i, c in enumerate(self.num):
            poly[i * step] = c
        return CycNum(M, poly, self.den)

    def _common(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other, self.N)
        elif not isinstance(other, CycNum):
            return None, None
        if other.N == self.N:
            return self, other
        L = self.N * other.N // gcd(self.N, other.N)
        return self.promote(L), other.promote(L)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        den = a.den * b.den // gcd(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return CycNum(a.N, [x * fa + y * fb for x, y in zip(a.num, b.num)], den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.N, tuple(-c for c in self.num), self.den, _normalized=True)

    def __sub__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CycNum(self.N, [c * other.numerator for c in self.num],
                          self.den * other.denominator)
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        an, bn = a.num, b.num
        out = [0] * (len(an) + len(bn) - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        out[i + j] += x * y
        return CycNum(a.N, _reduce(out, a.N), a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, CycNum):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.from_rational(1, self.N)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via the product of the Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        others = CycNum.from_rational(1, self.N)
        for k in range(2, self.N):
            if gcd(k, self.N) == 1:
                others = others * self.galois(k)
        norm = self * others
        # the norm is rational: only the constant coordinate survives
        return others * (1 / norm.rational_value())

    def galois(self, k: int) -> "CycNum":
        """Apply the automorphism zeta_N -> zeta_N^k (k coprime to N)."""
        if gcd(k, self.N) != 1:
            raise ValueError("k must be coprime to the conductor")
        poly = [0] * self.N
        for i, c in enumerate(self.num):
            poly[(i * k) % self.N] += c
        return CycNum(self.N, poly, self.den)

    def conj(self) -> "CycNum":
        return self.galois(self.N - 1) if self.N > 2 else self

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other):
        a, b = self._common(other)
        if a is None:
            return NotImplemented
        return a.den == b.den and a.num == b.num

    __hash__ = None  # equality is conductor-independent

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return f"CycNum(N={self.N}: {' + '.join(terms) or '0'})"

    def to_json(self) -> dict:
        return {"conductor": self.N, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CycNum":
        return cls(int(obj["conductor"]), [Fraction(c) for c in obj["coeffs"]])


def _lowest(coeffs: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        coeffs, den = [-c for c in coeffs], -den
    g = den
    for c in coeffs:
        if g == 1:
            break
        g = gcd(g, c)
    if g > 1:
        coeffs = [c // g for c in coeffs]
        den //= g
    return tuple(coeffs), den


def root_of_unity(N: int, k: int) -> CycNum:
    """zeta_N^k in Q(zeta_N)."""
    if N < 1:
        raise ValueError("N must be positive")
    poly = [0] * N
    poly[k % N] = 1
    return CycNum(N, poly)


def e(x) -> CycNum:
    """exp(2 pi i x) for rational x."""
    x = Fraction(x)
    return root_of_unity(x.denominator, x.numerator)


def _gauss_sum(p: int) -> CycNum:
    poly = [0] * p
    for k in range(p):
        poly[k * k % p] += 1
    return CycNum(p, poly)


def _sqrt_odd_prime(p: int) -> CycNum:
    g = _gauss_sum(p)
    if p % 4 == 1:
        return g
    # G(p) = i sqrt(p) for p = 3 mod 4
    return g * root_of_unity(4, 3)


def sqrt_positive_integer(m: int, gauss_sign: int = 1) -> CycNum:
    """Positive real square root of m inside Q(zeta_{4m}).

    The prime-2 factor uses zeta_8 + zeta_8^-1 and odd primes use the
    quadratic Gauss sum with its sign corrected by i for p = 3 mod 4.
    ``gauss_sign=-1`` returns the negative root instead; it exists only to
    build negative controls.
    """
    if not isinstance(m, int) or m <= 0:
        raise ValueError("sqrt_positive_integer expects a positive integer")
    if gauss_sign not in (1, -1):
        raise ValueError("gauss_sign must be +1 or -1")
    result = CycNum.from_rational(1)
    square_part = 1
    for p, k in factorize(m).items():
        square_part *= p ** (k // 2)
        if k % 2:
            if p == 2:
                root = root_of_unity(8, 1) + root_of_unity(8, 7)
            else:
                root = _sqrt_odd_prime(p)
            result = result * root
    return result * (square_part * gauss_sign)


def to_complex_approx(x: CycNum, precision: int = 30) -> complex:
    """Numerical embedding zeta_N -> exp(2 pi i / N)."""
    if precision <= 15:
        z = cmath.exp(2j * cmath.pi / x.N)
        return sum(c * z ** i for i, c in enumerate(x.num)) / x.den
    with mpmath.workdps(precision + 5):
        z = mpmath.expjpi(mpmath.mpf(2) / x.N)
        total = mpmath.mpc(0)
        for i, c in enumerate(x.num):
            if c:
                total += c * z ** i
        total /= x.den
        return complex(total)
