"""The Weil representation of Mp_2(Z) on C[L^v/L] with exact entries.

For L_{2d} the discriminant group is cyclic of order 2d; component gamma
is the class gamma * g of the generator fixed by
:func:`k3arith.lattice.discriminant_form`, whose Borcherds-convention
norm is q(gamma) = -gamma^2/4d mod 1. The dual representation therefore
acts on v_gamma under T by e(gamma^2/4d), matching the exponents of the
Siegel theta series.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .lattice import DiscriminantForm, discriminant_form, l2d
from .qseries import VVQExpansion
from .scalar import CycNum, e, root_of_unity, sqrt_positive_integer


class WeilMatrix:
    """Square matrix of cyclotomic numbers, all promoted to one conductor."""

    __slots__ = ("rows", "N")

    def __init__(self, rows, N: int | None = None):
        rows = [list(r) for r in rows]
        if N is None:
            N = 1
            for r in rows:
                for x in r:
                    N = _lcm(N, x.N)
        self.N = N
        self.rows = [[x.promote(N) for x in r] for r in rows]

    @classmethod
    def identity(cls, n: int, N: int = 1) -> "WeilMatrix":
        return cls([[CycNum.from_rational(int(i == j), N) for j in range(n)] for i in range(n)], N)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "WeilMatrix") -> "WeilMatrix":
        n = self.size
        N = _lcm(self.N, other.N)
        zero = CycNum.from_rational(0, N)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return WeilMatrix(out, N)

    def __pow__(self, k: int) -> "WeilMatrix":
        if k < 0:
            raise ValueError("use dual_rep/conj_transpose for inverses of unitary matrices")
        result = WeilMatrix.identity(self.size, self.N)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def conj(self) -> "WeilMatrix":
        return WeilMatrix([[x.conj() for x in r] for r in self.rows], self.N)

    def transpose(self) -> "WeilMatrix":
        return WeilMatrix([list(c) for c in zip(*self.rows)], self.N)

    def conj_transpose(self) -> "WeilMatrix":
        return self.conj().transpose()

    def is_unitary(self) -> bool:
        return self @ self.conj_transpose() == WeilMatrix.identity(self.size, self.N)

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def __eq__(self, other):
        if not isinstance(other, WeilMatrix) or other.size != self.size:
            return NotImplemented
        return all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    __hash__ = None

    def scale(self, c) -> "WeilMatrix":
        return WeilMatrix([[x * c for x in r] for r in self.rows])

    def to_json(self) -> dict:
        return {"conductor": self.N, "rows": [[x.to_json()["coeffs"] for x in r] for r in self.rows]}

    def __repr__(self):
        return f"WeilMatrix(size={self.size}, conductor={self.N})"


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def l2d_form(d: int) -> DiscriminantForm:
    """Borcherds-convention discriminant form of L_{2d} (cyclic of order 2d)."""
    form = discriminant_form(l2d(d), "borcherds")
    if form.cyclic_orders != (2 * d,):
        raise ArithmeticError(f"unexpected discriminant group {form.cyclic_orders}")
    return form


def weil_matrices(form: DiscriminantForm, n: int, gauss_sign: int = 1):
    """(rho(T), rho(S)) for a lattice of signature (2, n) with discriminant ``form``.

    Components are ordered as ``form.elements()``.
    """
    els = form.elements()
    size = len(els)
    root = sqrt_positive_integer(size, gauss_sign)
    # 1/sqrt(|D|) = sqrt(|D|)/|D|
    prefactor = root_of_unity(8, n - 2) * root * Fraction(1, size)
    N = _lcm(8, prefactor.N)
    for g in els:
        N = _lcm(N, form.q(g).denominator)
    T = [[e(form.q(g)) if i == j else CycNum.from_rational(0)
          for j, _ in enumerate(els)] for i, g in enumerate(els)]
    S = [[prefactor * e(-form.b(gamma, delta)) for gamma in els] for delta in els]
    return WeilMatrix(T, N), WeilMatrix(S, N)


def _l2d_elements(d: int):
    return [(k,) for k in range(2 * d)]


def rho_T(d: int) -> WeilMatrix:
    """Diagonal matrix e(q(gamma)) = e(-gamma^2/4d), gamma = 0 .. 2d-1."""
    if d < 1:
        raise ValueError("d must be positive")
    return weil_matrices(l2d_form(d), 19)[0]


def rho_S(d: int, n: int = 19, gauss_sign: int = 1) -> WeilMatrix:
    """Entry (delta, gamma) = zeta_8^(n-2) e(-(gamma, delta)) / sqrt(2d).

    ``gauss_sign=-1`` uses the negative square root of 2d (negative control).
    """
    if d < 1:
        raise ValueError("d must be positive")
    return weil_matrices(l2d_form(d), n, gauss_sign)[1]


def evaluate_word(word, d: int, n: int = 19, gauss_sign: int = 1) -> WeilMatrix:
    """Image of a word over {S, T, T^-1}; the string form uses 't' for T^-1.

    Letters act left to right as written, i.e. "ST" is rho(S) rho(T).
    """
    T, S = weil_matrices(l2d_form(d), n, gauss_sign)
    Tinv = T.conj()
    letters = list(word) if isinstance(word, str) else list(word)
    out = WeilMatrix.identity(T.size, T.N)
    for a in letters:
        if a == "S":
            out = out @ S
        elif a == "T":
            out = out @ T
        elif a in ("t", "T^-1", "Ti"):
            out = out @ Tinv
        else:
            raise ValueError(f"unknown letter {a!r} in metaplectic word")
    return out


def check_relations(d: int, n: int = 19, gauss_sign: int = 1) -> dict:
    """Exact check of (ST)^3 = S^2, S^8 = 1, T^(4d) = 1 and unitarity of S."""
    T, S = weil_matrices(l2d_form(d), n, gauss_sign)
    I = WeilMatrix.identity(T.size, T.N)
    S2 = S @ S
    ST = S @ T
    report = {
        "d": d,
        "n": n,
        "ST_cubed_equals_S_squared": ST ** 3 == S2,
        "S_order_8": S2 @ S2 @ S2 @ S2 == I,
        "T_order_4d": T ** (4 * d) == I,
        "S_unitary": S.is_unitary(),
    }
    report["all_pass"] = all(report[k] for k in (
        "ST_cubed_equals_S_squared", "S_order_8", "T_order_4d", "S_unitary"))
    return report


def dual_rep(m: WeilMatrix) -> WeilMatrix:
    """Dual of a unitary matrix: entrywise conjugate = inverse transpose."""
    if not m.is_unitary():
        raise ValueError("dual_rep expects a unitary matrix")
    return m.conj()


def t_equivariance_check(f: VVQExpansion, d: int | None = None) -> bool:
    """Does every nonzero c(n, gamma) satisfy e(n) = rho*(T)_{gamma,gamma}?"""
    d = f.d if d is None else d
    if d != f.d:
        raise ValueError("series and representation disagree on d")
    eigen = dual_rep(rho_T(d))
    for (n, g), c in f.terms():
        if e(n) != eigen[g, g]:
            return False
    return True
