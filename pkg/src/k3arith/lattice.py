"""Even integral lattices, the K3 lattice and discriminant forms.

Gram matrices are given in the psi convention (the one in which the K3
lattice U^3 + E8^2 has signature (19, 3)); ``convention="borcherds"``
flips the sign of the pairing before computing discriminant data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from . import linalg


class LatticeError(ValueError):
    pass


class DegenerateLatticeError(LatticeError):
    def __init__(self, kernel_dim: int):
        super().__init__(f"degenerate Gram matrix (kernel dimension {kernel_dim})")
        self.kernel_dim = kernel_dim


E8_GRAM = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)


@dataclass(frozen=True)
class Lattice:
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square and nonempty")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("Gram matrix must be symmetric")
        if any(g[i][i] % 2 for i in range(n)):
            raise LatticeError("lattice must be even (even diagonal)")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, v, w):
        """psi(v, w) for coordinate vectors (ints or Fractions)."""
        return sum(v[i] * self.gram[i][j] * w[j]
                   for i in range(self.rank) for j in range(self.rank) if v[i] and w[j])

    def norm(self, v):
        return self.pair(v, v)

    def determinant(self) -> int:
        return int(linalg.determinant(self.gram))

    def to_json(self) -> dict:
        return {"gram": [list(row) for row in self.gram]}

    @classmethod
    def from_json(cls, obj) -> "Lattice":
        if not isinstance(obj, dict) or "gram" not in obj:
            raise LatticeError("lattice JSON must be an object with a 'gram' key")
        return cls(tuple(tuple(row) for row in obj["gram"]))


def make_standard(name: str, n: int | None = None) -> Lattice:
    """Named lattices: ``U``, ``E8`` or ``rank1`` (Gram [2n])."""
    if name == "U":
        return Lattice(((0, 1), (1, 0)))
    if name == "E8":
        return Lattice(E8_GRAM)
    if name == "rank1":
        if not n:
            raise LatticeError("rank1 needs a nonzero integer n (Gram [2n])")
        return Lattice(((2 * n,),))
    raise LatticeError(f"unknown lattice name {name!r}")


def direct_sum(*lattices: Lattice) -> Lattice:
    size = sum(a.rank for a in lattices)
    gram = [[0] * size for _ in range(size)]
    offset = 0
    for a in lattices:
        for i in range(a.rank):
            for j in range(a.rank):
                gram[offset + i][offset + j] = a.gram[i][j]
        offset += a.rank
    return Lattice(tuple(map(tuple, gram)))


def negate(a: Lattice) -> Lattice:
    return Lattice(tuple(tuple(-x for x in row) for row in a.gram))


def k3_lattice() -> Lattice:
    """U^3 + E8^2 with e, f of the first U as basis vectors 0 and 1."""
    U, E8 = make_standard("U"), make_standard("E8")
    return direct_sum(U, U, U, E8, E8)


def _kernel_basis_integral(u: list[int]) -> list[list[int]]:
    """Z-basis of {w in Z^r : u . w = 0} via unimodular column operations."""
    r = len(u)
    cols = [[1 if i == j else 0 for i in range(r)] for j in range(r)]  # columns of U
    vals = list(u)
    # gcd-reduce the row vector to (g, 0, ..., 0) keeping track of columns
    while sum(1 for x in vals if x) > 1:
        nz = [j for j in range(r) if vals[j]]
        j0 = min(nz, key=lambda j: abs(vals[j]))
        for j in nz:
            if j != j0:
                q = vals[j] // vals[j0]
                vals[j] -= q * vals[j0]
                cols[j] = [a - q * b for a, b in zip(cols[j], cols[j0])]
    return [cols[j] for j in range(r) if vals[j] == 0]


def orthogonal_complement(a: Lattice, v) -> Lattice:
    v = [int(x) for x in v]
    if len(v) != a.rank:
        raise LatticeError("vector length does not match the lattice rank")
    if not any(v):
        raise LatticeError("vector must be nonzero")
    g = 0
    for x in v:
        g = gcd(g, x)
    if g != 1:
        raise LatticeError(f"vector is not primitive (content {g})")
    return Lattice(_complement_gram(a, tuple(v))[0])


def complement_basis(a: Lattice, v) -> list[list[int]]:
    """The integral basis of v^perp used by :func:`orthogonal_complement`."""
    return _complement_gram(a, tuple(int(x) for x in v))[1]


def _complement_gram(a: Lattice, v: tuple[int, ...]):
    u = [sum(a.gram[i][j] * v[j] for j in range(a.rank)) for i in range(a.rank)]
    if not any(u):
        raise LatticeError("vector lies in the radical; its complement is everything")
    basis = _kernel_basis_integral(u)
    basis = _hermite_rows(basis)
    gram = tuple(tuple(a.pair(b1, b2) for b2 in basis) for b1 in basis)
    return gram, basis


def _hermite_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer basis (same Z-span)."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[i0] = m[i0], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if any(m[i][c] for i in range(r, len(m))):
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
    return m


@lru_cache(maxsize=None)
def l2d(d: int) -> Lattice:
    """L_{2d} = (e - d f)^perp inside U^3 + E8^2."""
    if d < 1:
        raise LatticeError("d must be a positive integer")
    v = [0] * 22
    v[0], v[1] = 1, -d
    return orthogonal_complement(k3_lattice(), v)


def signature(a: Lattice) -> tuple[int, int]:
    pos, neg, zero = linalg.inertia(a.gram)
    if zero:
        raise DegenerateLatticeError(zero)
    return pos, neg


# -- Smith normal form ----------------------------------------------------------

def smith_normal_form(A):
    """Return (D, P, Q) with P A Q = D diagonal, P and Q unimodular."""
    m = [list(map(int, r)) for r in A]
    nr, nc = len(m), len(m[0])
    P = [[int(i == j) for j in range(nr)] for i in range(nr)]
    Q = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        m[dst] = [a + k * b for a, b in zip(m[dst], m[src])]
        P[dst] = [a + k * b for a, b in zip(P[dst], P[src])]

    def add_col(dst, src, k):
        for row in m:
            row[dst] += k * row[src]
        for row in Q:
            row[dst] += k * row[src]

    for t in range(min(nr, nc)):
        while True:
            entries = [(abs(m[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if m[i][j]]
            if not entries:
                return m, P, Q
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            clean = True
            for i in range(t + 1, nr):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // m[t][t]))
                    clean = clean and m[i][t] == 0
            for j in range(t + 1, nc):
                if m[t][j]:
                    add_col(j, t, -(m[t][j] // m[t][t]))
                    clean = clean and m[t][j] == 0
            if not clean:
                continue
            # divisibility condition d_t | every later entry
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if m[i][j] % m[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            P[t] = [-x for x in P[t]]
    return m, P, Q


# -- discriminant forms ---------------------------------------------------------

def _frac_mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class DiscriminantForm:
    """Finite quadratic module L^v / L with q(x) = (x, x)/2 mod 1.

    ``generators[i]`` are coordinates (w.r.t. the lattice basis) of dual
    vectors of order ``cyclic_orders[i]``; group elements are tuples of
    residues.
    """

    cyclic_orders: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    gram: tuple[tuple[int, ...], ...] = field(repr=False)
    sign_convention: str = "psi"

    @property
    def order(self) -> int:
        n = 1
        for d in self.cyclic_orders:
            n *= d
        return n

    def elements(self):
        return list(product(*(range(d) for d in self.cyclic_orders)))

    def vector(self, elem) -> list[Fraction]:
        r = len(self.gram)
        v = [Fraction(0)] * r
        for k, g in zip(elem, self.generators):
            for i in range(r):
                v[i] += k * g[i]
        return v

    def _pair(self, x, y) -> Fraction:
        sign = -1 if self.sign_convention == "borcherds" else 1
        r = len(self.gram)
        return sign * sum(x[i] * self.gram[i][j] * y[j]
                          for i in range(r) if x[i] for j in range(r) if y[j])

    def q(self, elem) -> Fraction:
        v = self.vector(elem)
        return _frac_mod1(Fraction(self._pair(v, v)) / 2)

    def b(self, elem1, elem2) -> Fraction:
        return _frac_mod1(Fraction(self._pair(self.vector(elem1), self.vector(elem2))))

    @property
    def q_values(self) -> dict:
        return {g: self.q(g) for g in self.elements()}

    @property
    def b_values(self) -> dict:
        els = self.elements()
        return {(g, h): self.b(g, h) for g in els for h in els}

    def add(self, g, h):
        return tuple((a + b) % d for a, b, d in zip(g, h, self.cyclic_orders))

    def to_json(self) -> dict:
        out = {
            "cyclic_orders": list(self.cyclic_orders),
            "generators": [[str(x) for x in g] for g in self.generators],
            "sign_convention": self.sign_convention,
            "order": self.order,
        }
        if self.order <= 256:
            out["q_values"] = [{"element": list(g), "q": str(self.q(g))} for g in self.elements()]
        return out


def discriminant_form(a: Lattice, convention: str = "psi") -> DiscriminantForm:
    if convention not in ("psi", "borcherds"):
        raise ValueError("convention must be 'psi' or 'borcherds'")
    G = a.gram
    det = a.determinant()
    if det == 0:
        pos, neg, zero = linalg.inertia(G)
        raise DegenerateLatticeError(zero)
    D, P, _ = smith_normal_form(G)
    Ginv = linalg.inverse(G)
    Pinv = linalg.inverse(P)
    orders, gens = [], []
    r = a.rank
    for i in range(r):
        if abs(D[i][i]) > 1:
            # the class of P^{-1} e_i in Z^r / G Z^r, pulled back to a dual vector
            col = [Pinv[k][i] for k in range(r)]
            gens.append(tuple(sum(Ginv[j][k] * col[k] for k in range(r)) for j in range(r)))
            orders.append(abs(D[i][i]))
    form = DiscriminantForm(tuple(orders), tuple(gens), G, convention)
    if len(orders) == 1:
        form = _normalize_cyclic(form)
    return form


def _normalize_cyclic(form: DiscriminantForm) -> DiscriminantForm:
    """Pick the unit multiple k*g minimizing the psi-convention value of q."""
    N = form.cyclic_orders[0]
    psi_form = DiscriminantForm(form.cyclic_orders, form.generators, form.gram, "psi")
    best = min((k for k in range(1, N) if gcd(k, N) == 1),
               key=lambda k: (psi_form.q((k,)), k))
    g = tuple(best * x for x in form.generators[0])
    return DiscriminantForm(form.cyclic_orders, (g,), form.gram, form.sign_convention)
