"""Clifford algebras of symmetric bilinear forms over Q or F_p.

Elements are sparse maps ``bitmask -> scalar``: bit i set means the basis
vector e_i occurs, and the monomial is the increasing product of those
vectors. The defining relations are e_i e_i = psi(e_i, e_i) and
e_j e_i = -e_i e_j + 2 psi(e_i, e_j), so non-orthogonal bases (like the
hyperbolic plane) work without orthogonalizing first.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import linalg
from .scalar import QQ

DENSE_RANK_CAP = 16


class CliffordError(ValueError):
    pass


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class CliffordAlgebra:
    """Cl(M, psi) for a Gram matrix over ``field`` (``QQ`` or ``GF(p)``)."""

    def __init__(self, gram, field=QQ):
        if hasattr(gram, "gram"):
            gram = gram.gram
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise CliffordError("Gram matrix must be square")
        self.field = field
        self.gram = tuple(tuple(field(x) for x in row) for row in gram)
        if any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(n)):
            raise CliffordError("Gram matrix must be symmetric")
        self.rank = n
        self._vec_cache: dict[tuple[int, int], dict] = {}
        self._mono_cache: dict[tuple[int, int], dict] = {}
        self._zero = field(0)
        self._one = field(1)

    def __eq__(self, other):
        return (isinstance(other, CliffordAlgebra) and self.field == other.field
                and self.gram == other.gram)

    def __hash__(self):
        return hash((self.gram, self.field))

    def __repr__(self):
        return f"CliffordAlgebra(rank={self.rank}, field={self.field!r})"

    @property
    def dim(self) -> int:
        return 1 << self.rank

    # construction -----------------------------------------------------------
    def element(self, terms=None) -> "CliffordElement":
        return CliffordElement(self, terms or {})

    def scalar(self, a) -> "CliffordElement":
        return CliffordElement(self, {0: a})

    def one(self) -> "CliffordElement":
        return self.scalar(1)

    def gen(self, i: int) -> "CliffordElement":
        return CliffordElement(self, {1 << i: 1})

    def gens(self) -> list["CliffordElement"]:
        return [self.gen(i) for i in range(self.rank)]

    def vector(self, coords) -> "CliffordElement":
        if len(coords) != self.rank:
            raise CliffordError("vector length does not match the rank")
        return CliffordElement(self, {1 << i: c for i, c in enumerate(coords)})

    def monomial(self, indices) -> "CliffordElement":
        """Product e_{i1} e_{i2} ... in the given order (any order, repeats allowed)."""
        out = self.one()
        for i in indices:
            out = out * self.gen(i)
        return out

    def pair(self, v, w):
        """psi on coordinate vectors."""
        return sum((self.field(v[i]) * self.gram[i][j] * self.field(w[j])
                    for i in range(self.rank) for j in range(self.rank)), self._zero)

    # monomial arithmetic ----------------------------------------------------
    def _mono_times_gen(self, A: int, j: int) -> dict:
        key = (A, j)
        hit = self._vec_cache.get(key)
        if hit is not None:
            return hit
        if A == 0:
            out = {1 << j: self._one}
        else:
            last = A.bit_length() - 1
            rest = A & ~(1 << last)
            if last < j:
                out = {A | (1 << j): self._one}
            elif last == j:
                c = self.gram[j][j]
                out = {rest: c} if c != 0 else {}
            else:
                # e_rest e_last e_j = -(e_rest e_j) e_last + 2 psi(e_last, e_j) e_rest
                out = {}
                for M, c in self._mono_times_gen(rest, j).items():
                    # every index of M is below ``last``
                    out[M | (1 << last)] = -c
                two_psi = 2 * self.gram[last][j]
                if two_psi != 0:
                    out[rest] = out.get(rest, self._zero) + two_psi
                out = {m: c for m, c in out.items() if c != 0}
        self._vec_cache[key] = out
        return out

    def mono_mul(self, A: int, B: int) -> dict:
        key = (A, B)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        acc = {A: self._one}
        for j in _bits(B):
            nxt: dict = {}
            for M, c in acc.items():
                for M2, c2 in self._mono_times_gen(M, j).items():
                    nxt[M2] = nxt.get(M2, self._zero) + c * c2
            acc = {m: c for m, c in nxt.items() if c != 0}
        self._mono_cache[key] = acc
        return acc

    # dense views --------------------------------------------------------------
    def _require_dense(self):
        if self.rank > DENSE_RANK_CAP:
            raise CliffordError(
                f"dense operations need rank <= {DENSE_RANK_CAP}, got {self.rank}")

    def basis(self, parity: str | None = None) -> list[int]:
        """Monomial bitmasks ordered by grade, then lexicographically."""
        self._require_dense()
        masks = range(self.dim)
        if parity == "even":
            masks = [m for m in masks if popcount(m) % 2 == 0]
        elif parity == "odd":
            masks = [m for m in masks if popcount(m) % 2 == 1]
        return sorted(masks, key=lambda m: (popcount(m), list(_bits(m))))

    def coords(self, x: "CliffordElement", basis: list[int]) -> list:
        index = {m: i for i, m in enumerate(basis)}
        v = [self._zero] * len(basis)
        for m, c in x.terms.items():
            if m not in index:
                raise CliffordError("element has components outside the requested basis")
            v[index[m]] = c
        return v

    def from_coords(self, v, basis: list[int]) -> "CliffordElement":
        return CliffordElement(self, {m: c for m, c in zip(basis, v)})

    def left_matrix(self, x: "CliffordElement", domain: list[int], codomain: list[int] | None = None):
        """Matrix (columns = images of domain monomials) of y -> x y."""
        codomain = domain if codomain is None else codomain
        cols = [self.coords(x * self.element({m: 1}), codomain) for m in domain]
        return linalg.transpose(cols)

    def right_matrix(self, x: "CliffordElement", domain: list[int], codomain: list[int] | None = None):
        """Matrix of y -> y x."""
        codomain = domain if codomain is None else codomain
        cols = [self.coords(self.element({m: 1}) * x, codomain) for m in domain]
        return linalg.transpose(cols)

    def monomial_trace(self, A: int):
        """Trace of left multiplication by the monomial e_A on the whole algebra."""
        self._require_dense()
        total = self._zero
        for T in range(self.dim):
            total = total + self.mono_mul(A, T).get(T, self._zero)
        return total


class CliffordElement:
    """Immutable sparse Clifford element; zero coefficients are dropped."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: CliffordAlgebra, terms):
        f = algebra.field
        clean = {}
        for m, c in dict(terms).items():
            if m < 0 or m >= (1 << algebra.rank):
                raise CliffordError(f"monomial {m} out of range for rank {algebra.rank}")
            c = f(c)
            if c != 0:
                clean[m] = c
        self.algebra = algebra
        self.terms = clean

    def _check(self, other):
        if not isinstance(other, CliffordElement):
            return False
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise CliffordError("elements live in different Clifford algebras")
        return True

    def __add__(self, other):
        if not self._check(other):
            other = self.algebra.scalar(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, self.algebra._zero) + c
        return CliffordElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        alg = self.algebra
        if not self._check(other):
            c = alg.field(other)
            return CliffordElement(alg, {m: v * c for m, v in self.terms.items()})
        out: dict = {}
        zero = alg._zero
        for A, a in self.terms.items():
            for B, b in other.terms.items():
                ab = a * b
                for M, c in alg.mono_mul(A, B).items():
                    out[M] = out.get(M, zero) + ab * c
        return CliffordElement(alg, out)

    def __rmul__(self, other):
        c = self.algebra.field(other)
        return CliffordElement(self.algebra, {m: v * c for m, v in self.terms.items()})

    def __truediv__(self, other):
        return self * (1 / self.algebra.field(other))

    def __pow__(self, k: int):
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return self.algebra == other.algebra and self.terms == other.terms
        try:
            return self == self.algebra.scalar(other)
        except (TypeError, ValueError):
            return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (popcount(m), m)):
            name = "*".join(f"e{i}" for i in _bits(m)) or "1"
            parts.append(f"({self.terms[m]})*{name}" if m else f"({self.terms[m]})")
        return " + ".join(parts)

    # structure --------------------------------------------------------------
    def scalar_part(self):
        return self.terms.get(0, self.algebra._zero)

    def is_even(self) -> bool:
        return all(popcount(m) % 2 == 0 for m in self.terms)

    def is_odd(self) -> bool:
        return all(popcount(m) % 2 == 1 for m in self.terms)

    def is_homogeneous(self) -> bool:
        return self.is_even() or self.is_odd()

    def even_part(self) -> "CliffordElement":
        return CliffordElement(self.algebra, {m: c for m, c in self.terms.items() if popcount(m) % 2 == 0})

    def odd_part(self) -> "CliffordElement":
        return CliffordElement(self.algebra, {m: c for m, c in self.terms.items() if popcount(m) % 2 == 1})

    def reversion(self) -> "CliffordElement":
        return reversion(self)

    def to_json(self) -> list:
        return [{"subset": list(_bits(m)), "coeff": str(c)}
                for m, c in sorted(self.terms.items(), key=lambda t: (popcount(t[0]), list(_bits(t[0]))))]

    @classmethod
    def from_json(cls, algebra: CliffordAlgebra, data) -> "CliffordElement":
        terms: dict = {}
        for item in data:
            indices = [int(i) for i in item["subset"]]
            if indices != sorted(set(indices)):
                raise CliffordError("subset indices must be strictly increasing")
            mask = sum(1 << i for i in indices)
            terms[mask] = terms.get(mask, 0) + algebra.field(Fraction(item["coeff"]))
        return cls(algebra, terms)


# -- module-level operations -----------------------------------------------------

def mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    return x * y


def reversion(x: CliffordElement) -> CliffordElement:
    """The anti-automorphism fixing vectors: reverse every monomial."""
    alg = x.algebra
    out = alg.element()
    for m, c in x.terms.items():
        out = out + alg.monomial(reversed(list(_bits(m)))) * c
    return out


def spinor_norm(g: CliffordElement) -> CliffordElement:
    """iota(g) g."""
    return reversion(g) * g


def trace_left_mult(x: CliffordElement):
    """Trace of y -> x y on the full algebra (rank <= 16)."""
    alg = x.algebra
    alg._require_dense()
    total = alg._zero
    for A, c in x.terms.items():
        total = total + c * alg.monomial_trace(A)
    return total


def left_ideal_membership(xi: CliffordElement, omega: CliffordElement):
    """Decide xi in omega * Cl; returns (found, witness z with omega z = xi)."""
    alg = xi.algebra
    omega._check(xi)
    alg._require_dense()
    basis = list(range(alg.dim))
    L = alg.left_matrix(omega, basis)
    z = linalg.solve(L, alg.coords(xi, basis), alg.field)
    if z is None:
        return False, None
    return True, alg.from_coords(z, basis)


def degree2_relation_kernel_dim(base, field=QQ) -> int:
    """dim ker( k + M + M (x) M -> Cl(M) ), the degree-two relations."""
    alg = base if isinstance(base, CliffordAlgebra) else CliffordAlgebra(base, field)
    r = alg.rank
    if r > 8:
        raise CliffordError("degree-two relation check is limited to rank <= 8")
    basis = list(range(alg.dim))
    images = [alg.one()] + alg.gens()
    images += [alg.gen(i) * alg.gen(j) for i in range(r) for j in range(r)]
    rows = [alg.coords(x, basis) for x in images]
    return len(images) - linalg.rank(rows, alg.field)


def reachable_dimension(alg: CliffordAlgebra, even: bool = False) -> int:
    """Dimension of the span of all products of generators (pairs if ``even``)."""
    basis = list(range(alg.dim))
    span = linalg.EchelonSpan(alg.dim, alg.field)
    steps = ([alg.gen(i) * alg.gen(j) for i in range(alg.rank) for j in range(alg.rank)]
             if even else alg.gens())
    frontier = [alg.one()]
    span.add(alg.coords(alg.one(), basis))
    while frontier:
        nxt = []
        for w in frontier:
            for s in steps:
                y = w * s
                if span.add(alg.coords(y, basis)):
                    nxt.append(y)
        frontier = nxt
    return len(span)


def ordered_basis_products(vectors: list[CliffordElement], odd: bool | None = None):
    """Products v_{i1} ... v_{ik} over increasing index subsets (filtered by parity)."""
    alg = vectors[0].algebra
    out = []
    for k in range(len(vectors) + 1):
        if odd is not None and (k % 2 == 1) != odd:
            continue
        for combo in combinations(range(len(vectors)), k):
            p = alg.one()
            for i in combo:
                p = p * vectors[i]
            out.append(p)
    return out


def random_gram(rng, rank: int, spread: int = 3):
    """Random symmetric integer Gram matrix with even diagonal."""
    g = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        g[i][i] = 2 * rng.randint(-spread, spread)
        for j in range(i + 1, rank):
            g[i][j] = g[j][i] = rng.randint(-spread, spread)
    return g


def random_element(alg: CliffordAlgebra, rng, terms: int = 4, spread: int = 5) -> CliffordElement:
    return alg.element({rng.randrange(alg.dim): alg.field(rng.randint(-spread, spread))
                        for _ in range(terms)})


def selftest(trials: int = 100, seed: int = 0, fields=None) -> dict:
    """Randomized algebra-law checks on ranks 2..6 plus degree-two kernel dimensions."""
    import random
    from .scalar import GF

    rng = random.Random(seed)
    fields = fields or [QQ, GF(5)]
    report = {}
    for F in fields:
        assoc = anticomm = antihom = even_dim = True
        for _ in range(trials):
            r = rng.randint(2, 6)
            alg = CliffordAlgebra(random_gram(rng, r), F)
            x, y, z = (random_element(alg, rng) for _ in range(3))
            assoc &= (x * y) * z == x * (y * z)
            antihom &= reversion(x * y) == reversion(y) * reversion(x)
            v = [F(rng.randint(-3, 3)) for _ in range(r)]
            w = [F(rng.randint(-3, 3)) for _ in range(r)]
            vv, ww = alg.vector(v), alg.vector(w)
            anticomm &= vv * ww + ww * vv == alg.scalar(2 * alg.pair(v, w))
            even_dim &= len(alg.basis("even")) == 2 ** (r - 1)
        kernel = {str(r): degree2_relation_kernel_dim(
            CliffordAlgebra(random_gram(rng, r), F)) for r in range(1, 6)}
        report[F.name] = {
            "associative": assoc,
            "anticommutator": anticomm,
            "reversion_antihomomorphism": antihom,
            "even_dimension": even_dim,
            "degree2_kernel_dims": kernel,
            "degree2_kernel_ok": all(v == int(r) * (int(r) + 1) // 2 for r, v in kernel.items()),
        }
    report["all_pass"] = all(all(v for k, v in rep.items() if k != "degree2_kernel_dims")
                             for rep in report.values())
    return report
