"""Filtered quadratic spaces and the induced filtration on the even Clifford algebra.

The space carries the three-step filtration F^1 = <omega> (omega isotropic),
F^0 = omega^perp, F^-1 = everything, in the degree labels 1, 0, -1. A
filtered basis (omega, eta_1.., gamma) gives every tensor word a degree;
Fil^k on Cl_+ is spanned by the images of even words of degree >= k.

Two subspaces are easy to confuse and are kept apart here:

* ``fil[1]``: the word-induced Fil^1, spanned by omega * (odd products
  from F^0), of dimension 2^(r-3) for r >= 3;
* ``omega_kernel``: {a in Cl_+ : omega a = 0} = omega Cl  intersected with Cl_+,
  of dimension 2^(r-2). This is the piece cut out by x -> omega x v.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .clifford import CliffordAlgebra, CliffordElement, left_ideal_membership, ordered_basis_products
from .scalar import QQ, GF

FILTRATION_RANK_CAP = 10


class FiltrationError(ValueError):
    pass


@dataclass(frozen=True)
class FilteredQuadraticSpace:
    algebra: CliffordAlgebra
    omega: tuple

    @property
    def field(self):
        return self.algebra.field

    @property
    def rank(self) -> int:
        return self.algebra.rank

    def pair(self, v, w):
        return self.algebra.pair(v, w)

    def vector(self, coords) -> CliffordElement:
        return self.algebra.vector(coords)


def make_space(gram, omega, field=QQ) -> FilteredQuadraticSpace:
    if isinstance(field, GF) and field.p < 5:
        raise FiltrationError("characteristic must be 0 or a prime p >= 5")
    alg = CliffordAlgebra(gram, field)
    if alg.rank > FILTRATION_RANK_CAP:
        raise FiltrationError(f"rank is capped at {FILTRATION_RANK_CAP}")
    if linalg.determinant(alg.gram, field) == 0:
        raise FiltrationError("the pairing must be nondegenerate over the chosen field")
    omega = tuple(field(x) for x in omega)
    if len(omega) != alg.rank or not any(x != 0 for x in omega):
        raise FiltrationError("omega must be a nonzero vector of the right length")
    if alg.pair(omega, omega) != 0:
        raise FiltrationError(f"omega is not isotropic: psi(omega, omega) = {alg.pair(omega, omega)}")
    return FilteredQuadraticSpace(alg, omega)


def filtered_basis(s: FilteredQuadraticSpace):
    """(omega, [eta_i], gamma): eta_i complete omega to a basis of omega^perp."""
    F = s.field
    r = s.rank
    row = [s.pair(s.omega, [F(int(i == j)) for j in range(r)]) for i in range(r)]
    perp = linalg.nullspace([row], r, F)
    span = linalg.EchelonSpan(r, F)
    span.add(list(s.omega))
    etas = [v for v in perp if span.add(v)]
    gamma = next([F(int(i == j)) for j in range(r)] for i in range(r) if row[i] != 0)
    return list(s.omega), etas, gamma


@dataclass
class CliffordFiltration:
    """Fil^k on Cl_+ as RREF row bases in even-monomial coordinates."""

    basis: list[int]
    fil: dict[int, list] = field(default_factory=dict)
    omega_kernel: list = field(default_factory=list)

    def dim(self, k: int) -> int:
        if k in self.fil:
            return len(self.fil[k])
        return len(self.basis) if k < min(self.fil) else 0

    def graded_dims(self) -> dict[int, int]:
        lo, hi = min(self.fil), max(self.fil)
        return {k: self.dim(k) - self.dim(k + 1) for k in range(lo, hi + 1)
                if self.dim(k) - self.dim(k + 1)}


def induced_filtration(s: FilteredQuadraticSpace) -> CliffordFiltration:
    """Fil^k from even words in the filtered basis, lengths up to the rank.

    Words of each (length, degree) are only kept up to linear span, which is
    enough because left multiplication by a fixed pair b_i b_j is linear.
    """
    alg, F = s.algebra, s.field
    basis = alg.basis("even")
    w, etas, g = filtered_basis(s)
    letters = [(alg.vector(w), 1)] + [(alg.vector(v), 0) for v in etas] + [(alg.vector(g), -1)]
    pairs = [(a * b, da + db) for a, da in letters for b, db in letters]

    level = {0: [alg.one()]}  # degree -> spanning elements of the current length
    totals: dict[int, linalg.EchelonSpan] = {}

    def record(deg, elements):
        sp = totals.setdefault(deg, linalg.EchelonSpan(len(basis), F))
        for x in elements:
            sp.add(alg.coords(x, basis))

    record(0, level[0])
    for _ in range(2, alg.rank + 1, 2):
        nxt: dict[int, linalg.EchelonSpan] = {}
        reps: dict[int, list] = {}
        for deg, elems in level.items():
            for pe, dp in pairs:
                for x in elems:
                    y = pe * x
                    sp = nxt.setdefault(deg + dp, linalg.EchelonSpan(len(basis), F))
                    if sp.add(alg.coords(y, basis)):
                        reps.setdefault(deg + dp, []).append(y)
        level = reps
        for deg, elems in level.items():
            record(deg, elems)

    degrees = sorted(totals)
    fil = {}
    for k in range(min(degrees), max(degrees) + 2):
        rows = [row for deg in degrees if deg >= k for row in totals[deg].basis()]
        fil[k] = linalg.span_basis(rows, F)
    return CliffordFiltration(basis, fil, omega_kernel(s, basis))


def omega_kernel(s: FilteredQuadraticSpace, basis=None) -> list:
    """RREF basis of {a in Cl_+ : omega a = 0}."""
    alg = s.algebra
    basis = basis or alg.basis("even")
    L = alg.left_matrix(alg.vector(s.omega), basis, alg.basis("odd"))
    return linalg.span_basis(linalg.nullspace(L, len(basis), alg.field), alg.field)


def omega_image_even(s: FilteredQuadraticSpace, basis=None) -> list:
    """RREF basis of omega Cl intersected with Cl_+ (= omega Cl_-)."""
    alg = s.algebra
    basis = basis or alg.basis("even")
    om = alg.vector(s.omega)
    return linalg.span_basis([alg.coords(om * alg.element({m: 1}), basis)
                              for m in alg.basis("odd")], alg.field)


def omega_times_f0_products(s: FilteredQuadraticSpace, basis=None) -> list:
    """RREF basis of span{omega * g_1 ... g_k : g_i in F^0, k odd}."""
    alg = s.algebra
    basis = basis or alg.basis("even")
    w, etas, _ = filtered_basis(s)
    f0 = [alg.vector(w)] + [alg.vector(v) for v in etas]
    om = alg.vector(s.omega)
    return linalg.span_basis([alg.coords(om * p, basis)
                              for p in ordered_basis_products(f0, odd=True)], alg.field)


def filtration_report(s: FilteredQuadraticSpace) -> dict:
    F = s.field
    filt = induced_filtration(s)
    r = s.rank
    graded = filt.graded_dims()
    fil1 = filt.fil.get(1, [])
    return {
        "rank": r,
        "field": getattr(F, "name", str(F)),
        "even_dim": len(filt.basis),
        "fil_dims": {str(k): len(v) for k, v in sorted(filt.fil.items())},
        "graded_dims": {str(k): v for k, v in sorted(graded.items())},
        "graded_degrees_ok": set(graded) <= {1, 0, -1},
        "fil2_zero": filt.dim(2) == 0,
        "fil_minus1_is_everything": filt.dim(-1) == len(filt.basis),
        "gr1_equals_gr_minus1": graded.get(1, 0) == graded.get(-1, 0),
        "fil1_dim": len(fil1),
        "fil1_is_omega_times_f0_products": linalg.same_subspace(
            fil1, omega_times_f0_products(s, filt.basis), F) if fil1 else
            not omega_times_f0_products(s, filt.basis),
        "fil1_inside_omega_kernel": linalg.is_subspace(fil1, filt.omega_kernel, F),
        "omega_kernel_dim": len(filt.omega_kernel),
        "omega_kernel_equals_omega_cl_even": linalg.same_subspace(
            filt.omega_kernel, omega_image_even(s, filt.basis), F),
    }


def psp_map_check(s: FilteredQuadraticSpace, v) -> dict:
    """Kernel and image of x -> omega x v on Cl_+, compared with ker(omega)."""
    alg, F = s.algebra, s.field
    v = tuple(F(x) for x in v)
    if alg.pair(v, v) == 0:
        raise FiltrationError("v must be anisotropic")
    basis = alg.basis("even")
    om, vv = alg.vector(s.omega), alg.vector(v)
    cols = [alg.coords(om * alg.element({m: 1}) * vv, basis) for m in basis]
    M = linalg.transpose(cols)
    kernel = linalg.span_basis(linalg.nullspace(M, len(basis), F), F)
    image = linalg.span_basis(cols, F)
    target = omega_kernel(s, basis)
    return {
        "kernel_dim": len(kernel),
        "image_dim": len(image),
        "kernel_equals_image": linalg.same_subspace(kernel, image, F),
        "equal_to_fil1": (linalg.same_subspace(kernel, target, F)
                          and linalg.same_subspace(image, target, F)),
        "expected_dim": 2 ** (s.rank - 2),
    }


def ks_divisibility_demo(s: FilteredQuadraticSpace, eta1, eta2) -> dict:
    """(a) omega.eta2 in Fil^1, (b) eta1.eta2 not in omega Cl, (c) Fil^1 inside omega Cl."""
    alg, F = s.algebra, s.field
    eta1 = tuple(F(x) for x in eta1)
    eta2 = tuple(F(x) for x in eta2)
    for name, eta in (("eta1", eta1), ("eta2", eta2)):
        if s.pair(s.omega, eta) != 0:
            raise FiltrationError(f"{name} is not in F^0 = omega^perp")
    if linalg.rank([list(s.omega), list(eta1), list(eta2)], F) < 3:
        raise FiltrationError("omega, eta1, eta2 must be linearly independent")
    filt = induced_filtration(s)
    basis = filt.basis
    om = alg.vector(s.omega)
    a = linalg.contains(filt.fil[1], alg.coords(om * alg.vector(eta2), basis), F)
    inside, _ = left_ideal_membership(alg.vector(eta1) * alg.vector(eta2), om)
    c = all(left_ideal_membership(alg.from_coords(row, basis), om)[0] for row in filt.fil[1])
    return {
        "omega_eta2_in_fil1": a,
        "eta1_eta2_not_in_omega_cl": not inside,
        "fil1_in_omega_cl": c,
    }
