import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from k3arith.clifford import (
    CliffordAlgebra, CliffordError, degree2_relation_kernel_dim, left_ideal_membership,
    ordered_basis_products, random_element, random_gram, reachable_dimension, reversion,
    selftest, spinor_norm, trace_left_mult,
)
from k3arith.scalar import GF, QQ


def naive_product(gram, words_a, words_b):
    """Reference: normal-order words by local rewriting, independent of the bitmask code."""
    todo = [(wa + wb, ca * cb) for wa, ca in words_a.items() for wb, cb in words_b.items()]
    out = {}
    while todo:
        w, c = todo.pop()
        for k in range(len(w) - 1):
            i, j = w[k], w[k + 1]
            if i == j:
                todo.append((w[:k] + w[k + 2:], c * gram[i][i]))
                break
            if i > j:
                todo.append((w[:k] + (j, i) + w[k + 2:], -c))
                todo.append((w[:k] + w[k + 2:], 2 * c * gram[i][j]))
                break
        else:
            out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def as_words(x):
    return {tuple(i for i in range(x.algebra.rank) if m >> i & 1): c for m, c in x.terms.items()}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 5))
def test_product_matches_naive_rewriting(seed, r):
    rng = random.Random(seed)
    alg = CliffordAlgebra(random_gram(rng, r))
    x, y = random_element(alg, rng, 3), random_element(alg, rng, 3)
    assert as_words(x * y) == naive_product(alg.gram, as_words(x), as_words(y))


@pytest.mark.parametrize("F", [QQ, GF(5)])
@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_algebra_laws(F, seed):
    rng = random.Random(seed)
    r = rng.randint(2, 6)
    alg = CliffordAlgebra(random_gram(rng, r), F)
    x, y, z = (random_element(alg, rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert reversion(x * y) == reversion(y) * reversion(x)
    assert reversion(reversion(x)) == x
    v = [F(rng.randint(-3, 3)) for _ in range(r)]
    w = [F(rng.randint(-3, 3)) for _ in range(r)]
    vv, ww = alg.vector(v), alg.vector(w)
    assert vv * ww + ww * vv == alg.scalar(2 * alg.pair(v, w))
    assert vv * vv == alg.scalar(alg.pair(v, v))


def test_hyperbolic_plane(U):
    alg = CliffordAlgebra(U)
    e, f = alg.gens()
    assert e * e == 0 and f * f == 0
    assert e * f + f * e == 2
    assert reversion(e * f) == 2 - e * f
    assert trace_left_mult(alg.one()) == 4
    assert trace_left_mult(e) == 0


def test_spinor_norm():
    alg = CliffordAlgebra([[2, 0], [0, 2]])
    g = alg.gen(0) * alg.gen(1)
    assert spinor_norm(g) == 4


def test_left_ideal_membership(U):
    alg = CliffordAlgebra(U)
    e, f = alg.gens()
    assert left_ideal_membership(alg.one(), e)[0] is False
    ok, z = left_ideal_membership(alg.one(), e - f)
    assert ok and (e - f) * z == 1
    assert z == Fraction(-1, 2) * e + Fraction(1, 2) * f


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("F", [QQ, GF(5), GF(7)])
def test_degree2_kernel(r, F):
    gram = random_gram(random.Random(r), r)
    assert degree2_relation_kernel_dim(gram, F) == r * (r + 1) // 2


def test_dimensions(UUU):
    alg = CliffordAlgebra(UUU)
    assert len(alg.basis("even")) == 32
    assert reachable_dimension(alg, even=True) == 32
    assert reachable_dimension(alg) == 64


def test_ordered_products(UU):
    alg = CliffordAlgebra(UU)
    prods = ordered_basis_products(alg.gens(), odd=True)
    assert len(prods) == 8 and all(p.is_odd() for p in prods)


def test_large_rank_sparse_products():
    from k3arith.lattice import l2d
    alg = CliffordAlgebra(l2d(1))
    x = alg.gen(0) * alg.gen(20) * alg.gen(7)
    assert (x * reversion(x)).is_even()
    with pytest.raises(CliffordError):
        alg.basis()


def test_json_roundtrip(UU):
    from k3arith.clifford import CliffordElement
    alg = CliffordAlgebra(UU)
    x = alg.gen(0) * alg.gen(3) + Fraction(2, 3)
    assert CliffordElement.from_json(alg, x.to_json()) == x


def test_selftest_passes():
    assert selftest(trials=20, seed=1)["all_pass"]
