import pytest

from k3arith import linalg
from k3arith.filtration import (
    FiltrationError, filtration_report, induced_filtration, ks_divisibility_demo, make_space,
    omega_image_even, omega_kernel, psp_map_check,
)
from k3arith.lattice import direct_sum, make_standard
from k3arith.scalar import GF, QQ

FIELDS = [QQ, GF(5), GF(7)]


def space(rank, F):
    U = make_standard("U")
    parts = {4: (U, U), 5: (U, U, make_standard("rank1", 1)), 6: (U, U, U)}[rank]
    return make_space(direct_sum(*parts).gram, [1] + [0] * (rank - 1), F)


@pytest.mark.parametrize("rank", [4, 5, 6])
@pytest.mark.parametrize("F", FIELDS)
def test_filtration_dimensions(rank, F):
    s = space(rank, F)
    rep = filtration_report(s)
    assert rep["graded_degrees_ok"] and rep["fil2_zero"] and rep["fil_minus1_is_everything"]
    assert rep["gr1_equals_gr_minus1"]
    assert rep["omega_kernel_dim"] == 2 ** (rank - 2)
    assert rep["omega_kernel_equals_omega_cl_even"]
    assert rep["fil1_dim"] == 2 ** (rank - 3)
    assert rep["fil1_is_omega_times_f0_products"] and rep["fil1_inside_omega_kernel"]


@pytest.mark.parametrize("rank", [4, 5, 6])
@pytest.mark.parametrize("F", FIELDS)
def test_psp_map(rank, F):
    s = space(rank, F)
    v = [0, 0, 1, -1] + [0] * (rank - 4)
    rep = psp_map_check(s, v)
    assert rep["kernel_dim"] == rep["image_dim"] == 2 ** (rank - 2)
    assert rep["kernel_equals_image"] and rep["equal_to_fil1"]


def test_rank2_example(U):
    s = make_space(U.gram, [1, 0])
    filt = induced_filtration(s)
    assert len(filt.basis) == 2
    assert len(filt.omega_kernel) == 1
    assert filt.dim(2) == 0


def test_omega_kernel_brute_force(UU):
    s = make_space(UU.gram, [1, 0, 0, 0])
    alg = s.algebra
    basis = alg.basis("even")
    om = alg.vector(s.omega)
    for row in omega_kernel(s):
        assert om * alg.from_coords(row, basis) == 0
    assert linalg.same_subspace(omega_kernel(s), omega_image_even(s))


def test_errors(UU, U):
    with pytest.raises(FiltrationError):
        make_space(UU.gram, [1, 1, 0, 0])
    with pytest.raises(FiltrationError):
        make_space(UU.gram, [1, 0, 0, 0], GF(3))
    with pytest.raises(FiltrationError):
        make_space(UU.gram, [0, 0, 0, 0])
    s = make_space(UU.gram, [1, 0, 0, 0])
    with pytest.raises(FiltrationError):
        psp_map_check(s, [0, 0, 1, 0])


FROZEN = ([0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 1, 0])


@pytest.mark.parametrize("F", [GF(5), QQ])
def test_divisibility_demo(UUU, F):
    s = make_space(UUU.gram, [1, 0, 0, 0, 0, 0], F)
    assert ks_divisibility_demo(s, *FROZEN) == {
        "omega_eta2_in_fil1": True,
        "eta1_eta2_not_in_omega_cl": True,
        "fil1_in_omega_cl": True,
    }


def test_divisibility_demo_errors(UUU):
    s = make_space(UUU.gram, [1, 0, 0, 0, 0, 0], GF(5))
    with pytest.raises(FiltrationError):
        ks_divisibility_demo(s, FROZEN[0], FROZEN[0])
    with pytest.raises(FiltrationError):
        ks_divisibility_demo(s, [0, 1, 0, 0, 0, 0], FROZEN[1])
