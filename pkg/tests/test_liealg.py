import pytest

from emapalg.errors import AlgebraError, ConfigError
from emapalg.exactmath import Scalar, vec_is_zero, vec_sub, vec_scale
from emapalg.liealg import (
    analyze_structure, analyze_subspace, automorphism_from_recipe, cartan_type,
    centroid_basis, direct_sum, fixed_subalgebra, from_structure_constants,
    identity_automorphism, matrix_family, subalgebra, xi_grading, _outer_nodes,
)


def rat(x, n=1):
    return Scalar.from_rational(x, n)


@pytest.fixture(scope="module")
def sl2():
    return cartan_type("A", 1)


@pytest.fixture(scope="module")
def sl3():
    return cartan_type("A", 2)


@pytest.fixture(scope="module")
def so8():
    return cartan_type("D", 4)


def test_sl2_relations(sl2):
    e, f, h = sl2.generators[0]
    assert sl2.dim == 3
    assert sl2.bracket_vec(h, e) == vec_scale(rat(2), e)
    assert sl2.bracket_vec(h, f) == vec_scale(rat(-2), f)
    assert sl2.bracket_vec(e, f) == h


def test_so8_dim(so8):
    assert so8.dim == 28
    assert so8.type_label == "D4"


def test_g2_dim():
    g2 = cartan_type("G", 2)
    assert g2.dim == 14
    # root-system oracle: G2 has 12 roots plus a rank-2 Cartan
    assert g2.root_count == 12
    assert g2.cartan_matrix in (((2, -1), (-3, 2)), ((2, -3), (-1, 2)))


def test_classical_dims_match_formulas():
    assert cartan_type("B", 2).dim == 10
    assert cartan_type("C", 3).dim == 21
    assert matrix_family("so", 7).dim == 21
    assert matrix_family("sp", 4).dim == 10
    assert matrix_family("sl", 4).dim == 15


def test_explicit_constants_jacobi_failure():
    # [b0,[b1,b2]] + cyclic = 2*b2 here, so Jacobi fails
    entries = [(0, 1, 2, rat(1)), (0, 2, 0, rat(1)), (1, 2, 1, rat(1))]
    with pytest.raises(AlgebraError) as err:
        from_structure_constants(3, entries)
    assert "Jacobi" in str(err.value)


def test_explicit_constants_valid():
    # sl2 by hand: e=b0, f=b1, h=b2
    entries = [(0, 1, 2, rat(1)), (2, 0, 0, rat(2)), (2, 1, 1, rat(-2))]
    alg = from_structure_constants(3, entries, labels=["e", "f", "h"])
    assert alg.dim == 3
    rep = analyze_structure(alg)
    assert rep.semisimple and rep.ideals[0].type_label == "A1"


def test_chevalley_involution_on_sl2(sl2):
    sig = automorphism_from_recipe(sl2, ("chevalley_involution",))
    assert sig.order() == 2
    e, f, h = sl2.generators[0]
    assert sig.apply(e) == vec_scale(rat(-1), f)
    assert sig.apply(h) == vec_scale(rat(-1), h)
    fixed = fixed_subalgebra(sl2, [sig])
    assert fixed.dim == 1
    assert fixed.contains(vec_sub(e, f))


def test_diagram_swap_on_sl3(sl3):
    sw = automorphism_from_recipe(sl3, ("diagram", {0: 1, 1: 0}))
    assert sw.order() == 2


def test_diagram_invalid_permutation(sl3):
    b3 = cartan_type("B", 3)
    with pytest.raises(ConfigError):
        automorphism_from_recipe(b3, ("diagram", {0: 2, 2: 0}))


def test_non_automorphism_matrix_rejected(sl2):
    rows = [[rat(1), rat(0), rat(0)],
            [rat(0), rat(1), rat(0)],
            [rat(0), rat(1), rat(1)]]
    with pytest.raises(AlgebraError) as err:
        automorphism_from_recipe(sl2, ("matrix", rows))
    assert "bracket" in str(err.value)


def test_triality_on_so8(so8):
    outer = _outer_nodes(so8.cartan_matrix)
    rho = automorphism_from_recipe(
        so8, ("diagram", {outer[0]: outer[1], outer[1]: outer[2],
                          outer[2]: outer[0]}))
    assert rho.order() == 3
    sw = automorphism_from_recipe(
        so8, ("diagram", {outer[0]: outer[1], outer[1]: outer[0]}))
    fixed = fixed_subalgebra(so8, [rho, sw])
    assert fixed.dim == 14
    rep = analyze_subspace(so8, fixed)
    assert rep.semisimple
    assert [i.type_label for i in rep.ideals] == ["G2"]


def test_fixed_of_identity_is_everything(sl2):
    assert fixed_subalgebra(sl2, [identity_automorphism(sl2)]).dim == 3


def test_onsager_fixed_dims_equal_positive_roots():
    # number of positive roots per type; spot checks (full table in acceptance)
    for letter, rank, pos_roots in [("A", 2, 3), ("B", 2, 4), ("G", 2, 6)]:
        alg = cartan_type(letter, rank)
        sig = automorphism_from_recipe(alg, ("chevalley_involution",))
        assert fixed_subalgebra(alg, [sig]).dim == pos_roots


def test_analyze_sl2(sl2):
    rep = analyze_structure(sl2)
    assert rep.dim == 3 and rep.center_dim == 0 and rep.derived_dim == 3
    assert rep.semisimple and rep.type_label == "A1"


def test_analyze_fixed_c2_is_gl2_like():
    c2 = cartan_type("C", 2)
    sig = automorphism_from_recipe(c2, ("chevalley_involution",))
    rep = analyze_subspace(c2, fixed_subalgebra(c2, [sig]))
    assert rep.center_dim == 1 and rep.reductive
    assert [i.type_label for i in rep.derived_ideals] == ["A1"]


def test_centroid_dims():
    sl2 = cartan_type("A", 1)
    assert len(centroid_basis(sl2)) == 1
    both = direct_sum(sl2, cartan_type("A", 1))
    assert len(centroid_basis(both)) == 2
    rep = analyze_structure(both)
    assert [i.dim for i in rep.ideals] == [3, 3]


def test_xi_grading_sl2_chevalley(sl2):
    sig = automorphism_from_recipe(sl2, ("chevalley_involution",))
    pieces = xi_grading(sl2, [(sig, 2)])
    dims = sorted(p.dim for _, p in pieces)
    assert dims == [1, 2]
    by_tag = {t: p for t, p in pieces}
    assert by_tag[(0,)].dim == 1


def test_xi_grading_sl3_diagram(sl3):
    sw = automorphism_from_recipe(sl3, ("diagram", {0: 1, 1: 0}))
    pieces = xi_grading(sl3, [(sw, 2)])
    by_tag = {t: p.dim for t, p in pieces}
    # eigenspace computation: fixed part is a 3-dimensional orthogonal-type
    # subalgebra, the odd part is the 5-dimensional complement
    assert by_tag == {(0,): 3, (1,): 5}
    fixed_piece = [p for t, p in pieces if t == (0,)][0]
    rep = analyze_subspace(sl3, fixed_piece)
    assert rep.semisimple and rep.type_label == "A1"


def test_xi_grading_trivial_group(sl2):
    pieces = xi_grading(sl2, [])
    assert len(pieces) == 1 and pieces[0][1].dim == 3


def test_xi_grading_needs_roots_of_unity(sl3):
    # order-3 symmetry cannot be diagonalized over Q
    rho = automorphism_from_recipe(cartan_type("D", 4), ("diagram", {
        0: 2, 2: 3, 3: 0}))
    with pytest.raises(ConfigError):
        xi_grading(cartan_type("D", 4), [(rho, 3)])


def test_subalgebra_closure_check(sl2):
    from emapalg.exactmath import Subspace
    e, f, h = sl2.generators[0]
    not_closed = Subspace.from_vectors([e, f], 3, 1)
    with pytest.raises(AlgebraError):
        subalgebra(sl2, not_closed)


def test_direct_sum_bracket(sl2):
    both = direct_sum(sl2, sl2)
    e, f, h = sl2.generators[0]
    z = tuple(rat(0) for _ in range(3))
    left = tuple(e) + z
    right = z + tuple(f)
    assert vec_is_zero(both.bracket_vec(left, right))
