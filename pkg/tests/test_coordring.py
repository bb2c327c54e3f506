import random

import pytest

from emapalg.errors import AlgebraError, ConfigError, DomainError
from emapalg.exactmath import Scalar, parse_scalar
from emapalg.coordring import (
    PointMap, RingElement, Scheme, reynolds_basis, reynolds_project,
    saturate_degrees,
)


def sc(text, n=1):
    return parse_scalar(text, n)


def one_map(sch):
    return PointMap.identity(sch)


def inversion(sch):
    return PointMap(sch, "monomial", exponents=[[-1]],
                    scalars=[Scalar.from_rational(1)])


def test_torus_window_dims():
    sch = Scheme.torus(1)
    dims = [len(sch.monomials_of_degree((d,))) for d in range(-2, 3)]
    assert dims == [1, 1, 1, 1, 1]


def test_graded_quotient_degree_six():
    cub = Scheme.graded_quotient("y^2 - x^3", {"x": 2, "y": 3},
                                 var_order=["x", "y"])
    assert cub.monomials_of_degree((6,)) == [(3, 0)]
    assert cub.monomials_of_degree((5,)) == [(1, 1)]
    assert cub.monomials_of_degree((1,)) == []


def test_inhomogeneous_relation_rejected():
    with pytest.raises(ConfigError):
        Scheme.graded_quotient("y^2 - x^3", {"x": 1, "y": 1},
                               var_order=["x", "y"])


def test_p1_monomial_index_count():
    sch = Scheme.p1_minus(["0", "1", "inf"])
    count = sum(1 for a in (-1, 0, 1) for b in (-1, 0, 1))
    assert count == 9
    assert sch.var_names == ("t", "(t-1)")
    with pytest.raises(AlgebraError):
        sch.monomials_of_degree((0,))


def test_ring_action_degree_maps():
    sch = Scheme.torus(1)
    sub = inversion(sch).substitution()
    assert sub.degree_image((3,)) == (-3,)
    cub = Scheme.graded_quotient("y^2 - x^3", {"x": 2, "y": 3},
                                 var_order=["x", "y"])
    flip = PointMap(cub, "monomial", exponents=[[1, 0], [0, 1]],
                    scalars=[sc("1"), sc("-1")])
    assert flip.substitution().degree_image((5,)) == (5,)


def test_nodal_cubic_sign_action_fixes_pieces():
    cub = Scheme.graded_quotient("y^2 - x^3", {"x": 2, "y": 3},
                                 var_order=["x", "y"])
    flip = PointMap(cub, "monomial", exponents=[[1, 0], [0, 1]],
                    scalars=[sc("1"), sc("-1")])
    sub = flip.substitution()
    img = sub.apply_monomial((1, 1))  # x*y -> -x*y
    assert img.terms == {(1, 1): sc("-1")}


def test_relation_not_preserved_rejected():
    cub = Scheme.graded_quotient("y^2 - x^3", {"x": 2, "y": 3},
                                 var_order=["x", "y"])
    with pytest.raises(ConfigError):
        PointMap(cub, "monomial", exponents=[[1, 0], [0, 1]],
                 scalars=[sc("-1"), sc("1")])  # x -> -x breaks y^2 = x^3


def test_multiloop_generator_fixes_degrees():
    sch = Scheme.torus(1, conductor=4)
    zeta = Scalar.zeta(4)
    rot = PointMap(sch, "monomial", exponents=[[1]], scalars=[zeta])
    sub = rot.inverse().substitution()
    img = sub.apply_monomial((3,))
    assert list(img.terms) == [(3,)]
    assert img.terms[(3,)] == zeta ** -3


def test_invariant_pieces_onsager():
    sch = Scheme.torus(1)
    subs = [one_map(sch).substitution(), inversion(sch).substitution()]
    degs = saturate_degrees(sch, subs, [(d,) for d in range(-2, 3)])
    plus, _ = reynolds_basis(sch, subs, degs)
    assert sorted(e.text() for e in plus) == [
        "(1)", "(1)*t1^-1 + (1)*t1^1", "(1)*t1^-2 + (1)*t1^2"]
    minus, _ = reynolds_basis(sch, subs, degs,
                              characters=[sc("1"), sc("-1")])
    assert sorted(e.text() for e in minus) == [
        "(1)*t1^-1 + (-1)*t1^1", "(1)*t1^-2 + (-1)*t1^2"]


def test_invariant_piece_trivial_group():
    sch = Scheme.torus(1)
    subs = [one_map(sch).substitution()]
    basis, _ = reynolds_basis(sch, subs, [(d,) for d in range(-1, 2)])
    assert len(basis) == 3


def test_reynolds_idempotent():
    sch = Scheme.torus(1)
    subs = [one_map(sch).substitution(), inversion(sch).substitution()]
    rng = random.Random(4)
    for _ in range(10):
        terms = {(rng.randint(-3, 3),): sc(str(rng.randint(-5, 5)))
                 for _ in range(3)}
        f = RingElement(sch, terms)
        once = reynolds_project(sch, subs, f)
        twice = reynolds_project(sch, subs, once)
        assert (once - twice).is_zero()


def test_abelian_character_dims_fill_window():
    sch = Scheme.torus(1)
    subs = [one_map(sch).substitution(), inversion(sch).substitution()]
    degs = saturate_degrees(sch, subs, [(d,) for d in range(-3, 4)])
    total = sum(len(sch.monomials_of_degree(d)) for d in degs)
    plus, _ = reynolds_basis(sch, subs, degs)
    minus, _ = reynolds_basis(sch, subs, degs, characters=[sc("1"), sc("-1")])
    assert len(plus) + len(minus) == total


def test_moebius_excluded_from_windows():
    sch = Scheme.p1_minus(["0", "1", "inf"])
    z, o = sc("0"), sc("1")
    m = PointMap(sch, "moebius", matrix=((z, o), (o, z)))
    with pytest.raises(AlgebraError):
        saturate_degrees(sch, [m.substitution()], [(0,)])


def test_evaluate_examples():
    sch = Scheme.torus(1)
    t2 = RingElement.monomial(sch, (2,))
    assert t2.evaluate((sc("3"),)) == sc("9")
    f = RingElement(sch, {(1,): sc("1"), (-1,): sc("1")})
    assert f.evaluate((sc("2"),)) == sc("5/2")
    cub = Scheme.graded_quotient("y^2 - x^3", {"x": 2, "y": 3},
                                 var_order=["x", "y"])
    y = RingElement.monomial(cub, (0, 1))
    assert y.evaluate((sc("1"), sc("-1"))) == sc("-1")


def test_evaluate_domain_errors():
    sch = Scheme.torus(1)
    tinv = RingElement.monomial(sch, (-1,))
    with pytest.raises(DomainError):
        tinv.evaluate((sc("0"),))
    cub = Scheme.graded_quotient("y^2 - x^3", {"x": 2, "y": 3},
                                 var_order=["x", "y"])
    with pytest.raises(DomainError):
        RingElement.monomial(cub, (1, 0)).evaluate((sc("1"), sc("2")))
    p1 = Scheme.p1_minus(["0", "1", "inf"])
    with pytest.raises(DomainError):
        RingElement.monomial(p1, (1, 0)).evaluate((sc("1"),))


def test_evaluate_is_multiplicative():
    sch = Scheme.torus(2)
    rng = random.Random(9)
    pt = (sc("2"), sc("-3"))
    for _ in range(10):
        f = RingElement(sch, {(rng.randint(-2, 2), rng.randint(-2, 2)):
                              sc(str(rng.randint(-4, 4))) for _ in range(2)})
        g = RingElement(sch, {(rng.randint(-2, 2), rng.randint(-2, 2)):
                              sc(str(rng.randint(-4, 4))) for _ in range(2)})
        assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)


def test_quotient_multiplication_reduces():
    cub = Scheme.graded_quotient("y^2 - x^3", {"x": 2, "y": 3},
                                 var_order=["x", "y"])
    y = RingElement.monomial(cub, (0, 1))
    y2 = y * y
    assert y2.terms == {(3, 0): sc("1")}
