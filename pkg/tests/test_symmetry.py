import pytest

from emapalg.errors import AlgebraError, ConfigError, DomainError
from emapalg.exactmath import Scalar, parse_scalar
from emapalg.coordring import Scheme, PointMap
from emapalg.liealg import automorphism_from_recipe, cartan_type, _outer_nodes
from emapalg.symmetry import FiniteGroup, GroupActionBundle


def sc(text, n=1):
    return parse_scalar(text, n)


def test_build_group_orders():
    assert FiniteGroup.from_presentation(["s"], ["ss"]).order == 2
    z23 = FiniteGroup.from_presentation(["a", "b"], ["aa", "bbb", "ababb"])
    assert z23.order == 6 and z23.is_cyclic()
    s3 = FiniteGroup.from_presentation(["s", "r"], ["ss", "rrr", "srsr"])
    assert s3.order == 6 and not s3.is_abelian()


def test_build_group_from_permutations():
    s3 = FiniteGroup.from_permutations(["s", "r"], [[1, 0, 2], [1, 2, 0]])
    assert s3.order == 6 and not s3.is_abelian()


def test_presentation_bound():
    with pytest.raises(ConfigError):
        FiniteGroup.from_presentation(["a", "b"], ["aaa"], bound=40)


def test_group_axioms_and_words():
    s3 = FiniteGroup.from_presentation(["s", "r"], ["ss", "rrr", "srsr"])
    for a in range(6):
        assert s3.mult[a][s3.inverse[a]] == 0
    assert s3.word_of(0) == "1"


@pytest.fixture(scope="module")
def onsager_bundle():
    sl2 = cartan_type("A", 1)
    sch = Scheme.torus(1)
    grp = FiniteGroup.from_presentation(["s"], ["ss"])
    sig = automorphism_from_recipe(sl2, ("chevalley_involution",))
    pm = PointMap(sch, "monomial", exponents=[[-1]],
                  scalars=[Scalar.from_rational(1)])
    return GroupActionBundle(grp, sl2, sch, [sig], [pm])


@pytest.fixture(scope="module")
def s3_bundle():
    """S3 acting on so8 by diagram automorphisms and on P1 minus {0,1,inf}
    by the Moebius maps realizing the permutations of {0,1,inf}."""
    so8 = cartan_type("D", 4, conductor=6)
    sch = Scheme.p1_minus(["0", "1", "inf"], conductor=6)
    grp = FiniteGroup.from_presentation(["s", "r"], ["ss", "rrr", "srsr"])
    outer = _outer_nodes(so8.cartan_matrix)
    lie_s = automorphism_from_recipe(
        so8, ("diagram", {outer[0]: outer[1], outer[1]: outer[0]}))
    lie_r = automorphism_from_recipe(
        so8, ("diagram", {outer[0]: outer[1], outer[1]: outer[2],
                          outer[2]: outer[0]}))
    z, o = sc("0", 6), sc("1", 6)
    pm_s = PointMap(sch, "moebius", matrix=((z, o), (o, z)))      # 1/z: (0 inf)
    pm_r = PointMap(sch, "moebius", matrix=((z, o), (-o, o)))     # 1/(1-z)
    return GroupActionBundle(grp, so8, sch, [lie_s, lie_r], [pm_s, pm_r])


def test_act_on_point_onsager(onsager_bundle):
    two = (sc("2"),)
    img = onsager_bundle.act_point(1, two)
    assert img[0].text() == "1/2"
    assert onsager_bundle.act_point(0, two) == two


def test_act_on_point_multiplicative(onsager_bundle):
    x = (sc("3"),)
    g = onsager_bundle.group
    for a in range(g.order):
        for b in range(g.order):
            lhs = onsager_bundle.act_point(g.multiply(a, b), x)
            rhs = onsager_bundle.act_point(a, onsager_bundle.act_point(b, x))
            assert lhs[0] == rhs[0]


def test_domain_violation(onsager_bundle):
    with pytest.raises(DomainError):
        onsager_bundle.act_point(1, (sc("0"),))


def test_stabilizers_onsager(onsager_bundle):
    assert onsager_bundle.stabilizer((sc("1"),)) == (0, 1)
    assert onsager_bundle.stabilizer((sc("2"),)) == (0,)


def test_orbits_onsager(onsager_bundle):
    orb = onsager_bundle.orbit((sc("2"),))
    assert sorted(p[0].text() for p in orb) == ["1/2", "2"]
    assert onsager_bundle.orbit((sc("1"),)) == [(sc("1"),)]


def test_orbit_stabilizer_identity(onsager_bundle):
    for t in ("1", "-1", "2", "5", "1/3"):
        x = (sc(t),)
        orb = onsager_bundle.orbit(x)
        stab = onsager_bundle.stabilizer(x)
        assert len(orb) * len(stab) == onsager_bundle.group.order


def test_conjugated_stabilizer_law(onsager_bundle):
    g = onsager_bundle.group
    for t in ("2", "1", "7"):
        x = (sc(t),)
        stab = set(onsager_bundle.stabilizer(x))
        for a in range(g.order):
            gx = onsager_bundle.act_point(a, x)
            expect = {g.conjugate(a, s) for s in stab}
            assert set(onsager_bundle.stabilizer(gx)) == expect


def test_s3_moebius_stabilizers(s3_bundle):
    # the three half-turn points of the permutation action on {0, 1, inf}
    for txt in ("-1", "2", "1/2"):
        stab = s3_bundle.stabilizer((sc(txt, 6),))
        assert len(stab) == 2
    z6 = Scalar.zeta(6)
    stab = s3_bundle.stabilizer((z6,))
    assert len(stab) == 3
    orders = sorted(s3_bundle.group.element_order(a) for a in stab)
    assert orders == [1, 3, 3]


def test_s3_moebius_orbits(s3_bundle):
    orb = s3_bundle.orbit((sc("-1", 6),))
    assert sorted(p[0].text() for p in orb) == ["-1", "1/2", "2"]
    z6 = Scalar.zeta(6)
    orb2 = s3_bundle.orbit((z6,))
    assert len(orb2) == 2
    texts = {p[0].text() for p in orb2}
    assert z6.text() in texts and (z6 ** 5).text() in texts


def test_s3_fixed_half_turn_point(s3_bundle):
    half = (sc("1/2", 6),)
    stab = s3_bundle.stabilizer(half)
    nontriv = [a for a in stab if a != 0][0]
    img = s3_bundle.act_point(nontriv, half)
    assert img[0] == half[0]


def test_ring_point_compatibility_checked():
    # GroupActionBundle verifies (g.f)(x) = f(g^{-1}.x) at construction;
    # rebuilding the Onsager bundle with sample points exercises it directly
    sl2 = cartan_type("A", 1)
    sch = Scheme.torus(1)
    grp = FiniteGroup.from_presentation(["s"], ["ss"])
    sig = automorphism_from_recipe(sl2, ("chevalley_involution",))
    pm = PointMap(sch, "monomial", exponents=[[-1]],
                  scalars=[Scalar.from_rational(1)])
    pts = [(sc(str(v)),) for v in (2, 3, 5, 7, -2, -3, 11, 13, -5, 17)]
    GroupActionBundle(grp, sl2, sch, [sig], [pm], sample_points=pts)


def test_relation_violation_detected():
    # declaring Z2 but giving an order-3 point map must fail
    sl3 = cartan_type("A", 2)
    sch = Scheme.p1_minus(["0", "1", "inf"])
    grp = FiniteGroup.from_presentation(["s"], ["ss"])
    sw = automorphism_from_recipe(sl3, ("diagram", {0: 1, 1: 0}))
    z, o = sc("0"), sc("1")
    bad = PointMap(sch, "moebius", matrix=((z, o), (-o, o)))
    with pytest.raises(AlgebraError):
        GroupActionBundle(grp, sl3, sch, [sw], [bad])
