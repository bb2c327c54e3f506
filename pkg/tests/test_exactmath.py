import random
from fractions import Fraction

import pytest

from emapalg.errors import AlgebraError, ConductorError
from emapalg.exactmath import (
    Scalar, Subspace, cyclotomic_poly, euler_phi, kernel_subspace, lift,
    matrix_rank, parse_scalar, rref, solve_quadratic, sqrt_in_field,
)


def rat(x, n=1):
    return Scalar.from_rational(Fraction(x), n)


def test_rational_field_ops():
    assert rat("1/2") + rat("1/3") == rat("5/6")
    assert rat("2/4") == rat("1/2")
    assert (rat(3) * rat("1/3")).is_rational()
    assert rat(5).inverse() == rat("1/5")


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert euler_phi(12) == 4


def test_zeta6_satisfies_phi6():
    z = Scalar.zeta(6)
    assert (z * z - z + rat(1, 6)).is_zero()
    assert z ** 6 == rat(1, 6)


def test_zeta4_inverse():
    z = Scalar.zeta(4)
    assert z.inverse() == -z
    assert z * (-z) == rat(1, 4)


def test_zeta_any_conductor_has_right_order():
    for n in (2, 3, 5, 8, 12):
        z = Scalar.zeta(n)
        assert z ** n == rat(1, n)
        for k in range(1, n):
            assert z ** k != rat(1, n)


def test_conductor_mixing_is_an_error():
    with pytest.raises(ConductorError):
        rat(1, 4) + rat(1, 6)
    lifted = lift(rat(1, 1), 6)
    assert lifted + rat(1, 6) == rat(2, 6)


def test_lift_compatible_powers():
    z3 = Scalar.zeta(3)
    z6 = Scalar.zeta(6)
    assert lift(z3, 6) == z6 * z6


def test_division_by_zero():
    with pytest.raises(AlgebraError):
        rat(0).inverse()


def test_text_round_trip():
    values = [rat("5/6"), rat(-3), Scalar.zeta(6), Scalar.zeta(8) + rat(1, 8),
              Scalar.zeta(12) ** 7 * rat("2/9", 12)]
    for v in values:
        assert parse_scalar(v.text(), v.n) == v


def test_text_round_trip_randomized():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.choice([1, 4, 6])
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                  for _ in range(euler_phi(n))]
        v = Scalar(n, coeffs)
        assert parse_scalar(v.text(), n) == v


def test_field_axioms_randomized():
    rng = random.Random(2)
    for _ in range(30):
        n = rng.choice([1, 6])
        def draw():
            return Scalar(n, [Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                              for _ in range(euler_phi(n))])
        a, b, c = draw(), draw(), draw()
        assert (a + b) * c == a * c + b * c
        assert a * (b * c) == (a * b) * c
        if not a.is_zero():
            assert a * a.inverse() == Scalar.from_rational(1, n)


def test_sqrt_in_field():
    assert sqrt_in_field(rat(4)) == rat(2)
    r = sqrt_in_field(rat(-3, 6))
    assert r is not None and r * r == rat(-3, 6)
    assert sqrt_in_field(rat(-1, 4)) == Scalar.zeta(4)
    assert sqrt_in_field(rat(2, 8)) is not None
    assert sqrt_in_field(rat(2, 1)) is None
    assert sqrt_in_field(rat(5, 6)) is None


def test_solve_quadratic_in_cyc6():
    # z^2 - z + 1 = 0 has the primitive 6th roots of unity as roots
    one6 = rat(1, 6)
    roots, ok = solve_quadratic(one6, -one6, one6)
    assert ok and set(roots) == {Scalar.zeta(6), Scalar.zeta(6) ** 5}
    roots, ok = solve_quadratic(rat(1), rat(-2), rat(0))
    assert ok and set(roots) == {rat(0), rat(2)}
    roots, ok = solve_quadratic(rat(1), rat(0), rat(-2))
    assert not ok and roots == []


# ---------------------------------------------------------------------------
# linear algebra


def M(rows, n=1):
    return [[rat(x, n) for x in row] for row in rows]


def test_kernel_examples():
    k = kernel_subspace(M([[1, 2], [2, 4]]), 2, 1)
    assert k.dim == 1
    # kernel is spanned by (-2, 1); canonical form scales the leading entry to 1
    v = k.rows[0]
    assert v[0] == rat(1) and v[1] == rat("-1/2")
    assert (v[0] + rat(2) * v[1]).is_zero()

    assert kernel_subspace(M([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 3, 1).dim == 0
    assert kernel_subspace(M([[0, 0, 0], [0, 0, 0]]), 3, 1).dim == 3


def test_subspace_ops():
    e1 = Subspace.from_vectors(M([[1, 0, 0]]), 3, 1)
    e2 = Subspace.from_vectors(M([[0, 1, 0]]), 3, 1)
    assert e1.add(e2).dim == 2
    u = Subspace.from_vectors(M([[1, 0, 0], [0, 1, 0]]), 3, 1)
    v = Subspace.from_vectors(M([[0, 1, 0], [0, 0, 1]]), 3, 1)
    w = u.intersect(v)
    assert w.dim == 1 and w.rows[0] == tuple(M([[0, 1, 0]])[0])
    assert u.intersect(u) == u


def test_subspace_ambient_mismatch():
    u = Subspace.from_vectors(M([[1, 0]]), 2, 1)
    v = Subspace.from_vectors(M([[1, 0, 0]]), 3, 1)
    with pytest.raises(AlgebraError):
        u.add(v)


def test_grassmann_identity_randomized():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(2, 5)
        def draw_space():
            k = rng.randint(0, n)
            vecs = [[rat(rng.randint(-3, 3)) for _ in range(n)] for _ in range(k)]
            return Subspace.from_vectors(vecs, n, 1)
        u, v = draw_space(), draw_space()
        assert u.dim + v.dim == u.add(v).dim + u.intersect(v).dim


def test_rank_pivot_strategy_independence():
    rng = random.Random(5)
    for _ in range(20):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = [[rat(rng.randint(-4, 4)) for _ in range(cols)] for _ in range(rows)]
        r1 = matrix_rank(m, cols)
        # second elimination order: reversed columns and shuffled rows
        m2 = [list(reversed(row)) for row in m]
        rng.shuffle(m2)
        r2 = matrix_rank(m2, cols)
        assert r1 == r2


def test_rref_is_canonical_under_row_shuffle():
    rng = random.Random(3)
    rows = M([[2, 4, 1], [0, 3, 5], [2, 7, 6]])
    base, _ = rref(rows, 3)
    for _ in range(5):
        shuffled = rows[:]
        rng.shuffle(shuffled)
        again, _ = rref(shuffled, 3)
        assert again == base


def test_coords_and_membership():
    s = Subspace.from_vectors(M([[1, 2, 0], [0, 0, 1]]), 3, 1)
    vec = tuple(M([[2, 4, 5]])[0])
    assert s.contains(vec)
    c = s.coords(vec)
    assert c == (rat(2), rat(5))
    assert not s.contains(tuple(M([[1, 0, 0]])[0]))
