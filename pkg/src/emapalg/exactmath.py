"""Exact scalars in the cyclotomic field Q(zeta_N) and exact linear algebra.

A Scalar is the reduced residue of a rational polynomial in zeta_N modulo the
N-th cyclotomic polynomial, so equality of values is equality of coefficient
tuples.  N = 1 gives plain rationals.  All arithmetic is exact; nothing here
ever rounds.

Linear algebra is plain Gauss elimination over the field with a canonical
reduced-row-echelon normal form, which makes subspace equality a tuple
comparison.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import ConductorError, AlgebraError

# ---------------------------------------------------------------------------
# cyclotomic polynomials


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    assert n >= 1
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num, den):
    # num, den: dense int coefficient lists (low to high), den monic
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while num and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int):
    """Integer coefficients of Phi_n, low degree first, monic."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod_int(num, list(cyclotomic_poly(d)))
            assert not rem
    return tuple(num)


# ---------------------------------------------------------------------------
# Scalar

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Scalar:
    """An element of Q(zeta_N), stored as the reduced residue mod Phi_N."""

    __slots__ = ("n", "c", "_hash")

    def __init__(self, n: int, coeffs):
        self.n = n
        self.c = tuple(coeffs)
        self._hash = None
        if len(self.c) != euler_phi(n):
            raise ConductorError("coefficient tuple has wrong length for conductor",
                                 conductor=n, length=len(self.c))

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rational(x, n: int = 1) -> "Scalar":
        f = Fraction(x)
        phi = euler_phi(n)
        return Scalar(n, (f,) + (_ZERO,) * (phi - 1))

    @staticmethod
    def zeta(n: int) -> "Scalar":
        """Primitive n-th root of unity in its own conductor."""
        phi = euler_phi(n)
        if phi == 1:
            # n = 1 -> 1,  n = 2 -> -1
            return Scalar(n, (Fraction(1 if n == 1 else -1),))
        coeffs = [_ZERO] * phi
        coeffs[1] = _ONE
        return Scalar(n, coeffs)

    # -- bookkeeping ---------------------------------------------------------

    def _check(self, other: "Scalar"):
        if self.n != other.n:
            raise ConductorError(
                "scalars of different conductors; lift explicitly first",
                left=self.n, right=other.n)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.c[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ConductorError("scalar is not rational", value=self.text())
        return self.c[0]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        self._check(other)
        return Scalar(self.n, tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        self._check(other)
        return Scalar(self.n, tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self):
        return Scalar(self.n, tuple(-a for a in self.c))

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        self._check(other)
        phi = len(self.c)
        if phi == 1:
            return Scalar(self.n, (self.c[0] * other.c[0],))
        prod = [_ZERO] * (2 * phi - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        prod[i + j] += a * b
        return Scalar(self.n, _reduce_mod_phi(prod, self.n))

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise AlgebraError("division by zero scalar")
        if len(self.c) == 1:
            return Scalar(self.n, (1 / self.c[0],))
        phi = [Fraction(x) for x in cyclotomic_poly(self.n)]
        g, s = _poly_half_xgcd(list(self.c), phi)
        # g is a nonzero constant since Phi_n is irreducible over Q
        inv = [x / g[0] for x in s]
        inv += [_ZERO] * (len(self.c) - len(inv))
        return Scalar(self.n, _reduce_mod_phi(inv, self.n))

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Scalar.from_rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Scalar) and self.n == other.n and self.c == other.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.c))
        return self._hash

    # -- text form -----------------------------------------------------------

    def text(self) -> str:
        """Canonical text form: "p/q" for rationals, "cyc(N)[c0,...]" otherwise."""
        if self.is_rational():
            return _frac_text(self.c[0])
        return "cyc(%d)[%s]" % (self.n, ",".join(_frac_text(x) for x in self.c))

    def __repr__(self):
        return "Scalar(%s)" % self.text()

    def sort_key(self):
        """Deterministic total order key (field-structure blind, stable)."""
        return (0 if self.is_rational() else 1, self.c[0], self.c[1:])


def _frac_text(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


def _reduce_mod_phi(coeffs, n: int):
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i]
        if c:
            for j in range(deg + 1):
                coeffs[i - deg + j] -= c * phi[j]
        coeffs.pop()
    while len(coeffs) < deg:
        coeffs.append(_ZERO)
    return tuple(coeffs[:deg])


def _poly_half_xgcd(a, b):
    """Return (g, s) with s*a = g mod b, g = gcd(a, b); Fraction coefficients."""
    r0, r1 = list(a), list(b)
    s0, s1 = [_ONE], [_ZERO]

    def strip(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    r0, r1 = strip(r0), strip(r1)
    while r1:
        q, r = _poly_divmod_frac(r0, r1)
        r0, r1 = r1, strip(r)
        qs = _poly_mul_frac(q, s1)
        s0, s1 = s1, strip([x - y for x, y in _zip_pad(s0, qs)])
    return r0, s0


def _zip_pad(a, b):
    m = max(len(a), len(b))
    a = a + [_ZERO] * (m - len(a))
    b = b + [_ZERO] * (m - len(b))
    return zip(a, b)


def _poly_mul_frac(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_frac(num, den):
    num = list(num)
    lead = den[-1]
    qlen = len(num) - len(den) + 1
    if qlen <= 0:
        return [], num
    q = [_ZERO] * qlen
    for i in range(qlen - 1, -1, -1):
        c = num[i + len(den) - 1] / lead
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return q, num[:len(den) - 1]


# ---------------------------------------------------------------------------
# scalar utilities


def lift(s: Scalar, n: int) -> Scalar:
    """Embed a Scalar of conductor m into Q(zeta_n); requires m | n."""
    if s.n == n:
        return s
    if n % s.n != 0:
        raise ConductorError("cannot lift: source conductor does not divide target",
                             source=s.n, target=n)
    step = n // s.n
    z = Scalar.zeta(n) ** step
    result = Scalar.from_rational(0, n)
    zpow = Scalar.from_rational(1, n)
    for a in s.c:
        if a:
            result = result + Scalar.from_rational(a, n) * zpow
        zpow = zpow * z
    return result


def parse_scalar(text: str, conductor: int) -> Scalar:
    """Parse "p/q" or "cyc(M)[...]" and lift into the session conductor."""
    text = text.strip()
    if text.startswith("cyc("):
        close = text.index(")")
        m = int(text[4:close])
        body = text[close + 1:].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ConductorError("malformed cyclotomic literal", literal=text)
        parts = [p.strip() for p in body[1:-1].split(",")] if body != "[]" else []
        coeffs = [Fraction(p) for p in parts]
        phi = euler_phi(m)
        if len(coeffs) != phi:
            raise ConductorError("cyclotomic literal has wrong coefficient count",
                                 literal=text, expected=phi)
        return lift(Scalar(m, coeffs), conductor)
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConductorError("malformed scalar literal", literal=text) from exc
    return Scalar.from_rational(f, conductor)


def sqrt_in_field(value: Scalar):
    """Exact square root of a *rational* scalar inside Q(zeta_N), or None.

    Built from Gauss sums: for an odd prime p | N the sum of Legendre-twisted
    p-th roots of unity squares to (-1)^((p-1)/2) p; zeta_8 combinations give
    sqrt(2); zeta_4 gives sqrt(-1).  Non-rational inputs are out of scope and
    return None.
    """
    n = value.n
    if not value.is_rational():
        return None
    q = value.as_fraction()
    if q == 0:
        return Scalar.from_rational(0, n)
    # sqrt(a/b) = sqrt(a*b)/b
    d = q.numerator * q.denominator
    sign = 1 if d > 0 else -1
    d = abs(d)
    square = 1
    squarefree = 1
    p = 2
    while p * p <= d:
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        square *= p ** (e // 2)
        if e % 2:
            squarefree *= p
        p += 1
    squarefree *= d
    root = Scalar.from_rational(1, n)
    acc_sq = 1  # current root squares to acc_sq
    m = squarefree
    if m % 2 == 0:
        if n % 8 != 0:
            return None
        z8 = Scalar.zeta(n) ** (n // 8)
        root = root * (z8 + z8.inverse())  # squares to 2
        acc_sq *= 2
        m //= 2
    pp = 3
    while pp * pp <= m:
        if m % pp == 0:
            g = _gauss_sum(pp, n)
            if g is None:
                return None
            root = root * g
            acc_sq *= -pp if pp % 4 == 3 else pp
            m //= pp
        pp += 2
    if m > 1:
        g = _gauss_sum(m, n)
        if g is None:
            return None
        root = root * g
        acc_sq *= -m if m % 4 == 3 else m
    target = sign * squarefree
    ratio = Fraction(target, acc_sq)
    if ratio == 1:
        pass
    elif ratio == -1:
        if n % 4 != 0:
            return None
        root = root * (Scalar.zeta(n) ** (n // 4))
    else:  # pragma: no cover - ratio is always +-1 by construction
        return None
    result = root * Scalar.from_rational(Fraction(square, q.denominator), n)
    if not (result * result == value):
        raise AlgebraError("internal square root construction failed",
                           value=value.text())
    return result


def _gauss_sum(p: int, n: int):
    if n % p != 0:
        return None
    zp = Scalar.zeta(n) ** (n // p)
    total = Scalar.from_rational(0, n)
    for a in range(1, p):
        ls = pow(a, (p - 1) // 2, p)
        sign = 1 if ls == 1 else -1
        total = total + Scalar.from_rational(sign, n) * zp ** a
    return total


def solve_quadratic(a: Scalar, b: Scalar, c: Scalar):
    """Roots of a x^2 + b x + c in Q(zeta_N).

    Returns (roots, in_field): when the discriminant has no square root in the
    field, roots is empty and in_field is False.  a = 0 degrades to linear.
    """
    n = a.n
    zero = Scalar.from_rational(0, n)
    if a.is_zero():
        if b.is_zero():
            return ([], True) if not c.is_zero() else ([zero], True)
        return ([(zero - c) / b], True)
    disc = b * b - Scalar.from_rational(4, n) * a * c
    if disc.is_zero():
        half = (zero - b) / (Scalar.from_rational(2, n) * a)
        return [half], True
    root = sqrt_in_field(disc)
    if root is None:
        return [], False
    two_a = Scalar.from_rational(2, n) * a
    return [((zero - b) + root) / two_a, ((zero - b) - root) / two_a], True


# ---------------------------------------------------------------------------
# vectors and matrices (lists/tuples of Scalars)


def zero(n: int) -> Scalar:
    return Scalar.from_rational(0, n)


def one(n: int) -> Scalar:
    return Scalar.from_rational(1, n)


def zero_vector(length: int, n: int):
    z = zero(n)
    return tuple(z for _ in range(length))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Scalar, u):
    return tuple(c * a for a in u)


def vec_is_zero(u) -> bool:
    return all(a.is_zero() for a in u)


def mat_mul(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = []
    for i in range(rows):
        arow = a[i]
        acc = None
        for k in range(inner):
            x = arow[k]
            if x.is_zero():
                continue
            term = tuple(x * y for y in b[k])
            acc = term if acc is None else vec_add(acc, term)
        if acc is None:
            acc = zero_vector(cols, a[0][0].n if rows and a[0] else 1)
        out.append(acc)
    return tuple(out)


def mat_vec(a, v):
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            if x.is_zero() or y.is_zero():
                continue
            t = x * y
            acc = t if acc is None else acc + t
        out.append(acc if acc is not None else zero(v[0].n))
    return tuple(out)


def identity_matrix(size: int, n: int):
    z, o = zero(n), one(n)
    return tuple(tuple(o if i == j else z for j in range(size)) for i in range(size))


def rref(rows, ncols=None):
    """Reduced row echelon form.  Returns (rows, pivot_columns).

    Input rows are sequences of Scalars; zero rows are dropped; pivots are
    normalized to 1 and cleared above and below.
    """
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = ncols if ncols is not None else len(work[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if not work[i][col].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][col].inverse()
        work[r] = [inv * x for x in work[r]]
        for i in range(len(work)):
            if i != r and not work[i][col].is_zero():
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return [tuple(row) for row in work[:r]], pivots


def reduce_against(vector, rref_rows, pivots):
    """Reduce a vector by RREF rows; returns the residual."""
    v = list(vector)
    for row, p in zip(rref_rows, pivots):
        c = v[p]
        if not c.is_zero():
            v = [a - c * b for a, b in zip(v, row)]
    return tuple(v)


def kernel_basis_rows(rows, ncols, conductor):
    """Canonical basis of the null space of the matrix with the given rows."""
    rr, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    z, o = zero(conductor), one(conductor)
    basis = []
    for fc in free_cols:
        vec = [z] * ncols
        vec[fc] = o
        for row, p in zip(rr, pivots):
            vec[p] = -row[fc]
        basis.append(tuple(vec))
    rr2, _ = rref(basis, ncols)
    return rr2


class Subspace:
    """A subspace of k^n in canonical reduced-row-echelon form."""

    __slots__ = ("ambient", "conductor", "rows", "pivots")

    def __init__(self, ambient: int, conductor: int, rows, pivots=None):
        self.ambient = ambient
        self.conductor = conductor
        if pivots is None:
            rows, pivots = rref(rows, ambient)
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)

    @staticmethod
    def from_vectors(vectors, ambient: int, conductor: int) -> "Subspace":
        return Subspace(ambient, conductor, list(vectors))

    @staticmethod
    def full(ambient: int, conductor: int) -> "Subspace":
        return Subspace(ambient, conductor, identity_matrix(ambient, conductor),
                        list(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise AlgebraError("ambient dimension mismatch",
                               left=self.ambient, right=other.ambient)

    def contains(self, vector) -> bool:
        return vec_is_zero(reduce_against(vector, self.rows, self.pivots))

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(r) for r in other.rows)

    def coords(self, vector):
        """Coordinates of a member vector in the canonical row basis."""
        residual = list(vector)
        out = []
        for row, p in zip(self.rows, self.pivots):
            c = residual[p]
            out.append(c)
            if not c.is_zero():
                residual = [a - c * b for a, b in zip(residual, row)]
        if not vec_is_zero(residual):
            raise AlgebraError("vector not in subspace")
        return tuple(out)

    def add(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient, self.conductor,
                        list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus block elimination."""
        self._check(other)
        n = self.ambient
        z = zero(self.conductor)
        block = []
        for r in self.rows:
            block.append(list(r) + list(r))
        for r in other.rows:
            block.append(list(r) + [z] * n)
        reduced, pivots = rref(block, 2 * n)
        inter = []
        for row, p in zip(reduced, pivots):
            if p >= n:
                inter.append(row[n:])
        return Subspace(n, self.conductor, inter)

    def complement_in(self, bigger: "Subspace") -> "Subspace":
        """Canonical complement of self inside bigger (self must be contained)."""
        extra = []
        for r in bigger.rows:
            residual = reduce_against(r, self.rows, self.pivots)
            if not vec_is_zero(residual):
                extra.append(residual)
        return Subspace(self.ambient, self.conductor, extra)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient, self.rows))

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d)" % (self.dim, self.ambient)


def kernel_subspace(rows, ncols, conductor) -> Subspace:
    return Subspace(ncols, conductor, kernel_basis_rows(rows, ncols, conductor))


def matrix_rank(rows, ncols=None) -> int:
    return len(rref(rows, ncols)[0])


def basis_solver(vectors, ambient, conductor):
    """Coordinate function over a given independent list of vectors (not the
    canonical RREF basis).  Raises when a queried vector leaves the span."""
    vectors = list(vectors)
    k = len(vectors)
    eye = identity_matrix(k, conductor)
    rows = [list(v) + list(eye[i]) for i, v in enumerate(vectors)]
    red, piv = rref(rows, ambient + k)
    if len(red) != k or (piv and piv[-1] >= ambient):
        raise AlgebraError("vectors are linearly dependent")

    def coords(v):
        vec = list(v) + [zero(conductor)] * k
        res = reduce_against(vec, red, piv)
        if not vec_is_zero(res[:ambient]):
            raise AlgebraError("vector not in span")
        return tuple(-x for x in res[ambient:])
    return coords


class SparseEchelon:
    """Incremental forward echelon over sparse rows keyed by integer column
    ranks.  Rows are reduced against existing pivots on insertion; the pivot
    of a stored row is its smallest column rank, so with columns ranked in
    descending filtration order, the number of pivots inside a filtration
    tail equals the dimension of the span intersected with that tail."""

    def __init__(self):
        self.rows = {}   # pivot rank -> {rank: Scalar} with leading 1

    def reduce(self, row):
        row = {k: v for k, v in row.items() if not v.is_zero()}
        while row:
            lead = min(row)
            piv = self.rows.get(lead)
            if piv is None:
                return lead, row
            c = row[lead]
            for k, v in piv.items():
                cur = row.get(k)
                nxt = (cur - c * v) if cur is not None else -(c * v)
                if nxt.is_zero():
                    row.pop(k, None)
                else:
                    row[k] = nxt
        return None, {}

    def insert(self, row):
        """Insert a sparse row; returns the new pivot rank or None."""
        lead, reduced = self.reduce(row)
        if lead is None:
            return None
        inv = reduced[lead].inverse()
        self.rows[lead] = {k: inv * v for k, v in reduced.items()}
        return lead

    @property
    def rank(self):
        return len(self.rows)

    def pivot_ranks(self):
        return sorted(self.rows)

    def contains(self, row):
        lead, _ = self.reduce(dict(row))
        return lead is None
