"""Finite-dimensional Lie algebras over Q(zeta_N) by structure constants.

Construction paths:
  * explicit structure constants,
  * matrix families sl_n / so_n / sp_n (split antidiagonal forms, so the
    diagonal matrices in the algebra form a split Cartan subalgebra),
  * Cartan types A, B, C, D via the matrix families and G2 by folding the
    triality automorphism of so_8.

Chevalley generator triples (e_i, f_i, h_i) are derived computationally: the
algebra is decomposed into root spaces of the diagonal Cartan by scanning
rational eigenvalues, simple roots are selected with a fixed positivity
functional, and f_i is rescaled so that alpha_i([e_i, f_i]) = 2.  Simple roots
are then permuted into the standard order of the matched Cartan matrix, which
fixes the node numbering used by diagram automorphisms.

Automorphisms are given by recipes (Chevalley involution, diagram permutation,
explicit matrix) and extended from generator images by bracket closure; the
extension is verified to preserve brackets on every basis pair.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AlgebraError, ConfigError
from .exactmath import (
    Scalar, Subspace, identity_matrix, kernel_subspace, matrix_rank,
    one, rref, reduce_against, vec_add, vec_is_zero, vec_scale, vec_sub,
    zero, zero_vector,
)


class LieAlgebra:
    """Lie algebra with a named basis and a sparse bracket table."""

    def __init__(self, conductor, labels, table, descriptor="explicit",
                 check_jacobi=True):
        self.conductor = conductor
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        # table: {(i, j): ((k, Scalar), ...)} for i < j
        self.table = dict(table)
        self.descriptor = descriptor
        self.generators = None       # list of (e_vec, f_vec, h_vec)
        self.cartan = None           # Subspace spanned by a split Cartan
        self.cartan_matrix = None    # tuple of tuples of ints
        self.root_spaces = None      # [(weight tuple, vector)] when split
        self.defining = None         # (size, [matrix dict per basis element])
        self.type_label = None
        self.convention = ("positive system fixed by the graded lexicographic "
                           "functional on Cartan eigenvalue tuples")
        if check_jacobi:
            self._check_jacobi()

    # -- brackets ------------------------------------------------------------

    def bracket_basis(self, i, j):
        """[b_i, b_j] as a sparse list of (index, Scalar)."""
        if i == j:
            return ()
        if i < j:
            return self.table.get((i, j), ())
        return tuple((k, -c) for k, c in self.table.get((j, i), ()))

    def bracket_vec(self, u, v):
        acc = {}
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            for j, b in enumerate(v):
                if b.is_zero():
                    continue
                coef = a * b
                for k, c in self.bracket_basis(i, j):
                    prev = acc.get(k)
                    acc[k] = coef * c if prev is None else prev + coef * c
        z = zero(self.conductor)
        return tuple(acc.get(k, z) for k in range(self.dim))

    def ad_matrix(self, v):
        """Columns j: coordinates of [v, b_j]."""
        cols = []
        z = zero(self.conductor)
        for j in range(self.dim):
            acc = {}
            for i, a in enumerate(v):
                if a.is_zero():
                    continue
                for k, c in self.bracket_basis(i, j):
                    prev = acc.get(k)
                    acc[k] = a * c if prev is None else prev + a * c
            cols.append([acc.get(k, z) for k in range(self.dim)])
        return tuple(tuple(cols[j][k] for j in range(self.dim))
                     for k in range(self.dim))

    def basis_vector(self, i):
        v = [zero(self.conductor)] * self.dim
        v[i] = one(self.conductor)
        return tuple(v)

    def _check_jacobi(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                bij = self.bracket_basis(i, j)
                for k in range(j + 1, self.dim):
                    acc = {}
                    for m, c in self.bracket_basis(j, k):
                        for t, d in self.bracket_basis(i, m):
                            acc[t] = acc.get(t, None)
                            acc[t] = c * d if acc[t] is None else acc[t] + c * d
                    for m, c in self.bracket_basis(k, i):
                        for t, d in self.bracket_basis(j, m):
                            prev = acc.get(t)
                            acc[t] = c * d if prev is None else prev + c * d
                    for m, c in bij:
                        for t, d in self.bracket_basis(k, m):
                            prev = acc.get(t)
                            acc[t] = c * d if prev is None else prev + c * d
                    for t, val in acc.items():
                        if val is not None and not val.is_zero():
                            raise AlgebraError(
                                "Jacobi identity fails",
                                triple=(self.labels[i], self.labels[j],
                                        self.labels[k]))

    def __repr__(self):
        return "LieAlgebra(%s, dim=%d)" % (self.descriptor, self.dim)


# ---------------------------------------------------------------------------
# construction from explicit matrices


def _mat_commutator(a, b):
    out = {}
    for (i, k), x in a.items():
        for (k2, j), y in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) + x * y
    for (i, k), x in b.items():
        for (k2, j), y in a.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), 0) - x * y
    return {k: v for k, v in out.items() if v != 0}


def _build_from_matrices(labels, mats, size, conductor, descriptor):
    """Structure constants for a list of linearly independent matrices."""
    def flatten(m):
        z = zero(conductor)
        vec = [z] * (size * size)
        for (i, j), v in m.items():
            vec[i * size + j] = Scalar.from_rational(v, conductor)
        return tuple(vec)

    flat = [flatten(m) for m in mats]
    span = Subspace.from_vectors(flat, size * size, conductor)
    if span.dim != len(mats):
        raise AlgebraError("matrix basis is linearly dependent")
    # coordinates of an arbitrary matrix in the original (not RREF) basis:
    # solve via RREF with bookkeeping
    coord_rows, coord_piv = rref([list(f) + list(r) for f, r in
                                  zip(flat, identity_matrix(len(mats), conductor))],
                                 size * size + len(mats))

    def coords(m):
        vec = list(flatten(m)) + [zero(conductor)] * len(mats)
        res = reduce_against(vec, coord_rows, coord_piv)
        if not vec_is_zero(res[:size * size]):
            raise AlgebraError("matrix outside algebra span")
        return tuple(-x for x in res[size * size:])

    table = {}
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            comm = _mat_commutator(mats[i], mats[j])
            entry = tuple((k, c) for k, c in enumerate(coords(comm))
                          if not c.is_zero())
            if entry:
                table[(i, j)] = entry
    alg = LieAlgebra(conductor, labels, table, descriptor)
    alg.defining = (size, [
        {key: Scalar.from_rational(v, conductor) for key, v in m.items()}
        for m in mats])
    return alg


def matrix_family(family, n, conductor=1):
    """Split matrix Lie algebras: sl_n, so_n (antidiagonal symmetric form),
    sp_n (n even, antidiagonal alternating form)."""
    if family == "sl":
        if n < 2:
            raise ConfigError("sl_n needs n >= 2", n=n)
        labels, mats = [], []
        for i in range(1, n):
            labels.append("h%d" % i)
            mats.append({(i - 1, i - 1): 1, (i, i): -1})
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    labels.append("E%d.%d" % (i, j))
                    mats.append({(i - 1, j - 1): 1})
        alg = _build_from_matrices(labels, mats, n, conductor, "sl%d" % n)
        cartan_rows = [alg.basis_vector(i) for i in range(n - 1)]
    elif family in ("so", "sp"):
        if family == "sp" and n % 2:
            raise ConfigError("sp_n needs even n", n=n)
        if family == "so" and n < 3:
            raise ConfigError("so_n needs n >= 3", n=n)
        half = n // 2

        def eps(i):
            return 1 if i <= half else -1

        labels, mats = [], []
        cartan_idx = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i + j < n + 1:
                    if family == "so":
                        m = {(i - 1, j - 1): 1}
                        key = (n - j, n - i)
                        m[key] = m.get(key, 0) - 1
                    else:
                        m = {(i - 1, j - 1): 1}
                        key = (n - j, n - i)
                        m[key] = m.get(key, 0) - eps(i) * eps(j)
                    m = {k: v for k, v in m.items() if v != 0}
                    if not m:
                        continue
                    if i == j:
                        cartan_idx.append(len(labels))
                    labels.append("B%d.%d" % (i, j))
                    mats.append(m)
                elif i + j == n + 1 and family == "sp":
                    labels.append("B%d.%d" % (i, j))
                    mats.append({(i - 1, j - 1): 1})
        alg = _build_from_matrices(labels, mats, n, conductor,
                                   "%s%d" % (family, n))
        cartan_rows = [alg.basis_vector(i) for i in cartan_idx]
    else:
        raise ConfigError("unknown matrix family", family=family)

    alg.cartan = Subspace.from_vectors(cartan_rows, alg.dim, conductor)
    _derive_chevalley_generators(alg)
    return alg


def cartan_type(letter, rank, conductor=1):
    if letter == "A":
        if rank < 1:
            raise ConfigError("A_n needs n >= 1")
        return matrix_family("sl", rank + 1, conductor)
    if letter == "B":
        if rank < 2:
            raise ConfigError("B_n needs n >= 2")
        return matrix_family("so", 2 * rank + 1, conductor)
    if letter == "C":
        if rank < 2:
            raise ConfigError("C_n needs n >= 2")
        return matrix_family("sp", 2 * rank, conductor)
    if letter == "D":
        if rank < 4:
            raise ConfigError("D_n needs n >= 4")
        return matrix_family("so", 2 * rank, conductor)
    if letter == "G":
        if rank != 2:
            raise ConfigError("only G2 exists in the G series")
        return _fold_g2(conductor)
    raise ConfigError("unsupported Cartan series", series=letter)


def parse_cartan_label(label):
    letter = label[0].upper()
    try:
        rank = int(label[1:])
    except ValueError:
        raise ConfigError("malformed Cartan type", label=label)
    return letter, rank


def _fold_g2(conductor):
    """G2 as the fixed algebra of the order-3 diagram rotation of so_8."""
    d4 = matrix_family("so", 8, conductor)
    outer = _outer_nodes(d4.cartan_matrix)
    cycle = {outer[0]: outer[1], outer[1]: outer[2], outer[2]: outer[0]}
    rho = automorphism_from_recipe(d4, ("diagram", cycle))
    fixed = fixed_subalgebra(d4, [rho])
    alg, incl = subalgebra(d4, fixed, descriptor="G2 (so8 triality fold)")
    # folded generator triples: orbit sums of outer-node generators
    center = next(i for i in range(4) if i not in outer)
    e_sum = d4.generators[outer[0]][0]
    f_sum = d4.generators[outer[0]][1]
    for nd in outer[1:]:
        e_sum = vec_add(e_sum, d4.generators[nd][0])
        f_sum = vec_add(f_sum, d4.generators[nd][1])
    trips = []
    for e_vec, f_vec in ((e_sum, f_sum),
                         (d4.generators[center][0], d4.generators[center][1])):
        e_c = fixed.coords(e_vec)
        f_c = fixed.coords(f_vec)
        h_c = alg.bracket_vec(e_c, f_c)
        trips.append((e_c, f_c, h_c))
    alg.generators = trips
    alg.cartan = Subspace.from_vectors([t[2] for t in trips], alg.dim, conductor)
    _derive_chevalley_generators(alg)
    if alg.dim != 14:
        raise AlgebraError("triality fold did not produce a 14-dimensional algebra",
                           dim=alg.dim)
    return alg


def _outer_nodes(cartan_matrix):
    r = len(cartan_matrix)
    neighbors = [sum(1 for j in range(r) if j != i and cartan_matrix[i][j] != 0)
                 for i in range(r)]
    return [i for i in range(r) if neighbors[i] == 1]


def from_structure_constants(dim, entries, conductor=1, labels=None):
    """entries: iterable of (i, j, k, scalar) meaning [b_i, b_j] has coefficient
    scalar on b_k; only i < j entries are taken, antisymmetry is implied."""
    labels = list(labels) if labels else ["b%d" % i for i in range(dim)]
    if len(labels) != dim:
        raise ConfigError("label count does not match dimension")
    acc = {}
    for (i, j, k, c) in entries:
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise ConfigError("structure constant index out of range",
                              entry=(i, j, k))
        if i == j:
            continue
        key, coef = ((i, j), c) if i < j else ((j, i), -c)
        acc.setdefault(key, {})
        acc[key][k] = acc[key].get(k, zero(conductor)) + coef
    table = {key: tuple((k, v) for k, v in sorted(vals.items())
                        if not v.is_zero())
             for key, vals in acc.items()}
    table = {k: v for k, v in table.items() if v}
    return LieAlgebra(conductor, labels, table, "explicit")


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    if a.conductor != b.conductor:
        raise ConfigError("conductor mismatch in direct sum")
    labels = ["L." + s for s in a.labels] + ["R." + s for s in b.labels]
    table = {}
    for (i, j), entry in a.table.items():
        table[(i, j)] = entry
    off = a.dim
    for (i, j), entry in b.table.items():
        table[(i + off, j + off)] = tuple((k + off, c) for k, c in entry)
    out = LieAlgebra(a.conductor, labels, table,
                     "%s (+) %s" % (a.descriptor, b.descriptor),
                     check_jacobi=False)
    return out


# ---------------------------------------------------------------------------
# root data: rational eigenvalue machinery


def operator_on_subspace(space: Subspace, apply_fn):
    """Matrix B with B[:, j] = coordinates of apply(row_j) in the row basis."""
    cols = [space.coords(apply_fn(row)) for row in space.rows]
    s = space.dim
    return tuple(tuple(cols[j][i] for j in range(s)) for i in range(s))


def _rational_entries(mat):
    out = []
    for row in mat:
        r = []
        for x in row:
            if not x.is_rational():
                return None
            r.append(x.as_fraction())
        out.append(r)
    return out


def rational_eigensplit(space: Subspace, apply_fn, conductor):
    """Split a subspace into rational eigenspaces of an operator.

    Returns a list of (Fraction eigenvalue, Subspace) covering the whole space,
    or None when the restricted operator is not rational-diagonalizable."""
    if space.dim == 0:
        return []
    mat = operator_on_subspace(space, apply_fn)
    frac = _rational_entries(mat)
    if frac is None:
        return None
    denom = 1
    for row in frac:
        for x in row:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
    bound = 0
    for row in frac:
        s = sum(abs(x * denom) for x in row)
        bound = max(bound, s)
    s_dim = space.dim
    found = []
    total = 0
    k = -int(bound)
    while k <= int(bound) and total < s_dim:
        c = Fraction(k, denom)
        rows = [[mat[i][j] - (Scalar.from_rational(c, conductor) if i == j
                              else zero(conductor))
                 for j in range(s_dim)] for i in range(s_dim)]
        ker = kernel_subspace(rows, s_dim, conductor)
        if ker.dim:
            vecs = []
            for kv in ker.rows:
                acc = zero_vector(space.ambient, conductor)
                for coef, row in zip(kv, space.rows):
                    if not coef.is_zero():
                        acc = vec_add(acc, vec_scale(coef, row))
                vecs.append(acc)
            found.append((c, Subspace.from_vectors(vecs, space.ambient, conductor)))
            total += ker.dim
        k += 1
    if total != s_dim:
        return None
    return found


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def simultaneous_eigensplit(space: Subspace, apply_fns, conductor):
    """Joint rational eigenspaces; list of (eigenvalue tuple, Subspace)."""
    pieces = [((), space)]
    for fn in apply_fns:
        nxt = []
        for tag, sub in pieces:
            split = rational_eigensplit(sub, fn, conductor)
            if split is None:
                return None
            for ev, piece in split:
                nxt.append((tag + (ev,), piece))
        pieces = nxt
    return pieces


def _derive_chevalley_generators(alg: LieAlgebra):
    """Compute (e_i, f_i, h_i) triples and the Cartan matrix from alg.cartan.

    Fails silently (leaves generators as None) when the Cartan does not act
    rational-diagonalizably with one-dimensional root spaces."""
    cart = alg.cartan
    if cart is None or cart.dim == 0:
        return
    fns = [(lambda v, t=t: alg.bracket_vec(t, v)) for t in cart.rows]
    split = simultaneous_eigensplit(Subspace.full(alg.dim, alg.conductor),
                                    fns, alg.conductor)
    if split is None:
        return
    zero_w = tuple(Fraction(0) for _ in cart.rows)
    roots = []
    for w, piece in split:
        if w == zero_w:
            if piece.dim != cart.dim:
                return
        else:
            if piece.dim != 1:
                return
            roots.append((w, piece.rows[0]))
    if not roots:
        return
    root_set = {w for w, _ in roots}

    def pos_key(w):
        # graded lexicographic with a large radix: deterministic positivity
        radix = 1 + 2 * max(abs(x.numerator) + x.denominator
                            for ww in root_set for x in ww)
        val = Fraction(0)
        for x in w:
            val = val * radix + x
        return val

    positive = [w for w in root_set if pos_key(w) > 0]
    pos_set = set(positive)
    simple = []
    for w in positive:
        if not any(tuple(a + b for a, b in zip(u, v)) == w
                   for u in pos_set for v in pos_set):
            simple.append(w)
    simple.sort(key=pos_key)
    vec_of = dict(roots)
    trips = []
    for w in simple:
        neg = tuple(-x for x in w)
        if neg not in vec_of:
            return
        e_vec = vec_of[w]
        f_vec = vec_of[neg]
        h_vec = alg.bracket_vec(e_vec, f_vec)
        h_coords = cart.coords(h_vec)
        pairing = Fraction(0)
        for coef, eig in zip(h_coords, w):
            if not coef.is_rational():
                return
            pairing += coef.as_fraction() * eig
        if pairing == 0:
            return
        scale = Scalar.from_rational(Fraction(2) / pairing, alg.conductor)
        f_vec = vec_scale(scale, f_vec)
        trips.append((e_vec, f_vec, alg.bracket_vec(e_vec, f_vec)))

    def alpha_of_h(w, h_vec):
        coords = cart.coords(h_vec)
        val = Fraction(0)
        for coef, eig in zip(coords, w):
            val += coef.as_fraction() * eig
        return val

    r = len(simple)
    cm = [[alpha_of_h(simple[j], trips[i][2]) for j in range(r)]
          for i in range(r)]
    if any(x.denominator != 1 for row in cm for x in row):
        return
    cm = [[int(x) for x in row] for row in cm]
    matched = match_cartan_matrix(cm)
    if matched is not None:
        label, perm = matched
        trips = [trips[perm[i]] for i in range(r)]
        cm = [[cm[perm[i]][perm[j]] for j in range(r)] for i in range(r)]
        alg.type_label = label
    alg.generators = trips
    alg.cartan_matrix = tuple(tuple(row) for row in cm)
    alg.root_count = len(roots)
    alg.root_spaces = sorted(roots, key=lambda rv: pos_key(rv[0]))


# ---------------------------------------------------------------------------
# standard Cartan matrices and type identification


def standard_cartan_matrix(letter, rank):
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i in range(rank - 1):
        a[i][i + 1] = -1
        a[i + 1][i] = -1
    if letter == "B":   # alpha_rank short
        a[rank - 1][rank - 2] = -2
    elif letter == "C":
        a[rank - 2][rank - 1] = -2
    elif letter == "D":
        a[rank - 2][rank - 1] = 0
        a[rank - 1][rank - 2] = 0
        a[rank - 3][rank - 1] = -1
        a[rank - 1][rank - 3] = -1
    elif letter == "G":
        a = [[2, -1], [-3, 2]]
    elif letter == "F":
        a = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    elif letter == "E":
        a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
        for i in range(rank - 2):
            a[i][i + 1] = -1
            a[i + 1][i] = -1
        a[rank - 4][rank - 1] = -1
        a[rank - 1][rank - 4] = -1
    return a


def _candidate_types(rank):
    out = [("A%d" % rank, standard_cartan_matrix("A", rank))]
    if rank >= 2:
        out.append(("B%d" % rank, standard_cartan_matrix("B", rank)))
    if rank >= 3:
        out.append(("C%d" % rank, standard_cartan_matrix("C", rank)))
    if rank >= 4:
        out.append(("D%d" % rank, standard_cartan_matrix("D", rank)))
    if rank == 2:
        out.append(("G2", standard_cartan_matrix("G", 2)))
    if rank == 4:
        out.append(("F4", standard_cartan_matrix("F", 4)))
    if rank in (6, 7, 8):
        out.append(("E%d" % rank, standard_cartan_matrix("E", rank)))
    return out


def match_cartan_matrix(cm):
    """Identify a Cartan matrix up to simultaneous permutation.

    Returns (label, perm) with perm mapping standard node index -> given index,
    or None."""
    r = len(cm)
    if r > 8:
        return None
    for label, std in _candidate_types(r):
        for perm in itertools.permutations(range(r)):
            if all(cm[perm[i]][perm[j]] == std[i][j]
                   for i in range(r) for j in range(r)):
                return label, list(perm)
    return None


_CLASSICAL_DIMS = {}
for _r in range(1, 13):
    _CLASSICAL_DIMS.setdefault((_r * (_r + 2), _r), []).append("A%d" % _r)
for _r in range(2, 13):
    _CLASSICAL_DIMS.setdefault((2 * _r * _r + _r, _r), []).append("B%d" % _r)
for _r in range(3, 13):
    _CLASSICAL_DIMS.setdefault((2 * _r * _r + _r, _r), []).append("C%d" % _r)
for _r in range(4, 13):
    _CLASSICAL_DIMS.setdefault((2 * _r * _r - _r, _r), []).append("D%d" % _r)
_CLASSICAL_DIMS.setdefault((14, 2), []).append("G2")
_CLASSICAL_DIMS.setdefault((52, 4), []).append("F4")
_CLASSICAL_DIMS.setdefault((78, 6), []).append("E6")
_CLASSICAL_DIMS.setdefault((133, 7), []).append("E7")
_CLASSICAL_DIMS.setdefault((248, 8), []).append("E8")


def type_from_dim_rank(dim, rank):
    """Type label from (dim, rank) alone; collisions reported honestly."""
    labels = _CLASSICAL_DIMS.get((dim, rank), [])
    if not labels:
        return "unidentified"
    if len(labels) == 1:
        return labels[0]
    return "-or-".join(labels)


# ---------------------------------------------------------------------------
# automorphisms


class LieAutomorphism:
    """Bracket-preserving invertible linear map, rows[i] = image of b_i."""

    def __init__(self, algebra: LieAlgebra, rows, check=True, recipe=None):
        self.algebra = algebra
        self.rows = tuple(tuple(r) for r in rows)
        self.recipe = recipe
        if check:
            self._verify()

    def apply(self, v):
        acc = None
        for coef, row in zip(v, self.rows):
            if coef.is_zero():
                continue
            term = vec_scale(coef, row)
            acc = term if acc is None else vec_add(acc, term)
        return acc if acc is not None else zero_vector(self.algebra.dim,
                                                       self.algebra.conductor)

    def compose(self, other: "LieAutomorphism") -> "LieAutomorphism":
        """self after other: (self . other)(v) = self(other(v))."""
        rows = [self.apply(r) for r in other.rows]
        return LieAutomorphism(self.algebra, rows, check=False,
                               recipe=("compose",))

    def inverse(self) -> "LieAutomorphism":
        n = self.algebra.dim
        cond = self.algebra.conductor
        aug = [list(self.rows[i]) + list(identity_matrix(n, cond)[i])
               for i in range(n)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise AlgebraError("automorphism matrix is singular")
        rows = [r[n:] for r in red]
        return LieAutomorphism(self.algebra, rows, check=False,
                               recipe=("inverse",))

    def is_identity(self):
        n = self.algebra.dim
        for i in range(n):
            for j in range(n):
                x = self.rows[i][j]
                if i == j:
                    if not (x - one(self.algebra.conductor)).is_zero():
                        return False
                elif not x.is_zero():
                    return False
        return True

    def order(self, cap=1000):
        acc = self
        for k in range(1, cap + 1):
            if acc.is_identity():
                return k
            acc = acc.compose(self)
        raise AlgebraError("automorphism order exceeds cap", cap=cap)

    def _verify(self):
        alg = self.algebra
        if matrix_rank(self.rows, alg.dim) != alg.dim:
            raise AlgebraError("automorphism candidate is not invertible")
        for i in range(alg.dim):
            for j in range(i + 1, alg.dim):
                left = alg.bracket_vec(self.rows[i], self.rows[j])
                right_sparse = alg.bracket_basis(i, j)
                right = list(zero_vector(alg.dim, alg.conductor))
                for k, c in right_sparse:
                    right[k] = c
                img = self.apply(tuple(right))
                if not vec_is_zero(vec_sub(left, img)):
                    raise AlgebraError(
                        "candidate map does not preserve the bracket",
                        witness=(alg.labels[i], alg.labels[j]))


def identity_automorphism(alg: LieAlgebra) -> LieAutomorphism:
    return LieAutomorphism(alg, identity_matrix(alg.dim, alg.conductor),
                           check=False, recipe=("trivial",))


def extend_from_generators(alg: LieAlgebra, pairs) -> LieAutomorphism:
    """Extend a map given on generating elements to an automorphism.

    pairs: list of (element, image).  The extension closes the span under
    brackets, propagating images; inconsistency or failure to span is an
    error."""
    n = alg.dim
    cond = alg.conductor
    aug_rows = []   # joint (domain | image) rows, kept echelonized in domain part
    piv_cols = []

    def insert(dom, img):
        vec = list(dom) + list(img)
        for row, p in zip(aug_rows, piv_cols):
            c = vec[p]
            if not c.is_zero():
                vec = [a - c * b for a, b in zip(vec, row)]
        lead = next((k for k in range(n) if not vec[k].is_zero()), None)
        if lead is None:
            if not vec_is_zero(vec[n:]):
                raise AlgebraError(
                    "generator images are inconsistent with the bracket")
            return False
        inv = vec[lead].inverse()
        vec = [inv * x for x in vec]
        for idx in range(len(aug_rows)):
            c = aug_rows[idx][lead]
            if not c.is_zero():
                aug_rows[idx] = [a - c * b for a, b in zip(aug_rows[idx], vec)]
        aug_rows.append(vec)
        piv_cols.append(lead)
        return True

    for dom, img in pairs:
        insert(dom, img)
    grew = True
    while grew and len(aug_rows) < n:
        grew = False
        snapshot = [tuple(r) for r in aug_rows]
        for a in range(len(snapshot)):
            for b in range(a + 1, len(snapshot)):
                ra, rb = snapshot[a], snapshot[b]
                dom = alg.bracket_vec(ra[:n], rb[:n])
                img = alg.bracket_vec(ra[n:], rb[n:])
                if insert(dom, img):
                    grew = True
        if grew:
            continue
    if len(aug_rows) < n:
        raise AlgebraError("given elements do not generate the algebra",
                           reached=len(aug_rows), needed=n)
    # full reduction: domain part becomes the identity (up to row order)
    red, piv = rref(aug_rows, 2 * n)
    rows = [None] * n
    for row, p in zip(red, piv):
        rows[p] = row[n:]
    return LieAutomorphism(alg, rows, check=True, recipe=("extended",))


def automorphism_from_recipe(alg: LieAlgebra, recipe) -> LieAutomorphism:
    kind = recipe[0]
    if kind == "trivial":
        return identity_automorphism(alg)
    if kind == "matrix":
        return LieAutomorphism(alg, recipe[1], check=True, recipe=recipe)
    if alg.generators is None:
        raise ConfigError("algebra has no Chevalley generator markers; "
                          "recipe %r unavailable" % (kind,))
    if kind == "chevalley_involution":
        pairs = []
        for e, f, h in alg.generators:
            pairs.append((e, vec_scale(-one(alg.conductor), f)))
            pairs.append((f, vec_scale(-one(alg.conductor), e)))
            pairs.append((h, vec_scale(-one(alg.conductor), h)))
        auto = extend_from_generators(alg, pairs)
        auto.recipe = ("chevalley_involution",)
        return auto
    if kind == "diagram":
        perm = dict(recipe[1])  # 0-based node permutation
        r = len(alg.generators)
        full = {i: perm.get(i, i) for i in range(r)}
        if sorted(full.values()) != list(range(r)):
            raise ConfigError("node permutation is not a bijection", perm=perm)
        cm = alg.cartan_matrix
        if cm is None:
            raise ConfigError("no Cartan matrix available for diagram recipe")
        for i in range(r):
            for j in range(r):
                if cm[full[i]][full[j]] != cm[i][j]:
                    raise ConfigError(
                        "permutation does not preserve the Cartan matrix",
                        nodes=(i + 1, j + 1))
        pairs = []
        for i in range(r):
            e, f, h = alg.generators[i]
            e2, f2, h2 = alg.generators[full[i]]
            pairs.extend([(e, e2), (f, f2), (h, h2)])
        auto = extend_from_generators(alg, pairs)
        auto.recipe = ("diagram", tuple(sorted(full.items())))
        return auto
    raise ConfigError("unknown automorphism recipe", kind=kind)


# ---------------------------------------------------------------------------
# fixed subalgebras and gradings


def fixed_subalgebra(alg: LieAlgebra, autos) -> Subspace:
    """Simultaneous +1 eigenspace; always bracket-closed (verified)."""
    n = alg.dim
    cond = alg.conductor
    constraints = []
    for auto in autos:
        for k in range(n):
            row = [auto.rows[i][k] - (one(cond) if i == k else zero(cond))
                   for i in range(n)]
            constraints.append(row)
    space = kernel_subspace(constraints, n, cond) if constraints \
        else Subspace.full(n, cond)
    for i, u in enumerate(space.rows):
        for v in space.rows[i:]:
            if not space.contains(alg.bracket_vec(u, v)):
                raise AlgebraError("fixed space is not bracket-closed")
    return space


def subalgebra(alg: LieAlgebra, space: Subspace, descriptor=None,
               check_closed=True):
    """Materialize a bracket-closed subspace as a LieAlgebra.

    Returns (sub, inclusion_rows); inclusion_rows[i] is the ambient coordinate
    vector of the i-th basis element.  A split Cartan hint is inherited by
    intersecting the parent Cartan with the subspace."""
    rows = space.rows
    table = {}
    for i, u in enumerate(rows):
        for j in range(i + 1, len(rows)):
            w = alg.bracket_vec(u, rows[j])
            if check_closed and not space.contains(w):
                raise AlgebraError("subspace is not bracket-closed",
                                   witness=(i, j))
            coords = space.coords(w)
            entry = tuple((k, c) for k, c in enumerate(coords)
                          if not c.is_zero())
            if entry:
                table[(i, j)] = entry
    sub = LieAlgebra(alg.conductor,
                     ["s%d" % i for i in range(len(rows))],
                     table,
                     descriptor or ("subalgebra of " + alg.descriptor),
                     check_jacobi=False)
    if alg.cartan is not None:
        inter = alg.cartan.intersect(space)
        if inter.dim:
            sub.cartan = Subspace.from_vectors(
                [space.coords(r) for r in inter.rows], sub.dim, sub.conductor)
    return sub, rows


def xi_grading(alg: LieAlgebra, autos_with_orders):
    """Character-space decomposition for commuting finite-order automorphisms.

    autos_with_orders: list of (LieAutomorphism, order).  Requires the needed
    roots of unity to exist in the scalar field."""
    cond = alg.conductor
    for (a, m) in autos_with_orders:
        if m < 1:
            raise ConfigError("order must be positive")
        power = a
        for _ in range(m - 1):
            power = power.compose(a)
        if not power.is_identity():
            raise AlgebraError("declared order is wrong", order=m)
        if m > 2 and cond % m != 0:
            raise ConfigError(
                "conductor %d lacks the %d-th roots of unity needed to "
                "diagonalize this action" % (cond, m))
    for i, (a, _) in enumerate(autos_with_orders):
        for b, _ in autos_with_orders[i + 1:]:
            ab = a.compose(b)
            ba = b.compose(a)
            for k in range(alg.dim):
                if not vec_is_zero(vec_sub(ab.rows[k], ba.rows[k])):
                    raise AlgebraError("automorphisms do not commute",
                                       witness=alg.labels[k])

    def nth_root(m, k):
        if m == 1:
            return one(cond)
        if m == 2:
            return Scalar.from_rational(1 if k % 2 == 0 else -1, cond)
        return Scalar.zeta(cond) ** ((cond // m) * k)

    pieces = [((), Subspace.full(alg.dim, cond))]
    for a, m in autos_with_orders:
        nxt = []
        for tag, sub in pieces:
            if sub.dim == 0:
                continue
            for k in range(m):
                lam = nth_root(m, k)
                constraints = []
                for col in range(alg.dim):
                    row = [a.rows[i][col] - (lam if i == col else zero(cond))
                           for i in range(alg.dim)]
                    constraints.append(row)
                eig = kernel_subspace(constraints, alg.dim, cond)
                piece = sub.intersect(eig)
                if piece.dim:
                    nxt.append((tag + (k,), piece))
        pieces = nxt
    total = sum(p.dim for _, p in pieces)
    if total != alg.dim:
        raise AlgebraError("grading pieces do not fill the algebra",
                           total=total, dim=alg.dim)
    orders = [m for _, m in autos_with_orders]
    by_tag = dict(pieces)
    for tag1, p1 in pieces:
        for tag2, p2 in pieces:
            target = tuple((x + y) % m for x, y, m in zip(tag1, tag2, orders))
            tgt = by_tag.get(target)
            for u in p1.rows:
                for v in p2.rows:
                    w = alg.bracket_vec(u, v)
                    if vec_is_zero(w):
                        continue
                    if tgt is None or not tgt.contains(w):
                        raise AlgebraError("graded bracket containment fails",
                                           source=(tag1, tag2))
    return pieces


# ---------------------------------------------------------------------------
# structure analysis


@dataclass
class IdealReport:
    dim: int
    rank: int
    type_label: str
    split_over_field: bool = True


@dataclass
class StructureReport:
    dim: int
    derived_dim: int
    center_dim: int
    killing_rank: int
    rank: int
    semisimple: bool
    abelian: bool
    reductive: bool
    centroid_dim: int
    ideals: list = field(default_factory=list)
    derived_ideals: list = field(default_factory=list)
    type_label: str = ""
    notes: list = field(default_factory=list)

    def summary(self):
        return {
            "dim": self.dim,
            "derived_dim": self.derived_dim,
            "center_dim": self.center_dim,
            "killing_rank": self.killing_rank,
            "rank": self.rank,
            "semisimple": self.semisimple,
            "abelian": self.abelian,
            "reductive": self.reductive,
            "centroid_dim": self.centroid_dim,
            "ideal_dims": [i.dim for i in self.ideals],
            "ideal_types": [i.type_label for i in self.ideals],
            "derived_ideal_dims": [i.dim for i in self.derived_ideals],
            "derived_ideal_types": [i.type_label for i in self.derived_ideals],
            "type": self.type_label,
            "notes": list(self.notes),
        }


def derived_subspace(alg: LieAlgebra) -> Subspace:
    vecs = []
    z = zero(alg.conductor)
    for (i, j), entry in alg.table.items():
        v = [z] * alg.dim
        for k, c in entry:
            v[k] = c
        vecs.append(tuple(v))
    return Subspace.from_vectors(vecs, alg.dim, alg.conductor)


def center_subspace(alg: LieAlgebra) -> Subspace:
    n = alg.dim
    constraints = []
    for j in range(n):
        cols = {}
        for i in range(n):
            for k, c in alg.bracket_basis(i, j):
                cols.setdefault(k, {})[i] = c
        for coeffs in cols.values():
            row = [coeffs.get(i, zero(alg.conductor)) for i in range(n)]
            constraints.append(row)
    return kernel_subspace(constraints, n, alg.conductor) if constraints \
        else Subspace.full(n, alg.conductor)


def killing_gram(alg: LieAlgebra):
    n = alg.dim
    ads = []
    for i in range(n):
        entries = {}
        for j in range(n):
            for k, c in alg.bracket_basis(i, j):
                entries[(k, j)] = c
        ads.append(entries)
    gram = [[None] * n for _ in range(n)]
    z = zero(alg.conductor)
    for i in range(n):
        for j in range(i, n):
            acc = None
            small, big = (ads[i], ads[j]) if len(ads[i]) <= len(ads[j]) \
                else (ads[j], ads[i])
            for (k, l), c in small.items():
                d = big.get((l, k))
                if d is not None:
                    acc = c * d if acc is None else acc + c * d
            val = acc if acc is not None else z
            gram[i][j] = val
            gram[j][i] = val
    return gram


def estimated_rank(alg: LieAlgebra, seed=0, trials=5):
    """Minimum centralizer dimension over seeded pseudo-random elements."""
    if alg.dim == 0:
        return 0
    rng = random.Random("rank:%d:%d:%s" % (seed, alg.dim, alg.descriptor))
    best = alg.dim
    for _ in range(trials):
        v = tuple(Scalar.from_rational(rng.randint(-3, 3), alg.conductor)
                  for _ in range(alg.dim))
        mat = alg.ad_matrix(v)
        best = min(best, kernel_subspace(mat, alg.dim, alg.conductor).dim)
    return best


def _greedy_generators(alg: LieAlgebra):
    chosen = []
    span = Subspace.from_vectors([], alg.dim, alg.conductor)
    for i in range(alg.dim):
        v = alg.basis_vector(i)
        if span.contains(v):
            continue
        chosen.append(v)
        span = _lie_closure(alg, span.add(Subspace.from_vectors(
            [v], alg.dim, alg.conductor)))
        if span.dim == alg.dim:
            break
    return chosen


def _lie_closure(alg: LieAlgebra, space: Subspace) -> Subspace:
    while True:
        new_vecs = []
        for i, u in enumerate(space.rows):
            for v in space.rows[i:]:
                w = alg.bracket_vec(u, v)
                if not vec_is_zero(w) and not space.contains(w):
                    new_vecs.append(w)
        if not new_vecs:
            return space
        space = space.add(Subspace.from_vectors(new_vecs, alg.dim,
                                                alg.conductor))


def _sylvester_rows_full(op, n, cond):
    """Rows of Phi -> Phi*op - op*Phi over the n*n flattened unknowns Phi."""
    rows = []
    z = zero(cond)
    for a in range(n):
        for b in range(n):
            row = [z] * (n * n)
            for k in range(n):
                c = op[k][b]          # (Phi*op)_{ab} term on Phi_{ak}
                if not c.is_zero():
                    row[a * n + k] = row[a * n + k] + c
                c2 = op[a][k]         # -(op*Phi)_{ab} term on Phi_{kb}
                if not c2.is_zero():
                    row[k * n + b] = row[k * n + b] - c2
            if any(not x.is_zero() for x in row):
                rows.append(row)
    return rows


def _sylvester_apply(op, flat, n, cond):
    z = zero(cond)
    out = [z] * (n * n)
    for a in range(n):
        base = a * n
        for b in range(n):
            acc = None
            for k in range(n):
                x = flat[base + k]
                if not x.is_zero():
                    c = op[k][b]
                    if not c.is_zero():
                        t = x * c
                        acc = t if acc is None else acc + t
                c2 = op[a][k]
                if not c2.is_zero():
                    x2 = flat[k * n + b]
                    if not x2.is_zero():
                        t = c2 * x2
                        acc = -t if acc is None else acc - t
            out[base + b] = acc if acc is not None else z
    return out


def centroid_basis(alg: LieAlgebra):
    """Basis of the centroid {phi : phi ad(x) = ad(x) phi for all x}.

    Computed as the commutant of ad over a greedy generating set; entries are
    flattened n*n row-major maps.  The weight-space fast path kicks in when a
    split Cartan decomposition is known."""
    n = alg.dim
    cond = alg.conductor
    if n == 0:
        return []
    if alg.root_spaces is not None and alg.generators is not None:
        fast = _centroid_basis_split(alg)
        if fast is not None:
            return fast
    gens = _greedy_generators(alg)
    ops = [alg.ad_matrix(v) for v in gens]
    params = None
    for op in ops:
        if params is None:
            rows = _sylvester_rows_full(op, n, cond)
            params = [list(v) for v in kernel_subspace(rows, n * n, cond).rows]
        else:
            images = [_sylvester_apply(op, p, n, cond) for p in params]
            coeff_rows = []
            for e in range(n * n):
                row = [images[q][e] for q in range(len(params))]
                if any(not x.is_zero() for x in row):
                    coeff_rows.append(row)
            ker = kernel_subspace(coeff_rows, len(params), cond)
            new_params = []
            for kv in ker.rows:
                acc = [zero(cond)] * (n * n)
                for c, p in zip(kv, params):
                    if not c.is_zero():
                        for e in range(n * n):
                            if not p[e].is_zero():
                                acc[e] = acc[e] + c * p[e]
                new_params.append(acc)
            params = new_params
        if len(params) <= 1:
            break
    if params is None:
        params = [list(v) for v in Subspace.full(n * n, cond).rows]
    return [tuple(p) for p in params]


def _centroid_basis_split(alg: LieAlgebra):
    """Centroid via the weight decomposition of a split Cartan.

    Centroid elements preserve every weight space, so the unknowns shrink to a
    Cartan block plus one scalar per root line; constraints come from the ads
    of the Chevalley generators, which generate when the coroots span the
    Cartan."""
    n, cond = alg.dim, alg.conductor
    cart = alg.cartan
    r = cart.dim
    coroots = Subspace.from_vectors([t[2] for t in alg.generators], n, cond)
    if coroots.dim != r:
        return None
    wb = list(cart.rows) + [v for _, v in alg.root_spaces]
    if len(wb) != n:
        return None
    w_mat = tuple(tuple(wb[a][i] for a in range(n)) for i in range(n))
    aug = [list(w_mat[i]) + list(identity_matrix(n, cond)[i]) for i in range(n)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)):
        return None
    w_inv = tuple(tuple(red[i][n:]) for i in range(n))

    params = [(a, b) for a in range(r) for b in range(r)]
    params += [(r + t, r + t) for t in range(n - r)]
    pindex = {p: q for q, p in enumerate(params)}
    ops = []
    for e, f, _h in alg.generators:
        ops.append(alg.ad_matrix(e))
        ops.append(alg.ad_matrix(f))
    rows_map = {}
    z = zero(cond)
    for oi, op in enumerate(ops):
        opw = mat_mul_simple(w_inv, mat_mul_simple(op, w_mat))
        for q, (u, v) in enumerate(params):
            for j in range(n):
                c = opw[v][j]
                if not c.is_zero():
                    rows_map.setdefault((oi, u, j), {})[q] = \
                        rows_map.get((oi, u, j), {}).get(q, z) + c
            for i in range(n):
                c = opw[i][u]
                if not c.is_zero():
                    rows_map.setdefault((oi, i, v), {})[q] = \
                        rows_map.get((oi, i, v), {}).get(q, z) - c
    constraint_rows = []
    for coeffs in rows_map.values():
        row = [z] * len(params)
        for q, c in coeffs.items():
            row[q] = c
        constraint_rows.append(row)
    ker = kernel_subspace(constraint_rows, len(params), cond)
    out = []
    for kv in ker.rows:
        phi_w = [[z] * n for _ in range(n)]
        for q, (u, v) in enumerate(params):
            if not kv[q].is_zero():
                phi_w[u][v] = kv[q]
        phi = mat_mul_simple(w_mat, mat_mul_simple(tuple(map(tuple, phi_w)),
                                                   w_inv))
        out.append(tuple(phi[i][j] for i in range(n) for j in range(n)))
    return out


def mat_mul_simple(a, b):
    n = len(a)
    m = len(b[0])
    inner = len(b)
    z = zero(a[0][0].n)
    out = []
    for i in range(n):
        row = [z] * m
        arow = a[i]
        for k in range(inner):
            x = arow[k]
            if x.is_zero():
                continue
            brow = b[k]
            for j in range(m):
                if not brow[j].is_zero():
                    row[j] = row[j] + x * brow[j]
        out.append(tuple(row))
    return tuple(out)


def _split_by_centroid(alg: LieAlgebra, cbasis, seed=0):
    """Split into ideals along rational eigenvalues of a centroid probe.

    Returns (list of Subspace ideals, fully_split: bool)."""
    n = alg.dim
    cond = alg.conductor
    s = len(cbasis)
    if s <= 1:
        return [Subspace.full(n, cond)], True
    for attempt in range(3):
        weights = [Fraction((k + 1) ** (attempt + 1)) for k in range(s)]
        flat = [zero(cond)] * (n * n)
        for w, p in zip(weights, cbasis):
            sw = Scalar.from_rational(w, cond)
            for e in range(n * n):
                if not p[e].is_zero():
                    flat[e] = flat[e] + sw * p[e]
        mat = tuple(tuple(flat[i * n + j] for j in range(n)) for i in range(n))
        split = rational_eigensplit(Subspace.full(n, cond),
                                    lambda v: mat_apply(mat, v), cond)
        if split is not None and len(split) == s:
            return [piece for _, piece in split], True
        if split is not None and len(split) > 1:
            return [piece for _, piece in split], False
    return [Subspace.full(n, cond)], False


def mat_apply(mat, v):
    n = len(v)
    out = []
    for i in range(n):
        acc = None
        row = mat[i]
        for j in range(n):
            x = row[j]
            if not x.is_zero() and not v[j].is_zero():
                t = x * v[j]
                acc = t if acc is None else acc + t
        out.append(acc if acc is not None else zero(v[0].n))
    return tuple(out)


def _identify_simple(alg: LieAlgebra, seed=0):
    """Type label for a simple algebra: Cartan-matrix identification when a
    split Cartan is available, (dim, rank) table lookup otherwise."""
    rank = estimated_rank(alg, seed=seed)
    if alg.cartan is None and alg.type_label is None:
        return type_from_dim_rank(alg.dim, rank), rank
    if alg.type_label is None and alg.generators is None:
        _derive_chevalley_generators(alg)
    if alg.type_label is not None:
        return alg.type_label, rank
    return type_from_dim_rank(alg.dim, rank), rank


def analyze_structure(alg: LieAlgebra, seed=0, _depth=0) -> StructureReport:
    """Full structural report: derived/center/Killing/rank/centroid, ideal
    splitting over the scalar field, and honest type labels."""
    n = alg.dim
    if alg.cartan is not None and alg.generators is None:
        _derive_chevalley_generators(alg)
    derived = derived_subspace(alg)
    center = center_subspace(alg)
    gram = killing_gram(alg)
    k_rank = matrix_rank(gram, n)
    rank = estimated_rank(alg, seed=seed)
    semisimple = (n > 0 and k_rank == n)
    abelian = derived.dim == 0
    cbasis = centroid_basis(alg)
    report = StructureReport(
        dim=n, derived_dim=derived.dim, center_dim=center.dim,
        killing_rank=k_rank, rank=rank, semisimple=semisimple,
        abelian=abelian, reductive=False, centroid_dim=len(cbasis))
    report.notes.append(alg.convention)

    if semisimple:
        ideals, fully = _split_by_centroid(alg, cbasis, seed=seed)
        if not fully:
            report.notes.append(
                "centroid splitting incomplete over Q(zeta_%d); composite "
                "pieces reported unsplit" % alg.conductor)
        labels = []
        for piece in ideals:
            if piece.dim == n and len(ideals) == 1:
                sub = alg
            else:
                sub, _ = subalgebra(alg, piece, check_closed=False)
            if len(ideals) == 1 and len(cbasis) == 1:
                label, prank = _identify_simple(sub, seed=seed)
                report.ideals.append(IdealReport(sub.dim, prank, label))
                labels.append(label)
            elif _depth < 4:
                inner = analyze_structure(sub, seed=seed, _depth=_depth + 1)
                if inner.ideals:
                    report.ideals.extend(inner.ideals)
                    labels.extend(i.type_label for i in inner.ideals)
                else:
                    label, prank = _identify_simple(sub, seed=seed)
                    report.ideals.append(IdealReport(sub.dim, prank, label,
                                                     split_over_field=fully))
                    labels.append(label)
        report.reductive = True
        report.type_label = "+".join(sorted(labels)) if labels else "0"
        return report

    if abelian:
        report.reductive = True
        report.type_label = "abelian(%d)" % n
        return report

    # non-semisimple, non-abelian: reductive iff center (+) derived = algebra
    # with semisimple derived part
    if center.dim + derived.dim == n and center.intersect(derived).dim == 0:
        dsub, _ = subalgebra(alg, derived, check_closed=False)
        inner = analyze_structure(dsub, seed=seed, _depth=_depth + 1)
        if inner.semisimple:
            report.reductive = True
            report.derived_ideals = inner.ideals
            report.type_label = "abelian(%d)+%s" % (center.dim,
                                                    inner.type_label)
            return report
    report.type_label = "non-reductive"
    return report


def analyze_subspace(alg: LieAlgebra, space: Subspace, seed=0,
                     descriptor=None) -> StructureReport:
    """Analyze a bracket-closed subspace of an ambient algebra."""
    sub, _ = subalgebra(alg, space, descriptor=descriptor)
    return analyze_structure(sub, seed=seed)
