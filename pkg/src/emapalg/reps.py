"""Finite-dimensional representations as exact matrices.

A MatrixRep maps a spanning set of its source (a Lie algebra basis, a
subalgebra basis, or a window basis) to square matrices; bracket compatibility
is verified on construction for every stored pair whose bracket is available
(window pairs whose product degree leaves the window are skipped).

Irreducibility is certified by Burnside closure: the module is absolutely
irreducible iff the unital associative algebra generated by the image matrices
is the full endomorphism algebra.  Intertwiner spaces are computed by exact
linear solves, with a diagonal-operator matching pass that collapses the
unknowns for weight-diagonal actions before the general constraints run.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AlgebraError, RepresentationError
from .exactmath import (
    Scalar, SparseEchelon, Subspace, identity_matrix, kernel_subspace,
    matrix_rank, one, rref, vec_is_zero, zero,
)
from .liealg import LieAlgebra, derived_subspace, killing_gram, subalgebra


# ---------------------------------------------------------------------------
# sources


class LieSource:
    """Spanning set = the basis of a Lie algebra."""

    def __init__(self, algebra: LieAlgebra):
        self.algebra = algebra
        self.nkeys = algebra.dim
        self.conductor = algebra.conductor

    def bracket_coords(self, i, j):
        coords = [zero(self.conductor)] * self.nkeys
        for k, c in self.algebra.bracket_basis(i, j):
            coords[k] = c
        return coords

    def describe(self):
        return "lie:" + self.algebra.descriptor


class SubspaceSource:
    """Spanning set = the canonical basis of a bracket-closed subspace."""

    def __init__(self, algebra: LieAlgebra, space: Subspace):
        self.algebra = algebra
        self.space = space
        self.nkeys = space.dim
        self.conductor = algebra.conductor

    def bracket_coords(self, i, j):
        w = self.algebra.bracket_vec(self.space.rows[i], self.space.rows[j])
        return list(self.space.coords(w))

    def describe(self):
        return "subalgebra(dim=%d)" % self.nkeys


class WindowSource:
    """Spanning set = the flat basis of a map-algebra window."""

    def __init__(self, window):
        self.window = window
        self.nkeys = window.total_dim
        self.conductor = window.bundle.scheme.conductor
        self._flat = window.basis_list()

    def bracket_coords(self, i, j):
        from .errors import DomainError
        try:
            br = self.window.bracket(self._flat[i][1], self._flat[j][1])
        except DomainError:
            return None
        return list(self.window.coords(br))

    def describe(self):
        return "window(dim=%d)" % self.nkeys


# ---------------------------------------------------------------------------
# matrix helpers


def mat_mul(a, b):
    n = len(a)
    m = len(b[0])
    z = a[0][0] - a[0][0] if n else None
    out = []
    for i in range(n):
        row = [z] * m
        for k, x in enumerate(a[i]):
            if x.is_zero():
                continue
            brow = b[k]
            for j in range(m):
                y = brow[j]
                if not y.is_zero():
                    row[j] = row[j] + x * y
        out.append(tuple(row))
    return tuple(out)


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def mat_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def mat_trace(a):
    t = a[0][0]
    for i in range(1, len(a)):
        t = t + a[i][i]
    return t


def kron(a, b):
    nb = len(b)
    out = []
    for ra in a:
        for rb in b:
            out.append(tuple(x * y for x in ra for y in rb))
    return tuple(out)


def mat_is_diagonal(a):
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if i != j and not x.is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# MatrixRep


class MatrixRep:
    """Exact matrix representation of a spanning set."""

    def __init__(self, source, mats, check=True, label=""):
        self.source = source
        self.mats = [tuple(tuple(row) for row in m) for m in mats]
        if len(self.mats) != source.nkeys:
            raise RepresentationError("one matrix per spanning element "
                                      "required", got=len(self.mats),
                                      expected=source.nkeys)
        self.dim = len(self.mats[0]) if self.mats else 0
        self.conductor = source.conductor
        self.label = label
        if check:
            self.verify_brackets()

    def verify_brackets(self):
        n = self.source.nkeys
        for i in range(n):
            for j in range(i + 1, n):
                coords = self.source.bracket_coords(i, j)
                if coords is None:
                    continue
                target = None
                for k, c in enumerate(coords):
                    if c.is_zero():
                        continue
                    t = mat_scale(c, self.mats[k])
                    target = t if target is None else \
                        tuple(tuple(x + y for x, y in zip(ra, rb))
                              for ra, rb in zip(target, t))
                comm = mat_sub(mat_mul(self.mats[i], self.mats[j]),
                               mat_mul(self.mats[j], self.mats[i]))
                if target is None:
                    if not mat_is_zero(comm):
                        raise RepresentationError(
                            "bracket compatibility fails", pair=(i, j))
                elif not mat_is_zero(mat_sub(comm, target)):
                    raise RepresentationError(
                        "bracket compatibility fails", pair=(i, j))

    def apply_coords(self, coords):
        acc = None
        for c, m in zip(coords, self.mats):
            if c.is_zero():
                continue
            t = mat_scale(c, m)
            acc = t if acc is None else tuple(
                tuple(x + y for x, y in zip(ra, rb))
                for ra, rb in zip(acc, t))
        if acc is None:
            z = zero(self.conductor)
            acc = tuple(tuple(z for _ in range(self.dim))
                        for _ in range(self.dim))
        return acc

    def __repr__(self):
        return "MatrixRep(dim=%d, %s)" % (self.dim, self.label or
                                          self.source.describe())


# ---------------------------------------------------------------------------
# constructors


def sl2_weight_matrices(d, conductor):
    """Irreducible sl2 module of highest weight d: (E, F, H) on k^{d+1}."""
    n = d + 1
    z = zero(conductor)
    E = [[z] * n for _ in range(n)]
    F = [[z] * n for _ in range(n)]
    H = [[z] * n for _ in range(n)]
    for i in range(n):
        H[i][i] = Scalar.from_rational(d - 2 * i, conductor)
        if i + 1 < n:
            F[i + 1][i] = one(conductor)
            E[i][i + 1] = Scalar.from_rational((i + 1) * (d - i), conductor)
    return tuple(map(tuple, E)), tuple(map(tuple, F)), tuple(map(tuple, H))


def build_irrep(spec, algebra: LieAlgebra, check=True) -> MatrixRep:
    kind = spec[0]
    src = LieSource(algebra)
    cond = algebra.conductor
    if kind == "sl2_weight":
        d = int(spec[1])
        if d < 0:
            raise RepresentationError("highest weight must be >= 0")
        if algebra.dim != 3 or not algebra.generators:
            raise RepresentationError(
                "sl2 weight modules need a three-dimensional algebra with a "
                "marked (e, f, h) triple", dim=algebra.dim)
        e, f, h = algebra.generators[0]
        E, F, H = sl2_weight_matrices(d, cond)
        from .exactmath import basis_solver
        solve = basis_solver([e, f, h], 3, cond)
        mats = []
        for i in range(3):
            ce, cf, ch = solve(algebra.basis_vector(i))
            m = mat_scale(ce, E)
            m = tuple(tuple(x + y for x, y in zip(ra, rb))
                      for ra, rb in zip(m, mat_scale(cf, F)))
            m = tuple(tuple(x + y for x, y in zip(ra, rb))
                      for ra, rb in zip(m, mat_scale(ch, H)))
            mats.append(m)
        return MatrixRep(src, mats, check=check, label="V(%d)" % d)
    if kind == "defining":
        if not algebra.defining:
            raise RepresentationError("algebra has no defining matrices")
        size, mats = algebra.defining
        dense = []
        z = zero(cond)
        for m in mats:
            rows = [[z] * size for _ in range(size)]
            for (i, j), v in m.items():
                rows[i][j] = v
            dense.append(tuple(map(tuple, rows)))
        return MatrixRep(src, dense, check=check, label="defining")
    if kind == "one_dim":
        coeffs = list(spec[1])
        if len(coeffs) != algebra.dim:
            raise RepresentationError("functional has wrong length")
        der = derived_subspace(algebra)
        for row in der.rows:
            val = zero(cond)
            for c, x in zip(coeffs, row):
                val = val + c * x
            if not val.is_zero():
                raise RepresentationError(
                    "one-dimensional functional must kill the derived "
                    "subalgebra")
        mats = [((c,),) for c in coeffs]
        return MatrixRep(src, mats, check=check, label="one-dim")
    if kind == "matrices":
        return MatrixRep(src, spec[1], check=True, label="user")
    raise RepresentationError("unknown representation spec", kind=kind)


def trivial_rep(source) -> MatrixRep:
    z = zero(source.conductor)
    mats = [((z,),) for _ in range(source.nkeys)]
    return MatrixRep(source, mats, check=False, label="trivial")


def tensor_rep(r1: MatrixRep, r2: MatrixRep, check=True) -> MatrixRep:
    """Leibniz action a -> a (x) 1 + 1 (x) a on V1 (x) V2; same source."""
    if r1.source.nkeys != r2.source.nkeys:
        raise RepresentationError("tensor factors have different sources")
    cond = r1.conductor
    i1 = identity_matrix(r1.dim, cond)
    i2 = identity_matrix(r2.dim, cond)
    mats = []
    for a, b in zip(r1.mats, r2.mats):
        m = kron(a, i2)
        m2 = kron(i1, b)
        mats.append(tuple(tuple(x + y for x, y in zip(ra, rb))
                          for ra, rb in zip(m, m2)))
    return MatrixRep(r1.source, mats, check=check,
                     label="%s(x)%s" % (r1.label, r2.label))


def evaluation_rep(window, assignments, check=True) -> MatrixRep:
    """Evaluation representation of a window at points in distinct orbits.

    assignments: list of (point, MatrixRep over the canonical g^x basis)."""
    from .emap import evaluation_map
    bundle = window.bundle
    cond = bundle.scheme.conductor
    points = [p for p, _r in assignments]
    ev = evaluation_map(window, points)   # validates distinct orbits
    for (p, rep), gx in zip(assignments, ev.gx_spaces):
        if rep.source.nkeys != gx.dim:
            raise RepresentationError(
                "representation is not defined on g^x",
                point=tuple(c.text() for c in p),
                expected=gx.dim, got=rep.source.nkeys)
    src = WindowSource(window)
    if not assignments:
        return trivial_rep(src)
    dims = [rep.dim for _p, rep in assignments]
    total = 1
    for d in dims:
        total *= d
    mats = []
    flat = window.basis_list()
    for _orbit, el in flat:
        acc = None
        for j, ((p, rep), gx) in enumerate(zip(assignments, ev.gx_spaces)):
            val = window.evaluate_element(el, p)
            coords = gx.coords(val)
            local = rep.apply_coords(coords)
            before = 1
            for d in dims[:j]:
                before *= d
            after = 1
            for d in dims[j + 1:]:
                after *= d
            m = kron(identity_matrix(before, cond),
                     kron(local, identity_matrix(after, cond)))
            acc = m if acc is None else tuple(
                tuple(x + y for x, y in zip(ra, rb))
                for ra, rb in zip(acc, m))
        mats.append(acc)
    return MatrixRep(src, mats, check=check, label="ev")


def gx_rep_from_label(bundle, point, label, check=True) -> MatrixRep:
    """Representation of g^x from a label: sl2 weight, defining, one-dim."""
    from .orbits import gx_quotient_data
    alg = bundle.algebra
    cond = alg.conductor
    stab = bundle.stabilizer(point)
    gx = bundle.fixed_lie_subspace(stab)
    kind = label[0]
    if kind in ("sl2_weight", "defining"):
        if gx.dim != alg.dim:
            raise RepresentationError(
                "label needs the full algebra at this point; the stabilizer "
                "is nontrivial", point=tuple(c.text() for c in point))
        return build_irrep(label, alg, check=check)
    if kind == "one_dim":
        gxs, der, comp = gx_quotient_data(bundle, point)
        if comp.dim == 0:
            value = label[1]
            if not value.is_zero():
                raise RepresentationError(
                    "nonzero one-dimensional form at a point with perfect "
                    "g^x", point=tuple(c.text() for c in point))
            src = SubspaceSource(alg, gxs)
            return trivial_rep(src)
        if comp.dim != 1:
            raise RepresentationError(
                "one_dim labels need one-dimensional z^x",
                z_dim=comp.dim)
        value = label[1]
        src = SubspaceSource(alg, gxs)
        from .orbits import z_coords
        mats = []
        for i in range(gxs.dim):
            zc = z_coords(gxs, der, comp, gxs.rows[i])
            mats.append(((value * zc[0],),))
        return MatrixRep(src, mats, check=check, label="one-dim")
    if kind == "matrices":
        src = SubspaceSource(alg, gx)
        return MatrixRep(src, label[1], check=True, label="user")
    raise RepresentationError("unsupported label kind", kind=kind)


# ---------------------------------------------------------------------------
# Burnside closure and irreducibility


def _vec_of_mat(m, n):
    out = {}
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if not x.is_zero():
                out[i * n + j] = x
    return out


def associative_closure(rep: MatrixRep, cap=None):
    """Basis of the unital associative algebra generated by the image."""
    n = rep.dim
    cond = rep.conductor
    cap = cap if cap is not None else max(n ** 4, 64)
    ech = SparseEchelon()
    basis = []
    queue = []
    seeds = [identity_matrix(n, cond)] + list(rep.mats)
    for m in seeds:
        if ech.insert(_vec_of_mat(m, n)) is not None:
            basis.append(m)
            queue.append(m)
    products = 0
    gens = [m for m in rep.mats if not mat_is_zero(m)]
    while queue and ech.rank < n * n:
        m = queue.pop(0)
        for g in gens:
            products += 1
            if products > cap:
                raise AlgebraError("closure bound exceeded", cap=cap)
            p = mat_mul(m, g)
            if ech.insert(_vec_of_mat(p, n)) is not None:
                basis.append(p)
                queue.append(p)
    return basis


def burnside_irreducible(rep: MatrixRep) -> bool:
    """True iff the unital image closure is the full matrix algebra."""
    if rep.dim < 1:
        raise RepresentationError("module must be nonzero")
    if rep.dim == 1:
        return True
    basis = associative_closure(rep)
    return len(basis) == rep.dim ** 2


def completely_reducible(rep: MatrixRep) -> bool:
    """Trace-form radical of the unital image closure is zero."""
    basis = associative_closure(rep)
    m = len(basis)
    gram = [[mat_trace(mat_mul(a, b)) for b in basis] for a in basis]
    return matrix_rank(gram, m) == m


# ---------------------------------------------------------------------------
# intertwiners


def intertwiner_dimension(r1: MatrixRep, r2: MatrixRep) -> int:
    """dim { T : T r1(a) = r2(a) T for every stored a }."""
    if r1.source.nkeys != r2.source.nkeys:
        raise RepresentationError("representations have different sources")
    nkeys = r1.source.nkeys
    d1, d2 = r1.dim, r2.dim
    cond = r1.conductor
    params = [(i, j) for i in range(d2) for j in range(d1)]
    general_keys = []
    for k in range(nkeys):
        a, b = r1.mats[k], r2.mats[k]
        if mat_is_diagonal(a) and mat_is_diagonal(b):
            params = [(i, j) for (i, j) in params
                      if (a[j][j] - b[i][i]).is_zero()]
        else:
            general_keys.append(k)
    if not params:
        return 0
    pindex = {p: q for q, p in enumerate(params)}
    rows_map = {}
    z = zero(cond)
    for k in general_keys:
        a, b = r1.mats[k], r2.mats[k]
        for q, (i, j) in enumerate(params):
            # (T^{ij} a - b T^{ij})_{uv}: row i gets a[j][:], column j gets
            # -b[:][i]
            for v in range(d1):
                c = a[j][v]
                if not c.is_zero():
                    key = (k, i, v)
                    rows_map.setdefault(key, {})[q] = \
                        rows_map.get(key, {}).get(q, z) + c
            for u in range(d2):
                c = b[u][i]
                if not c.is_zero():
                    key = (k, u, j)
                    rows_map.setdefault(key, {})[q] = \
                        rows_map.get(key, {}).get(q, z) - c
    rows = []
    for coeffs in rows_map.values():
        row = [z] * len(params)
        for q, c in coeffs.items():
            row[q] = c
        rows.append(row)
    if not rows:
        return len(params)
    return kernel_subspace(rows, len(params), cond).dim


# ---------------------------------------------------------------------------
# one-dimensional factor decomposition


@dataclass
class Decomposition:
    lam: dict           # key -> Scalar, vanishes on brackets
    rho2: MatrixRep
    semisimple_image_dim: int


def decompose_one_dim_factor(rep: MatrixRep,
                             assume_irreducible=False) -> Decomposition:
    """Split an irreducible representation as (one-dim) (x) (semisimple-image).

    The scalar part of each image matrix along Id modulo the derived algebra
    of the image is the one-dimensional factor; subtracting it leaves a
    representation with semisimple image."""
    if not assume_irreducible and not burnside_irreducible(rep):
        raise RepresentationError("decomposition requires an irreducible "
                                  "module")
    n = rep.dim
    cond = rep.conductor
    # Lie closure of the image span
    ech = SparseEchelon()
    basis = []
    queue = []
    for m in rep.mats:
        if ech.insert(_vec_of_mat(m, n)) is not None:
            basis.append(m)
            queue.append(m)
    while queue:
        m = queue.pop(0)
        for b in list(basis):
            c = mat_sub(mat_mul(m, b), mat_mul(b, m))
            if ech.insert(_vec_of_mat(c, n)) is not None:
                basis.append(c)
                queue.append(c)
    # derived span of the image Lie algebra
    der_ech = SparseEchelon()
    der_basis = []
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            c = mat_sub(mat_mul(a, b), mat_mul(b, a))
            if der_ech.insert(_vec_of_mat(c, n)) is not None:
                der_basis.append(c)
    ident = identity_matrix(n, cond)
    id_vec = _vec_of_mat(ident, n)
    if der_ech.contains(id_vec):
        raise RepresentationError(
            "identity lies in the derived image; input cannot be irreducible")
    lam = {}
    z = zero(cond)
    aug = SparseEchelon()
    # echelon over (matrix coords | lambda marker): insert Id with marker
    marker = n * n
    row = dict(id_vec)
    row[marker] = one(cond)
    aug.insert(row)
    for m in der_basis:
        aug.insert(_vec_of_mat(m, n))
    mats2 = []
    for k, m in enumerate(rep.mats):
        lead, residual = aug.reduce(_vec_of_mat(m, n))
        if lead is not None and lead < marker:
            raise RepresentationError(
                "image matrix escapes Id + derived span; not irreducible")
        c = z
        if residual:
            c = -residual.get(marker, z)
        lam[k] = c
        mats2.append(mat_sub(m, mat_scale(c, ident)))
    # lambda must vanish on brackets of the source
    nkeys = rep.source.nkeys
    for i in range(nkeys):
        for j in range(i + 1, nkeys):
            coords = rep.source.bracket_coords(i, j)
            if coords is None:
                continue
            val = z
            for k, c in enumerate(coords):
                if not c.is_zero():
                    val = val + c * lam[k]
            if not val.is_zero():
                raise RepresentationError(
                    "extracted functional fails to kill a bracket")
    rho2 = MatrixRep(rep.source, mats2, check=False, label=rep.label + ":ss")
    ssdim = _semisimple_dim_of_span(der_basis, n, cond)
    return Decomposition(lam, rho2, ssdim)


def _semisimple_dim_of_span(der_basis, n, cond):
    """Verify the derived image is a semisimple Lie algebra; returns its dim."""
    m = len(der_basis)
    if m == 0:
        return 0
    from .exactmath import basis_solver
    flat = [_dense_vec(b, n, cond) for b in der_basis]
    solve = basis_solver(flat, n * n, cond)
    entries = []
    for i in range(m):
        for j in range(i + 1, m):
            c = mat_sub(mat_mul(der_basis[i], der_basis[j]),
                        mat_mul(der_basis[j], der_basis[i]))
            coords = solve(_dense_vec(c, n, cond))
            entries.append((i, j, coords))
    table = {}
    for (i, j, coords) in entries:
        entry = tuple((k, c) for k, c in enumerate(coords) if not c.is_zero())
        if entry:
            table[(i, j)] = entry
    lie = LieAlgebra(cond, ["m%d" % i for i in range(m)], table,
                     "image-derived", check_jacobi=False)
    gram = killing_gram(lie)
    if matrix_rank(gram, m) != m:
        raise RepresentationError("derived image is not semisimple")
    return m


def _dense_vec(mat, n, cond):
    z = zero(cond)
    out = [z] * (n * n)
    for i, row in enumerate(mat):
        for j, x in enumerate(row):
            if not x.is_zero():
                out[i * n + j] = x
    return tuple(out)


def rep_equal(r1: MatrixRep, r2: MatrixRep) -> bool:
    if r1.dim != r2.dim or r1.source.nkeys != r2.source.nkeys:
        return False
    for a, b in zip(r1.mats, r2.mats):
        if not mat_is_zero(mat_sub(a, b)):
            return False
    return True
