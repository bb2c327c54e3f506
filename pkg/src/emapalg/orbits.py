"""Point-level classification data: isotropy algebras g^x, the locus where
they fail to be perfect, and the abelianization-to-center comparison map.

Fixed loci are solved per scheme family: diagonal and monomial actions give
coordinate-wise root equations, Moebius maps give quadratics.  Roots that land
outside the scalar field are counted but reported as unrepresentable rather
than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AlgebraError, DomainError, NotApplicableError
from .exactmath import (
    Scalar, Subspace, one, reduce_against, rref, solve_quadratic, zero,
)
from .liealg import analyze_subspace, derived_subspace, subalgebra
from .symmetry import GroupActionBundle
from .emap import DerivedWindowReport


# ---------------------------------------------------------------------------
# isotropy records


@dataclass
class IsotropyRecord:
    point: tuple
    stabilizer: tuple
    gx: Subspace
    structure: object
    z_dim: int

    def summary(self):
        return {
            "point": tuple(x.text() for x in self.point),
            "stabilizer_order": len(self.stabilizer),
            "gx_dim": self.gx.dim,
            "z_dim": self.z_dim,
            "structure": self.structure.summary(),
        }


def isotropy(bundle: GroupActionBundle, point, seed=0) -> IsotropyRecord:
    stab = bundle.stabilizer(point)
    gx = bundle.fixed_lie_subspace(stab)
    rep = analyze_subspace(bundle.algebra, gx, seed=seed,
                           descriptor="isotropy algebra")
    return IsotropyRecord(tuple(point), stab, gx, rep,
                          gx.dim - rep.derived_dim)


def gx_quotient_data(bundle: GroupActionBundle, point):
    """(g^x, derived, complement) subspace triple for z^x coordinates."""
    stab = bundle.stabilizer(point)
    gx = bundle.fixed_lie_subspace(stab)
    sub, _ = subalgebra(bundle.algebra, gx, check_closed=False)
    der_inner = derived_subspace(sub)
    comp_inner = der_inner.complement_in(
        Subspace.full(sub.dim, bundle.scheme.conductor))
    return gx, der_inner, comp_inner


def z_coords(gx: Subspace, der_inner: Subspace, comp_inner: Subspace, vec):
    """Coordinates of vec (in ambient g) inside z^x = g^x/[g^x, g^x]."""
    coords = gx.coords(vec)
    residual = reduce_against(coords, der_inner.rows, der_inner.pivots)
    return comp_inner.coords(residual) if comp_inner.dim else ()


# ---------------------------------------------------------------------------
# fixed loci

# locus descriptors (per scheme family):
#   ("empty",)
#   ("all",)                          - the whole point set, infinite
#   ("points", [point, ...], missing) - finite; missing counts solutions that
#                                       exist over the closure but not in the
#                                       scalar field
#   ("coords", [descr_1, ..., descr_n])  - product over coordinates, each
#        ("any",) | ("vals", [Scalar, ...], missing)


def _roots_in_field(s: Scalar, m: int):
    """Solutions of t^m = s inside Q(zeta_N); returns (roots, missing)."""
    cond = s.n
    m = int(m)
    assert m != 0
    if m < 0:
        return _roots_in_field(s.inverse(), -m)
    # candidate base root: rational radicals and roots of unity
    base = None
    if s.is_rational():
        frac = s.as_fraction()
        if frac == 0:
            return [], 0
        num, den = frac.numerator, frac.denominator
        for sign in (1, -1):
            rn = _int_nth_root(abs(num), m)
            rd = _int_nth_root(den, m)
            if rn is not None and rd is not None:
                cand = Scalar.from_rational(
                    sign * rn, cond) / Scalar.from_rational(rd, cond)
                if (cand ** m - s).is_zero():
                    base = cand
                    break
    if base is None:
        for cand in _field_roots_of_unity(cond):
            if (cand ** m - s).is_zero():
                base = cand
                break
    if base is None:
        return [], m
    mu = [u for u in _field_roots_of_unity(cond)
          if (u ** m - one(cond)).is_zero()]
    roots = sorted({(base * u).text(): base * u for u in mu}.items())
    found = [v for _k, v in roots]
    return found, m - len(found)


def _int_nth_root(a: int, m: int):
    if a == 0:
        return 0
    lo, hi = 0, max(a, 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** m < a:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** m == a else None


def _field_roots_of_unity(cond):
    out = [one(cond), Scalar.from_rational(-1, cond)]
    if cond > 2:
        z = Scalar.zeta(cond)
        acc = z
        for _ in range(cond - 1):
            out.append(acc)
            out.append(-acc)
            acc = acc * z
    seen = {}
    for v in out:
        seen.setdefault(v.text(), v)
    return list(seen.values())


def fixed_locus_of_element(bundle: GroupActionBundle, a):
    """Fixed locus descriptor of one group element on the scheme."""
    sch = bundle.scheme
    pm = bundle.point_of[a]
    cond = sch.conductor
    if pm.kind == "moebius":
        (ma, mb), (mc, md) = pm.mat
        if pm.is_identity():
            return ("all",)
        roots, ok = solve_quadratic(mc, md - ma, -mb)
        missing = 0
        if not ok:
            disc = (md - ma) * (md - ma) + Scalar.from_rational(4, cond) * mc * mb
            return ("points", [], 2)
        pts = []
        for r in roots:
            try:
                sch.check_point((r,))
                pts.append((r,))
            except DomainError:
                continue
        return ("points", pts, missing)
    # monomial map
    E, scal = pm.E, pm.scalars
    n = sch.nvars
    diagonal = all(E[i][j] == (1 if i == j else 0) or (i != j and E[i][j] == 0)
                   for i in range(n) for j in range(n)) or \
        all(E[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    if not diagonal:
        return ("undetermined",)
    descrs = []
    for i in range(n):
        e, s = E[i][i], scal[i]
        if sch.family == "torus":
            m = 1 - e
            if m == 0:
                if (s - one(cond)).is_zero():
                    descrs.append(("any",))
                else:
                    return ("empty",)
            else:
                roots, missing = _roots_in_field(s, m)
                roots = [r for r in roots if not r.is_zero()]
                descrs.append(("vals", roots, missing))
        else:
            # affine-type coordinates: x = s*x, so x free when s = 1, else 0
            if e != 1:
                return ("undetermined",)
            if (s - one(cond)).is_zero():
                descrs.append(("any",))
            else:
                descrs.append(("vals", [zero(cond)], 0))
    if sch.family == "graded_quotient":
        return _curve_locus(sch, descrs)
    return ("coords", descrs)


def _curve_locus(sch, descrs):
    """Intersect a coordinate-wise locus with the curve relation (2 vars)."""
    if sch.nvars != 2:
        return ("undetermined",)
    lead_var, lead_exp, rhs, _coef = sch.relation
    other = 1 - lead_var
    forced = [d[0] == "vals" for d in descrs]
    cond = sch.conductor
    z = zero(cond)
    if not any(forced):
        return ("all",)
    if all(forced):
        pt = tuple(z for _ in range(2))
        try:
            sch.check_point(pt)
            return ("points", [pt], 0)
        except DomainError:
            return ("empty",)
    if forced[lead_var]:
        # 0 = x^e: the free variable must vanish when its exponent is positive
        if rhs[other] > 0:
            pt = (z, z)
            sch.check_point(pt)
            return ("points", [pt], 0)
        return ("empty",)
    # lead variable free, other forced to zero: v^p = 0
    if rhs[other] > 0:
        pt = (z, z)
        sch.check_point(pt)
        return ("points", [pt], 0)
    return ("undetermined",)


def intersect_loci(bundle, loci):
    """Intersection of locus descriptors (all of one scheme family)."""
    sch = bundle.scheme
    cur = ("all",)
    for loc in loci:
        cur = _intersect_two(sch, cur, loc)
        if cur[0] == "empty":
            return cur
    return cur


def _point_key(p):
    return tuple(x.text() for x in p)


def _intersect_two(sch, a, b):
    order = {"empty": 0, "points": 1, "coords": 2, "all": 3, "undetermined": 4}
    if a[0] == "all":
        return b
    if b[0] == "all":
        return a
    if a[0] == "empty" or b[0] == "empty":
        return ("empty",)
    if a[0] == "undetermined" or b[0] == "undetermined":
        return ("undetermined",)
    if a[0] == "points" and b[0] == "points":
        keys = {_point_key(p) for p in b[1]}
        pts = [p for p in a[1] if _point_key(p) in keys]
        return ("points", pts, max(a[2], b[2]))
    if a[0] == "points" and b[0] == "coords":
        pts = [p for p in a[1] if _coords_contain(b[1], p)]
        return ("points", pts, a[2])
    if b[0] == "points" and a[0] == "coords":
        return _intersect_two(sch, b, a)
    if a[0] == "coords" and b[0] == "coords":
        descrs = []
        for da, db in zip(a[1], b[1]):
            if da[0] == "any":
                descrs.append(db)
            elif db[0] == "any":
                descrs.append(da)
            else:
                keys = {v.text() for v in db[1]}
                vals = [v for v in da[1] if v.text() in keys]
                descrs.append(("vals", vals, max(da[2], db[2])))
        if any(d[0] == "vals" and not d[1] and d[2] == 0 for d in descrs):
            return ("empty",)
        return ("coords", descrs)
    raise AlgebraError("unsupported locus intersection", kinds=(a[0], b[0]))


def _coords_contain(descrs, point):
    for d, x in zip(descrs, point):
        if d[0] == "any":
            continue
        if not any((x - v).is_zero() for v in d[1]):
            return False
    return True


def locus_is_finite(loc):
    if loc[0] in ("empty", "points"):
        return True
    if loc[0] == "all":
        return False
    if loc[0] == "coords":
        return all(d[0] == "vals" for d in loc[1])
    return None   # undetermined


def locus_points(bundle, loc):
    """Enumerate the in-field points of a finite locus; (points, missing)."""
    sch = bundle.scheme
    if loc[0] == "empty":
        return [], 0
    if loc[0] == "points":
        return list(loc[1]), loc[2]
    if loc[0] == "coords":
        pts = [()]
        missing = 0
        for d in loc[1]:
            vals, miss = d[1], d[2]
            missing = max(missing, miss)
            pts = [p + (v,) for p in pts for v in vals]
        good = []
        for p in pts:
            try:
                sch.check_point(p)
                good.append(p)
            except DomainError:
                continue
        return good, missing
    raise AlgebraError("locus is not finite")


def locus_text(loc):
    if loc[0] == "empty":
        return "empty"
    if loc[0] == "all":
        return "all of X (infinite)"
    if loc[0] == "undetermined":
        return "undetermined"
    if loc[0] == "points":
        body = ", ".join("(" + ",".join(x.text() for x in p) + ")"
                         for p in loc[1])
        extra = " (+%d outside scalar field)" % loc[2] if loc[2] else ""
        return "{%s}%s" % (body, extra)
    if loc[0] == "coords":
        parts = []
        for d in loc[1]:
            if d[0] == "any":
                parts.append("*")
            else:
                parts.append("{" + ",".join(v.text() for v in d[1]) + "}")
        fin = locus_is_finite(loc)
        return "x".join(parts) + ("" if fin else " (infinite)")
    return str(loc)


# ---------------------------------------------------------------------------
# tilde analysis


@dataclass
class TildeRow:
    subgroup_order: int
    class_size: int
    gx_dim: int
    gx_perfect: bool
    locus: str
    stratum: str            # "empty" | "finite" | "infinite" | "undetermined"
    contributes: bool


@dataclass
class TildeReport:
    verdict: str            # "empty" | "finite" | "infinite" | "undetermined"
    rows: list
    points: list            # canonical orbit representatives of tilde X
    missing: int
    notes: list = field(default_factory=list)

    def summary(self):
        return {
            "verdict": self.verdict,
            "points": [tuple(x.text() for x in p) for p in self.points],
            "rows": [{
                "subgroup_order": r.subgroup_order,
                "class_size": r.class_size,
                "gx_dim": r.gx_dim,
                "gx_perfect": r.gx_perfect,
                "locus": r.locus,
                "stratum": r.stratum,
                "contributes": r.contributes,
            } for r in self.rows],
            "missing_points": self.missing,
            "notes": list(self.notes),
        }


def tilde_analysis(bundle: GroupActionBundle, seed=0) -> TildeReport:
    grp = bundle.group
    alg = bundle.algebra
    classes = grp.subgroups_up_to_conjugacy()
    rows = []
    infinite = False
    undetermined = False
    candidate_points = {}
    missing_total = 0
    locus_of = {}
    for sub, conj in classes:
        for hgrp in conj:
            loci = [fixed_locus_of_element(bundle, a) for a in hgrp if a != 0]
            locus_of[hgrp] = intersect_loci(bundle, loci) if loci else ("all",)
    for sub, conj in classes:
        gh = bundle.fixed_lie_subspace(sub)
        sub_alg, _ = subalgebra(alg, gh, check_closed=False)
        perfect = derived_subspace(sub_alg).dim == sub_alg.dim and gh.dim > 0
        if gh.dim == 0:
            perfect = True   # zero algebra is perfect: [0,0] = 0
        loc = locus_of[sub]
        fin = locus_is_finite(loc)
        if fin is None:
            stratum = "undetermined"
            if not perfect:
                undetermined = True
        elif fin:
            pts, missing = locus_points(bundle, loc)
            exact = [p for p in pts
                     if tuple(bundle.stabilizer(p)) == tuple(sub)]
            stratum = "finite" if (exact or missing) else "empty"
            if not perfect:
                missing_total += missing
                for p in exact:
                    candidate_points[_point_key(p)] = p
                # conjugate subgroups contribute the orbit images
                for hgrp in locus_of:
                    if hgrp == sub:
                        continue
        else:
            # infinite fixed locus; the stratum is infinite unless a strictly
            # larger subgroup has the same locus
            bigger_same = False
            for sub2, _conj2 in classes:
                if len(sub2) > len(sub) and set(sub) <= set(sub2):
                    if locus_of.get(sub2) == loc:
                        bigger_same = True
            stratum = "undetermined" if bigger_same else "infinite"
            if not perfect:
                if stratum == "infinite":
                    infinite = True
                else:
                    undetermined = True
        rows.append(TildeRow(len(sub), len(conj), gh.dim, perfect,
                             locus_text(loc), stratum, not perfect and
                             stratum not in ("empty",)))
    # collect candidate points from every subgroup's finite locus, then keep
    # those whose own isotropy algebra is not perfect
    if not infinite and not undetermined:
        for hgrp, loc in locus_of.items():
            if locus_is_finite(loc) and loc[0] != "empty":
                pts, _miss = locus_points(bundle, loc)
                for p in pts:
                    candidate_points.setdefault(_point_key(p), p)
    points = []
    seen_orbits = set()
    if not infinite and not undetermined:
        for key in sorted(candidate_points):
            p = candidate_points[key]
            stab = bundle.stabilizer(p)
            gx = bundle.fixed_lie_subspace(stab)
            sub_alg, _ = subalgebra(alg, gx, check_closed=False)
            perfect = (gx.dim == 0 or
                       derived_subspace(sub_alg).dim == sub_alg.dim)
            if perfect:
                continue
            okey = bundle.orbit_key(p)
            if okey in seen_orbits:
                continue
            seen_orbits.add(okey)
            points.append(bundle.canonical_representative(p))
    if infinite:
        verdict = "infinite"
    elif undetermined:
        verdict = "undetermined"
    elif points or missing_total:
        verdict = "finite"
    else:
        verdict = "empty"
    notes = []
    if missing_total:
        notes.append("%d fixed points exist over the closure but are not "
                     "representable in Q(zeta_%d)"
                     % (missing_total, bundle.scheme.conductor))
    return TildeReport(verdict, rows, points, missing_total, notes)


# ---------------------------------------------------------------------------
# the gamma map


@dataclass
class GammaReport:
    domain_dim: int
    target_dims: list
    rank: int
    kernel_dim: int
    surjective: bool
    points: list

    def summary(self):
        return {
            "domain_dim": self.domain_dim,
            "target_dims": list(self.target_dims),
            "rank": self.rank,
            "kernel_dim": self.kernel_dim,
            "surjective": self.surjective,
            "points": [tuple(x.text() for x in p) for p in self.points],
        }


def gamma_kernel(derived_report: DerivedWindowReport,
                 bundle: GroupActionBundle, tilde: TildeReport) -> GammaReport:
    """gamma: M/[M, M] -> (+)_x z^x over tilde representatives, on the window.

    Requires a finite tilde verdict with all points representable and a
    materialized derived report."""
    if tilde.verdict in ("infinite", "undetermined"):
        raise NotApplicableError(
            "gamma is defined only when tilde X is finite",
            verdict=tilde.verdict)
    if tilde.missing:
        raise NotApplicableError(
            "tilde X has points outside the scalar field; enlarge the "
            "conductor")
    window = derived_report.window
    if window is None or derived_report.bracket_in_window is None:
        raise NotApplicableError("derived report was not materialized")
    reps = derived_report.quotient_reps
    pts = tilde.points
    data = [gx_quotient_data(bundle, p) for p in pts]
    rows = []
    for el in reps:
        concat = []
        for p, (gx, der, comp) in zip(pts, data):
            val = window.evaluate_element(el, p)
            concat.extend(z_coords(gx, der, comp, val))
        rows.append(concat)
    target = sum(comp.dim for (_gx, _der, comp) in data)
    from .exactmath import matrix_rank
    rank = matrix_rank(rows, target) if rows and target else 0
    return GammaReport(len(reps), [comp.dim for (_g, _d, comp) in data],
                       rank, len(reps) - rank, rank == target, list(pts))
