"""Parameter space of evaluation representations: finitely supported
equivariant assignments of representation classes to points, canonical forms,
assembled evaluation representations, regime decisions, and the translation
between highest-weight polynomial tuples and supported assignments for the
untwisted loop case.

Label kinds:
  ("sl2_weight", d)        explicit-capable; transport-stable (sl2 has only
                           inner automorphisms)
  ("defining",)            explicit-capable
  ("one_dim", Scalar)      functional on z^x; requires z^x nonzero for a
                           nonzero value
  ("matrices", mats)       explicit matrices over the canonical g^x basis
  ("weight", type, coords) dominant-weight bookkeeping label; carries no
                           module matrices and refuses operations that need
                           them
  ("rep", MatrixRep)       internal: materialized representation
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    AlgebraError, ConfigError, DomainError, NotApplicableError,
    RepresentationError,
)
from .exactmath import Scalar, one, zero
from .liealg import analyze_subspace, derived_subspace, subalgebra
from .symmetry import GroupActionBundle
from .emap import MapAlgebraWindow, derived_window, perfectness_certificate
from .orbits import gamma_kernel, gx_quotient_data, tilde_analysis, z_coords
from .reps import (
    MatrixRep, build_irrep, burnside_irreducible, evaluation_rep,
    gx_rep_from_label, intertwiner_dimension, tensor_rep, trivial_rep,
)


# ---------------------------------------------------------------------------
# labels


def label_is_trivial(label):
    kind = label[0]
    if kind == "sl2_weight":
        return int(label[1]) == 0
    if kind == "one_dim":
        return label[1].is_zero()
    if kind == "weight":
        return all(int(c) == 0 for c in label[2])
    if kind == "rep":
        return label[1].dim == 1 and all(
            m[0][0].is_zero() for m in label[1].mats)
    return False


def label_text(label):
    kind = label[0]
    if kind == "sl2_weight":
        return "V(%d)" % label[1]
    if kind == "one_dim":
        return "form(%s)" % label[1].text()
    if kind == "weight":
        return "weight[%s](%s)" % (label[1], ",".join(str(c)
                                                      for c in label[2]))
    if kind == "defining":
        return "defining"
    if kind == "matrices":
        return "matrices(dim=%d)" % len(label[1][0])
    if kind == "rep":
        return "rep(dim=%d)" % label[1].dim
    return str(label)


def label_key(label):
    """Deterministic comparison key for conflict checks and dedup."""
    kind = label[0]
    if kind == "sl2_weight":
        return ("sl2_weight", int(label[1]))
    if kind == "one_dim":
        return ("one_dim", label[1].text())
    if kind == "weight":
        return ("weight", label[1], tuple(int(c) for c in label[2]))
    if kind == "defining":
        return ("defining",)
    if kind in ("matrices", "rep"):
        rep = label[1]
        if kind == "rep":
            mats = rep.mats
        else:
            mats = label[1]
        return ("mats", tuple(tuple(tuple(x.text() for x in row)
                                    for row in m) for m in mats))
    return (str(label),)


# ---------------------------------------------------------------------------
# equivariant functions


@dataclass
class EquivariantFunction:
    bundle: GroupActionBundle
    entries: list      # [(canonical point, label)] sorted by orbit key

    @property
    def support_size(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def text(self):
        if not self.entries:
            return "0"
        return "; ".join("%s -> %s" % ("(" + ",".join(x.text() for x in p)
                                       + ")", label_text(lab))
                         for p, lab in self.entries)

    def records(self):
        return [{"point": [x.text() for x in p], "label": label_text(lab)}
                for p, lab in self.entries]

    def canonical_key(self):
        return tuple((tuple(x.text() for x in p), label_key(lab))
                     for p, lab in self.entries)


def _node_permutation_of(bundle, a):
    """Dynkin-node permutation of a group element for diagram-declared
    bundles, or None."""
    perms = []
    r = len(bundle.algebra.generators or ())
    for recipe in bundle.gen_recipes:
        if recipe and recipe[0] == "diagram":
            perms.append(dict(recipe[1]))
        elif recipe and recipe[0] == "trivial":
            perms.append({i: i for i in range(r)})
        else:
            return None
    full = {i: i for i in range(r)}
    for gi in bundle.group.words[a]:
        step = perms[gi]
        full = {i: step.get(full[i], full[i]) for i in full}
    return full


def _validate_label(bundle, point, label):
    alg = bundle.algebra
    stab = bundle.stabilizer(point)
    gx = bundle.fixed_lie_subspace(stab)
    kind = label[0]
    if kind in ("sl2_weight", "defining", "matrices", "one_dim"):
        gx_rep_from_label(bundle, point, label)   # raises when invalid
        return
    if kind == "rep":
        if label[1].source.nkeys != gx.dim:
            raise RepresentationError("materialized label has wrong source "
                                      "dimension")
        return
    if kind == "weight":
        coords = [int(c) for c in label[2]]
        if any(c < 0 for c in coords):
            raise RepresentationError("dominant weights need nonnegative "
                                      "coordinates")
        sub, _ = subalgebra(alg, gx, check_closed=False)
        rep = analyze_subspace(alg, gx)
        types = [i.type_label for i in rep.ideals] or [rep.type_label]
        gx_type = "+".join(sorted(types)) if len(types) > 1 else types[0]
        if gx_type != label[1]:
            raise RepresentationError(
                "weight label type does not match the isotropy algebra",
                expected=gx_type, got=label[1])
        if len(coords) != rep.rank:
            raise RepresentationError("weight coordinate count does not "
                                      "match the isotropy rank",
                                      rank=rep.rank)
        if len(stab) > 1 and _node_permutation_of(bundle, stab[1]) is None:
            raise RepresentationError(
                "dominant-weight labels at points with nontrivial stabilizer "
                "need a diagram-declared action")
        return
    raise RepresentationError("unknown label kind", kind=kind)


def _transport_label(bundle, label, g, src_point, dst_point):
    """Label class moved along g with g . src = dst: rho -> rho . g^{-1}."""
    kind = label[0]
    alg = bundle.algebra
    if kind in ("sl2_weight", "weight", "defining"):
        # sl2: all automorphisms are inner, classes are stable; weight
        # labels live in the isotropy algebra's own lattice and the diagram
        # identification preserves coordinates; the defining family is
        # transported as matrices below only when comparison demands it
        return label
    if kind == "one_dim":
        # lambda' = lambda . g^{-1} on z^{dst}
        ginv = bundle.group.inverse[g]
        gxs_d, der_d, comp_d = gx_quotient_data(bundle, dst_point)
        gxs_s, der_s, comp_s = gx_quotient_data(bundle, src_point)
        if comp_d.dim == 0:
            return label
        # generator of z^{dst} embedded in g (comp rows are g^x coordinates)
        from .exactmath import vec_add, vec_scale, zero_vector
        acc = zero_vector(alg.dim, alg.conductor)
        for coef, row in zip(comp_d.rows[0], gxs_d.rows):
            if not coef.is_zero():
                acc = vec_add(acc, vec_scale(coef, row))
        back = bundle.lie_of[ginv].apply(acc)
        zc = z_coords(gxs_s, der_s, comp_s, back)
        return ("one_dim", label[1] * zc[0])
    if kind in ("matrices", "rep"):
        rep = label[1] if kind == "rep" else \
            gx_rep_from_label(bundle, src_point, label)
        ginv = bundle.group.inverse[g]
        gxs_d = bundle.fixed_lie_subspace(bundle.stabilizer(dst_point))
        gxs_s = bundle.fixed_lie_subspace(bundle.stabilizer(src_point))
        mats = []
        for row in gxs_d.rows:
            back = bundle.lie_of[ginv].apply(row)
            mats.append(rep.apply_coords(gxs_s.coords(back)))
        from .reps import SubspaceSource
        return ("rep", MatrixRep(SubspaceSource(alg, gxs_d), mats,
                                 check=True))
    raise RepresentationError("cannot transport label", kind=kind)


def canonicalize_psi(bundle: GroupActionBundle, raw) -> EquivariantFunction:
    """Merge raw (point, label) assignments into a canonical equivariant
    function: one lexicographically least representative per orbit, labels
    transported there, conflicts rejected."""
    staged = {}
    for point, label in raw:
        point = tuple(point)
        bundle.scheme.check_point(point)
        _validate_label(bundle, point, label)
        if label_is_trivial(label):
            continue
        rep_point = bundle.canonical_representative(point)
        g = bundle.transporter(point, rep_point)
        moved = _transport_label(bundle, label, g, point, rep_point)
        key = bundle.orbit_key(point)
        if key in staged:
            if label_key(staged[key][1]) != label_key(moved):
                raise RepresentationError(
                    "conflicting labels on one orbit",
                    orbit=key, left=label_text(staged[key][1]),
                    right=label_text(moved))
        else:
            staged[key] = (rep_point, moved)
    entries = [staged[k] for k in sorted(staged)]
    return EquivariantFunction(bundle, entries)


def psi_tensor(a: EquivariantFunction, b: EquivariantFunction) \
        -> EquivariantFunction:
    if a.bundle is not b.bundle:
        raise ConfigError("tensor needs assignments over one bundle")
    by_key_a = {a.bundle.orbit_key(p): (p, lab) for p, lab in a.entries}
    by_key_b = {b.bundle.orbit_key(p): (p, lab) for p, lab in b.entries}
    merged = []
    for key in sorted(set(by_key_a) | set(by_key_b)):
        if key not in by_key_a:
            merged.append(by_key_b[key])
            continue
        if key not in by_key_b:
            merged.append(by_key_a[key])
            continue
        p, lab1 = by_key_a[key]
        _p2, lab2 = by_key_b[key]
        merged.append((p, _tensor_labels(a.bundle, p, lab1, lab2)))
    merged = [(p, lab) for p, lab in merged if not label_is_trivial(lab)]
    return EquivariantFunction(a.bundle, merged)


def _tensor_labels(bundle, point, lab1, lab2):
    k1, k2 = lab1[0], lab2[0]
    if k1 == "weight" or k2 == "weight":
        raise RepresentationError(
            "unsupported-label: tensor of dominant-weight labels needs the "
            "decomposition into irreducibles, which is out of scope")
    if k1 == "one_dim" and k2 == "one_dim":
        return ("one_dim", lab1[1] + lab2[1])
    r1 = lab1[1] if k1 == "rep" else gx_rep_from_label(bundle, point, lab1)
    r2 = lab2[1] if k2 == "rep" else gx_rep_from_label(bundle, point, lab2)
    return ("rep", tensor_rep(r1, r2))


def ev_psi(psi: EquivariantFunction, window: MapAlgebraWindow,
           check=True) -> MatrixRep:
    bundle = psi.bundle
    assignments = []
    for p, lab in psi.entries:
        if lab[0] == "weight":
            raise RepresentationError(
                "unsupported-label: dominant-weight labels carry no module "
                "matrices; supply explicit matrices to evaluate")
        rep = lab[1] if lab[0] == "rep" else gx_rep_from_label(bundle, p, lab)
        assignments.append((p, rep))
    return evaluation_rep(window, assignments, check=check)


# ---------------------------------------------------------------------------
# injectivity harness


@dataclass
class InjectivityReport:
    classes: int
    pairs_checked: int
    collisions: list
    diagonal_failures: list

    @property
    def injective(self):
        return not self.collisions and not self.diagonal_failures

    def summary(self):
        return {
            "classes": self.classes,
            "pairs_checked": self.pairs_checked,
            "collisions": [k for k in self.collisions],
            "diagonal_failures": [k for k in self.diagonal_failures],
            "injective": self.injective,
        }


def injectivity_harness(bundle, pool_points, labels, window,
                        check_diagonal=True) -> InjectivityReport:
    """Enumerate assignments over the pool and verify pairwise intertwiner
    dimension 0 (and 1 on the diagonal)."""
    reps_points = []
    seen = set()
    for p in pool_points:
        key = bundle.orbit_key(p)
        if key not in seen:
            seen.add(key)
            reps_points.append(bundle.canonical_representative(p))
    assignments = [[]]
    for p in reps_points:
        assignments = [a + [(p, lab)] for a in assignments for lab in labels]
    psis = []
    keys = set()
    for raw in assignments:
        psi = canonicalize_psi(bundle, raw)
        key = psi.canonical_key()
        if key not in keys:
            keys.add(key)
            psis.append(psi)
    built = [(psi, ev_psi(psi, window, check=False)) for psi in psis]
    collisions = []
    diag_failures = []
    pairs = 0
    for i, (psi_i, rep_i) in enumerate(built):
        if check_diagonal:
            d = intertwiner_dimension(rep_i, rep_i)
            if d != 1:
                diag_failures.append(psi_i.text())
        for j in range(i + 1, len(built)):
            pairs += 1
            d = intertwiner_dimension(rep_i, built[j][1])
            if d != 0:
                collisions.append((psi_i.text(), built[j][0].text()))
    return InjectivityReport(len(built), pairs, collisions, diag_failures)


# ---------------------------------------------------------------------------
# classification regime


@dataclass
class RegimeReport:
    verdict: str          # PERFECT | FINITE-TILDE | INFINITE-TILDE |
                          # UNDETERMINED
    evidence: list
    certificate: object = None
    derived: object = None
    tilde: object = None
    gamma: object = None
    all_evaluation: bool = None

    def summary(self):
        out = {"verdict": self.verdict, "evidence": list(self.evidence)}
        if self.certificate is not None:
            out["certificate"] = self.certificate.verdict
        if self.derived is not None:
            out["abelianization_dim"] = self.derived.total_quotient
            out["stable"] = self.derived.all_stable
        if self.tilde is not None:
            out["tilde"] = self.tilde.summary()
        if self.gamma is not None:
            out["gamma"] = self.gamma.summary()
        if self.all_evaluation is not None:
            out["all_evaluation"] = self.all_evaluation
        return out


def classification_regime(bundle: GroupActionBundle, depth=6,
                          target_hi=None) -> RegimeReport:
    evidence = []
    cert = perfectness_certificate(bundle)
    evidence.extend("certificate: " + e for e in cert.evidence)
    if cert.perfect:
        evidence.append("perfect map algebra: evaluation classes are in "
                        "bijection with supported assignments")
        return RegimeReport("PERFECT", evidence, certificate=cert,
                            all_evaluation=True)
    target_hi = target_hi if target_hi is not None else max(2, depth - 2)
    derived_rep = None
    if bundle.scheme.graded:
        derived_rep = derived_window(bundle, target_hi, depth)
        if derived_rep.total_quotient == 0 and derived_rep.all_stable:
            evidence.append(
                "window abelianization vanished at stabilized depths "
                "%s (window evidence, not a closed-form proof)"
                % (derived_rep.depths,))
            return RegimeReport("PERFECT", evidence, certificate=cert,
                                derived=derived_rep, all_evaluation=True)
        evidence.append("window abelianization dimension %d (stable: %s)"
                        % (derived_rep.total_quotient,
                           derived_rep.all_stable))
    tilde = tilde_analysis(bundle)
    evidence.append("fixed-locus analysis: tilde X is %s" % tilde.verdict)
    if tilde.verdict == "infinite":
        evidence.append("one-dimensional representations beyond evaluations "
                        "exist")
        return RegimeReport("INFINITE-TILDE", evidence, certificate=cert,
                            derived=derived_rep, tilde=tilde,
                            all_evaluation=False)
    if tilde.verdict == "undetermined":
        return RegimeReport("UNDETERMINED", evidence, certificate=cert,
                            derived=derived_rep, tilde=tilde)
    if derived_rep is None:
        evidence.append("no window support on this scheme family; cannot "
                        "measure the abelianization")
        return RegimeReport("UNDETERMINED", evidence, certificate=cert,
                            tilde=tilde)
    gamma = gamma_kernel(derived_rep, bundle, tilde)
    evidence.append("gamma kernel dimension %d" % gamma.kernel_dim)
    all_eval = gamma.kernel_dim == 0
    if all_eval:
        evidence.append("gamma injective: all irreducible finite-dimensional "
                        "representations are evaluation representations")
    else:
        evidence.append("gamma kernel nonzero: non-evaluation one-dimensional "
                        "representations exist")
    return RegimeReport("FINITE-TILDE", evidence, certificate=cert,
                        derived=derived_rep, tilde=tilde, gamma=gamma,
                        all_evaluation=all_eval)


# ---------------------------------------------------------------------------
# Drinfeld tuples for the untwisted loop case


@dataclass
class DrinfeldTuple:
    rank: int
    factors: list     # per component: list of (point Scalar, exponent int)

    def canonical(self):
        out = []
        for comp in self.factors:
            merged = {}
            order = {}
            for (x, n) in comp:
                key = x.text()
                merged[key] = merged.get(key, 0) + int(n)
                order[key] = x
            comp_out = [(order[k], merged[k]) for k in sorted(merged)
                        if merged[k] != 0]
            out.append(comp_out)
        return DrinfeldTuple(self.rank, out)

    def text(self):
        comps = []
        for comp in self.factors:
            if not comp:
                comps.append("1")
            else:
                comps.append("".join("(1-%s*u)^%d" % (x.text(), n)
                                     for x, n in comp))
        return "(" + ", ".join(comps) + ")"

    def records(self):
        return [[{"x": x.text(), "n": n} for x, n in comp]
                for comp in self.factors]


def _require_untwisted_loop(bundle):
    if bundle.scheme.family != "torus" or bundle.scheme.nvars != 1:
        raise NotApplicableError(
            "the polynomial-tuple bridge needs the one-variable loop algebra")
    fixed = bundle.fixed_lie_subspace()
    if fixed.dim != bundle.algebra.dim:
        raise NotApplicableError(
            "the polynomial-tuple bridge needs a trivial action on g")
    if bundle.algebra.cartan_matrix is None:
        raise NotApplicableError("the target algebra has no Cartan data")
    return len(bundle.algebra.cartan_matrix)


def drinfeld_to_psi(pi: DrinfeldTuple, bundle) -> EquivariantFunction:
    rank = _require_untwisted_loop(bundle)
    if pi.rank != rank or len(pi.factors) != rank:
        raise ConfigError("tuple length does not match the algebra rank",
                          rank=rank, got=len(pi.factors))
    canon = pi.canonical()
    points = {}
    for j, comp in enumerate(canon.factors):
        for (x, n) in comp:
            if x.is_zero():
                raise ConfigError("factor points must be nonzero")
            if n < 0:
                raise ConfigError("factor exponents must be nonnegative")
            key = x.text()
            points.setdefault(key, (x, [0] * rank))
            points[key][1][j] += n
    gtype = bundle.algebra.type_label or "unknown"
    raw = []
    for key in sorted(points):
        x, coords = points[key]
        raw.append(((x,), ("weight", gtype, tuple(coords))))
    return canonicalize_psi(bundle, raw)


def psi_to_drinfeld(psi: EquivariantFunction, bundle) -> DrinfeldTuple:
    rank = _require_untwisted_loop(bundle)
    comps = [[] for _ in range(rank)]
    gtype = bundle.algebra.type_label or "unknown"
    for p, lab in psi.entries:
        if lab[0] == "sl2_weight":
            if rank != 1:
                raise RepresentationError("sl2 weight label on a higher-rank "
                                          "algebra")
            coords = (int(lab[1]),)
        elif lab[0] == "weight":
            if lab[1] != gtype:
                raise RepresentationError("weight label type mismatch",
                                          expected=gtype, got=lab[1])
            coords = tuple(int(c) for c in lab[2])
        else:
            raise RepresentationError(
                "only dominant-weight data translates to polynomial tuples")
        for j, n in enumerate(coords):
            if n:
                comps[j].append((p[0], n))
    return DrinfeldTuple(rank, comps).canonical()


def drinfeld_equal(a: DrinfeldTuple, b: DrinfeldTuple) -> bool:
    ca, cb = a.canonical(), b.canonical()
    if ca.rank != cb.rank:
        return False
    for compa, compb in zip(ca.factors, cb.factors):
        if [(x.text(), n) for x, n in compa] != \
                [(x.text(), n) for x, n in compb]:
            return False
    return True
