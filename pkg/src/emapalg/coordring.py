"""Graded coordinate rings of the built-in scheme families, with group-ready
point maps and substitution actions.

Families:
  * affine(n): polynomial ring, ZZ^n multigrading, one monomial per degree,
  * torus(n): Laurent ring, ZZ^n grading,
  * graded_quotient: two-variable ring modulo one homogeneous binomial
    relation, N-grading by declared weights, canonical forms reduce the
    leading variable power,
  * p1_minus: functions on P^1 minus a finite point set (infinity always
    removed); spanned by products of the deleted linear factors with integer
    exponents.  This family carries no grading usable by window computations;
    it supports point-level operations only.

Point maps are monomial/diagonal maps on affine and torus coordinates, scalar
rescalings of curve variables, and Moebius transformations on the punctured
projective line.  The induced ring action of a group element g is substitution
by the inverse point map, (g.f)(x) = f(g^{-1} x).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import AlgebraError, ConfigError, DomainError
from .exactmath import (
    Scalar, Subspace, one, rref, solve_quadratic, vec_is_zero, zero,
)

INF = "inf"  # the point at infinity; never a domain point


# ---------------------------------------------------------------------------
# scheme and ring


class Scheme:
    """Scheme family descriptor plus its coordinate ring combinatorics."""

    def __init__(self, family, conductor, nvars=1, removed=(),
                 remove_infinity=False, var_names=None, weights=None,
                 relation=None):
        self.family = family
        self.conductor = conductor
        self.nvars = nvars
        self.removed = tuple(removed)            # finite removed points
        self.remove_infinity = remove_infinity   # p1_minus only
        self.var_names = tuple(var_names or
                               ("t%d" % (i + 1) for i in range(nvars)))
        self.weights = tuple(weights) if weights else None
        # relation: (lead_var, lead_exp, rhs_exponents, rhs_coef)
        self.relation = relation

    # -- constructors --------------------------------------------------------

    @staticmethod
    def torus(n, conductor=1):
        return Scheme("torus", conductor, nvars=n)

    @staticmethod
    def affine(n, conductor=1):
        return Scheme("affine", conductor, nvars=n)

    @staticmethod
    def p1_minus(removed_texts, conductor=1):
        from .exactmath import parse_scalar
        finite = []
        has_inf = False
        for item in removed_texts:
            if str(item).strip() in (INF, "oo", "infinity"):
                has_inf = True
            else:
                finite.append(parse_scalar(str(item), conductor))
        if not has_inf:
            raise ConfigError(
                "p1_minus requires 'inf' among the removed points; the point "
                "at infinity is never representable")
        if len(set(s.text() for s in finite)) != len(finite):
            raise ConfigError("repeated removed point")
        if not finite:
            raise ConfigError("p1_minus needs a finite removed point; "
                              "P^1 minus infinity alone is the affine family")
        names = ["t" if s.is_zero() else "(t-%s)" % s.text() for s in finite]
        return Scheme("p1_minus", conductor, nvars=len(finite),
                      removed=finite, remove_infinity=True, var_names=names)

    @staticmethod
    def graded_quotient(relation_text, weights_map, conductor=1,
                        var_order=None):
        names = var_order or sorted(weights_map)
        weights = [int(weights_map[v]) for v in names]
        lead, rhs, rhs_coef = _parse_binomial_relation(relation_text, names,
                                                       conductor)
        lead_var, lead_exp = lead
        wl = weights[lead_var] * lead_exp
        wr = sum(w * e for w, e in zip(weights, rhs))
        if wl != wr:
            raise ConfigError(
                "relation is not homogeneous under the declared weights",
                left_degree=wl, right_degree=wr)
        return Scheme("graded_quotient", conductor, nvars=len(names),
                      var_names=names, weights=weights,
                      relation=(lead_var, lead_exp, tuple(rhs), rhs_coef))

    # -- grading --------------------------------------------------------------

    @property
    def graded(self):
        return self.family != "p1_minus"

    def degree_rank(self):
        return 1 if self.family == "graded_quotient" else self.nvars

    def monomial_degree(self, mono):
        if self.family == "graded_quotient":
            return (sum(w * e for w, e in zip(self.weights, mono)),)
        return tuple(mono)

    def monomials_of_degree(self, deg):
        if self.family in ("torus", "affine"):
            if self.family == "affine" and any(d < 0 for d in deg):
                return []
            return [tuple(deg)]
        if self.family == "graded_quotient":
            (d,) = deg
            if d < 0:
                return []
            out = []
            lead_var, lead_exp, _, _ = self.relation
            for mono in self._exponents_of_weight(d):
                if mono[lead_var] < lead_exp:
                    out.append(mono)
            return out
        raise AlgebraError("p1_minus carries no grading usable here")

    def _exponents_of_weight(self, d):
        def rec(idx, remaining):
            if idx == self.nvars - 1:
                w = self.weights[idx]
                if remaining % w == 0:
                    yield (remaining // w,)
                return
            w = self.weights[idx]
            for e in range(remaining // w + 1):
                for rest in rec(idx + 1, remaining - w * e):
                    yield (e,) + rest
        return [m for m in rec(0, d)]

    def reduce_monomial(self, mono, coef):
        """Canonical form modulo the relation; returns {mono: Scalar}."""
        if self.family != "graded_quotient":
            return {tuple(mono): coef}
        lead_var, lead_exp, rhs, rhs_coef = self.relation
        out = {}
        stack = [(tuple(mono), coef)]
        while stack:
            m, c = stack.pop()
            e = m[lead_var]
            if e < lead_exp:
                out[m] = out.get(m, zero(self.conductor)) + c
                continue
            m2 = list(m)
            m2[lead_var] = e - lead_exp
            for i, re in enumerate(rhs):
                m2[i] += re
            stack.append((tuple(m2), c * rhs_coef))
        return {m: c for m, c in out.items() if not c.is_zero()}

    # -- points ---------------------------------------------------------------

    def check_point(self, point):
        """Validate a rational point of the scheme; returns it unchanged."""
        if self.family == "p1_minus":
            if len(point) != 1:
                raise DomainError("p1_minus points have one coordinate")
            x = point[0]
            for c in self.removed:
                if (x - c).is_zero():
                    raise DomainError("point is removed from the scheme",
                                      point=x.text())
            return point
        if len(point) != self.nvars:
            raise DomainError("wrong coordinate count",
                              expected=self.nvars, got=len(point))
        if self.family == "torus":
            for x in point:
                if x.is_zero():
                    raise DomainError("torus points need nonzero coordinates")
        if self.family == "graded_quotient":
            lead_var, lead_exp, rhs, rhs_coef = self.relation
            lhs = point[lead_var] ** lead_exp
            prod = one(self.conductor)
            for x, e in zip(point, rhs):
                prod = prod * x ** e
            if not (lhs - rhs_coef * prod).is_zero():
                raise DomainError("point does not satisfy the curve relation",
                                  point=tuple(x.text() for x in point))
        return point

    def evaluate_monomial(self, mono, point):
        self.check_point(point)
        cond = self.conductor
        if self.family == "p1_minus":
            x = point[0]
            factors = [x - c for c in self.removed]
            acc = one(cond)
            for base, e in zip(factors, mono):
                if e:
                    acc = acc * base ** e
            return acc
        acc = one(cond)
        for x, e in zip(point, mono):
            if e < 0 and x.is_zero():
                raise DomainError("negative power at a zero coordinate")
            if e:
                acc = acc * x ** e
        return acc


def _parse_binomial_relation(text, names, conductor):
    """Parse "y^2 - x^3" style binomials: lead variable power minus a
    monomial; returns ((lead_var, lead_exp), rhs_exponents, rhs_coef)."""
    s = text.replace(" ", "")
    if "-" not in s[1:]:
        raise ConfigError("relation must be a binomial difference", text=text)
    split = s.index("-", 1)
    left, right = s[:split], s[split + 1:]

    def parse_monomial(part):
        exps = [0] * len(names)
        for factor in part.split("*"):
            if "^" in factor:
                var, e = factor.split("^")
                e = int(e)
            else:
                var, e = factor, 1
            if var not in names:
                raise ConfigError("unknown variable in relation", var=var)
            exps[names.index(var)] += e
        return exps

    le = parse_monomial(left)
    nz = [i for i, e in enumerate(le) if e]
    if len(nz) != 1:
        raise ConfigError("relation leading term must be a single variable "
                          "power", text=text)
    lead_var = nz[0]
    return (lead_var, le[lead_var]), parse_monomial(right), one(conductor)


class RingElement:
    """Finite scalar combination of canonical monomials."""

    __slots__ = ("scheme", "terms")

    def __init__(self, scheme: Scheme, terms=None):
        self.scheme = scheme
        self.terms = {m: c for m, c in (terms or {}).items()
                      if not c.is_zero()}

    @staticmethod
    def monomial(scheme, mono, coef=None):
        coef = coef if coef is not None else one(scheme.conductor)
        return RingElement(scheme, scheme.reduce_monomial(mono, coef))

    @staticmethod
    def constant(scheme, coef):
        return RingElement.monomial(scheme, (0,) * scheme.nvars, coef)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, zero(self.scheme.conductor)) + c
        return RingElement(self.scheme, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, zero(self.scheme.conductor)) - c
        return RingElement(self.scheme, out)

    def scale(self, c: Scalar):
        return RingElement(self.scheme,
                           {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        out = {}
        z = zero(self.scheme.conductor)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = tuple(a + b for a, b in zip(m1, m2))
                for m, c in self.scheme.reduce_monomial(prod, c1 * c2).items():
                    out[m] = out.get(m, z) + c
        return RingElement(self.scheme, out)

    def is_zero(self):
        return not self.terms

    def evaluate(self, point) -> Scalar:
        acc = zero(self.scheme.conductor)
        for m, c in self.terms.items():
            acc = acc + c * self.scheme.evaluate_monomial(m, point)
        return acc

    def text(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda mm: (sum(abs(e) for e in mm), mm)):
            c = self.terms[m]
            mono = "*".join("%s^%d" % (v, e)
                            for v, e in zip(self.scheme.var_names, m) if e)
            parts.append("(%s)%s" % (c.text(), ("*" + mono) if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return "RingElement(%s)" % self.text()


# ---------------------------------------------------------------------------
# point maps


def moebius_apply(mat, x):
    """Apply a projective 2x2 matrix to a point or INF."""
    (a, b), (c, d) = mat
    if x == INF:
        if c.is_zero():
            return INF
        return a / c
    num = a * x + b
    den = c * x + d
    if den.is_zero():
        return INF
    return num / den


def _normalize_moebius(mat):
    flat = [mat[0][0], mat[0][1], mat[1][0], mat[1][1]]
    lead = next((x for x in flat if not x.is_zero()), None)
    if lead is None:
        raise ConfigError("zero Moebius matrix")
    det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    if det.is_zero():
        raise ConfigError("singular Moebius matrix")
    inv = lead.inverse()
    return ((mat[0][0] * inv, mat[0][1] * inv),
            (mat[1][0] * inv, mat[1][1] * inv))


class PointMap:
    """Automorphism of the scheme's point set.

    kinds: "monomial" (x_i -> s_i * prod_j x_j^{E_ij}) on torus/affine/
    graded_quotient (diagonal there), "moebius" on p1_minus."""

    def __init__(self, scheme: Scheme, kind, exponents=None, scalars=None,
                 matrix=None):
        self.scheme = scheme
        self.kind = kind
        cond = scheme.conductor
        if kind == "monomial":
            n = scheme.nvars if scheme.family != "p1_minus" else None
            if n is None:
                raise ConfigError("monomial maps need an affine-type family")
            self.E = tuple(tuple(int(x) for x in row) for row in exponents)
            self.scalars = tuple(scalars)
            if len(self.E) != n or any(len(r) != n for r in self.E):
                raise ConfigError("exponent matrix has wrong shape")
            if len(self.scalars) != n:
                raise ConfigError("scalar vector has wrong length")
            det = _int_det(self.E)
            if scheme.family == "torus":
                if det not in (1, -1):
                    raise ConfigError("torus monomial map must be unimodular",
                                      det=det)
            else:
                if self.E != tuple(tuple(1 if i == j else 0 for j in range(n))
                                   for i in range(n)):
                    raise ConfigError(
                        "only diagonal rescalings are supported on this "
                        "family")
                for s in self.scalars:
                    if s.is_zero():
                        raise ConfigError("zero scalar in diagonal map")
            if scheme.family == "graded_quotient":
                self._check_relation_preserved()
        elif kind == "moebius":
            if scheme.family != "p1_minus":
                raise ConfigError("moebius maps live on p1_minus")
            self.mat = _normalize_moebius(matrix)
            self._check_removed_set_stable()
        else:
            raise ConfigError("unknown point map kind", kind=kind)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def identity(scheme):
        if scheme.family == "p1_minus":
            o, z = one(scheme.conductor), zero(scheme.conductor)
            return PointMap(scheme, "moebius", matrix=((o, z), (z, o)))
        n = scheme.nvars
        eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return PointMap(scheme, "monomial", exponents=eye,
                        scalars=[one(scheme.conductor)] * n)

    # -- validation -----------------------------------------------------------

    def _check_relation_preserved(self):
        sch = self.scheme
        lead_var, lead_exp, rhs, rhs_coef = sch.relation
        s_lead = self.scalars[lead_var] ** lead_exp
        s_rhs = one(sch.conductor)
        for s, e in zip(self.scalars, rhs):
            s_rhs = s_rhs * s ** e
        if not (s_lead - s_rhs).is_zero():
            raise ConfigError(
                "map does not preserve the curve relation",
                witness="%s^%d" % (sch.var_names[lead_var], lead_exp))

    def _check_removed_set_stable(self):
        sch = self.scheme
        removed = list(sch.removed) + [INF]
        images = [moebius_apply(self.mat, p) for p in removed]
        def key(p):
            return p if p == INF else p.text()
        if sorted(map(key, images)) != sorted(map(key, removed)):
            raise ConfigError("Moebius map does not permute the removed set")

    # -- operations -----------------------------------------------------------

    def apply(self, point):
        sch = self.scheme
        sch.check_point(point)
        if self.kind == "moebius":
            img = moebius_apply(self.mat, point[0])
            if img == INF:
                raise DomainError("image escapes to infinity")
            return (img,)
        out = []
        for i in range(sch.nvars):
            acc = self.scalars[i]
            for j, e in enumerate(self.E[i]):
                if e:
                    acc = acc * point[j] ** e
            out.append(acc)
        return sch.check_point(tuple(out))

    def compose(self, other: "PointMap") -> "PointMap":
        """self after other."""
        sch = self.scheme
        if self.kind != other.kind:
            raise ConfigError("cannot compose maps of different kinds")
        if self.kind == "moebius":
            (a, b), (c, d) = self.mat
            (a2, b2), (c2, d2) = other.mat
            mat = ((a * a2 + b * c2, a * b2 + b * d2),
                   (c * a2 + d * c2, c * b2 + d * d2))
            return PointMap(sch, "moebius", matrix=mat)
        n = sch.nvars
        # (self . other)(x)_i = s_i * prod_j (other(x)_j)^{E_ij}
        E = tuple(tuple(sum(self.E[i][j] * other.E[j][k] for j in range(n))
                        for k in range(n)) for i in range(n))
        scal = []
        for i in range(n):
            acc = self.scalars[i]
            for j in range(n):
                e = self.E[i][j]
                if e:
                    acc = acc * other.scalars[j] ** e
            scal.append(acc)
        return PointMap(sch, "monomial", exponents=E, scalars=scal)

    def inverse(self) -> "PointMap":
        sch = self.scheme
        if self.kind == "moebius":
            (a, b), (c, d) = self.mat
            return PointMap(sch, "moebius", matrix=((d, -b), (-c, a)))
        n = sch.nvars
        Einv = _int_matrix_inverse(self.E)
        scal = []
        for i in range(n):
            acc = one(sch.conductor)
            for j in range(n):
                e = Einv[i][j]
                if e:
                    acc = acc * self.scalars[j] ** (-e)
            scal.append(acc)
        return PointMap(sch, "monomial", exponents=Einv, scalars=scal)

    def same_as(self, other: "PointMap") -> bool:
        if self.kind != other.kind:
            return False
        if self.kind == "moebius":
            return self.mat == other.mat
        return self.E == other.E and self.scalars == other.scalars

    def is_identity(self):
        return self.same_as(PointMap.identity(self.scheme))

    def substitution(self) -> "RingSubstitution":
        """The ring endomorphism f -> f . self."""
        return RingSubstitution(self)


def _int_det(E):
    n = len(E)
    if n == 1:
        return E[0][0]
    det = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in E[1:]]
        det += ((-1) ** j) * E[0][j] * _int_det(minor)
    return det


def _int_matrix_inverse(E):
    n = len(E)
    det = _int_det(E)
    if det not in (1, -1):
        raise ConfigError("exponent matrix is not invertible over ZZ")
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:i] + row[i + 1:]
                     for k, row in enumerate(E) if k != j]
            out[i][j] = ((-1) ** (i + j)) * (_int_det(minor) if minor else 1) * det
    return tuple(tuple(r) for r in out)


class RingSubstitution:
    """f -> f . phi for a point map phi; exact on canonical monomials."""

    def __init__(self, point_map: PointMap):
        self.phi = point_map
        self.scheme = point_map.scheme

    def degree_image(self, deg):
        """Image of a grading degree, or None when the grading is not
        respected (Moebius substitutions)."""
        if self.phi.kind != "monomial":
            return None
        sch = self.scheme
        if sch.family == "graded_quotient":
            return tuple(deg)
        E = self.phi.E
        m = len(deg)
        return tuple(sum(E[j][i] * deg[j] for j in range(m)) for i in range(m))

    def apply_monomial(self, mono) -> RingElement:
        sch = self.scheme
        cond = sch.conductor
        if self.phi.kind == "monomial":
            E = self.phi.E
            n = sch.nvars
            new_mono = tuple(sum(E[j][i] * mono[j] for j in range(n))
                             for i in range(n))
            coef = one(cond)
            for s, e in zip(self.phi.scalars, mono):
                if e:
                    coef = coef * s ** e
            return RingElement(sch, sch.reduce_monomial(new_mono, coef))
        # Moebius substitution: rewrite each linear factor
        acc_coef = one(cond)
        acc_expo = [0] * sch.nvars
        for idx, root in enumerate(sch.removed):
            e = mono[idx]
            if not e:
                continue
            coef, expo = self._linear_factor_image(root)
            acc_coef = acc_coef * coef ** e
            for k in range(sch.nvars):
                acc_expo[k] += e * expo[k]
        return RingElement(sch, {tuple(acc_expo): acc_coef})

    def _linear_factor_image(self, root):
        """Image of (t - root) under substitution by phi, returned as
        lambda * prod (t - c_k)^{e_k} data."""
        sch = self.scheme
        cond = sch.conductor
        (a, b), (c, d) = self.phi.mat
        num_lead, num_const = a - root * c, b - root * d
        expo = (0,) * sch.nvars
        coef = one(cond)
        coef, expo = self._accumulate_linear(num_lead, num_const, coef, expo, +1)
        coef, expo = self._accumulate_linear(c, d, coef, expo, -1)
        return coef, expo

    def _accumulate_linear(self, lead, const, coef, expo, sign):
        """Multiply in (lead*t + const)^sign expressed in the factor basis."""
        sch = self.scheme
        if lead.is_zero():
            if const.is_zero():
                raise AlgebraError("degenerate Moebius factor")
            return coef * (const if sign > 0 else const.inverse()), expo
        root = (zero(sch.conductor) - const) / lead
        idx = None
        for k, r in enumerate(sch.removed):
            if (r - root).is_zero():
                idx = k
                break
        if idx is None:
            raise AlgebraError(
                "substitution leaves the span (zero at a non-removed point)",
                root=root.text())
        expo = list(expo)
        expo[idx] += sign
        return coef * (lead if sign > 0 else lead.inverse()), tuple(expo)


# ---------------------------------------------------------------------------
# invariants


def saturate_degrees(scheme: Scheme, substitutions, degrees):
    """Close a degree set under the grading action of the substitutions."""
    todo = [tuple(d) for d in degrees]
    seen = set(todo)
    while todo:
        d = todo.pop()
        for sub in substitutions:
            img = sub.degree_image(d)
            if img is None:
                raise AlgebraError(
                    "window-unsupported: this ring action does not permute "
                    "graded pieces")
            if img not in seen:
                seen.add(img)
                todo.append(img)
    return sorted(seen)


def reynolds_basis(scheme: Scheme, substitutions, degrees, characters=None):
    """Basis of the (character-twisted) invariants supported on a
    Gamma-saturated degree list.

    substitutions: one RingSubstitution per group element (f -> f . g^{-1});
    characters: optional per-element Scalar weights chi(g)^{-1}; None means
    the trivial character (plain Reynolds averaging)."""
    cond = scheme.conductor
    degrees = [tuple(d) for d in degrees]
    monos = []
    for d in degrees:
        monos.extend(scheme.monomials_of_degree(d))
    monos = sorted(set(monos))
    index = {m: i for i, m in enumerate(monos)}
    if not monos:
        return [], []
    norm = Scalar.from_rational(Fraction(1, len(substitutions)), cond)
    rows = []
    for m in monos:
        acc = {}
        for gi, sub in enumerate(substitutions):
            image = sub.apply_monomial(m)
            w = characters[gi] if characters is not None else None
            for mm, c in image.terms.items():
                if mm not in index:
                    raise AlgebraError("action leaves the saturated window",
                                       monomial=mm)
                val = c if w is None else w * c
                acc[mm] = acc.get(mm, zero(cond)) + val
        row = [zero(cond)] * len(monos)
        for mm, c in acc.items():
            row[index[mm]] = c * norm
        rows.append(row)
    reduced, _ = rref(rows, len(monos))
    elements = []
    for r in reduced:
        elements.append(RingElement(scheme,
                                    {m: c for m, c in zip(monos, r)
                                     if not c.is_zero()}))
    return elements, monos


def reynolds_project(scheme, substitutions, element: RingElement,
                     characters=None) -> RingElement:
    cond = scheme.conductor
    norm = Scalar.from_rational(Fraction(1, len(substitutions)), cond)
    acc = RingElement(scheme, {})
    for gi, sub in enumerate(substitutions):
        img = RingElement(scheme, {})
        for m, c in element.terms.items():
            img = img + sub.apply_monomial(m).scale(c)
        if characters is not None:
            img = img.scale(characters[gi])
        acc = acc + img
    return acc.scale(norm)
