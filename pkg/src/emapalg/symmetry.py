"""Finite groups and their three coupled actions.

Groups come from presentations (coset enumeration over the trivial subgroup)
or from explicit permutation generators.  A GroupActionBundle couples one
group with an action on the Lie algebra by automorphisms, on the coordinate
ring by substitutions, and on rational points; generator relations and the
compatibility law (g.f)(x) = f(g^{-1}.x) are verified at construction.
"""

from __future__ import annotations

from .errors import AlgebraError, ConfigError, DomainError
from .exactmath import Scalar, one, vec_is_zero, vec_sub, zero
from .coordring import PointMap, RingElement, Scheme
from .liealg import LieAlgebra, LieAutomorphism, identity_automorphism


class FiniteGroup:
    """Group with a full multiplication table.

    Elements are indices 0..order-1 with 0 the identity; each element carries
    a defining word in the generators (shortest, BFS order), which makes the
    element list deterministic."""

    def __init__(self, gen_names, mult, words, gen_action):
        self.gen_names = tuple(gen_names)
        self.mult = tuple(tuple(row) for row in mult)
        self.order = len(self.mult)
        self.words = tuple(tuple(w) for w in words)  # left-to-right products
        self.gen_action = tuple(tuple(row) for row in gen_action)  # a * g_i
        self.inverse = tuple(self._find_inverse(a) for a in range(self.order))
        self._check_group()

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_presentation(gen_names, relations, bound=10000):
        relators = [_tokenize_word(w, gen_names) for w in relations]
        table = _coset_enumeration(len(gen_names), relators, bound)
        return FiniteGroup._from_generator_table(gen_names, table)

    @staticmethod
    def from_permutations(gen_names, perms):
        degree = len(perms[0])
        for p in perms:
            if sorted(p) != list(range(degree)):
                raise ConfigError("generator is not a permutation", perm=p)
        ident = tuple(range(degree))
        elements = {ident: 0}
        order_list = [ident]
        queue = [ident]
        while queue:
            cur = queue.pop(0)
            for p in perms:
                # right multiplication: (cur * p)(k) = cur[p[k]]
                img = tuple(cur[p[k]] for k in range(degree))
                if img not in elements:
                    elements[img] = len(order_list)
                    order_list.append(img)
                    queue.append(img)
        gen_table = [[elements[tuple(a[p[k]] for k in range(degree))]
                      for p in perms] for a in order_list]
        return FiniteGroup._from_generator_table(gen_names, gen_table)

    @staticmethod
    def _from_generator_table(gen_names, gen_table):
        """gen_table[a][gi] = a * g_i (right multiplication), 0 the identity."""
        n = len(gen_table)
        ngens = len(gen_names)
        words = [None] * n
        words[0] = ()
        queue = [0]
        while queue:
            c = queue.pop(0)
            for gi in range(ngens):
                d = gen_table[c][gi]
                if words[d] is None:
                    words[d] = words[c] + (gi,)
                    queue.append(d)
        if any(w is None for w in words):
            raise AlgebraError("generator table is not transitive")
        mult = []
        for a in range(n):
            row = []
            for b in range(n):
                c = a
                for gi in words[b]:
                    c = gen_table[c][gi]
                row.append(c)
            mult.append(row)
        return FiniteGroup(gen_names, mult, words, gen_table)

    # -- structure ------------------------------------------------------------

    def _find_inverse(self, a):
        for b in range(self.order):
            if self.mult[a][b] == 0:
                return b
        raise AlgebraError("element without inverse", element=a)

    def _check_group(self):
        n = self.order
        for a in range(n):
            if self.mult[0][a] != a or self.mult[a][0] != a:
                raise AlgebraError("identity fails in multiplication table")
        if n <= 64:
            for a in range(n):
                for b in range(n):
                    ab = self.mult[a][b]
                    for c in range(n):
                        if self.mult[ab][c] != self.mult[a][self.mult[b][c]]:
                            raise AlgebraError("associativity fails",
                                               triple=(a, b, c))

    def multiply(self, a, b):
        return self.mult[a][b]

    def conjugate(self, g, a):
        """g a g^{-1}."""
        return self.mult[self.mult[g][a]][self.inverse[g]]

    def element_order(self, a):
        k, cur = 1, a
        while cur != 0:
            cur = self.mult[cur][a]
            k += 1
        return k

    def is_abelian(self):
        return all(self.mult[a][b] == self.mult[b][a]
                   for a in range(self.order) for b in range(self.order))

    def is_cyclic(self):
        return any(self.element_order(a) == self.order
                   for a in range(self.order))

    def generator_elements(self):
        """Element index of each named generator."""
        return [self.gen_action[0][gi] for gi in range(len(self.gen_names))]

    def generator_image(self, a, gi):
        """a * g_i."""
        return self.gen_action[a][gi]

    def word_of(self, a):
        return "".join(self.gen_names[gi] for gi in self.words[a]) or "1"

    def subgroups(self, max_generators=3):
        """All subgroups as sorted element tuples (desk scale)."""
        if self.order > 64:
            raise ConfigError("subgroup enumeration bound exceeded",
                              order=self.order)
        found = {tuple([0])}
        import itertools
        elems = list(range(self.order))
        for k in range(1, max_generators + 1):
            for combo in itertools.combinations(elems, k):
                found.add(self._closure(combo))
        return sorted(found, key=lambda s: (len(s), s))

    def _closure(self, gens):
        seen = {0}
        queue = [0]
        while queue:
            a = queue.pop()
            for g in gens:
                for b in (self.mult[a][g],):
                    if b not in seen:
                        seen.add(b)
                        queue.append(b)
        return tuple(sorted(seen))

    def subgroup_conjugates(self, sub):
        out = set()
        for g in range(self.order):
            out.add(tuple(sorted(self.conjugate(g, a) for a in sub)))
        return sorted(out)

    def subgroups_up_to_conjugacy(self):
        classes = []
        seen = set()
        for sub in self.subgroups():
            if sub in seen:
                continue
            conj = self.subgroup_conjugates(sub)
            seen.update(conj)
            classes.append((sub, conj))
        return classes


def _tokenize_word(word, gen_names):
    """Split a relator string into generator indices (longest match first)."""
    names = sorted(range(len(gen_names)),
                   key=lambda i: -len(gen_names[i]))
    out = []
    i = 0
    w = word.replace("*", "").replace(" ", "")
    while i < len(w):
        for gi in names:
            nm = gen_names[gi]
            if w.startswith(nm, i):
                out.append(gi)
                i += len(nm)
                break
        else:
            raise ConfigError("cannot tokenize relator", word=word,
                              position=i)
    return out


def _coset_enumeration(ngens, relators, bound):
    """HLT coset enumeration over the trivial subgroup.

    Returns the generator action table t[c][g] for the live, renumbered
    cosets; raises when the bound is exceeded."""
    nlet = 2 * ngens

    def inv(l):
        return l ^ 1

    rel_letters = [[2 * g for g in rel] for rel in relators]
    table = [[None] * nlet]
    parent = [0]

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = []

    def set_entry(a, l, b):
        a, b = find(a), find(b)
        for (u, m, v) in ((a, l, b), (b, inv(l), a)):
            cur = table[u][m]
            if cur is None:
                table[u][m] = v
            elif find(cur) != v:
                pending.append((cur, v))

    def process():
        while pending:
            x, y = pending.pop()
            x, y = find(x), find(y)
            if x == y:
                continue
            if x > y:
                x, y = y, x
            parent[y] = x
            row = table[y]
            table[y] = [None] * nlet
            for l in range(nlet):
                d = row[l]
                if d is not None:
                    set_entry(x, l, d)

    def scan(c, rel):
        c = find(c)
        f, i = c, 0
        while i < len(rel):
            nxt = table[find(f)][rel[i]]
            if nxt is None:
                break
            f = find(nxt)
            i += 1
        b, j = c, len(rel)
        while j > i:
            prv = table[find(b)][inv(rel[j - 1])]
            if prv is None:
                break
            b = find(prv)
            j -= 1
        if j == i:
            if find(f) != find(b):
                pending.append((f, b))
                process()
        elif j == i + 1:
            set_entry(f, rel[i], b)
            process()

    while True:
        process()
        changed = True
        while changed:
            changed = False
            live = [c for c in range(len(table)) if find(c) == c]
            for c in live:
                for rel in rel_letters:
                    before = len(pending)
                    scan(c, rel)
            process()
            live2 = [c for c in range(len(table)) if find(c) == c]
            if live2 != live:
                changed = True
        hole = None
        for c in range(len(table)):
            if find(c) != c:
                continue
            for l in range(nlet):
                if table[c][l] is None:
                    hole = (c, l)
                    break
            if hole:
                break
        if hole is None:
            break
        if len(table) >= bound:
            raise ConfigError("presentation did not close within the element "
                              "bound", bound=bound)
        c, l = hole
        table.append([None] * nlet)
        parent.append(len(table) - 1)
        set_entry(c, l, len(table) - 1)

    live = [c for c in range(len(table)) if find(c) == c]
    renum = {c: i for i, c in enumerate(live)}
    out = []
    for c in live:
        out.append([renum[find(table[c][2 * g])] for g in range(ngens)])
    return out


# ---------------------------------------------------------------------------
# the action bundle


class GroupActionBundle:
    """A finite group with compatible actions on g, on A, and on points."""

    def __init__(self, group: FiniteGroup, algebra: LieAlgebra,
                 scheme: Scheme, lie_gen_autos, point_gen_maps,
                 check=True, sample_points=None):
        self.group = group
        self.algebra = algebra
        self.scheme = scheme
        self.lie_of = self._close_lie(lie_gen_autos)
        self.point_of = self._close_points(point_gen_maps)
        # ring action of g is substitution by the inverse point map
        self.subst_of = [self.point_of[group.inverse[a]].substitution()
                         for a in range(group.order)]
        self.gen_recipes = [a.recipe for a in lie_gen_autos]
        if check:
            self._check_compatibility(sample_points)

    def _close_lie(self, gen_autos):
        """rho(a) for every element; rho(w1 w2 ... wk) = rho(w1) . ... . rho(wk)."""
        grp = self.group
        if len(gen_autos) != len(grp.gen_names):
            raise ConfigError("one Lie automorphism per generator required")
        out = [None] * grp.order
        out[0] = identity_automorphism(self.algebra)
        for a in range(grp.order):
            acc = out[0]
            for gi in grp.words[a]:
                acc = acc.compose(gen_autos[gi])
            out[a] = acc
        # homomorphism check: rho(a * g_i) = rho(a) . rho(g_i)
        for a in range(grp.order):
            for gi, gen in enumerate(gen_autos):
                b = grp.generator_image(a, gi)
                got = out[a].compose(gen)
                for k in range(self.algebra.dim):
                    if not vec_is_zero(vec_sub(got.rows[k], out[b].rows[k])):
                        raise AlgebraError(
                            "Lie action does not respect the group relations",
                            element=grp.word_of(b))
        return out

    def _close_points(self, gen_maps):
        grp = self.group
        if len(gen_maps) != len(grp.gen_names):
            raise ConfigError("one point map per generator required")
        out = [None] * grp.order
        out[0] = PointMap.identity(self.scheme)
        for a in range(grp.order):
            acc = out[0]
            for gi in grp.words[a]:
                acc = acc.compose(gen_maps[gi])
            out[a] = acc
        for a in range(grp.order):
            for gi, gen in enumerate(gen_maps):
                b = grp.generator_image(a, gi)
                got = out[a].compose(gen)
                if not got.same_as(out[b]):
                    raise AlgebraError(
                        "point action does not respect the group relations",
                        element=grp.word_of(b))
        return out

    def _default_sample_points(self):
        sch = self.scheme
        cond = sch.conductor
        pts = []
        candidates = [2, 3, 5, 7, -2, -3, 11, 13, -5, 17]
        for c in candidates:
            x = Scalar.from_rational(c, cond)
            if sch.family == "p1_minus":
                try:
                    pts.append(sch.check_point((x,)))
                except DomainError:
                    continue
            elif sch.family == "graded_quotient":
                continue
            else:
                pts.append(tuple(x if i == 0 else
                                 Scalar.from_rational(c + i, cond)
                                 for i in range(sch.nvars)))
            if len(pts) >= 10:
                break
        if sch.family == "graded_quotient":
            # points on the curve v^p = m: use the parametrization by squares
            lead_var, lead_exp, rhs, _ = sch.relation
            if sch.nvars == 2 and lead_exp == 2 and sum(rhs) == 3:
                for c in candidates[:10]:
                    t = Scalar.from_rational(c, cond)
                    other = 1 - lead_var
                    pt = [None, None]
                    pt[other] = t * t
                    pt[lead_var] = t ** 3
                    try:
                        pts.append(sch.check_point(tuple(pt)))
                    except DomainError:
                        continue
        return pts

    def _check_compatibility(self, sample_points=None):
        """(g.f)(x) = f(g^{-1}.x) on ring generators and sampled points."""
        pts = sample_points if sample_points is not None \
            else self._default_sample_points()
        sch = self.scheme
        gens = []
        for i in range(sch.nvars):
            mono = tuple(1 if j == i else 0 for j in range(sch.nvars))
            gens.append(RingElement.monomial(sch, mono))
        for a in range(self.group.order):
            sub = self.subst_of[a]
            inv_map = self.point_of[self.group.inverse[a]]
            for f in gens:
                gf = RingElement(sch, {})
                for m, c in f.terms.items():
                    gf = gf + sub.apply_monomial(m).scale(c)
                for x in pts:
                    try:
                        lhs = gf.evaluate(x)
                        rhs = f.evaluate(inv_map.apply(x))
                    except DomainError:
                        continue
                    if not (lhs - rhs).is_zero():
                        raise AlgebraError(
                            "ring and point actions are incompatible",
                            element=self.group.word_of(a))

    # -- point operations ------------------------------------------------------

    def act_point(self, a, point):
        return self.point_of[a].apply(point)

    def stabilizer(self, point):
        self.scheme.check_point(point)
        out = []
        for a in range(self.group.order):
            img = self.act_point(a, point)
            if all((x - y).is_zero() for x, y in zip(img, point)):
                out.append(a)
        return tuple(out)

    def orbit(self, point):
        self.scheme.check_point(point)
        seen = {}
        for a in range(self.group.order):
            img = self.act_point(a, point)
            key = tuple(x.text() for x in img)
            if key not in seen:
                seen[key] = img
        return [seen[k] for k in sorted(seen)]

    def orbit_key(self, point):
        """Canonical orbit representative: lexicographically least text."""
        orb = self.orbit(point)
        return min(tuple(x.text() for x in p) for p in orb)

    def canonical_representative(self, point):
        orb = self.orbit(point)
        best = min(orb, key=lambda p: tuple(x.text() for x in p))
        return best

    def transporter(self, x, y):
        """Group element a with a.x = y, or None."""
        for a in range(self.group.order):
            img = self.act_point(a, x)
            if all((u - v).is_zero() for u, v in zip(img, y)):
                return a
        return None

    def same_orbit(self, x, y):
        return self.transporter(x, y) is not None

    def fixed_lie_subspace(self, elements=None):
        """g^H for a subgroup given by element indices (default: whole group)."""
        from .liealg import fixed_subalgebra
        elems = range(self.group.order) if elements is None else elements
        autos = [self.lie_of[a] for a in elems if a != 0]
        return fixed_subalgebra(self.algebra, autos)
