"""Build live objects from a SessionConfig and cache the expensive ones."""

from __future__ import annotations

from .errors import ConfigError
from .exactmath import Scalar, parse_scalar
from .config import SessionConfig, parse_label_spec, parse_point_spec
from .coordring import PointMap, Scheme
from .liealg import (
    LieAutomorphism, automorphism_from_recipe, cartan_type,
    from_structure_constants, identity_automorphism, matrix_family,
    parse_cartan_label,
)
from .symmetry import FiniteGroup, GroupActionBundle
from .emap import MapAlgebraWindow, derived_window


class Session:
    def __init__(self, config: SessionConfig):
        self.config = config
        self.conductor = config.conductor
        self.algebra = self._build_algebra()
        self.scheme = self._build_scheme()
        self.group = self._build_group()
        self.bundle = self._build_bundle()
        self._windows = {}
        self._derived = {}

    # -- builders --------------------------------------------------------------

    def _build_algebra(self):
        spec = self.config.lie_spec
        kind = spec.get("kind")
        if kind == "cartan":
            letter, rank = parse_cartan_label(str(spec["type"]))
            return cartan_type(letter, rank, self.conductor)
        if kind == "matrix":
            return matrix_family(str(spec["family"]), int(spec["n"]),
                                 self.conductor)
        if kind == "explicit":
            dim = int(spec["dim"])
            entries = []
            for item in spec.get("constants", []):
                i, j, k, c = item
                entries.append((int(i), int(j), int(k),
                                parse_scalar(str(c), self.conductor)))
            return from_structure_constants(dim, entries, self.conductor,
                                            labels=spec.get("labels"))
        raise ConfigError("unknown lie kind", kind=kind)

    def _build_scheme(self):
        spec = self.config.scheme_spec
        fam = spec.get("family")
        if fam == "torus":
            return Scheme.torus(int(spec.get("n", 1)), self.conductor)
        if fam == "affine":
            return Scheme.affine(int(spec.get("n", 1)), self.conductor)
        if fam == "p1_minus":
            return Scheme.p1_minus(list(spec["removed"]), self.conductor)
        if fam == "graded_quotient":
            return Scheme.graded_quotient(
                str(spec["relation"]), dict(spec["weights"]), self.conductor,
                var_order=spec.get("vars"))
        raise ConfigError("unknown scheme family", family=fam)

    def _build_group(self):
        spec = self.config.group_spec
        gens = [str(g) for g in spec.get("generators", [])]
        if not gens:
            raise ConfigError("group needs at least one generator")
        if "permutations" in spec:
            perms = [list(map(int, p)) for p in spec["permutations"]]
            if len(perms) != len(gens):
                raise ConfigError("one permutation per generator required")
            return FiniteGroup.from_permutations(gens, perms)
        relations = [str(r) for r in spec.get("relations", [])]
        bound = int(spec.get("bound", 10000))
        return FiniteGroup.from_presentation(gens, relations, bound)

    def _lie_auto_from_spec(self, spec) -> LieAutomorphism:
        kind = spec.get("kind")
        if kind == "trivial":
            return identity_automorphism(self.algebra)
        if kind == "chevalley_involution":
            return automorphism_from_recipe(self.algebra,
                                            ("chevalley_involution",))
        if kind == "diagram":
            perm = {int(k) - 1: int(v) - 1
                    for k, v in dict(spec["perm"]).items()}
            return automorphism_from_recipe(self.algebra, ("diagram", perm))
        if kind == "matrix":
            rows = [[parse_scalar(str(x), self.conductor) for x in row]
                    for row in spec["rows"]]
            return automorphism_from_recipe(self.algebra, ("matrix", rows))
        raise ConfigError("unknown lie_action kind", kind=kind)

    def _point_map_from_spec(self, spec) -> PointMap:
        kind = spec.get("kind")
        if kind == "trivial":
            return PointMap.identity(self.scheme)
        if kind == "monomial":
            exps = [[int(x) for x in row] for row in spec["exponents"]]
            scal = [parse_scalar(str(x), self.conductor)
                    for x in spec["scalars"]]
            return PointMap(self.scheme, "monomial", exponents=exps,
                            scalars=scal)
        if kind == "diagonal":
            scal = [parse_scalar(str(x), self.conductor)
                    for x in spec["scalars"]]
            n = self.scheme.nvars
            eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            return PointMap(self.scheme, "monomial", exponents=eye,
                            scalars=scal)
        if kind == "moebius":
            m = spec["matrix"]
            mat = ((parse_scalar(str(m[0][0]), self.conductor),
                    parse_scalar(str(m[0][1]), self.conductor)),
                   (parse_scalar(str(m[1][0]), self.conductor),
                    parse_scalar(str(m[1][1]), self.conductor)))
            return PointMap(self.scheme, "moebius", matrix=mat)
        raise ConfigError("unknown point_action kind", kind=kind)

    def _build_bundle(self):
        gens = self.group.gen_names
        lie_autos = []
        point_maps = []
        for g in gens:
            lie_spec = self.config.lie_action.get(g)
            if lie_spec is None:
                raise ConfigError("missing lie_action for generator", gen=g)
            pt_spec = self.config.point_action.get(g)
            if pt_spec is None:
                raise ConfigError("missing point_action for generator", gen=g)
            lie_autos.append(self._lie_auto_from_spec(dict(lie_spec)))
            point_maps.append(self._point_map_from_spec(dict(pt_spec)))
        return GroupActionBundle(self.group, self.algebra, self.scheme,
                                 lie_autos, point_maps)

    # -- cached computations ----------------------------------------------------

    def window(self, lo=None, hi=None) -> MapAlgebraWindow:
        lo = self.config.window[0] if lo is None else lo
        hi = self.config.window[1] if hi is None else hi
        key = (lo, hi)
        if key not in self._windows:
            self._windows[key] = MapAlgebraWindow(self.bundle, lo, hi)
        return self._windows[key]

    def derived(self, depth=None, target_hi=None, materialize=True):
        depth = depth if depth is not None else \
            int(self.analysis_option("depth", 6))
        target_hi = target_hi if target_hi is not None else \
            max(2, min(depth - 2, self.config.window[1]))
        key = (depth, target_hi, materialize)
        if key not in self._derived:
            self._derived[key] = derived_window(self.bundle, target_hi,
                                                depth,
                                                materialize=materialize)
        return self._derived[key]

    def analysis_option(self, name, default):
        return self.config.analysis.get(name, default)

    def parse_point(self, text):
        return self.scheme.check_point(parse_point_spec(
            text.split(",") if isinstance(text, str) else text,
            self.conductor))

    def parse_assignments(self, entries):
        from .config import parse_assignment
        return [parse_assignment(e, self.conductor) for e in entries]
