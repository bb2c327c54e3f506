"""Session configuration: TOML text describing (g, Gamma, X, actions, window).

One config = one session = one conductor.  Scalars in configs are exact text
forms ("2/3", "cyc(6)[0,1]"); the conductor may be given explicitly or is
inferred as the lcm of the cyclotomic literals that appear.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import tomli

from .errors import ConfigError
from .exactmath import Scalar, parse_scalar


@dataclass
class SessionConfig:
    raw: dict
    text: str
    conductor: int
    seed: int
    lie_spec: dict
    group_spec: dict
    scheme_spec: dict
    lie_action: dict
    point_action: dict
    window: tuple          # (lo, hi)
    analysis: dict
    assignments: list
    drinfeld: list = None
    title: str = ""

    @property
    def digest(self):
        return hashlib.sha256(self.text.encode("utf-8")).hexdigest()[:16]


def _collect_cyc_conductors(obj, acc):
    if isinstance(obj, str):
        s = obj.strip()
        if s.startswith("cyc(") and ")" in s:
            try:
                acc.append(int(s[4:s.index(")")]))
            except ValueError:
                pass
    elif isinstance(obj, dict):
        for v in obj.values():
            _collect_cyc_conductors(v, acc)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _collect_cyc_conductors(v, acc)


def load_config(text: str) -> SessionConfig:
    try:
        raw = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ConfigError("config parse error: %s" % exc)
    needed = []
    _collect_cyc_conductors(raw, needed)
    inferred = 1
    for m in needed:
        inferred = inferred * m // math.gcd(inferred, m)
    conductor = int(raw.get("conductor", inferred))
    for m in needed:
        if conductor % m != 0:
            raise ConfigError(
                "declared conductor %d cannot represent cyc(%d) literals"
                % (conductor, m))
    seed = int(raw.get("seed", 0))
    lie_spec = raw.get("lie")
    group_spec = raw.get("group")
    scheme_spec = raw.get("scheme")
    if not lie_spec or not group_spec or not scheme_spec:
        raise ConfigError("config needs [lie], [group], and [scheme] tables")
    window = raw.get("window", {})
    lo = int(window.get("lo", -2))
    hi = int(window.get("hi", 2))
    if lo > hi:
        raise ConfigError("window lo exceeds hi", lo=lo, hi=hi)
    return SessionConfig(
        raw=raw, text=text, conductor=conductor, seed=seed,
        lie_spec=dict(lie_spec), group_spec=dict(group_spec),
        scheme_spec=dict(scheme_spec),
        lie_action=dict(raw.get("lie_action", {})),
        point_action=dict(raw.get("point_action", {})),
        window=(lo, hi),
        analysis=dict(raw.get("analysis", {})),
        assignments=list(raw.get("assignments", [])),
        drinfeld=raw.get("drinfeld", {}).get("pi")
        if raw.get("drinfeld") else None,
        title=str(raw.get("title", "")))


def parse_label_spec(spec, conductor):
    """Config/CLI label table -> internal label tuple."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError("label needs a 'kind'", label=spec)
    kind = spec["kind"]
    if kind == "sl2":
        return ("sl2_weight", int(spec["d"]))
    if kind == "sl2_weight":
        return ("sl2_weight", int(spec["d"]))
    if kind == "one_dim":
        return ("one_dim", parse_scalar(str(spec["value"]), conductor))
    if kind == "defining":
        return ("defining",)
    if kind == "weight":
        return ("weight", str(spec["type"]),
                tuple(int(c) for c in spec["coords"]))
    if kind == "matrices":
        mats = []
        for m in spec["rows"]:
            mats.append(tuple(tuple(parse_scalar(str(x), conductor)
                                    for x in row) for row in m))
        return ("matrices", mats)
    raise ConfigError("unknown label kind", kind=kind)


def parse_point_spec(spec, conductor):
    if isinstance(spec, (list, tuple)):
        return tuple(parse_scalar(str(x), conductor) for x in spec)
    return (parse_scalar(str(spec), conductor),)


def parse_assignment(entry, conductor):
    if "point" not in entry or "label" not in entry:
        raise ConfigError("assignment needs 'point' and 'label'")
    return (parse_point_spec(entry["point"], conductor),
            parse_label_spec(entry["label"], conductor))


def parse_drinfeld_spec(spec, conductor):
    factors = []
    for comp in spec:
        cur = []
        for item in comp:
            cur.append((parse_scalar(str(item["x"]), conductor),
                        int(item["n"])))
        factors.append(cur)
    return factors
