"""Command implementations shared by the HTTP service and the CLI client.

Every command takes the raw config text plus a parameter mapping and returns a
JSON-ready report dictionary.  Reports carry no timestamps or machine state,
so byte-identical configs give byte-identical reports.
"""

from __future__ import annotations

from .errors import ConfigError, EmapError, NotApplicableError
from .config import (
    load_config, parse_drinfeld_spec, parse_label_spec, parse_point_spec,
)
from .session import Session
from .liealg import analyze_structure, analyze_subspace
from .emap import md_window, perfectness_certificate
from .orbits import gamma_kernel, isotropy, tilde_analysis
from .reps import associative_closure, burnside_irreducible, \
    intertwiner_dimension
from .classify import (
    DrinfeldTuple, canonicalize_psi, classification_regime, drinfeld_equal,
    drinfeld_to_psi, ev_psi, injectivity_harness, psi_to_drinfeld,
)

COMMANDS = (
    "analyze-structure", "fixed-subalgebra", "derived", "tilde", "gamma",
    "eval-rep", "irreducible", "intertwine", "classify", "drinfeld",
    "injectivity", "orbit", "stabilizer",
)


def run_command(command, config_text, params=None):
    params = dict(params or {})
    if command not in COMMANDS:
        raise ConfigError("unknown command", command=command,
                          known=",".join(COMMANDS))
    config = load_config(config_text)
    if params.get("seed") is not None:
        config.seed = int(params["seed"])
    if params.get("window"):
        lo, hi = _parse_window(params["window"])
        config.window = (lo, hi)
    session = Session(config)
    result = _HANDLERS[command](session, params)
    return {
        "command": command,
        "title": config.title,
        "config_digest": config.digest,
        "conductor": config.conductor,
        "seed": config.seed,
        "result": result,
    }


def _parse_window(text):
    if isinstance(text, (list, tuple)):
        return int(text[0]), int(text[1])
    parts = str(text).split("..")
    if len(parts) != 2:
        raise ConfigError("window must look like LO..HI", got=text)
    return int(parts[0]), int(parts[1])


def _depth(session, params, default=6):
    if params.get("depth") is not None:
        return int(params["depth"])
    return int(session.analysis_option("depth", default))


def _point(session, params, key="point"):
    if params.get(key) is None:
        raise ConfigError("command needs --%s" % key)
    return session.parse_point(params[key])


def _assignments(session, params, key="assignments"):
    entries = params.get(key)
    if entries is None and key == "assignments":
        entries = session.config.assignments
    if not entries:
        raise ConfigError("no assignments given (config [[assignments]] or "
                          "--assign)")
    return session.parse_assignments(entries)


# ---------------------------------------------------------------------------
# handlers


def _cmd_analyze_structure(session, params):
    rep = analyze_structure(session.algebra, seed=session.config.seed)
    return {"algebra": session.algebra.descriptor,
            "structure": rep.summary()}


def _cmd_fixed_subalgebra(session, params):
    fixed = session.bundle.fixed_lie_subspace()
    rep = analyze_subspace(session.algebra, fixed, seed=session.config.seed,
                           descriptor="fixed subalgebra")
    return {"dim": fixed.dim, "structure": rep.summary()}


def _cmd_derived(session, params):
    depth = _depth(session, params)
    rep = session.derived(depth=depth)
    out = {
        "depths": list(rep.depths),
        "path": rep.path,
        "rows": rep.table(),
        "total_quotient": rep.total_quotient,
        "all_stable": rep.all_stable,
    }
    tilde = tilde_analysis(session.bundle, seed=session.config.seed)
    out["tilde_verdict"] = tilde.verdict
    if tilde.verdict in ("finite", "empty") and not tilde.missing:
        md = md_window(rep, tilde.points, session.bundle)
        out["md_quotient"] = md.quotient_dim
        out["md_dim"] = md.md_dim
    return out


def _cmd_tilde(session, params):
    return tilde_analysis(session.bundle, seed=session.config.seed).summary()


def _cmd_gamma(session, params):
    depth = _depth(session, params)
    rep = session.derived(depth=depth)
    tilde = tilde_analysis(session.bundle, seed=session.config.seed)
    gamma = gamma_kernel(rep, session.bundle, tilde)
    md = md_window(rep, tilde.points, session.bundle)
    return {
        "tilde_verdict": tilde.verdict,
        "gamma": gamma.summary(),
        "md_quotient": md.quotient_dim,
        "abelianization_dim": rep.total_quotient,
        "stable": rep.all_stable,
    }


def _cmd_eval_rep(session, params):
    psi = canonicalize_psi(session.bundle, _assignments(session, params))
    window = session.window()
    rep = ev_psi(psi, window)
    return {
        "psi": psi.records(),
        "dim": rep.dim,
        "window_dim": window.total_dim,
        "bracket_compatible": True,
        "irreducible": burnside_irreducible(rep) if rep.dim <= 12 else None,
    }


def _cmd_irreducible(session, params):
    psi = canonicalize_psi(session.bundle, _assignments(session, params))
    window = session.window()
    rep = ev_psi(psi, window)
    closure = associative_closure(rep)
    return {
        "psi": psi.records(),
        "dim": rep.dim,
        "closure_dim": len(closure),
        "full_matrix_dim": rep.dim ** 2,
        "irreducible": len(closure) == rep.dim ** 2,
    }


def _cmd_intertwine(session, params):
    psi1 = canonicalize_psi(session.bundle, _assignments(session, params))
    psi2 = canonicalize_psi(session.bundle,
                            _assignments(session, params, "assignments2"))
    window = session.window()
    r1 = ev_psi(psi1, window, check=False)
    r2 = ev_psi(psi2, window, check=False)
    return {
        "psi1": psi1.records(),
        "psi2": psi2.records(),
        "dims": [r1.dim, r2.dim],
        "intertwiner_dim": intertwiner_dimension(r1, r2),
    }


def _cmd_classify(session, params):
    depth = _depth(session, params)
    rep = classification_regime(session.bundle, depth=depth)
    return rep.summary()


def _cmd_drinfeld(session, params):
    direction = params.get("direction", "to-psi")
    if direction == "from-psi":
        psi = canonicalize_psi(session.bundle, _assignments(session, params))
        pi = psi_to_drinfeld(psi, session.bundle)
        return {"psi": psi.records(), "pi": pi.records(),
                "pi_text": pi.text()}
    spec = params.get("pi", session.config.drinfeld)
    if spec is None:
        raise ConfigError("no polynomial tuple given ([drinfeld] pi or --pi)")
    factors = parse_drinfeld_spec(spec, session.conductor)
    rank = len(factors)
    pi = DrinfeldTuple(rank, factors)
    psi = drinfeld_to_psi(pi, session.bundle)
    back = psi_to_drinfeld(psi, session.bundle)
    return {
        "pi": pi.canonical().records(),
        "pi_text": pi.canonical().text(),
        "psi": psi.records(),
        "round_trip": drinfeld_equal(pi, back),
    }


def _cmd_injectivity(session, params):
    spec = dict(session.config.raw.get("injectivity", {}))
    pool_texts = params.get("pool") or spec.get("pool")
    label_specs = params.get("labels") or spec.get("labels")
    if not pool_texts or not label_specs:
        raise ConfigError("injectivity needs a point pool and a label pool "
                          "([injectivity] in the config)")
    pool = [session.parse_point(t) for t in pool_texts]
    labels = [parse_label_spec(dict(l), session.conductor)
              for l in label_specs]
    window = session.window()
    rep = injectivity_harness(session.bundle, pool, labels, window)
    return rep.summary()


def _cmd_orbit(session, params):
    x = _point(session, params)
    orb = session.bundle.orbit(x)
    return {
        "point": [c.text() for c in x],
        "orbit": [[c.text() for c in p] for p in orb],
        "orbit_size": len(orb),
        "stabilizer_order": len(session.bundle.stabilizer(x)),
    }


def _cmd_stabilizer(session, params):
    x = _point(session, params)
    rec = isotropy(session.bundle, x, seed=session.config.seed)
    grp = session.bundle.group
    return {
        "point": [c.text() for c in x],
        "stabilizer_order": len(rec.stabilizer),
        "stabilizer_elements": [grp.word_of(a) for a in rec.stabilizer],
        "gx_dim": rec.gx.dim,
        "z_dim": rec.z_dim,
        "gx_type": rec.structure.type_label,
        "gx_structure": rec.structure.summary(),
    }


_HANDLERS = {
    "analyze-structure": _cmd_analyze_structure,
    "fixed-subalgebra": _cmd_fixed_subalgebra,
    "derived": _cmd_derived,
    "tilde": _cmd_tilde,
    "gamma": _cmd_gamma,
    "eval-rep": _cmd_eval_rep,
    "irreducible": _cmd_irreducible,
    "intertwine": _cmd_intertwine,
    "classify": _cmd_classify,
    "drinfeld": _cmd_drinfeld,
    "injectivity": _cmd_injectivity,
    "orbit": _cmd_orbit,
    "stabilizer": _cmd_stabilizer,
}
