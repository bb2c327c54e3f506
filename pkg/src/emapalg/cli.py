"""Batch command-line client for the analysis service.

Runs against the in-process service by default (no network, deterministic),
or against a running server with --server URL.  `emapalg serve` starts the
HTTP service.
"""

from __future__ import annotations

import argparse
import json
import sys

import httpx

from .commands import COMMANDS
from .reportfmt import render_records, render_text

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_SEMANTIC = 3
EXIT_NOT_APPLICABLE = 4

_ERROR_EXITS = {
    "config": EXIT_CONFIG,
    "conductor": EXIT_CONFIG,
    "domain": EXIT_SEMANTIC,
    "algebra": EXIT_SEMANTIC,
    "representation": EXIT_SEMANTIC,
    "not-applicable": EXIT_NOT_APPLICABLE,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="emapalg",
        description="exact equivariant map algebra computations")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="session config path")
        p.add_argument("--point", help="point coordinates, comma separated")
        p.add_argument("--depth", type=int, help="source depth")
        p.add_argument("--window", help="degree window LO..HI")
        p.add_argument("--seed", type=int, help="session seed override")
        p.add_argument("--assign", action="append", default=None,
                       help="assignment as JSON "
                            '{"point": ["2"], "label": {"kind": "sl2", '
                            '"d": 1}} (repeatable)')
        p.add_argument("--assign2", action="append", default=None,
                       help="second assignment list for intertwine")
        p.add_argument("--pi", help="polynomial tuple as JSON")
        p.add_argument("--direction", choices=["to-psi", "from-psi"])
        p.add_argument("--pool", help="comma separated point pool")
        p.add_argument("--out", help="write the report to this path")
        p.add_argument("--format", choices=["text", "records"],
                       default="text")
        p.add_argument("--server", help="URL of a running service; default "
                                        "runs in process")
    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8023)
    return parser


def _params_from_args(args):
    params = {}
    for key in ("point", "depth", "window", "seed", "direction"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if args.assign:
        params["assignments"] = [json.loads(a) for a in args.assign]
    if args.assign2:
        params["assignments2"] = [json.loads(a) for a in args.assign2]
    if args.pi:
        params["pi"] = json.loads(args.pi)
    if args.pool:
        params["pool"] = [p.strip() for p in args.pool.split(",")]
    return params


def _client(server):
    if server:
        return httpx.Client(base_url=server)
    # in process: drive the ASGI app through the standard test transport
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient
        from .service import app
        return TestClient(app)


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn
        uvicorn.run("emapalg.service:app", host=args.host, port=args.port)
        return EXIT_OK
    try:
        config_text = open(args.config, "r", encoding="utf-8").read()
    except OSError as exc:
        print("cannot read config: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    try:
        params = _params_from_args(args)
    except json.JSONDecodeError as exc:
        print("malformed JSON argument: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    payload = {"command": args.command, "config": config_text,
               "params": params}
    try:
        import warnings
        with _client(args.server) as client, warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if args.server:
                response = client.post("/v1/run", json=payload,
                                       timeout=600.0)
            else:
                response = client.post("/v1/run", json=payload)
    except httpx.HTTPError as exc:
        print("service unreachable: %s" % exc, file=sys.stderr)
        return EXIT_UNEXPECTED
    if response.status_code != 200:
        print("service error: HTTP %d" % response.status_code,
              file=sys.stderr)
        return EXIT_UNEXPECTED
    body = response.json()
    if not body.get("ok"):
        error = body.get("error") or {"code": "error",
                                      "message": "unknown failure"}
        sys.stderr.write("error [%s]: %s\n" % (error.get("code"),
                                               error.get("message")))
        if args.format == "records":
            out = json.dumps({"error": error}, sort_keys=True,
                             separators=(",", ": "), indent=1) + "\n"
            _emit(out, args.out)
        return _ERROR_EXITS.get(error.get("code"), EXIT_UNEXPECTED)
    report = body["report"]
    out = render_records(report) if args.format == "records" \
        else render_text(report)
    _emit(out, args.out)
    return EXIT_OK


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
