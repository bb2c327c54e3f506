"""Report rendering: canonical JSON records and aligned human-readable text.

The records form is the golden-test surface: json with sorted keys, fixed
separators, a trailing newline, nothing environment-dependent inside.
"""

from __future__ import annotations

import json


def render_records(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ": "),
                      indent=1) + "\n"


def render_text(report: dict) -> str:
    lines = []
    lines.append("command   %s" % report.get("command", "?"))
    if report.get("title"):
        lines.append("title     %s" % report["title"])
    lines.append("config    %s  (conductor %s, seed %s)"
                 % (report.get("config_digest"), report.get("conductor"),
                    report.get("seed")))
    lines.append("")
    _render_value(report.get("result", {}), lines, indent=0)
    return "\n".join(lines) + "\n"


def _render_value(value, lines, indent, key=None):
    pad = "  " * indent
    label = (key + ":") if key else ""
    if isinstance(value, dict):
        if label:
            lines.append(pad + label)
        for k in value:
            _render_value(value[k], lines, indent + (1 if label else 0), k)
    elif isinstance(value, list) and value and \
            all(isinstance(v, dict) for v in value) and \
            len({tuple(sorted(v)) for v in value}) == 1:
        if label:
            lines.append(pad + label)
        _render_table(value, lines, indent + (1 if label else 0))
    elif isinstance(value, list):
        inline = _fmt(value)
        if not value or (all(not isinstance(v, dict) for v in value)
                         and len(inline) <= 58):
            lines.append("%s%-18s %s" % (pad, label, inline))
        else:
            lines.append(pad + label)
            for v in value:
                if isinstance(v, dict):
                    _render_value(v, lines, indent + 1)
                    lines.append("")
                else:
                    lines.append("%s  - %s" % (pad, _fmt(v)))
    else:
        lines.append("%s%-18s %s" % (pad, label, _fmt(value)))


def _render_table(rows, lines, indent):
    pad = "  " * indent
    cols = list(rows[0].keys())
    cells = [[_fmt(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells))
              for i, c in enumerate(cols)]
    header = " | ".join(c.ljust(w) for c, w in zip(cols, widths))
    lines.append(pad + header)
    lines.append(pad + "-+-".join("-" * w for w in widths))
    for row in cells:
        lines.append(pad + " | ".join(v.ljust(w)
                                      for v, w in zip(row, widths)))


def _fmt(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)
