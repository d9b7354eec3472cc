"""File formats and exports: algebra files, translation-quiver files,
DOT rendering, and JSON reports.

Every emitter sorts its output, so identical inputs produce byte-identical
text; the round-trip properties the tests pin down depend on that.
"""

import json
import re

from .errors import InputSyntaxError
from .knitting import ARQuiver, abstract_quiver


def is_algebra_file(text):
    """Algebra files carry a `field` line; translation-quiver files never do."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line.startswith("field"):
            return True
    return False


# -- translation-quiver files ------------------------------------------------

_ARROW_RE = re.compile(r"(\S+)\s*->\s*(\S+)(?:\s+(\d+))?$")
_TAU_RE = re.compile(r"(\S+)\s*=\s*(\S+)$")


def parse_translation_quiver(text):
    """Parse vertex/arrow/tau lines into a combinatorial ARQuiver."""
    vertex_specs = []
    arrow_specs = []
    tau_pairs = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        head, rest = parts[0], parts[1] if len(parts) > 1 else ""
        if head == "vertex":
            toks = rest.split()
            if not toks:
                raise InputSyntaxError("vertex line without a name", line_no)
            name, flags = toks[0], set(toks[1:])
            bad = flags - {"proj", "inj", "boundary"}
            if bad:
                raise InputSyntaxError(f"unknown vertex flags {sorted(bad)}", line_no)
            vertex_specs.append((name, "proj" in flags, "inj" in flags, "boundary" in flags))
        elif head == "arrow":
            m = _ARROW_RE.match(rest)
            if not m:
                raise InputSyntaxError(f"bad arrow line {line!r}", line_no)
            mult = int(m.group(3)) if m.group(3) else 1
            arrow_specs.append((m.group(1), m.group(2), mult))
        elif head == "tau":
            m = _TAU_RE.match(rest)
            if not m:
                raise InputSyntaxError(f"bad tau line {line!r}", line_no)
            tau_pairs.append((m.group(1), m.group(2)))
        else:
            raise InputSyntaxError(f"unknown directive {head!r}", line_no)
    return abstract_quiver(vertex_specs, arrow_specs, tau_pairs)


def export_translation_quiver(arq):
    lines = []
    for name in sorted(arq.vertices):
        v = arq.vertices[name]
        flags = []
        if v.is_projective:
            flags.append("proj")
        if v.is_injective:
            flags.append("inj")
        if v.boundary:
            flags.append("boundary")
        lines.append(" ".join(["vertex", name] + flags))
    for (s, t) in sorted(arq.arrows):
        m = arq.arrows[(s, t)]
        suffix = f" {m}" if m > 1 else ""
        lines.append(f"arrow {s} -> {t}{suffix}")
    for x in sorted(arq.tau):
        lines.append(f"tau {x} = {arq.tau[x]}")
    return "\n".join(lines) + "\n"


# -- algebra files -----------------------------------------------------------


def format_scalar(field, c):
    return field.format(c)


def format_relation(field, relation):
    parts = []
    for idx, (c, p) in enumerate(relation.terms):
        word = "*".join(p.arrows)
        neg = str(c).startswith("-")
        mag = -c if neg else c
        body = word if mag == field.one else f"{format_scalar(field, mag)}*{word}"
        if idx == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def emit_algebra_file(presentation):
    """Round-trippable algebra file text for a presentation."""
    field = presentation.field
    lines = [f"field {field.name}"]
    for v in presentation.quiver.vertices:
        lines.append(f"vertex {v}")
    for a in presentation.quiver.arrows.values():
        lines.append(f"arrow {a.label}: {a.source} -> {a.target}")
    for r in presentation.relations:
        lines.append(f"relation {format_relation(field, r)}")
    return "\n".join(lines) + "\n"


# -- DOT ----------------------------------------------------------------------


def export_dot(arq, highlight=None):
    """Deterministic DOT text: solid arrows, dashed translation edges,
    shape-coded projectives and injectives."""
    highlight = set(highlight or ())
    lines = ["digraph ar_quiver {", "  rankdir=LR;"]
    for name in sorted(arq.vertices):
        v = arq.vertices[name]
        if v.is_projective and v.is_injective:
            shape = "Msquare"
        elif v.is_projective:
            shape = "box"
        elif v.is_injective:
            shape = "diamond"
        else:
            shape = "ellipse"
        attrs = [f"shape={shape}"]
        if v.dim_vector is not None:
            dv = ",".join(str(d) for d in v.dim_vector)
            attrs.append(f'tooltip="({dv})"')
        lines.append(f'  "{name}" [{", ".join(attrs)}];')
    for (s, t) in sorted(arq.arrows):
        m = arq.arrows[(s, t)]
        label = f' [label="{m}"]' if m > 1 else ""
        lines.append(f'  "{s}" -> "{t}"{label};')
    for x in sorted(arq.tau):
        lines.append(f'  "{x}" -> "{arq.tau[x]}" [style=dashed, constraint=false];')
    if highlight:
        lines.append("  subgraph cluster_highlight {")
        lines.append("    label=\"cut\";")
        for name in sorted(highlight):
            lines.append(f'    "{name}";')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- JSON reports --------------------------------------------------------------


def algebra_summary(alg):
    pres = alg.presentation
    return {
        "field": alg.field.name,
        "vertices": list(pres.quiver.vertices),
        "arrows": [[a.label, a.source, a.target] for a in pres.quiver.arrows.values()],
        "relations": len(pres.relations),
        "dimension": alg.dim,
        "nilpotency": alg.nilpotency,
    }


def ar_quiver_report(arq, alg=None):
    verts = []
    for name in sorted(arq.vertices):
        v = arq.vertices[name]
        verts.append(
            {
                "name": name,
                "dim_vector": list(v.dim_vector) if v.dim_vector is not None else None,
                "projective": v.is_projective,
                "injective": v.is_injective,
                "tau": arq.tau.get(name),
            }
        )
    out = {}
    if alg is not None:
        out["algebra"] = algebra_summary(alg)
    out["ar_quiver"] = {
        "vertices": verts,
        "arrows": [[s, t, arq.arrows[(s, t)]] for (s, t) in sorted(arq.arrows)],
    }
    return out


def render_report(obj):
    return json.dumps(obj, indent=2) + "\n"
