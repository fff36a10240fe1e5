"""Deterministic DOT, JSON and SVG renderings of solution graphs."""
from __future__ import annotations

import json
import math
from typing import Any

from .graph import _edges, components
from .relation import Relation, vec_to_str

# hypercube projection: coordinate i moves a vertex along a fan direction at angle pi*(i+0.5)/n
SVG_UNIT = 60.0
SVG_RADIUS = 5.0
SVG_MARGIN = 20.0
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _edge_list(rel: Relation) -> list[tuple[int, int]]:
    u, v = _edges(rel)
    m = rel.members
    return sorted((int(m[a]), int(m[b])) for a, b in zip(u, v))


def graph_payload(rel: Relation) -> dict[str, Any]:
    part = components(rel)
    n = rel.arity
    labels = {int(v): int(lab) for v, lab in zip(part.members, part.labels)}
    return {
        "arity": n,
        "vertices": [{"id": vec_to_str(v, n), "component": labels[v]} for v in sorted(labels)],
        "edges": [[vec_to_str(a, n), vec_to_str(b, n)] for a, b in _edge_list(rel)],
        "components": part.count,
    }


def to_json(rel: Relation) -> str:
    return json.dumps(graph_payload(rel), sort_keys=True, indent=2) + "\n"


def to_dot(rel: Relation, name: str = "solutions") -> str:
    n = rel.arity
    part = components(rel)
    lines = [f"graph {name} {{", "  node [shape=circle, fontsize=10];"]
    for v, lab in zip(part.members, part.labels):
        color = PALETTE[int(lab) % len(PALETTE)]
        lines.append(f'  "{vec_to_str(int(v), n)}" [color="{color}"];')
    for a, b in _edge_list(rel):
        lines.append(f'  "{vec_to_str(a, n)}" -- "{vec_to_str(b, n)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _position(v: int, n: int) -> tuple[float, float]:
    x = y = 0.0
    for i in range(n):
        if (v >> (n - 1 - i)) & 1:
            angle = math.pi * (i + 0.5) / n
            x += SVG_UNIT * math.cos(angle)
            y += SVG_UNIT * math.sin(angle)
    return x, y


def to_svg(rel: Relation) -> str:
    """Planar projection of the hypercube; parameters are recorded in a leading comment."""
    n = rel.arity
    pos = {v: _position(v, n) for v in range(1 << n)} if n <= 16 else {int(v): _position(int(v), n) for v in rel}
    xs = [p[0] for p in pos.values()] or [0.0]
    ys = [p[1] for p in pos.values()] or [0.0]
    minx, miny = min(xs) - SVG_MARGIN, min(ys) - SVG_MARGIN
    width = max(xs) - min(xs) + 2 * SVG_MARGIN
    height = max(ys) - min(ys) + 2 * SVG_MARGIN
    part = components(rel)
    f = lambda t: f"{t:.2f}"  # noqa: E731
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{f(width)}" height="{f(height)}" '
        f'viewBox="{f(minx)} {f(miny)} {f(width)} {f(height)}">',
        f"<!-- hypercube projection: n={n} unit={SVG_UNIT} radius={SVG_RADIUS} "
        f"fan=pi*(i+0.5)/n margin={SVG_MARGIN} -->",
    ]
    for a, b in _edge_list(rel):
        (x1, y1), (x2, y2) = pos[a], pos[b]
        out.append(f'<line x1="{f(x1)}" y1="{f(y1)}" x2="{f(x2)}" y2="{f(y2)}" stroke="#888" />')
    for v, lab in zip(part.members, part.labels):
        x, y = pos[int(v)]
        color = PALETTE[int(lab) % len(PALETTE)]
        out.append(f'<circle cx="{f(x)}" cy="{f(y)}" r="{SVG_RADIUS}" fill="{color}">'
                   f"<title>{vec_to_str(int(v), n)}</title></circle>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
