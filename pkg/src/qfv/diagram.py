"""DOT and TikZ renderings of a tilting quiver; the ray index is the edge class."""
from __future__ import annotations

from collections import defaultdict

from .tilting import TiltingQuiver, format_vertex

COLORS = ["green!60!black", "red", "blue", "cyan", "magenta", "orange", "violet", "brown", "teal", "olive"]
DOT_COLORS = ["forestgreen", "red", "blue", "cyan3", "magenta", "orange", "purple", "brown", "teal", "olivedrab"]
AXES = [(2.0, 0.0), (1.3, 0.5), (0.0, 2.0), (0.6, 1.2), (-1.0, 0.8), (0.4, -1.1)]


def _position(m):
    x = y = 0.0
    for i, c in enumerate(m):
        dx, dy = AXES[i % len(AXES)]
        scale = 1 + i // len(AXES)
        x += c * dx * scale
        y += c * dy * scale
    return round(x, 3), round(y, 3)


def to_dot(tq: TiltingQuiver) -> str:
    lines = ["digraph tilting_quiver {", "  rankdir=LR;", "  node [shape=circle];"]
    for v in tq.vertices:
        style = ", penwidth=2" if tq.is_base_vertex(v) else ""
        lines.append(f'  "{format_vertex(v)}" [label="{format_vertex(v)}"{style}];')
    for a in tq.arrows:
        color = DOT_COLORS[(a.ray - 1) % len(DOT_COLORS)]
        lines.append(
            f'  "{format_vertex(a.tail)}" -> "{format_vertex(a.head)}" '
            f'[class="r{a.ray}", label="r{a.ray}", color="{color}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_tikz(tq: TiltingQuiver) -> str:
    lines = ["\\begin{tikzpicture}[>=latex]",
             "  \\tikzset{vertex/.style={shape=circle,draw,minimum size=2em}}",
             "  \\tikzset{base/.style={very thick}}"]
    for r in tq.base.rays:
        lines.append(f"  \\tikzset{{ray{r}/.style={{->,{COLORS[(r - 1) % len(COLORS)]}}}}}")
    name = {v: f"v{i}" for i, v in enumerate(tq.vertices)}
    for v in tq.vertices:
        x, y = _position(v)
        style = "vertex,base" if tq.is_base_vertex(v) else "vertex"
        lines.append(f"  \\node[{style}] ({name[v]}) at ({x},{y}) {{${format_vertex(v)}$}};")
    parallel = defaultdict(int)
    for a in tq.arrows:
        j = parallel[(a.tail, a.head)]
        parallel[(a.tail, a.head)] += 1
        bend = "" if j == 0 else f" [bend {'left' if j % 2 else 'right'}={8 * ((j + 1) // 2)}]"
        lines.append(f"  \\draw[ray{a.ray}] ({name[a.tail]}) to{bend} ({name[a.head]});")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def emit_diagram(tq: TiltingQuiver, fmt: str = "dot") -> str:
    if fmt == "dot":
        return to_dot(tq)
    if fmt == "tikz":
        return to_tikz(tq)
    raise ValueError(f"unknown diagram format {fmt!r}")
