"""Lattice-path pictures of binary words, as SVG or plain text."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Literal, Optional

from .detector import Occurrence
from .words import BinaryWord, prefix_sums

ASCII_MAX_LENGTH = 120


@dataclass(frozen=True)
class PlotSpec:
    format: Literal["svg", "ascii"] = "svg"
    mark: Optional[Occurrence] = None
    unit: int = 24


def _check_mark(w: BinaryWord, mark: Optional[Occurrence]) -> None:
    if mark is None:
        return
    if mark.order < 1 or mark.start < 1 or mark.end > len(w):
        raise ValueError(f"{mark} does not fit in a word of length {len(w)}")
    bits = w.bits
    i, r = mark.start - 1, mark.order
    if bits.count(1, i, i + r) != bits.count(1, i + r, i + 2 * r):
        raise ValueError(f"{mark} is not an abelian square of the word")


def _fmt(x: float) -> str:
    return f"{x:g}"


def render_svg(w: BinaryWord, mark: Optional[Occurrence] = None, unit: int = 24) -> str:
    """Filled dots at every (i, S_i), east/northeast unit steps between them,
    axes with integer ticks, and open circles at the three points of
    ``mark``."""
    _check_mark(w, mark)
    if unit <= 0:
        raise ValueError("unit must be positive")
    path = prefix_sums(w)
    t, top = len(w), path[len(w)]
    margin = unit
    width = (t + 2) * unit + 2 * margin
    height = (top + 2) * unit + 2 * margin

    def px(i):
        return margin + i * unit

    def py(s):
        return height - margin - s * unit

    def line(parent, cls, x1, y1, x2, y2):
        ET.SubElement(parent, "line", {
            "class": cls, "x1": _fmt(x1), "y1": _fmt(y1), "x2": _fmt(x2), "y2": _fmt(y2),
        })

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )
    axes = ET.SubElement(svg, "g", {"class": "axes", "stroke": "black", "stroke-width": "2"})
    line(axes, "axis", px(0), py(0), px(t + 1), py(0))
    line(axes, "axis", px(0), py(0), px(0), py(top + 1))
    tick = unit * 0.08
    for i in range(1, t + 1):
        line(axes, "tick", px(i), py(0) - tick, px(i), py(0) + tick)
    for s in range(1, top + 1):
        line(axes, "tick", px(0) - tick, py(s), px(0) + tick, py(s))

    steps = ET.SubElement(svg, "g", {"class": "steps", "stroke": "black", "stroke-width": "1"})
    for i in range(t):
        line(steps, "step", px(i), py(path[i]), px(i + 1), py(path[i + 1]))
    dots = ET.SubElement(svg, "g", {"class": "dots", "fill": "black"})
    for i, s in path.points:
        ET.SubElement(dots, "circle", {"class": "dot", "cx": _fmt(px(i)), "cy": _fmt(py(s)), "r": _fmt(unit * 0.125)})
    if mark is not None:
        marks = ET.SubElement(svg, "g", {"class": "marks", "fill": "none", "stroke": "black"})
        for i, s in mark.lattice_points(path.sums):
            ET.SubElement(marks, "circle", {"class": "mark", "cx": _fmt(px(i)), "cy": _fmt(py(s)), "r": _fmt(unit * 0.25)})
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n"


def render_ascii(w: BinaryWord, mark: Optional[Occurrence] = None) -> str:
    """Grid of '.', with '*' on the path and 'o' on marked points; the
    origin is the bottom-left character."""
    _check_mark(w, mark)
    if len(w) > ASCII_MAX_LENGTH:
        raise ValueError(f"ASCII plots are limited to {ASCII_MAX_LENGTH} letters, got {len(w)}")
    path = prefix_sums(w)
    t, top = len(w), path[len(w)]
    grid = [["."] * (t + 1) for _ in range(top + 1)]
    for i, s in path.points:
        grid[s][i] = "*"
    if mark is not None:
        for i, s in mark.lattice_points(path.sums):
            grid[s][i] = "o"
    return "".join("".join(row) + "\n" for row in reversed(grid))


def render(w: BinaryWord, spec: PlotSpec = PlotSpec()) -> str:
    if spec.format == "svg":
        return render_svg(w, spec.mark, spec.unit)
    if spec.format == "ascii":
        return render_ascii(w, spec.mark)
    raise ValueError(f"unknown plot format {spec.format!r}")
