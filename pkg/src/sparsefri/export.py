"""CSV and SVG output for conclusions."""

from __future__ import annotations

import csv
import io
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np

from .fisformat import FisDocument, to_fuzzy_set
from .fuzzy import AlphaCut, PiecewiseLinearFuzzySet, cog_samples

PANEL_W, PANEL_H, MARGIN = 420, 180, 30
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def conclusion_csv(fset: PiecewiseLinearFuzzySet, cuts, num_points: int) -> str:
    """``x,mu`` rows at the defuzzification samples, a blank line, then the cut table."""
    x, mu = cog_samples(fset, num_points)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "mu"])
    writer.writerows((repr(float(a)), repr(float(b))) for a, b in zip(x, mu))
    buf.write("\n")
    writer.writerow(["alpha", "lower", "upper"])
    writer.writerows((repr(c.level), repr(c.lower), repr(c.upper)) for c in cuts)
    return buf.getvalue()


def write_conclusion_csv(path, fset, cuts, num_points: int) -> None:
    Path(path).write_text(conclusion_csv(fset, cuts, num_points), encoding="utf-8")


def read_conclusion_csv(path):
    """Inverse of :func:`write_conclusion_csv`: ``(x, mu, cuts)``."""
    text = Path(path).read_text(encoding="utf-8")
    samples, _, table = text.partition("\n\n")
    rows = list(csv.reader(samples.splitlines()))[1:]
    x = np.array([float(r[0]) for r in rows])
    mu = np.array([float(r[1]) for r in rows])
    cuts = [AlphaCut(float(a), float(lo), float(hi)) for a, lo, hi in list(csv.reader(table.strip().splitlines()))[1:]]
    return x, mu, cuts


def _polyline(parent, fset, sx, sy, colour, width=1.0, dash=None):
    xs, mus = list(fset.xs), list(fset.mus)
    if mus[0] > 0:
        xs.insert(0, xs[0])
        mus.insert(0, 0.0)
    if mus[-1] > 0:
        xs.append(xs[-1])
        mus.append(0.0)
    pts = " ".join(f"{sx(x):.2f},{sy(m):.2f}" for x, m in zip(xs, mus))
    attrs = {"points": pts, "fill": "none", "stroke": colour, "stroke-width": f"{width:g}"}
    if dash:
        attrs["stroke-dasharray"] = dash
    node = ET.SubElement(parent, "polyline", attrs)
    ET.SubElement(node, "title").text = fset.label or "set"
    return node


def _panel(root, top, title, rng, partition, overlays):
    lo, hi = rng
    span = (hi - lo) or 1.0
    g = ET.SubElement(root, "g", {"transform": f"translate(0,{top})"})
    ET.SubElement(
        g, "rect", {"x": str(MARGIN), "y": "20", "width": str(PANEL_W), "height": str(PANEL_H - 40), "fill": "none", "stroke": "#999"}
    )
    ET.SubElement(g, "text", {"x": str(MARGIN), "y": "14", "font-size": "12"}).text = title
    ET.SubElement(g, "text", {"x": str(MARGIN), "y": str(PANEL_H - 6), "font-size": "10"}).text = f"{lo:g}"
    ET.SubElement(g, "text", {"x": str(MARGIN + PANEL_W), "y": str(PANEL_H - 6), "font-size": "10", "text-anchor": "end"}).text = f"{hi:g}"

    def sx(x):
        return MARGIN + (x - lo) / span * PANEL_W

    def sy(m):
        return PANEL_H - 20 - m * (PANEL_H - 50)

    for fset in partition:
        _polyline(g, fset, sx, sy, "#777777")
    for i, fset in enumerate(overlays):
        _polyline(g, fset, sx, sy, PALETTE[i % len(PALETTE)], width=2.0, dash="6,3" if i % 2 else None)


def render_svg(fis: FisDocument, observation, conclusions) -> str:
    """One panel per input (partition and observation) and per output (partition and conclusions).

    ``conclusions`` maps a legend name to the tuple of output sets, so that
    several methods can be overlaid on the same output panels.
    """
    n_panels = fis.num_inputs + fis.num_outputs
    root = ET.Element(
        "svg",
        {"xmlns": "http://www.w3.org/2000/svg", "width": str(PANEL_W + 2 * MARGIN), "height": str(n_panels * PANEL_H + 20)},
    )
    top = 0
    for d, var in enumerate(fis.inputs):
        _panel(root, top, f"input {var.name}", var.range, [to_fuzzy_set(m) for m in var.mfs], [observation[d]])
        top += PANEL_H
    names = list(conclusions)
    for k, var in enumerate(fis.outputs):
        title = f"output {var.name}: " + ", ".join(names)
        overlays = [conclusions[n][k].with_label(f"{n} {conclusions[n][k].label}") for n in names]
        _panel(root, top, title, var.range, [to_fuzzy_set(m) for m in var.mfs], overlays)
        top += PANEL_H
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"


def write_svg(path, fis, observation, conclusions) -> None:
    Path(path).write_text(render_svg(fis, observation, conclusions), encoding="utf-8")
