"""Full-polytope analysis: critical fibers, probe verdicts, JSON and SVG output.

analyze() combines the critical-fiber pipeline with a probe grid scan and
classifies every grid fiber as critical, displaceable, or unknown.  Outputs
are deterministic for a fixed configuration: grid order is ascending, floats
are formatted identically, and no timestamps are embedded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import json

from .errors import DimensionUnsupported, InternalInconsistency
from .novikov import series_to_json
from .polytope import (
    MomentPolytope,
    bounding_box,
    enumerate_vertices,
    is_bounded,
    polytope_to_json,
)
from .probes import Probe, Verdict, displaceable_by_probe, probe_scan
from .solver import CriticalCertificate, find_critical_fibers

TOOL_VERSION = "0.1.0"
SVG_SIZE = 640
SVG_MARGIN = 0.05
COLOR_DISPLACEABLE = "#bbbbbb"
COLOR_CRITICAL = "#d62728"
COLOR_UNKNOWN = "#ffffff"

# Plain potentials miss fibers that only become critical after a bulk twist;
# stated in every report so an empty critical list is not over-read.
BULK_CAVEAT = (
    "Critical fibers are certified for the plain potential only. Fibers that "
    "become critical only after a bulk twist (for example in blown-up product "
    "families with negative blow-up parameter) are reported as unknown unless "
    "a twist is supplied."
)


@dataclass(frozen=True)
class AnalysisReport:
    polytope: MomentPolytope
    certificates: tuple[CriticalCertificate, ...]
    grid: tuple[Verdict, ...]
    unknown_count: int
    unknown_examples: tuple[tuple[Fraction, ...], ...]
    config: dict
    version: str
    notes: tuple[str, ...]


def analyze(
    P: MomentPolytope,
    seed: int = 0,
    truncation=None,
    starts: int | None = None,
    bound: int = 3,
    resolution: int = 16,
    alpha=None,
) -> AnalysisReport:
    """Run the critical-fiber search and the probe scan, then classify."""
    certs = tuple(
        find_critical_fibers(P, alpha=alpha, truncation=truncation, seed=seed, starts=starts)
    )
    cert_fibers = {c.fiber: i for i, c in enumerate(certs)}
    notes = [BULK_CAVEAT]
    for fiber in cert_fibers:
        probe = displaceable_by_probe(P, fiber, bound)
        if probe is not None:
            raise InternalInconsistency(
                f"fiber {fiber} is certified critical and displaced by a probe"
            )
    grid: list[Verdict] = []
    unknown: list[tuple[Fraction, ...]] = []
    if P.dimension <= 2 and is_bounded(P):
        for lam, probe in probe_scan(P, resolution, bound).items():
            if lam in cert_fibers:
                if probe is not None:
                    raise InternalInconsistency(
                        f"fiber {lam} is certified critical and displaced by a probe"
                    )
                grid.append(Verdict(lam, "critical", None, cert_fibers[lam]))
            elif probe is not None:
                grid.append(Verdict(lam, "displaceable", probe))
            else:
                grid.append(Verdict(lam, "no_probe_found"))
                unknown.append(lam)
    else:
        notes.append("Probe grid scan skipped: needs a bounded polytope of dimension <= 2.")
    config = {
        "seed": seed,
        "truncation": None if truncation is None else str(Fraction(truncation)),
        "starts": starts,
        "bound": bound,
        "resolution": resolution,
        "bulk": alpha is not None,
    }
    return AnalysisReport(
        polytope=P,
        certificates=certs,
        grid=tuple(grid),
        unknown_count=len(unknown),
        unknown_examples=tuple(unknown[:10]),
        config=config,
        version=TOOL_VERSION,
        notes=tuple(notes),
    )


# -- serialization ------------------------------------------------------------


def _point_json(pt) -> list[str]:
    return [str(x) for x in pt]


def certificate_to_json(cert: CriticalCertificate) -> dict:
    return {
        "fiber": _point_json(cert.fiber),
        "z": [series_to_json(zj) for zj in cert.z],
        "residual_valuation": "inf"
        if cert.residual_valuation == math.inf
        else str(cert.residual_valuation),
        "leading_jacobian_nondegenerate": cert.leading_jacobian_nondegenerate,
        "critical_value": series_to_json(cert.critical_value),
        "intersection_lower_bound": cert.intersection_lower_bound,
        "method": cert.method,
        "iterations": cert.iterations,
    }


def probe_to_json(probe: Probe | None):
    if probe is None:
        return None
    return {
        "facet": probe.facet_index,
        "base": _point_json(probe.base),
        "direction": list(probe.direction),
        "exit_parameter": "inf" if probe.exit_parameter is None else str(probe.exit_parameter),
    }


def report_to_json(report: AnalysisReport) -> str:
    doc = {
        "polytope": polytope_to_json(report.polytope),
        "certificates": [certificate_to_json(c) for c in report.certificates],
        "grid": [
            {
                "fiber": _point_json(v.fiber),
                "verdict": v.kind,
                "probe": probe_to_json(v.probe),
                "certificate": v.certificate,
            }
            for v in report.grid
        ],
        "unknown": {
            "count": report.unknown_count,
            "examples": [_point_json(x) for x in report.unknown_examples],
        },
        "config": report.config,
        "version": report.version,
        "notes": list(report.notes),
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def report_to_text(report: AnalysisReport) -> str:
    lines = []
    P = report.polytope
    lines.append(f"polytope: dimension {P.dimension}, {len(P.facets)} facets")
    lines.append(f"critical fibers: {len(report.certificates)}")
    for c in report.certificates:
        lead = ", ".join(f"{zj.leading():.6g}" for zj in c.z)
        lines.append(
            f"  lambda = ({', '.join(str(x) for x in c.fiber)})"
            f"  method={c.method}  z leading = [{lead}]"
            f"  intersections >= {c.intersection_lower_bound}"
        )
    if report.grid:
        counts: dict[str, int] = {}
        for v in report.grid:
            counts[v.kind] = counts.get(v.kind, 0) + 1
        lines.append(
            "grid: "
            + ", ".join(f"{k}={counts[k]}" for k in sorted(counts))
            + f" (of {len(report.grid)} interior points)"
        )
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


# -- SVG rendering -------------------------------------------------------------


def _ordered_outline(P: MomentPolytope) -> list[tuple[float, float]]:
    verts = [(float(v[0]), float(v[1])) for v in enumerate_vertices(P)]
    cx = sum(v[0] for v in verts) / len(verts)
    cy = sum(v[1] for v in verts) / len(verts)
    verts.sort(key=lambda v: math.atan2(v[1] - cy, v[0] - cx))
    return verts


def render_svg(report: AnalysisReport) -> str:
    """Deterministic 640x640 picture: shaded grid cells, outline, critical dots."""
    P = report.polytope
    if P.dimension != 2:
        raise DimensionUnsupported("SVG rendering requires a 2-dimensional polytope")
    box = bounding_box(P)
    (xmin, xmax), (ymin, ymax) = box
    wx, wy = float(xmax - xmin), float(ymax - ymin)
    avail = SVG_SIZE * (1 - 2 * SVG_MARGIN)
    scale = min(avail / wx, avail / wy)
    ox = (SVG_SIZE - scale * wx) / 2
    oy = (SVG_SIZE - scale * wy) / 2

    def to_px(x: float, y: float) -> tuple[float, float]:
        return (ox + scale * (x - float(xmin)), SVG_SIZE - oy - scale * (y - float(ymin)))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f'<rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="#ffffff" />',
    ]
    resolution = report.config.get("resolution") or 16
    cw = scale * wx / resolution
    ch = scale * wy / resolution
    for v in report.grid:
        color = {
            "displaceable": COLOR_DISPLACEABLE,
            "no_probe_found": COLOR_UNKNOWN,
            "critical": COLOR_UNKNOWN,
        }[v.kind]
        px, py = to_px(float(v.fiber[0]), float(v.fiber[1]))
        out.append(
            f'<rect x="{px - cw / 2:.2f}" y="{py - ch / 2:.2f}" '
            f'width="{cw:.2f}" height="{ch:.2f}" fill="{color}" />'
        )
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in (to_px(*v) for v in _ordered_outline(P)))
    out.append(f'<polygon points="{pts}" fill="none" stroke="#000000" stroke-width="2" />')
    for cert in report.certificates:
        px, py = to_px(float(cert.fiber[0]), float(cert.fiber[1]))
        label = "(" + ", ".join(str(x) for x in cert.fiber) + ")"
        out.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="6" fill="{COLOR_CRITICAL}" />')
        out.append(
            f'<text x="{px + 10:.2f}" y="{py - 8:.2f}" font-family="monospace" '
            f'font-size="14" fill="#000000">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(report: AnalysisReport, path: str) -> None:
    svg = render_svg(report)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
