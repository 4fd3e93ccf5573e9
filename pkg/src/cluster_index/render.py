"""SVG drawings of arc diagrams on the disc.

Accumulation points sit at equal angles; the regular points of an interval
are spread between its two accumulation points by a logistic map, so they
crowd towards both ends the way they converge in the model.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from cluster_index.config import settings
from cluster_index.errors import IoError
from cluster_index.surface import (
    Accumulation,
    Arc,
    MarkedPoint,
    ModelParams,
    Window,
    points_of,
    window_points,
)

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class RenderSpec:
    output: Path | None = None
    window: Window = field(default_factory=lambda: Window(6))
    size: int = field(default_factory=lambda: settings.SVG_SIZE)
    stroke_width: float = field(default_factory=lambda: settings.SVG_STROKE_WIDTH)
    point_labels: bool = field(default_factory=lambda: settings.SVG_POINT_LABELS)
    logistic_scale: float = field(default_factory=lambda: settings.SVG_LOGISTIC_SCALE)


def _num(x: float) -> str:
    return f"{x:.4f}"


def _props(attr: dict[str, object]) -> str:
    return " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attr.items())


def _element(tag: str, inner: str | None = None, **attr: object) -> str:
    if inner is None:
        return f"<{tag} {_props(attr)} />"
    return f"<{tag} {_props(attr)}>{inner}</{tag}>"


def angle(p: MarkedPoint, params: ModelParams, scale: float = 1.0) -> float:
    """Angle of ``p`` on the unit circle, anticlockwise from Accumulation(0)."""
    if isinstance(p, Accumulation):
        offset = 0.0
    else:
        t = max(-50.0, min(50.0, p.k / scale))
        offset = 1.0 / (1.0 + math.exp(-t))
    return 2 * math.pi * (p.j + offset) / params.n


def position(p: MarkedPoint, params: ModelParams, spec: RenderSpec) -> tuple[float, float]:
    centre, radius = spec.size / 2, 0.4 * spec.size
    theta = angle(p, params, spec.logistic_scale)
    return centre + radius * math.cos(theta), centre - radius * math.sin(theta)


def _arc_path(arc: Arc, params: ModelParams, spec: RenderSpec) -> str:
    (x0, y0), (x1, y1) = (position(p, params, spec) for p in arc.endpoints)
    centre = spec.size / 2
    cx = centre + 0.5 * ((x0 + x1) / 2 - centre)
    cy = centre + 0.5 * ((y0 + y1) / 2 - centre)
    d = f"M {_num(x0)} {_num(y0)} Q {_num(cx)} {_num(cy)} {_num(x1)} {_num(y1)}"
    return _element("path", d=d, fill="none", stroke="black", stroke_width=spec.stroke_width)


def _point(p: MarkedPoint, params: ModelParams, spec: RenderSpec) -> str:
    x, y = position(p, params, spec)
    if isinstance(p, Accumulation):
        mark = _element("circle", cx=_num(x), cy=_num(y), r=_num(4.0), fill="black")
    else:
        mark = _element(
            "circle", cx=_num(x), cy=_num(y), r=_num(2.0), fill="white", stroke="black"
        )
    if not spec.point_labels:
        return mark
    centre = spec.size / 2
    lx, ly = centre + 1.12 * (x - centre), centre + 1.12 * (y - centre)
    label = _element(
        "text",
        str(p),
        x=_num(lx),
        y=_num(ly),
        font_size="9",
        font_family="sans-serif",
        text_anchor="middle",
        dominant_baseline="middle",
    )
    return mark + "\n" + label


def render(spec: RenderSpec, params: ModelParams, arcs: Iterable[Arc]) -> str:
    """The SVG document for ``arcs``; identical inputs give identical bytes."""
    arcs = sorted(set(arcs))
    points = sorted(set(window_points(params, spec.window)) | points_of(arcs))
    centre, radius = spec.size / 2, 0.4 * spec.size
    body = [
        _element(
            "circle",
            cx=_num(centre),
            cy=_num(centre),
            r=_num(radius),
            fill="none",
            stroke="gray",
            stroke_width=spec.stroke_width,
        )
    ]
    body += [_arc_path(arc, params, spec) for arc in arcs]
    body += [_point(p, params, spec) for p in points]
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        + _element(
            "svg",
            "\n" + "\n".join(body) + "\n",
            xmlns=SVG_NS,
            version="1.1",
            width=spec.size,
            height=spec.size,
            viewBox=f"0 0 {spec.size} {spec.size}",
        )
        + "\n"
    )


def save(spec: RenderSpec, params: ModelParams, arcs: Iterable[Arc]) -> str:
    document = render(spec, params, arcs)
    if spec.output is None:
        return document
    try:
        spec.output.write_text(document, encoding="utf-8")
    except OSError as e:
        raise IoError(f"cannot write {spec.output}: {e}") from e
    logger.info("wrote %s", spec.output)
    return document
