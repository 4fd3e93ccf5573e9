"""Distinguished triangles realizing nonzero extensions, and their window check."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from cluster_index.errors import NoExtension, PreconditionViolated
from cluster_index.homext import composite_nonzero, ext_dim, hom_dim, shared_accumulation
from cluster_index.report import OracleReport
from cluster_index.surface import (
    Arc,
    MarkedPoint,
    ModelParams,
    Obj,
    Window,
    crosses_transversely,
    in_interval,
    suspend,
    try_arc,
    window_arcs,
)

logger = logging.getLogger(__name__)

TriangleKind = Literal[
    "crossing", "shared-accumulation", "self-extension", "approximation", "exchange", "sum"
]

Component = tuple[Arc, Arc]


@dataclass(frozen=True)
class Triangle:
    """A -> B -> C -> ΣA.

    ``connecting`` lists the nonzero components of C -> ΣA as pairs
    (summand of C, summand of ΣA); it is empty for the zero map.
    """

    a: Obj
    b: Obj
    c: Obj
    connecting: tuple[Component, ...]
    kind: TriangleKind
    parts: tuple[Triangle, ...] = ()

    def __post_init__(self) -> None:
        for u, v in self.connecting:
            if not hom_dim(u, v):
                raise PreconditionViolated(f"connecting component {u} -> {v} is zero")

    @property
    def simple_parts(self) -> tuple[Triangle, ...]:
        return self.parts or (self,)

    def direct_sum(self, other: Triangle) -> Triangle:
        return Triangle(
            a=self.a + other.a,
            b=self.b + other.b,
            c=self.c + other.c,
            connecting=self.connecting + other.connecting,
            kind="sum",
            parts=self.simple_parts + other.simple_parts,
        )

    def __str__(self) -> str:
        return f"{self.a} -> {self.b} -> {self.c} -> Σ{self.a}  ({self.kind})"


def crossing_labels(
    a: Arc, c: Arc
) -> tuple[MarkedPoint, MarkedPoint, MarkedPoint, MarkedPoint]:
    """Endpoints of two crossing arcs read anticlockwise as a0, c0, a1, c1."""
    a0, a1 = a.e0, a.e1
    c0, c1 = (c.e0, c.e1) if in_interval(c.e0, a0, a1, False, False) else (c.e1, c.e0)
    return a0, c0, a1, c1


def extension_triangle(c: Arc, a: Arc) -> Triangle:
    """The triangle A -> B -> C -> ΣA of the nonzero class in Ext^1(C, A)."""
    if not ext_dim(c, a):
        raise NoExtension(f"Ext^1({c}, {a}) = 0")
    connecting = ((c, suspend(a, 1)),)
    if crosses_transversely(a, c):
        a0, c0, a1, c1 = crossing_labels(a, c)
        b = Obj.of(try_arc(c0, a1), try_arc(c1, a0))
        return Triangle(Obj.of(a), b, Obj.of(c), connecting, "crossing")
    if a == c:
        return Triangle(Obj.of(a), Obj(), Obj.of(c), connecting, "self-extension")
    p = shared_accumulation(a, c)
    assert p is not None
    a0, c0 = a.other(p), c.other(p)
    middle = None if suspend(a, 1) == c else try_arc(a0, c0)
    return Triangle(Obj.of(a), Obj.of(middle), Obj.of(c), connecting, "shared-accumulation")


def dual_extension_triangle(a: Arc, c: Arc) -> Triangle:
    """C -> D1 ⊕ D2 -> A -> ΣC for transversely crossing arcs."""
    if not crosses_transversely(a, c):
        raise NoExtension(f"{a} and {c} do not cross transversely")
    a0, c0, a1, c1 = crossing_labels(a, c)
    d = Obj.of(try_arc(a1, c1), try_arc(a0, c0))
    return Triangle(Obj.of(c), d, Obj.of(a), ((a, suspend(c, 1)),), "crossing")


def _dim(w: Arc, m: Iterable[Arc]) -> int:
    return sum(hom_dim(w, u) for u in m)


def _rank_before(w: Arc, t: Triangle) -> int:
    """Rank of Hom(W, Σ^-1 C) -> Hom(W, A)."""
    for c, target in t.connecting:
        source = suspend(c, -1)
        if hom_dim(w, source) and composite_nonzero(w, source, suspend(target, -1)):
            return 1
    return 0


def _rank_from_middle(w: Arc, t: Triangle) -> int:
    """Rank of Hom(W, B) -> Hom(W, C)."""
    for c in t.c:
        for u in t.b:
            if hom_dim(w, u) and hom_dim(u, c) and composite_nonzero(w, u, c):
                return 1
    return 0


def _rank_connecting(w: Arc, t: Triangle) -> int:
    """Rank of Hom(W, C) -> Hom(W, ΣA)."""
    for c, target in t.connecting:
        if hom_dim(w, c) and composite_nonzero(w, c, target):
            return 1
    return 0


def exactness_failure(w: Arc, t: Triangle) -> str | None:
    """Dimension bookkeeping of the long exact Hom(W, -) sequence at W."""
    d_a, d_b, d_c = _dim(w, t.a), _dim(w, t.b), _dim(w, t.c)
    r_alpha = d_a - _rank_before(w, t)
    if not 0 <= r_alpha <= d_b:
        return f"rank of Hom({w}, A) -> Hom({w}, B) is {r_alpha}"
    r_beta = _rank_from_middle(w, t)
    if r_alpha + r_beta != d_b:
        return f"not exact at B for {w}"
    r_gamma = _rank_connecting(w, t)
    if r_beta + r_gamma != d_c:
        return f"not exact at C for {w}"
    shifted = suspend(w, -1)
    r_delta = _dim(shifted, t.a) - _rank_before(shifted, t)
    if r_gamma + r_delta != _dim(w, t.a.suspend(1)):
        return f"not exact at ΣA for {w}"
    return None


def verify_triangle_window(
    t: Triangle,
    window: Window,
    params: ModelParams,
    sources: Sequence[Arc] | None = None,
) -> OracleReport:
    """Check exactness of Hom(W, -) applied to ``t`` for every window arc W.

    ``sources`` narrows W to the given arcs. Direct-sum triangles are checked
    part by part.
    """
    report = OracleReport(name="triangle-exactness", extra={"window": window.w})
    tested = window_arcs(params, window) if sources is None else sources
    for part in t.simple_parts:
        for w in tested:
            report.tick()
            failure = exactness_failure(w, part)
            if failure is not None:
                logger.debug("triangle %s fails: %s", part, failure)
                report.fail(failure)
                return report
    return report
