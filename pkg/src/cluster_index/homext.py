"""Hom and Ext dimensions between indecomposables via the hammock rules.

Every Hom or Ext space between two arcs has dimension 0 or 1, so nonzero-ness
of a morphism, of a composite, and of a factorization are all decided by
interval membership on the boundary circle.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import TYPE_CHECKING, Literal

from cluster_index.errors import PreconditionViolated
from cluster_index.surface import (
    Accumulation,
    Arc,
    MarkedPoint,
    Window,
    crosses_transversely,
    in_interval,
    predecessor,
    successor,
)

if TYPE_CHECKING:
    from cluster_index.triangulation import FanTriangulation

logger = logging.getLogger(__name__)

HomDim = Literal[0, 1]


def hammock_sides(c: Arc) -> tuple[MarkedPoint, MarkedPoint]:
    """Canonical labelling ``(c0, c1)`` of the target of a morphism.

    A source ``B`` maps nonzero to ``c`` iff one endpoint lies on the zero side
    ``(c0+, c1]`` and the other on the one side ``(c1+, c0]``.
    """
    return c.e0, c.e1


def on_zero_side(x: MarkedPoint, c: Arc) -> bool:
    c0, c1 = hammock_sides(c)
    return in_interval(x, successor(c0), c1, False, True)


def on_one_side(x: MarkedPoint, c: Arc) -> bool:
    c0, c1 = hammock_sides(c)
    return in_interval(x, successor(c1), c0, False, True)


def hammock_position(b: Arc, c: Arc) -> tuple[MarkedPoint, MarkedPoint] | None:
    """``(b0, b1)`` with b0 on the zero side and b1 on the one side of ``c``, if any."""
    for b0, b1 in ((b.e0, b.e1), (b.e1, b.e0)):
        if on_zero_side(b0, c) and on_one_side(b1, c):
            return b0, b1
    return None


@lru_cache(maxsize=1 << 18)
def hom_dim(b: Arc, c: Arc) -> HomDim:
    """dim Hom(B, C), target-side rule, trying every labelling of both arcs."""
    for c0, c1 in ((c.e0, c.e1), (c.e1, c.e0)):
        for b0, b1 in ((b.e0, b.e1), (b.e1, b.e0)):
            if in_interval(b0, successor(c0), c1, False, True) and in_interval(
                b1, successor(c1), c0, False, True
            ):
                return 1
    return 0


def hom_dim_from_source(c: Arc, d: Arc) -> HomDim:
    """dim Hom(C, D), source-side rule: d0 in [c0, c1-) and d1 in [c1, c0-)."""
    for c0, c1 in ((c.e0, c.e1), (c.e1, c.e0)):
        for d0, d1 in ((d.e0, d.e1), (d.e1, d.e0)):
            if in_interval(d0, c0, predecessor(c1), True, False) and in_interval(
                d1, c1, predecessor(c0), True, False
            ):
                return 1
    return 0


def shared_accumulation(a: Arc, c: Arc) -> Accumulation | None:
    """The accumulation point shared by two distinct arcs with exactly one common endpoint."""
    if a == c:
        return None
    shared = set(a.endpoints) & set(c.endpoints)
    if len(shared) != 1:
        return None
    p = shared.pop()
    return p if isinstance(p, Accumulation) else None


def ext_dim(c: Arc, a: Arc) -> HomDim:
    """dim Ext^1(C, A) = dim Hom(C, ΣA)."""
    if crosses_transversely(a, c):
        return 1
    if a == c:
        return 1 if c.is_doubly_limit else 0
    p = shared_accumulation(a, c)
    if p is None:
        return 0
    return 1 if in_interval(a.other(p), c.other(p), p, False, False) else 0


def factors_through(b: Arc, c: Arc, s: Arc) -> bool:
    """Whether the nonzero morphism B -> C factors through S."""
    position = hammock_position(b, c)
    if position is None:
        raise PreconditionViolated(f"Hom({b}, {c}) = 0")
    b0, b1 = position
    c0, c1 = hammock_sides(c)
    for s0, s1 in ((s.e0, s.e1), (s.e1, s.e0)):
        if in_interval(s0, b0, c1) and in_interval(s1, b1, c0):
            return True
    return False


def composite_nonzero(a: Arc, b: Arc, c: Arc) -> bool:
    """Whether the composite of the nonzero maps A -> B -> C is nonzero."""
    if not hom_dim(a, b) or not hom_dim(b, c):
        raise PreconditionViolated(f"need nonzero maps {a} -> {b} -> {c}")
    return bool(hom_dim(a, c)) and factors_through(a, c, b)


def killed_by_triangulation(
    z_source: Arc,
    z_target: Arc | None,
    X: FanTriangulation,
    window: Window | None = None,
) -> bool:
    """Whether every map from X into ``z_source`` composes to zero with z.

    ``z_target`` None stands for the zero map. Without a window the check is
    structural: if W -> C factors through W', a nonzero composite through W
    forces one through W', so the maximal members of the hammock suffice.
    """
    if z_target is None:
        return True
    if window is None:
        sources = X.maximal_hom_sources(z_source)
    else:
        sources = [w for w in X.members_in_window(window) if hom_dim(w, z_source)]
    for w in sources:
        if composite_nonzero(w, z_source, z_target):
            logger.debug("%s -> %s survives through %s", z_source, z_target, w)
            return False
    return True

