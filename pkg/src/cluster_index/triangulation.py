"""Fan triangulations described as a fountain plus finite flip deltas.

A description ``(base, removed, added)`` stands for the arc set
``(fountain(base) - removed) | added`` where ``fountain(base)`` holds every
arc incident with ``base``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from itertools import combinations

from cluster_index.errors import (
    ApproximationFailure,
    InvalidTriangulation,
    NoFlipAvailable,
    NotInTriangulation,
)
from cluster_index.homext import hammock_position, hammock_sides, hom_dim
from cluster_index.report import OracleReport
from cluster_index.surface import (
    Accumulation,
    Arc,
    MarkedPoint,
    ModelParams,
    Regular,
    Window,
    are_neighbours,
    crosses_transversely,
    in_interval,
    make_arc,
    predecessor,
    successor,
    sweep_rank,
    try_arc,
    window_arcs,
    window_points,
)
from cluster_index.triangles import Triangle, extension_triangle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FlipRecord:
    removed: Arc
    added: Arc


@dataclass(frozen=True)
class FanTriangulation:
    params: ModelParams
    base: MarkedPoint
    removed: frozenset[Arc] = frozenset()
    added: frozenset[Arc] = frozenset()
    flip_log: tuple[FlipRecord, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        self.params.validate(self.base)
        object.__setattr__(self, "removed", frozenset(self.removed))
        object.__setattr__(self, "added", frozenset(self.added))
        for arc in self.removed | self.added:
            for p in arc.endpoints:
                self.params.validate(p)
        stray = sorted(a for a in self.removed if not self.is_fountain_arc(a))
        if stray:
            raise InvalidTriangulation(f"removed arcs outside the fountain: {stray[0]}")
        overlap = sorted(a for a in self.added if self.is_fountain_arc(a))
        if overlap:
            raise InvalidTriangulation(f"added arc already in the fountain: {overlap[0]}")

    @property
    def balanced(self) -> bool:
        """Flips of a fountain remove exactly as many fountain arcs as they add."""
        return len(self.removed) == len(self.added)

    @property
    def delta_bound(self) -> int:
        """Largest |k| among the regular endpoints of removed and added arcs."""
        ends = (p for a in self.removed | self.added for p in a.endpoints)
        ks = [abs(p.k) for p in ends if isinstance(p, Regular)]
        return max(ks, default=0)

    def is_fountain_arc(self, arc: Arc) -> bool:
        return arc.has_endpoint(self.base)

    def contains(self, arc: Arc) -> bool:
        if arc in self.added:
            return True
        return self.is_fountain_arc(arc) and arc not in self.removed

    def members_in_window(self, window: Window) -> list[Arc]:
        members = {
            arc
            for x in window_points(self.params, window)
            if (arc := try_arc(self.base, x)) is not None and arc not in self.removed
        }
        members |= {arc for arc in self.added if window.contains_arc(arc)}
        return sorted(members)

    def same_arcs(self, other: FanTriangulation) -> bool:
        """Equality of the represented arc sets, independent of flip history."""
        return (
            self.params == other.params
            and self.base == other.base
            and self.removed == other.removed
            and self.added == other.added
        )

    def _best_fountain_source(self, c: Arc) -> Arc | None:
        """The fountain member of the hammock of ``c`` through which all others factor."""
        c0, c1 = hammock_sides(c)
        v = self.base
        if in_interval(v, successor(c0), c1, False, True):
            start, bound = c0, successor(c1)
        elif in_interval(v, successor(c1), c0, False, True):
            start, bound = c1, successor(c0)
        else:
            return None
        x = start
        for _ in range(len(self.removed) + 4):
            if not in_interval(x, bound, start, False, True):
                return None
            arc = try_arc(v, x)
            if arc is not None and arc not in self.removed:
                return arc
            if isinstance(x, Accumulation):
                break
            x = predecessor(x)
        raise ApproximationFailure(f"no maximal fountain source for {c} from {v}")

    def maximal_hom_sources(self, c: Arc) -> list[Arc]:
        """Maximal members B with Hom(B, c) != 0 under the factorization order.

        B factors through S iff S's zero-side endpoint lies in [b0, c1] and its
        one-side endpoint in [b1, c0], so the order is the product of the two
        sweep orders and the maximal members form a Pareto front.
        """
        candidates = {a for a in self.added if hom_dim(a, c)}
        fountain = self._best_fountain_source(c)
        if fountain is not None:
            candidates.add(fountain)
        c0, c1 = hammock_sides(c)

        def ranks(s: Arc) -> tuple[tuple, tuple]:
            position = hammock_position(s, c)
            assert position is not None
            zero, one = position
            return sweep_rank(zero, successor(c0)), sweep_rank(one, successor(c1))

        ranked = {s: ranks(s) for s in candidates}
        front = [
            s
            for s, (z, o) in ranked.items()
            if not any(
                t != s and z2 >= z and o2 >= o for t, (z2, o2) in ranked.items()
            )
        ]
        return sorted(front, key=lambda s: ranked[s][0])

    def flippable_arcs(self, window: Window) -> list[Arc]:
        flippable = []
        for arc in self.members_in_window(window):
            try:
                adjacent_triangles(self, arc)
            except NoFlipAvailable:
                continue
            flippable.append(arc)
        return flippable

    def __str__(self) -> str:
        removed = ", ".join(str(a) for a in sorted(self.removed))
        added = ", ".join(str(a) for a in sorted(self.added))
        return f"fountain({self.base}) - {{{removed}}} + {{{added}}}"


def fountain_triangulation(base: MarkedPoint, params: ModelParams) -> FanTriangulation:
    return FanTriangulation(params=params, base=base)


@dataclass(frozen=True)
class Quadrilateral:
    """Flip data: diagonals ``x`` and ``y`` and the four sides; None is a boundary side."""

    x: Arc
    y: Arc
    s1: Arc | None
    s2: Arc | None
    t1: Arc | None
    t2: Arc | None

    @property
    def corners(self) -> tuple[MarkedPoint, ...]:
        return (*self.x.endpoints, *self.y.endpoints)


def _edge(X: FanTriangulation, p: MarkedPoint, q: MarkedPoint) -> bool:
    if are_neighbours(p, q):
        return True
    arc = try_arc(p, q)
    return arc is not None and X.contains(arc)


def _apex(
    X: FanTriangulation, x0: MarkedPoint, x1: MarkedPoint, candidates: set[MarkedPoint]
) -> MarkedPoint:
    found = sorted(
        y
        for y in candidates
        if in_interval(y, x0, x1, False, False) and _edge(X, x0, y) and _edge(X, y, x1)
    )
    if len(found) != 1:
        raise NoFlipAvailable(f"no finite triangle on the side from {x0} to {x1}")
    return found[0]


def adjacent_triangles(X: FanTriangulation, arc: Arc) -> Quadrilateral:
    """The two triangles of X flanking ``arc``, as a quadrilateral."""
    if not X.contains(arc):
        raise NotInTriangulation(f"{arc} is not in {X}")
    x0, x1 = arc.endpoints
    candidates = {
        successor(x0),
        predecessor(x0),
        successor(x1),
        predecessor(x1),
        X.base,
    }
    candidates |= {p for a in X.added for p in a.endpoints}
    y0 = _apex(X, x0, x1, candidates)
    y1 = _apex(X, x1, x0, candidates)
    return Quadrilateral(
        x=arc,
        y=make_arc(y0, y1),
        s1=try_arc(y0, x1),
        s2=try_arc(x0, y1),
        t1=try_arc(x1, y1),
        t2=try_arc(y0, x0),
    )


def flip(X: FanTriangulation, arc: Arc) -> tuple[FanTriangulation, Quadrilateral]:
    q = adjacent_triangles(X, arc)
    removed, added = set(X.removed), set(X.added)
    if arc in added:
        added.discard(arc)
    else:
        removed.add(arc)
    if q.y in removed:
        removed.discard(q.y)
    else:
        added.add(q.y)
    logger.debug("flip %s -> %s", arc, q.y)
    flipped = FanTriangulation(
        params=X.params,
        base=X.base,
        removed=frozenset(removed),
        added=frozenset(added),
        flip_log=X.flip_log + (FlipRecord(arc, q.y),),
    )
    return flipped, q


def exchange_triangles(q: Quadrilateral) -> tuple[Triangle, Triangle]:
    """X -> S1 ⊕ S2 -> Y -> ΣX and Y -> T1 ⊕ T2 -> X -> ΣY."""
    forward = extension_triangle(q.y, q.x)
    backward = extension_triangle(q.x, q.y)
    return replace(forward, kind="exchange"), replace(backward, kind="exchange")


def is_rigid(X: FanTriangulation) -> bool:
    """No two members share an accumulation endpoint and no member joins two of them."""
    if isinstance(X.base, Accumulation):
        return False
    if any(a.is_doubly_limit for a in X.added):
        return False
    for j in range(X.params.n):
        p = Accumulation(j)
        at_p = sum(1 for a in X.added if a.has_endpoint(p))
        if make_arc(X.base, p) not in X.removed:
            at_p += 1
        if at_p >= 2:
            return False
    return True


def validate_window(X: FanTriangulation, window: Window) -> OracleReport:
    """Pairwise non-crossing and maximality of X on a window.

    Maximality witnesses are searched on the window enlarged by two.
    """
    report = OracleReport(name="triangulation", extra={"window": window.w})
    report.tick()
    if not X.balanced:
        report.fail(f"{len(X.removed)} arcs removed but {len(X.added)} added")
    members = X.members_in_window(window)
    for a, b in combinations(members, 2):
        report.tick()
        if crosses_transversely(a, b):
            report.fail(f"members {a} and {b} cross")
    wide = X.members_in_window(window.enlarged(2))
    member_set = set(members)
    for arc in window_arcs(X.params, window):
        if arc in member_set:
            continue
        report.tick()
        if not any(crosses_transversely(arc, m) for m in wide):
            report.fail(f"{arc} crosses no member")
    return report
