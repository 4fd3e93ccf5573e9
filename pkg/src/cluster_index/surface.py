"""Geometric model of the completed disc: marked points, arcs and objects.

The boundary circle carries ``n`` accumulation points. Interval ``j`` is the
anticlockwise segment from ``Accumulation(j)`` to ``Accumulation(j + 1)``;
its regular points are ``Regular(j, k)`` for every integer ``k``, with
``k -> -inf`` converging to ``Accumulation(j)`` and ``k -> +inf`` converging
to ``Accumulation(j + 1)``. All comparisons are exact and order-theoretic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Union

from cluster_index.errors import EqualEndpoints, InvalidPoint, NeighbouringEndpoints


@dataclass(frozen=True)
class ModelParams:
    """Number of accumulation points of the model."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidPoint(f"need at least one accumulation point, got n={self.n}")

    def validate(self, p: MarkedPoint) -> MarkedPoint:
        if not 0 <= p.j < self.n:
            raise InvalidPoint(f"interval index {p.j} out of range for n={self.n}")
        return p


class _Point:
    """Total order on marked points starting at ``Accumulation(0)``."""

    j: int

    @property
    def key(self) -> tuple[int, int, int]:
        raise NotImplementedError

    def __lt__(self, other: _Point) -> bool:
        return self.key < other.key

    def __le__(self, other: _Point) -> bool:
        return self.key <= other.key

    def __gt__(self, other: _Point) -> bool:
        return self.key > other.key

    def __ge__(self, other: _Point) -> bool:
        return self.key >= other.key


@dataclass(frozen=True, eq=True, order=False)
class Accumulation(_Point):
    j: int

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.j, 0, 0)

    def __str__(self) -> str:
        return f"a{self.j}"


@dataclass(frozen=True, eq=True, order=False)
class Regular(_Point):
    j: int
    k: int

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.j, 1, self.k)

    def __str__(self) -> str:
        return f"r{self.j}:{self.k}"


MarkedPoint = Union[Accumulation, Regular]


def successor(p: MarkedPoint) -> MarkedPoint:
    """Next marked point anticlockwise; accumulation points are fixed."""
    if isinstance(p, Regular):
        return Regular(p.j, p.k + 1)
    return p


def predecessor(p: MarkedPoint) -> MarkedPoint:
    """Next marked point clockwise; accumulation points are fixed."""
    if isinstance(p, Regular):
        return Regular(p.j, p.k - 1)
    return p


def step(p: MarkedPoint, power: int) -> MarkedPoint:
    """Move ``power`` steps anticlockwise (negative: clockwise)."""
    if isinstance(p, Regular):
        return Regular(p.j, p.k + power)
    return p


def are_neighbours(a: MarkedPoint, b: MarkedPoint) -> bool:
    return a != b and (successor(a) == b or successor(b) == a)


def sweep_rank(x: MarkedPoint, origin: MarkedPoint) -> tuple[int, tuple[int, int, int]]:
    """Position of ``x`` in the anticlockwise sweep that starts at ``origin``."""
    return (0, x.key) if x.key >= origin.key else (1, x.key)


def orientation(a: MarkedPoint, b: MarkedPoint, c: MarkedPoint) -> int:
    """+1 if a, b, c are pairwise distinct and in anticlockwise order, -1 if
    clockwise, 0 if two of them coincide."""
    if a == b or b == c or a == c:
        return 0
    return 1 if sweep_rank(b, a) < sweep_rank(c, a) else -1


def in_interval(
    x: MarkedPoint,
    a: MarkedPoint,
    b: MarkedPoint,
    left_closed: bool = True,
    right_closed: bool = True,
) -> bool:
    """Membership of ``x`` in the anticlockwise interval from ``a`` to ``b``.

    With equal ends, ``[a, a]`` is ``{a}``, ``(a, a)`` is the circle without
    ``a`` and the half-open variants are the whole circle.
    """
    if a == b:
        if x == a:
            return left_closed or right_closed
        return not (left_closed and right_closed)
    if x == a:
        return left_closed
    if x == b:
        return right_closed
    return orientation(a, x, b) == 1


@dataclass(frozen=True)
class Arc:
    """An arc between two non-neighbouring marked points, stored canonically."""

    e0: MarkedPoint
    e1: MarkedPoint

    def __post_init__(self) -> None:
        if self.e0 == self.e1:
            raise EqualEndpoints(f"arc endpoints coincide: {self.e0}")
        if are_neighbours(self.e0, self.e1):
            raise NeighbouringEndpoints(f"{self.e0} and {self.e1} are neighbours")
        if self.e1 < self.e0:
            e0, e1 = self.e1, self.e0
            object.__setattr__(self, "e0", e0)
            object.__setattr__(self, "e1", e1)

    @property
    def endpoints(self) -> tuple[MarkedPoint, MarkedPoint]:
        return (self.e0, self.e1)

    @property
    def key(self) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        return (self.e0.key, self.e1.key)

    def __lt__(self, other: Arc) -> bool:
        return self.key < other.key

    def has_endpoint(self, p: MarkedPoint) -> bool:
        return p == self.e0 or p == self.e1

    def other(self, p: MarkedPoint) -> MarkedPoint:
        if p == self.e0:
            return self.e1
        if p == self.e1:
            return self.e0
        raise ValueError(f"{p} is not an endpoint of {self}")

    @property
    def is_limit(self) -> bool:
        return isinstance(self.e0, Accumulation) or isinstance(self.e1, Accumulation)

    @property
    def is_doubly_limit(self) -> bool:
        return isinstance(self.e0, Accumulation) and isinstance(self.e1, Accumulation)

    def __str__(self) -> str:
        return f"[{self.e0}, {self.e1}]"


def make_arc(a: MarkedPoint, b: MarkedPoint) -> Arc:
    return Arc(a, b)


def try_arc(a: MarkedPoint, b: MarkedPoint) -> Arc | None:
    """The arc between ``a`` and ``b``, or None where it would be the zero object."""
    if a == b or are_neighbours(a, b):
        return None
    return Arc(a, b)


def suspend(c: Arc, power: int = 1) -> Arc:
    """Apply the suspension ``power`` times: one clockwise step per application."""
    return Arc(step(c.e0, -power), step(c.e1, -power))


def crosses_transversely(a: Arc, c: Arc) -> bool:
    if len({a.e0, a.e1, c.e0, c.e1}) < 4:
        return False
    inside = [in_interval(p, a.e0, a.e1, False, False) for p in c.endpoints]
    return inside[0] != inside[1]


@dataclass(frozen=True)
class Obj:
    """Finite direct sum of indecomposables; the empty sum is the zero object."""

    summands: tuple[Arc, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "summands", tuple(sorted(self.summands, key=lambda a: a.key)))

    @classmethod
    def of(cls, *arcs: Arc | None) -> Obj:
        return cls(tuple(a for a in arcs if a is not None))

    def __iter__(self) -> Iterator[Arc]:
        return iter(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __add__(self, other: Obj) -> Obj:
        return Obj(self.summands + other.summands)

    @property
    def is_zero(self) -> bool:
        return not self.summands

    def suspend(self, power: int = 1) -> Obj:
        return Obj(tuple(suspend(a, power) for a in self.summands))

    def distinct(self) -> tuple[Arc, ...]:
        return tuple(dict.fromkeys(self.summands))

    def __str__(self) -> str:
        return "[" + "; ".join(str(a) for a in self.summands) + "]"


@dataclass(frozen=True, order=True)
class Window:
    """Finite truncation: every accumulation point plus ``Regular(j, k)`` with |k| <= w."""

    w: int

    def __post_init__(self) -> None:
        if self.w < 0:
            raise ValueError("window bound must be non-negative")

    def contains(self, p: MarkedPoint) -> bool:
        return isinstance(p, Accumulation) or abs(p.k) <= self.w

    def contains_arc(self, arc: Arc) -> bool:
        return self.contains(arc.e0) and self.contains(arc.e1)

    def enlarged(self, by: int) -> Window:
        return Window(self.w + by)


def window_points(params: ModelParams, window: Window) -> list[MarkedPoint]:
    """Window points in canonical order."""
    points: list[MarkedPoint] = []
    for j in range(params.n):
        points.append(Accumulation(j))
        points.extend(Regular(j, k) for k in range(-window.w, window.w + 1))
    return points


def window_arcs(params: ModelParams, window: Window) -> list[Arc]:
    """All arcs with both endpoints in the window, in canonical order."""
    arcs = (try_arc(a, b) for a, b in combinations(window_points(params, window), 2))
    return sorted((a for a in arcs if a is not None), key=lambda a: a.key)


def points_of(arcs: Iterable[Arc]) -> set[MarkedPoint]:
    return {p for arc in arcs for p in arc.endpoints}
