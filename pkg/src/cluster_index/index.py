"""Approximations, the index with respect to a fan triangulation, and mutation.

Index vectors live in the split Grothendieck group of a triangulation: a
finitely supported integer combination of its member arcs.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal, Mapping

from sympy import Matrix

from cluster_index.config import settings
from cluster_index.errors import (
    ApproximationFailure,
    MixedTriangulations,
    MutationMismatch,
    NotInTriangulation,
    NotRigidObject,
    NotRigidTriangulation,
)
from cluster_index.homext import (
    composite_nonzero,
    ext_dim,
    hammock_position,
    hammock_sides,
    hom_dim,
    killed_by_triangulation,
)
from cluster_index.surface import Arc, Obj, Window, successor, suspend, try_arc
from cluster_index.triangles import Triangle
from cluster_index.triangulation import FanTriangulation, Quadrilateral, flip, is_rigid

logger = logging.getLogger(__name__)

Branch = Literal["phi", "psi"]


@dataclass(frozen=True)
class IndexVector:
    """Element of the split Grothendieck group of ``triangulation``.

    ``coeffs`` is kept sorted by arc with zero coefficients dropped, so equal
    vectors compare equal.
    """

    triangulation: FanTriangulation
    coeffs: tuple[tuple[Arc, int], ...] = ()

    def __post_init__(self) -> None:
        merged: Counter[Arc] = Counter()
        for arc, value in self.coeffs:
            if not self.triangulation.contains(arc):
                raise NotInTriangulation(f"{arc} is not in {self.triangulation}")
            merged[arc] += value
        object.__setattr__(
            self, "coeffs", tuple(sorted((a, v) for a, v in merged.items() if v != 0))
        )

    @classmethod
    def from_mapping(cls, X: FanTriangulation, coeffs: Mapping[Arc, int]) -> IndexVector:
        return cls(X, tuple(coeffs.items()))

    @classmethod
    def zero(cls, X: FanTriangulation) -> IndexVector:
        return cls(X)

    @classmethod
    def unit(cls, X: FanTriangulation, arc: Arc) -> IndexVector:
        return cls(X, ((arc, 1),))

    @classmethod
    def of_object(cls, X: FanTriangulation, m: Obj) -> IndexVector:
        """The class of an object all of whose summands are members of X."""
        return cls(X, tuple((a, 1) for a in m))

    def as_dict(self) -> dict[Arc, int]:
        return dict(self.coeffs)

    def coeff(self, arc: Arc) -> int:
        return self.as_dict().get(arc, 0)

    @property
    def support(self) -> tuple[Arc, ...]:
        return tuple(a for a, _ in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_same(self, other: IndexVector) -> None:
        if self.triangulation != other.triangulation:
            raise MixedTriangulations(
                f"{self.triangulation} differs from {other.triangulation}"
            )

    def __add__(self, other: IndexVector) -> IndexVector:
        self._check_same(other)
        return IndexVector(self.triangulation, self.coeffs + other.coeffs)

    def __neg__(self) -> IndexVector:
        return IndexVector(self.triangulation, tuple((a, -v) for a, v in self.coeffs))

    def __sub__(self, other: IndexVector) -> IndexVector:
        return self + (-other)

    def scale(self, factor: int) -> IndexVector:
        return IndexVector(self.triangulation, tuple((a, factor * v) for a, v in self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = [f"{v:+d}·{a}" for a, v in self.coeffs]
        return " ".join(terms).lstrip("+")


@dataclass(frozen=True)
class ImageDimVector:
    """Windowed dimension vector of the image of Hom(-, C) -> Hom(-, ΣA) on X.

    Only nonzero entries are stored; a direct sum counts each part.
    """

    window: Window
    dims: tuple[tuple[Arc, int], ...] = ()

    def as_dict(self) -> dict[Arc, int]:
        return dict(self.dims)

    @property
    def is_zero(self) -> bool:
        return not self.dims


@lru_cache(maxsize=65536)
def _approximation(X: FanTriangulation, c: Arc) -> tuple[tuple[Arc, ...], tuple[Arc, ...]]:
    """Summands of X0 and X1 in the approximation triangle X1 -> X0 -> C -> ΣX1."""
    if X.contains(c):
        return (c,), ()
    front = X.maximal_hom_sources(c)
    c0, c1 = hammock_sides(c)
    zeros, ones = [], []
    for s in front:
        position = hammock_position(s, c)
        assert position is not None
        zeros.append(position[0])
        ones.append(position[1])
    starts = [successor(c0), *zeros]
    ends = [*ones, successor(c1)]
    x1 = tuple(a for a in map(try_arc, starts, ends) if a is not None)
    for x in x1:
        if not X.contains(x):
            raise ApproximationFailure(f"cocone summand {x} of {c} is not in {X}")
        if not hom_dim(c, suspend(x, 1)):
            raise ApproximationFailure(f"connecting map {c} -> Σ{x} vanishes")
    if len(front) > 2:
        logger.info("approximation of %s has %d summands", c, len(front))
    return tuple(front), x1


def min_right_approximation(X: FanTriangulation, c: Arc) -> Obj:
    return Obj(_approximation(X, c)[0])


def approximation_triangle(X: FanTriangulation, c: Arc) -> Triangle:
    x0, x1 = _approximation(X, c)
    connecting = tuple((c, suspend(x, 1)) for x in x1)
    if settings.CHECKED:
        for source, target in connecting:
            if not killed_by_triangulation(source, target, X):
                raise ApproximationFailure(f"connecting map {source} -> {target} is not killed by X")
    return Triangle(Obj(x1), Obj(x0), Obj.of(c), connecting, "approximation")


def index(X: FanTriangulation, m: Obj | Arc) -> IndexVector:
    """ind_X(m) = [X0] - [X1], summed over the summands of m."""
    summands = (m,) if isinstance(m, Arc) else tuple(m)
    total: Counter[Arc] = Counter()
    for c in summands:
        x0, x1 = _approximation(X, c)
        total.update(x0)
        total.subtract(x1)
    return IndexVector.from_mapping(X, total)


def is_rigid_object(m: Obj) -> bool:
    return all(ext_dim(u, v) == 0 for u in m.distinct() for v in m.distinct())


def _common_triangulation(vs: Iterable[IndexVector]) -> list[IndexVector]:
    vectors = list(vs)
    if any(v.triangulation != vectors[0].triangulation for v in vectors[1:]):
        raise MixedTriangulations("index vectors over different triangulations")
    return vectors


def sign_coherent(vs: Iterable[IndexVector]) -> bool:
    vectors = _common_triangulation(vs)
    signs: dict[Arc, int] = {}
    for v in vectors:
        for arc, value in v.coeffs:
            sign = 1 if value > 0 else -1
            if signs.setdefault(arc, sign) != sign:
                return False
    return True


def linearly_independent(vs: Iterable[IndexVector]) -> bool:
    """Exact rank over the rationals on the union of supports."""
    vectors = _common_triangulation(vs)
    if not vectors:
        return True
    basis = sorted({arc for v in vectors for arc in v.support})
    if not basis:
        return False
    rows = [[v.coeff(arc) for arc in basis] for v in vectors]
    return Matrix(rows).rank() == len(vectors)


def additivity_defect(X: FanTriangulation, t: Triangle) -> IndexVector:
    return index(X, t.a) - index(X, t.b) + index(X, t.c)


def image_dim_vector(X: FanTriangulation, t: Triangle, window: Window) -> ImageDimVector:
    dims: Counter[Arc] = Counter()
    for w in X.members_in_window(window):
        for part in t.simple_parts:
            for source, target in part.connecting:
                if hom_dim(w, source) and composite_nonzero(w, source, target):
                    dims[w] += 1
                    break
    return ImageDimVector(window, tuple(sorted(dims.items())))


def _substitute(
    q: Quadrilateral, v: IndexVector, sides: tuple[Arc | None, Arc | None]
) -> IndexVector:
    if not v.triangulation.contains(q.x):
        raise MixedTriangulations(f"{q.x} is not in {v.triangulation}")
    Y, flipped = flip(v.triangulation, q.x)
    if flipped != q:
        raise MixedTriangulations(f"quadrilateral at {q.x} does not belong to {v.triangulation}")
    coefficient = v.coeff(q.x)
    rest = {a: value for a, value in v.coeffs if a != q.x}
    out = IndexVector.from_mapping(Y, rest)
    replacement = Counter({q.y: -1})
    for side in sides:
        if side is not None:
            replacement[side] += 1
    return out + IndexVector.from_mapping(Y, replacement).scale(coefficient)


def phi(q: Quadrilateral, v: IndexVector) -> IndexVector:
    """Rebase ``v`` onto the flipped triangulation with [X] -> [T1] + [T2] - [Y]."""
    return _substitute(q, v, (q.t1, q.t2))


def psi(q: Quadrilateral, v: IndexVector) -> IndexVector:
    """Rebase ``v`` onto the flipped triangulation with [X] -> [S1] + [S2] - [Y]."""
    return _substitute(q, v, (q.s1, q.s2))


def mutation_branch(v: IndexVector, arc: Arc) -> Branch:
    return "phi" if v.coeff(arc) >= 0 else "psi"


def index_after_flip(X: FanTriangulation, arc: Arc, m: Obj) -> IndexVector:
    """ind_Y(m) for Y the flip of X at ``arc``, computed from ind_X(m)."""
    if not is_rigid(X):
        raise NotRigidTriangulation(f"{X} is not rigid")
    if not is_rigid_object(m):
        raise NotRigidObject(f"{m} is not rigid")
    Y, q = flip(X, arc)
    before = index(X, m)
    branch = mutation_branch(before, arc)
    after = phi(q, before) if branch == "phi" else psi(q, before)
    if settings.CHECKED:
        direct = index(Y, m)
        if direct != after:
            raise MutationMismatch(f"{branch} gives {after}, direct index is {direct}")
    return after


def basis_after_flip(X: FanTriangulation, arc: Arc, window: Window) -> dict[Arc, IndexVector]:
    """ind_X(W) for the members W of the flip of X at ``arc`` inside the window."""
    Y, _ = flip(X, arc)
    return {w: index(X, w) for w in Y.members_in_window(window)}
