"""Text and JSON formats for points, arcs, objects, triangulations and index vectors.

Text syntax: ``a<j>`` and ``r<j>:<k>`` for points, ``[p, q]`` for arcs,
``[arc; arc; ...]`` for objects (``[]`` is the zero object). JSON documents
always carry ``n``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterable, Union

from pydantic import BaseModel, Field, model_validator

from cluster_index.config import settings
from cluster_index.errors import InvalidTriangulation, IoError, ParseError
from cluster_index.index import IndexVector
from cluster_index.surface import Accumulation, Arc, MarkedPoint, ModelParams, Obj, Regular, Window
from cluster_index.triangles import Triangle
from cluster_index.triangulation import FanTriangulation, validate_window

_POINT = re.compile(r"^\s*(?:a(?P<acc>\d+)|r(?P<j>\d+):(?P<k>[-−]?\d+))\s*$")


def parse_point(text: str) -> MarkedPoint:
    match = _POINT.match(text)
    if match is None:
        raise ParseError(f"not a marked point: {text!r}")
    if match["acc"] is not None:
        return Accumulation(int(match["acc"]))
    return Regular(int(match["j"]), int(match["k"].replace("−", "-")))


def _strip_brackets(text: str, what: str) -> str:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"{what} must be enclosed in brackets: {text!r}")
    return text[1:-1]


def parse_arc(text: str) -> Arc:
    parts = _strip_brackets(text, "arc").split(",")
    if len(parts) != 2:
        raise ParseError(f"an arc has exactly two endpoints: {text!r}")
    return Arc(parse_point(parts[0]), parse_point(parts[1]))


def parse_object(text: str) -> Obj:
    """An object ``[arc; arc]``; a single arc ``[p, q]`` is accepted too."""
    inner = _strip_brackets(text, "object").strip()
    if not inner:
        return Obj()
    if not inner.startswith("["):
        return Obj.of(parse_arc(text))
    return Obj(tuple(parse_arc(part) for part in inner.split(";")))


def format_point(p: MarkedPoint) -> str:
    return str(p)


def format_arc(arc: Arc) -> str:
    return str(arc)


def format_object(m: Obj) -> str:
    return str(m)


def infer_params(arcs: Iterable[Arc]) -> ModelParams:
    """Smallest model containing every endpoint."""
    indices = [p.j for arc in arcs for p in arc.endpoints]
    return ModelParams(max(indices, default=0) + 1)


def check_params(params: ModelParams, arcs: Iterable[Arc]) -> None:
    for arc in arcs:
        for p in arc.endpoints:
            params.validate(p)


class PointDocument(BaseModel):
    """``{"acc": j}`` or ``{"reg": [j, k]}``."""

    acc: int | None = Field(default=None, ge=0)
    reg: tuple[int, int] | None = None

    @model_validator(mode="after")
    def _exactly_one(self) -> PointDocument:
        if (self.acc is None) == (self.reg is None):
            raise ValueError("a point is either 'acc' or 'reg'")
        return self

    def to_point(self) -> MarkedPoint:
        if self.acc is not None:
            return Accumulation(self.acc)
        assert self.reg is not None
        return Regular(*self.reg)

    @classmethod
    def from_point(cls, p: MarkedPoint) -> PointDocument:
        if isinstance(p, Accumulation):
            return cls(acc=p.j)
        return cls(reg=(p.j, p.k))


ArcDocument = Union[tuple[PointDocument, PointDocument], str]


def _arc_from_document(doc: ArcDocument) -> Arc:
    if isinstance(doc, str):
        return parse_arc(doc)
    return Arc(doc[0].to_point(), doc[1].to_point())


def _arc_document(arc: Arc) -> tuple[PointDocument, PointDocument]:
    return PointDocument.from_point(arc.e0), PointDocument.from_point(arc.e1)


class TriangulationDocument(BaseModel):
    n: int = Field(ge=1)
    base: PointDocument
    removed: list[ArcDocument] = Field(default_factory=list)
    added: list[ArcDocument] = Field(default_factory=list)

    def to_triangulation(self) -> FanTriangulation:
        return FanTriangulation(
            params=ModelParams(self.n),
            base=self.base.to_point(),
            removed=frozenset(_arc_from_document(a) for a in self.removed),
            added=frozenset(_arc_from_document(a) for a in self.added),
        )

    @classmethod
    def from_triangulation(cls, X: FanTriangulation) -> TriangulationDocument:
        return cls(
            n=X.params.n,
            base=PointDocument.from_point(X.base),
            removed=[_arc_document(a) for a in sorted(X.removed)],
            added=[_arc_document(a) for a in sorted(X.added)],
        )


class IndexVectorDocument(BaseModel):
    triangulation: TriangulationDocument
    coeffs: list[tuple[ArcDocument, int]] = Field(default_factory=list)

    def to_index_vector(self) -> IndexVector:
        X = checked_triangulation(self.triangulation.to_triangulation())
        return IndexVector(X, tuple((_arc_from_document(a), v) for a, v in self.coeffs))

    @classmethod
    def from_index_vector(cls, v: IndexVector) -> IndexVectorDocument:
        return cls(
            triangulation=TriangulationDocument.from_triangulation(v.triangulation),
            coeffs=[(_arc_document(a), value) for a, value in v.coeffs],
        )


class DimensionDocument(BaseModel):
    n: int = Field(ge=1)
    dim: int = Field(ge=0, le=1)


class TriangleDocument(BaseModel):
    """A -> B -> C -> ΣA with the nonzero components of the connecting map."""

    n: int = Field(ge=1)
    kind: str
    a: list[ArcDocument] = Field(default_factory=list)
    b: list[ArcDocument] = Field(default_factory=list)
    c: list[ArcDocument] = Field(default_factory=list)
    connecting: list[tuple[ArcDocument, ArcDocument]] = Field(default_factory=list)

    @classmethod
    def from_triangle(cls, t: Triangle, params: ModelParams) -> TriangleDocument:
        return cls(
            n=params.n,
            kind=t.kind,
            a=[_arc_document(x) for x in t.a],
            b=[_arc_document(x) for x in t.b],
            c=[_arc_document(x) for x in t.c],
            connecting=[(_arc_document(u), _arc_document(v)) for u, v in t.connecting],
        )


def checked_triangulation(X: FanTriangulation) -> FanTriangulation:
    """Reject a hand-written description that is not a triangulation on its window.

    The window covers every removed and added arc and at least ``SAMPLE_WINDOW``.
    """
    if not X.balanced:
        raise InvalidTriangulation(f"{len(X.removed)} arcs removed but {len(X.added)} added in {X}")
    report = validate_window(X, Window(max(settings.SAMPLE_WINDOW, X.delta_bound)))
    if not report.passed:
        raise InvalidTriangulation(f"{X} is not a triangulation: {report.first_failure}")
    return X


def dump_document(doc: BaseModel) -> str:
    return json.dumps(doc.model_dump(mode="json", exclude_none=True), indent=2)


def load_triangulation(path: Path) -> FanTriangulation:
    try:
        text = path.read_text()
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from e
    return checked_triangulation(TriangulationDocument.model_validate_json(text).to_triangulation())


def dump_triangulation(X: FanTriangulation) -> str:
    return dump_document(TriangulationDocument.from_triangulation(X))


def dump_index_vector(v: IndexVector) -> str:
    return dump_document(IndexVectorDocument.from_index_vector(v))


def dump_dimension(dim: int, params: ModelParams) -> str:
    return dump_document(DimensionDocument(n=params.n, dim=dim))


def dump_triangle(t: Triangle, params: ModelParams) -> str:
    return dump_document(TriangleDocument.from_triangle(t, params))


def parse_index_vector(text: str) -> IndexVector:
    return IndexVectorDocument.model_validate_json(text).to_index_vector()
