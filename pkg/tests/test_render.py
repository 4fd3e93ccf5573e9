"""Tests for SVG rendering."""

import math

import pytest

from cluster_index.errors import IoError
from cluster_index.formats import parse_arc as arc
from cluster_index.render import RenderSpec, angle, render, save
from cluster_index.surface import Accumulation, ModelParams, Regular, Window


@pytest.fixture
def spec():
    return RenderSpec(window=Window(2), size=200, stroke_width=1.0, point_labels=True)


class TestAngle:
    """Test suite for point placement."""

    def test_accumulation_points_are_evenly_spaced(self):
        """Test the angles of accumulation points."""
        params = ModelParams(4)
        assert angle(Accumulation(0), params) == 0.0
        assert angle(Accumulation(2), params) == pytest.approx(math.pi)

    def test_regular_points_stay_inside_their_interval(self):
        """Test that regular points lie strictly between their accumulation points."""
        params = ModelParams(2)
        lower, upper = angle(Accumulation(1), params), angle(Accumulation(0), params) + 2 * math.pi
        values = [angle(Regular(1, k), params) for k in range(-20, 21)]
        assert all(lower < v < upper for v in values)
        assert values == sorted(values)
        assert angle(Regular(0, 0), params) == pytest.approx(math.pi / 2)

    def test_far_points_do_not_overflow(self):
        """Test that huge indices are clamped."""
        assert 0 < angle(Regular(0, 10**6), ModelParams(1)) <= 2 * math.pi


class TestRender:
    """Test suite for SVG documents."""

    def test_document_shape(self, spec):
        """Test the header, arcs and point marks."""
        document = render(spec, ModelParams(1), [arc("[a0, r0:0]"), arc("[r0:-1, r0:1]")])
        assert document.startswith('<?xml version="1.0" encoding="UTF-8"?>\n<svg ')
        assert 'xmlns="http://www.w3.org/2000/svg"' in document
        assert document.count("<path ") == 2
        assert document.count('fill="black"') == 1
        assert document.count('fill="white"') == 5
        assert ">r0:-2</text>" in document
        assert 'stroke-width="1.0"' in document

    def test_deterministic_output(self, spec):
        """Test that equal inputs in any order give identical documents."""
        arcs = [arc("[a0, a1]"), arc("[r0:0, r1:0]"), arc("[a1, r0:0]")]
        params = ModelParams(2)
        assert render(spec, params, arcs) == render(spec, params, list(reversed(arcs)))

    def test_points_outside_the_window_are_drawn(self, spec):
        """Test that arc endpoints are marked even outside the window."""
        document = render(spec, ModelParams(1), [arc("[a0, r0:9]")])
        assert ">r0:9</text>" in document

    def test_without_labels(self):
        """Test that labels can be switched off."""
        document = render(RenderSpec(window=Window(1), point_labels=False), ModelParams(1), [])
        assert "<text" not in document
        assert "<path" not in document


class TestSave:
    """Test suite for writing SVG files."""

    def test_writes_file(self, tmp_path):
        """Test that the document is written to the output path."""
        out = tmp_path / "fountain.svg"
        document = save(RenderSpec(output=out, window=Window(1)), ModelParams(1), [arc("[a0, r0:0]")])
        assert out.read_text(encoding="utf-8") == document

    def test_without_output(self, spec):
        """Test that no output path only returns the document."""
        assert save(spec, ModelParams(1), []).startswith("<?xml")

    def test_unwritable_output(self, tmp_path):
        """Test that write errors become IoError."""
        out = tmp_path / "missing" / "fountain.svg"
        with pytest.raises(IoError):
            save(RenderSpec(output=out), ModelParams(1), [])
