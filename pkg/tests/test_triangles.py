"""Tests for extension triangles and the window exactness check."""

from dataclasses import replace

import pytest

from cluster_index.errors import NoExtension, PreconditionViolated
from cluster_index.formats import parse_arc as arc
from cluster_index.homext import ext_dim
from cluster_index.surface import ModelParams, Obj, Window, window_arcs
from cluster_index.triangles import (
    Triangle,
    dual_extension_triangle,
    extension_triangle,
    verify_triangle_window,
)
from cluster_index.triangulation import fountain_triangulation


class TestExtensionTriangle:
    """Test suite for triangles realizing nonzero extensions."""

    def test_crossing_drops_neighbouring_summand(self):
        """Test that a middle summand between neighbours is the zero object."""
        t = extension_triangle(arc("[r0:1, r0:3]"), arc("[r0:0, r0:2]"))
        assert t.kind == "crossing"
        assert t.a == Obj.of(arc("[r0:0, r0:2]"))
        assert t.b == Obj.of(arc("[r0:0, r0:3]"))
        assert t.c == Obj.of(arc("[r0:1, r0:3]"))
        assert t.connecting == ((arc("[r0:1, r0:3]"), arc("[r0:-1, r0:1]")),)

    def test_crossing_with_two_summands(self):
        """Test a crossing whose middle term has two summands."""
        t = extension_triangle(arc("[r0:2, r0:6]"), arc("[r0:0, r0:4]"))
        assert t.b == Obj.of(arc("[r0:2, r0:4]"), arc("[r0:0, r0:6]"))

    def test_shared_accumulation_point(self):
        """Test the triangle of a fountain arc and its double desuspension."""
        x = arc("[a0, r0:0]")
        t = extension_triangle(x, arc("[a0, r0:2]"))
        assert t.kind == "shared-accumulation"
        assert t.b == Obj.of(arc("[r0:0, r0:2]"))
        X = fountain_triangulation(x.e0, ModelParams(1))
        assert not X.contains(arc("[r0:0, r0:2]"))

    def test_shared_accumulation_with_suspension(self):
        """Test that the middle term vanishes when C is the suspension of A."""
        t = extension_triangle(arc("[a0, r0:0]"), arc("[a0, r0:1]"))
        assert t.b.is_zero

    def test_self_extension(self):
        """Test the triangle C -> 0 -> C of an arc between accumulation points."""
        c = arc("[a0, a1]")
        t = extension_triangle(c, c)
        assert t.kind == "self-extension"
        assert t.b.is_zero
        assert t.a == t.c == Obj.of(c)

    def test_no_extension(self):
        """Test that a vanishing Ext group has no triangle."""
        with pytest.raises(NoExtension):
            extension_triangle(arc("[r1:0, a0]"), arc("[r0:0, a0]"))
        with pytest.raises(NoExtension):
            extension_triangle(arc("[r0:0, r0:2]"), arc("[r0:0, r0:2]"))


class TestDualExtensionTriangle:
    """Test suite for the reverse triangle of crossing arcs."""

    def test_rotation_of_identity(self):
        """Test that A = ΣC gives a zero middle term."""
        t = dual_extension_triangle(arc("[r0:0, r0:2]"), arc("[r0:1, r0:3]"))
        assert t.a == Obj.of(arc("[r0:1, r0:3]"))
        assert t.b.is_zero
        assert t.c == Obj.of(arc("[r0:0, r0:2]"))

    def test_two_summands(self):
        """Test the D summands of a wide crossing."""
        t = dual_extension_triangle(arc("[r0:0, r0:4]"), arc("[r0:2, r0:6]"))
        assert t.b == Obj.of(arc("[r0:4, r0:6]"), arc("[r0:0, r0:2]"))

    def test_shared_accumulation_has_no_reverse(self):
        """Test that arcs sharing an accumulation point have no reverse triangle."""
        with pytest.raises(NoExtension):
            dual_extension_triangle(arc("[a0, r0:2]"), arc("[a0, r0:0]"))
        with pytest.raises(NoExtension):
            dual_extension_triangle(arc("[a0, a1]"), arc("[a0, a1]"))


class TestTriangleWindow:
    """Test suite for exactness of Hom(W, -) on windows."""

    def test_crossing_triangle_is_exact(self):
        """Test a crossing triangle on a window."""
        t = extension_triangle(arc("[r0:1, r0:3]"), arc("[r0:0, r0:2]"))
        report = verify_triangle_window(t, Window(6), ModelParams(1))
        assert report.passed, report.failures
        assert report.checked > 0

    def test_given_sources_only(self):
        """Test that the check can be narrowed to chosen arcs W."""
        t = extension_triangle(arc("[r0:1, r0:3]"), arc("[r0:0, r0:2]"))
        sources = [arc("[r0:0, r0:3]"), arc("[r0:-1, r0:2]")]
        report = verify_triangle_window(t, Window(6), ModelParams(1), sources=sources)
        assert report.passed, report.failures
        assert report.checked == 2

    def test_self_extension_is_exact(self):
        """Test the triangle C -> 0 -> C."""
        c = arc("[a0, a1]")
        report = verify_triangle_window(extension_triangle(c, c), Window(4), ModelParams(2))
        assert report.passed, report.failures

    def test_corrupted_middle_term_fails(self):
        """Test that replacing the middle term by its suspension is detected."""
        t = extension_triangle(arc("[r0:1, r0:3]"), arc("[r0:0, r0:2]"))
        broken = replace(t, b=t.b.suspend(1))
        report = verify_triangle_window(broken, Window(6), ModelParams(1))
        assert not report.passed
        assert report.first_failure is not None

    @pytest.mark.parametrize("n", [1, 2])
    def test_all_small_extensions_are_exact(self, n):
        """Test every extension and reverse triangle between arcs of a small window."""
        params = ModelParams(n)
        arcs = window_arcs(params, Window(2))
        for c in arcs:
            for a in arcs:
                if not ext_dim(c, a):
                    continue
                report = verify_triangle_window(extension_triangle(c, a), Window(5), params)
                assert report.passed, (c, a, report.failures)
                if c != a and not set(c.endpoints) & set(a.endpoints):
                    dual = dual_extension_triangle(a, c)
                    report = verify_triangle_window(dual, Window(5), params)
                    assert report.passed, (a, c, report.failures)

    def test_direct_sum_checks_each_part(self):
        """Test that a direct sum of triangles keeps its parts."""
        first = extension_triangle(arc("[r0:1, r0:3]"), arc("[r0:0, r0:2]"))
        second = extension_triangle(arc("[a0, r0:0]"), arc("[a0, r0:2]"))
        total = first.direct_sum(second)
        assert total.kind == "sum"
        assert total.parts == (first, second)
        assert len(total.a) == 2
        assert verify_triangle_window(total, Window(5), ModelParams(1)).passed


class TestTriangleInvariants:
    """Test suite for the connecting map invariant."""

    def test_zero_component_is_rejected(self):
        """Test that a connecting component must be a nonzero map."""
        with pytest.raises(PreconditionViolated):
            Triangle(
                Obj.of(arc("[r0:0, r0:2]")),
                Obj(),
                Obj.of(arc("[r0:4, r0:6]")),
                ((arc("[r0:4, r0:6]"), arc("[r0:0, r0:2]")),),
                "crossing",
            )
