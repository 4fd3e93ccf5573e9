"""Tests for fan triangulations, flips and exchange triangles."""

import random

import pytest

from cluster_index.errors import InvalidTriangulation, NoFlipAvailable, NotInTriangulation
from cluster_index.formats import parse_arc as arc
from cluster_index.surface import Accumulation, ModelParams, Obj, Regular, Window
from cluster_index.triangles import verify_triangle_window
from cluster_index.triangulation import (
    FanTriangulation,
    adjacent_triangles,
    exchange_triangles,
    flip,
    fountain_triangulation,
    is_rigid,
    validate_window,
)


@pytest.fixture
def fountain_a0():
    return fountain_triangulation(Accumulation(0), ModelParams(1))


@pytest.fixture
def fountain_r0():
    return fountain_triangulation(Regular(0, 0), ModelParams(1))


class TestMembership:
    """Test suite for membership in fountain descriptions."""

    def test_accumulation_fountain(self, fountain_a0):
        """Test the fountain at an accumulation point."""
        assert fountain_a0.contains(arc("[a0, r0:7]"))
        assert not fountain_a0.contains(arc("[r0:0, r0:2]"))
        assert not fountain_a0.contains(arc("[r0:0, r0:5]"))

    def test_regular_fountain(self, fountain_r0):
        """Test the fountain at a regular point."""
        assert fountain_r0.contains(arc("[r0:0, a0]"))
        assert fountain_r0.contains(arc("[r0:0, r0:-5]"))
        assert not fountain_r0.contains(arc("[r0:1, r0:3]"))

    def test_arc_between_accumulation_points(self):
        """Test that the fountain at a1 contains the arc to a0."""
        X = fountain_triangulation(Accumulation(1), ModelParams(2))
        assert X.contains(arc("[a0, a1]"))

    def test_members_in_window(self, fountain_a0):
        """Test window enumeration of members."""
        assert len(fountain_a0.members_in_window(Window(2))) == 5

    def test_invalid_descriptions(self):
        """Test that removed arcs must be fountain arcs and added arcs must not be."""
        params = ModelParams(1)
        with pytest.raises(InvalidTriangulation):
            FanTriangulation(params, Accumulation(0), removed=frozenset({arc("[r0:0, r0:2]")}))
        with pytest.raises(InvalidTriangulation):
            FanTriangulation(params, Accumulation(0), added=frozenset({arc("[a0, r0:2]")}))


class TestMaximalSources:
    """Test suite for the maximal members mapping to an arc."""

    def test_two_point_fountain(self):
        """Test the maximal source of a limit arc."""
        X = fountain_triangulation(Accumulation(1), ModelParams(2))
        assert X.maximal_hom_sources(arc("[a0, r0:0]")) == [arc("[a1, r0:0]")]
        assert X.maximal_hom_sources(arc("[a0, r1:0]")) == [arc("[a0, a1]")]

    def test_member_is_its_own_maximum(self, fountain_r0):
        """Test that a member is the maximum of its own hammock."""
        assert fountain_r0.maximal_hom_sources(arc("[r0:0, r0:4]")) == [arc("[r0:0, r0:4]")]


class TestAdjacentTriangles:
    """Test suite for the quadrilateral around a member."""

    def test_fountain_arc(self, fountain_a0):
        """Test the quadrilateral of an accumulation fountain arc."""
        q = adjacent_triangles(fountain_a0, arc("[a0, r0:0]"))
        assert q.y == arc("[r0:-1, r0:1]")
        assert q.s1 is None and q.t1 is None
        assert q.s2 == arc("[a0, r0:1]")
        assert q.t2 == arc("[a0, r0:-1]")
        assert len(set(q.corners)) == 4

    def test_after_one_flip(self, fountain_a0):
        """Test the local structure next to a new diagonal."""
        X, _ = flip(fountain_a0, arc("[a0, r0:0]"))
        q = adjacent_triangles(X, arc("[a0, r0:1]"))
        assert q.y == arc("[r0:-1, r0:2]")
        assert q.s1 == arc("[r0:-1, r0:1]")
        assert q.s2 == arc("[a0, r0:2]")
        assert q.t1 is None
        assert q.t2 == arc("[a0, r0:-1]")

    def test_limit_arc_of_regular_fountain(self, fountain_r0):
        """Test that a limit arc with infinite flanks cannot be flipped."""
        with pytest.raises(NoFlipAvailable):
            adjacent_triangles(fountain_r0, arc("[r0:0, a0]"))

    def test_not_a_member(self, fountain_a0):
        """Test that only members have quadrilaterals."""
        with pytest.raises(NotInTriangulation):
            adjacent_triangles(fountain_a0, arc("[r0:0, r0:2]"))


class TestFlip:
    """Test suite for flips."""

    def test_accumulation_fountain_flip(self, fountain_a0):
        """Test the flip of an accumulation fountain arc."""
        X, q = flip(fountain_a0, arc("[a0, r0:0]"))
        assert not X.contains(arc("[a0, r0:0]"))
        assert X.contains(arc("[r0:-1, r0:1]"))
        assert X.added == frozenset({q.y})
        assert len(X.flip_log) == 1

    def test_regular_fountain_flip(self, fountain_r0):
        """Test the flip of a regular fountain arc."""
        X, q = flip(fountain_r0, arc("[r0:0, r0:3]"))
        assert q.y == arc("[r0:2, r0:4]")
        assert X.contains(arc("[r0:2, r0:4]"))

    def test_flip_is_an_involution(self, fountain_a0, fountain_r0):
        """Test that flipping back restores the arc set."""
        for X in (fountain_a0, fountain_r0):
            for member in X.flippable_arcs(Window(3)):
                Y, q = flip(X, member)
                back, _ = flip(Y, q.y)
                assert back.same_arcs(X)
                assert back == X
                assert len(back.flip_log) == 2

    def test_flips_keep_a_triangulation(self, fountain_a0, fountain_r0):
        """Test that random flip sequences stay triangulations and keep rigidity."""
        rng = random.Random(7)
        for X in (fountain_a0, fountain_r0):
            rigid = is_rigid(X)
            for _ in range(3):
                X, _ = flip(X, rng.choice(X.flippable_arcs(Window(3))))
                report = validate_window(X, Window(6))
                assert report.passed, report.failures
                assert X.balanced
                assert is_rigid(X) == rigid


class TestExchangeTriangles:
    """Test suite for exchange triangles."""

    def test_boundary_sides_are_dropped(self, fountain_a0):
        """Test middle terms of a quadrilateral with two boundary sides."""
        q = adjacent_triangles(fountain_a0, arc("[a0, r0:0]"))
        forward, backward = exchange_triangles(q)
        assert forward.a == Obj.of(q.x) and forward.c == Obj.of(q.y)
        assert forward.b == Obj.of(arc("[a0, r0:1]"))
        assert backward.b == Obj.of(arc("[a0, r0:-1]"))
        assert forward.kind == backward.kind == "exchange"

    def test_regular_fountain_exchange(self, fountain_r0):
        """Test middle terms for a flip inside a regular fountain."""
        _, q = flip(fountain_r0, arc("[r0:0, r0:3]"))
        forward, backward = exchange_triangles(q)
        assert forward.b == Obj.of(arc("[r0:0, r0:4]"))
        assert backward.b == Obj.of(arc("[r0:0, r0:2]"))

    def test_exchange_triangles_are_exact(self, fountain_a0, fountain_r0):
        """Test both exchange triangles on a window."""
        for X in (fountain_a0, fountain_r0):
            for member in X.flippable_arcs(Window(2)):
                for t in exchange_triangles(adjacent_triangles(X, member)):
                    report = verify_triangle_window(t, Window(5), X.params)
                    assert report.passed, (member, report.failures)


class TestRigidity:
    """Test suite for rigidity of triangulations."""

    def test_fountains(self, fountain_a0, fountain_r0):
        """Test rigidity of fountains."""
        assert not is_rigid(fountain_a0)
        assert is_rigid(fountain_r0)
        assert not is_rigid(fountain_triangulation(Accumulation(1), ModelParams(2)))
        assert is_rigid(fountain_triangulation(Regular(1, 3), ModelParams(2)))


class TestValidateWindow:
    """Test suite for the window check of the triangulation property."""

    def test_fountains_pass(self, fountain_a0, fountain_r0):
        """Test that fountains are triangulations on a window."""
        assert validate_window(fountain_a0, Window(6)).passed
        assert validate_window(fountain_r0, Window(6)).passed
        two = fountain_triangulation(Accumulation(1), ModelParams(2))
        assert validate_window(two, Window(3)).passed

    def test_missing_arc_is_reported(self):
        """Test that removing an arc without a replacement breaks maximality."""
        X = FanTriangulation(
            ModelParams(1), Accumulation(0), removed=frozenset({arc("[a0, r0:0]")})
        )
        report = validate_window(X, Window(6))
        assert not report.passed
        assert any("[r0:-1, r0:1]" in failure for failure in report.failures)
        assert "1 arcs removed but 0 added" in report.first_failure
