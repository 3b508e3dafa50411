from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flatfold.core import (
    Angle,
    AngleSequence,
    CreasePattern,
    MVAssignment,
    normalize_pattern,
    vertex_star,
)
from flatfold.errors import PlanarityError, StructuralError


def square(side=4):
    return [(0, 0), (side, 0), (side, side), (0, side)]


def test_angle_accepts_rationals():
    assert Angle(90) == 90
    assert Angle("45/2") == Fraction(45, 2)
    assert Angle(Fraction(1, 3)) == Fraction(1, 3)
    assert Angle(22, 7) == Fraction(22, 7)


@given(st.fractions(max_value=0, min_value=-1000, max_denominator=50))
def test_angle_rejects_nonpositive(value):
    with pytest.raises(ValueError):
        Angle(value)


@given(st.fractions(min_value=Fraction(1, 50), max_value=1000, max_denominator=50))
def test_angle_accepts_positive(value):
    assert Angle(value) == value


class TestAngleSequence:
    def test_coerces_and_totals(self):
        seq = AngleSequence((90, "90", Fraction(90), Angle(90)))
        assert len(seq) == 4
        assert seq.total == 360
        assert seq.is_flat
        assert seq.kind == "flat"

    def test_cone_kind(self):
        assert AngleSequence((140, 140)).kind == "cone"
        assert AngleSequence((300, 300, 100, 100)).kind == "cone"  # total > 360

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            AngleSequence(())

    def test_cyclic_indexing(self):
        seq = AngleSequence((10, 20, 30))
        assert seq.cyclic(3) == 10
        assert seq.cyclic(-1) == 30

    def test_rotated_and_mirrored(self):
        seq = AngleSequence((10, 20, 130, 200))
        assert AngleSequence((130, 200, 10, 20)) == seq.rotated(2)
        assert AngleSequence((200, 130, 20, 10)) == seq.mirrored()
        assert seq.rotated(4) == seq

    def test_exact_flag_propagates(self):
        seq = AngleSequence((10, 350), exact=False)
        assert not seq.rotated(1).exact
        assert not seq.mirrored().exact


class TestMVAssignment:
    def test_from_string_case_insensitive(self):
        mv = MVAssignment.from_string("mMvM")
        assert str(mv) == "MMVM"
        assert mv.mountains == 3
        assert mv.valleys == 1
        assert mv.tally == 2

    def test_bad_character(self):
        with pytest.raises(ValueError):
            MVAssignment.from_string("MXVM")

    def test_flipped(self):
        assert str(MVAssignment.from_string("MMV").flipped()) == "VVM"


class TestNormalizePattern:
    def test_single_border_crease_is_split(self):
        p = CreasePattern.build(
            square() + [(0, 2), (4, 2)],
            [(4, 5)],
            boundary=(0, 1, 2, 3),
            assignment="M",
        )
        q = normalize_pattern(p)
        assert len(q.creases) == 2
        assert len(q.vertices) == len(p.vertices) + 1
        mid = len(p.vertices)
        assert q.vertices[mid].point == (Fraction(2), Fraction(2))
        assert not q.vertices[mid].on_boundary
        assert q.split_vertices == {mid}
        assert str(q.assignment) == "MM"

    def test_pattern_with_interior_vertex_unchanged(self):
        p = CreasePattern.build(
            square() + [(2, 2), (2, 0), (2, 4)],
            [(4, 5), (4, 6)],
            boundary=(0, 1, 2, 3),
        )
        assert normalize_pattern(p) == p

    def test_two_border_creases_split_twice(self):
        p = CreasePattern.build(
            square() + [(0, 1), (4, 1), (0, 3), (4, 3)],
            [(4, 5), (6, 7)],
            boundary=(0, 1, 2, 3),
        )
        q = normalize_pattern(p)
        assert len(q.creases) == 4
        assert len(q.split_vertices) == 2

    def test_idempotent(self):
        p = CreasePattern.build(
            square() + [(0, 2), (4, 2)], [(4, 5)], boundary=(0, 1, 2, 3)
        )
        once = normalize_pattern(p)
        assert normalize_pattern(once) == once


class TestPatternValidation:
    def test_dangling_endpoint(self):
        with pytest.raises(StructuralError):
            CreasePattern.build(square(), [(0, 9)], boundary=(0, 1, 2, 3))

    def test_self_loop(self):
        with pytest.raises(StructuralError):
            CreasePattern.build(square(), [(1, 1)], boundary=(0, 1, 2, 3))

    def test_duplicate_crease(self):
        pts = square() + [(2, 2), (2, 0)]
        with pytest.raises(StructuralError):
            CreasePattern.build(pts, [(4, 5), (5, 4)], boundary=(0, 1, 2, 3))

    def test_crossing_creases(self):
        pts = square() + [(1, 1), (3, 3), (1, 3), (3, 1)]
        with pytest.raises(PlanarityError):
            CreasePattern.build(pts, [(4, 5), (6, 7)], boundary=(0, 1, 2, 3))

    def test_vertex_inside_crease(self):
        pts = square() + [(1, 2), (3, 2), (2, 2)]
        with pytest.raises(PlanarityError):
            CreasePattern.build(pts, [(4, 5), (6, 1)], boundary=(0, 1, 2, 3))

    def test_vertex_outside_paper(self):
        pts = square() + [(5, 5), (2, 2)]
        with pytest.raises(StructuralError):
            CreasePattern.build(pts, [(4, 5)], boundary=(0, 1, 2, 3))

    def test_assignment_length_mismatch(self):
        pts = square() + [(2, 2), (2, 0)]
        with pytest.raises(StructuralError):
            CreasePattern.build(pts, [(4, 5)], boundary=(0, 1, 2, 3), assignment="MM")

    def test_isolated_interior_vertex(self):
        with pytest.raises(StructuralError):
            CreasePattern.build(square() + [(2, 2)], [], boundary=(0, 1, 2, 3))

    def test_boundary_only_pattern_is_fine(self):
        p = CreasePattern.build(square(), [], boundary=(0, 1, 2, 3))
        assert len(p.creases) == 0


class TestVertexStar:
    def test_axis_aligned_cross(self):
        pts = square() + [(2, 2), (4, 2), (2, 4), (0, 2), (2, 0)]
        p = CreasePattern.build(
            pts, [(4, 5), (4, 6), (4, 7), (4, 8)], boundary=(0, 1, 2, 3)
        )
        star = vertex_star(p, 4)
        assert star == AngleSequence((90, 90, 90, 90))
        assert star.exact

    def test_degree_one_vertex(self):
        pts = square() + [(2, 2), (3, 2)]
        p = CreasePattern.build(pts, [(4, 5)], boundary=(0, 1, 2, 3))
        assert vertex_star(p, 4) == AngleSequence((360,))
        assert vertex_star(p, 5) == AngleSequence((360,))

    def test_boundary_vertex_unsupported(self):
        pts = square() + [(2, 2), (2, 0)]
        p = CreasePattern.build(pts, [(4, 5)], boundary=(0, 1, 2, 3))
        with pytest.raises(StructuralError):
            vertex_star(p, 5)

    def test_diagonals_are_exact(self):
        pts = square() + [(2, 2)]  # creases run to the four corners
        p = CreasePattern.build(
            pts, [(4, 0), (4, 1), (4, 2), (4, 3)], boundary=(0, 1, 2, 3)
        )
        star = vertex_star(p, 4)
        assert star.exact
        assert star == AngleSequence((90, 90, 90, 90))

    def test_irrational_directions_flagged_approximate(self):
        pts = square() + [(2, 2), (4, 3), (1, 4), (0, 1), (3, 0)]
        p = CreasePattern.build(
            pts, [(4, 5), (4, 6), (4, 7), (4, 8)], boundary=(0, 1, 2, 3)
        )
        star = vertex_star(p, 4)
        assert not star.exact
        assert star.total == 360  # the flag marks the values, not the total

    def test_split_vertex_star_is_straight(self):
        p = CreasePattern.build(
            square() + [(0, 2), (4, 2)], [(4, 5)], boundary=(0, 1, 2, 3)
        )
        q = normalize_pattern(p)
        (split,) = q.split_vertices
        assert vertex_star(q, split) == AngleSequence((180, 180))

    def test_stars_sum_to_full_turn_across_random_patterns(self):
        import random

        from flatfold.corpus import chain_pattern

        rng = random.Random(6)
        for _ in range(5):
            p = chain_pattern(rng, rng.randint(1, 4), with_split=True)
            for vid in p.interior_vertex_ids():
                assert vertex_star(p, vid).total == 360
