"""Exact domain types shared by every other module.

Coordinates and sector angles are rational numbers (`fractions.Fraction`);
nothing here touches floating point. Angle equality therefore means exact
equality, which the counting recursion depends on: it is discontinuous in
whether two sectors are equal, so a tolerance would silently change counts.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import PlanarityError, StructuralError

Rational = Union[int, str, Fraction]
Point = tuple[Fraction, Fraction]

FULL_TURN = Fraction(360)


class Angle(Fraction):
    """A positive sector angle in degrees, stored exactly."""

    __slots__ = ()

    def __new__(cls, value, denominator=None):
        if denominator is None:
            self = super().__new__(cls, value)
        else:
            self = super().__new__(cls, value, denominator)
        if self <= 0:
            raise ValueError("sector angles must be positive, got %s" % Fraction(self))
        return self


@dataclass(frozen=True)
class AngleSequence:
    """Consecutive sector angles around one interior vertex, in cyclic order.

    Index ``i`` is the sector between crease ``i`` and crease ``i + 1``; the
    sector after the last crease wraps around to crease 0. ``exact`` is False
    when the angles were recovered from coordinates that admit no rational
    degree measure; counting operations refuse such sequences.
    """

    angles: tuple[Angle, ...]
    exact: bool = True

    def __post_init__(self):
        coerced = tuple(a if isinstance(a, Angle) else Angle(a) for a in self.angles)
        if not coerced:
            raise ValueError("an angle sequence needs at least one sector")
        object.__setattr__(self, "angles", coerced)
        object.__setattr__(self, "exact", bool(self.exact))

    def __len__(self) -> int:
        return len(self.angles)

    def __iter__(self):
        return iter(self.angles)

    def __getitem__(self, i: int) -> Angle:
        return self.angles[i]

    def cyclic(self, i: int) -> Angle:
        return self.angles[i % len(self.angles)]

    @property
    def total(self) -> Fraction:
        return sum(self.angles, Fraction(0))

    @property
    def is_flat(self) -> bool:
        return self.total == FULL_TURN

    @property
    def kind(self) -> str:
        return "flat" if self.is_flat else "cone"

    def rotated(self, start: int) -> "AngleSequence":
        start %= len(self.angles)
        return AngleSequence(self.angles[start:] + self.angles[:start], exact=self.exact)

    def mirrored(self) -> "AngleSequence":
        """The same vertex star read clockwise instead of counterclockwise."""
        return AngleSequence(tuple(reversed(self.angles)), exact=self.exact)

    def as_strings(self) -> list[str]:
        return [str(Fraction(a)) for a in self.angles]


class MVLabel(str, Enum):
    MOUNTAIN = "M"
    VALLEY = "V"

    def flipped(self) -> "MVLabel":
        return MVLabel.VALLEY if self is MVLabel.MOUNTAIN else MVLabel.MOUNTAIN


M = MVLabel.MOUNTAIN
V = MVLabel.VALLEY


@dataclass(frozen=True)
class MVAssignment:
    """Mountain/valley labels, one per crease, in crease order."""

    labels: tuple[MVLabel, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(MVLabel(l) for l in self.labels))

    @classmethod
    def from_string(cls, text: str) -> "MVAssignment":
        try:
            return cls(tuple(MVLabel(ch) for ch in text.strip().upper()))
        except ValueError:
            raise ValueError("assignment strings may only contain M and V: %r" % text) from None

    def __str__(self) -> str:
        return "".join(l.value for l in self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __getitem__(self, i: int) -> MVLabel:
        return self.labels[i]

    @property
    def mountains(self) -> int:
        return sum(1 for l in self.labels if l is MVLabel.MOUNTAIN)

    @property
    def valleys(self) -> int:
        return len(self.labels) - self.mountains

    @property
    def tally(self) -> int:
        """Mountain count minus valley count."""
        return self.mountains - self.valleys

    def flipped(self) -> "MVAssignment":
        return MVAssignment(tuple(l.flipped() for l in self.labels))


@dataclass(frozen=True)
class Vertex:
    x: Fraction
    y: Fraction
    on_boundary: bool

    @property
    def point(self) -> Point:
        return (self.x, self.y)


@dataclass(frozen=True)
class ReductionStep:
    """One step of the counting recursion.

    ``start`` indexes the reduced run in the sequence the step was applied
    to, ``length`` is the number of equal sectors it removed, ``factor`` the
    multiplicative contribution, and ``residual`` what was left afterwards.
    """

    start: int
    length: int
    factor: int
    residual: AngleSequence


@dataclass(frozen=True)
class CountResult:
    """Number of valid mountain-valley assignments plus how it was derived."""

    count: int
    base: int
    trace: tuple[ReductionStep, ...]
    bounds: tuple[int, int]

    @property
    def factors(self) -> list[int]:
        return [step.factor for step in self.trace]


@dataclass(frozen=True)
class PatternTally:
    """Crease and vertex counts feeding the multi-vertex parity identity.

    Bookkeeping crease pairs created by splitting a border-to-border crease
    (one logical crease, counted in ``split_pairs``) appear in none of the
    other fields; see `pattern.generalized_maekawa`.
    """

    mountains: int
    valleys: int
    interior_mountains: int
    interior_valleys: int
    up_vertices: int
    down_vertices: int
    split_pairs: int = 0


# --------------------------------------------------------------------------
# exact geometric predicates


def _orient(a: Point, b: Point, c: Point) -> int:
    cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (cross > 0) - (cross < 0)


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """Closed containment of p in the segment ab (a != b assumed)."""
    if _orient(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True when the closed segments ab and cd share at least one point."""
    if _proper_cross(a, b, c, d):
        return True
    return (
        _on_segment(c, a, b)
        or _on_segment(d, a, b)
        or _on_segment(a, c, d)
        or _on_segment(b, c, d)
    )


def _proper_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    return (
        _orient(a, b, c) * _orient(a, b, d) < 0
        and _orient(c, d, a) * _orient(c, d, b) < 0
    )


def _collinear_overlap(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True when ab and cd are collinear and overlap in more than a point."""
    if _orient(a, b, c) != 0 or _orient(a, b, d) != 0:
        return False
    axis = 0 if abs(b[0] - a[0]) >= abs(b[1] - a[1]) else 1
    lo1, hi1 = sorted((a[axis], b[axis]))
    lo2, hi2 = sorted((c[axis], d[axis]))
    return max(lo1, lo2) < min(hi1, hi2)


def _point_in_polygon(p: Point, poly: Sequence[Point]) -> bool:
    """Strict interior test; the caller must rule out boundary points first."""
    inside = False
    px, py = p
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        if (y1 > py) != (y2 > py):
            xint = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
            if xint > px:
                inside = not inside
    return inside


# --------------------------------------------------------------------------
# crease patterns


@dataclass(frozen=True)
class CreasePattern:
    """A planar straight-line crease graph with a simple polygon border.

    ``split_vertices`` tags the degree-2 interior vertices introduced by
    `normalize_pattern` so parity rules can treat their two collinear
    creases as one logical crease.
    """

    vertices: tuple[Vertex, ...]
    creases: tuple[tuple[int, int], ...]
    boundary: tuple[int, ...]
    assignment: Optional[MVAssignment] = None
    split_vertices: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "creases", tuple((int(i), int(j)) for i, j in self.creases)
        )
        object.__setattr__(self, "boundary", tuple(int(i) for i in self.boundary))
        object.__setattr__(self, "split_vertices", frozenset(self.split_vertices))
        _validate_pattern(self)

    @classmethod
    def build(
        cls,
        points: Iterable[tuple[Rational, Rational]],
        creases: Iterable[tuple[int, int]],
        boundary: Iterable[int],
        assignment: Union[MVAssignment, str, Sequence[str], None] = None,
        split_vertices: Iterable[int] = (),
    ) -> "CreasePattern":
        """Construct from raw coordinates, deriving the boundary flags."""
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        boundary = tuple(int(i) for i in boundary)
        creases = tuple((int(i), int(j)) for i, j in creases)
        if len(boundary) < 3:
            raise StructuralError("the border needs at least three vertices")
        for i in boundary:
            if not 0 <= i < len(pts):
                raise StructuralError("border vertex index %d out of range" % i)
        bedges = [
            (pts[boundary[i]], pts[boundary[(i + 1) % len(boundary)]])
            for i in range(len(boundary))
        ]
        for a, b in bedges:
            if a == b:
                raise StructuralError("zero-length border edge")
        flags = [any(_on_segment(p, a, b) for a, b in bedges) for p in pts]
        vertices = tuple(Vertex(x, y, flag) for (x, y), flag in zip(pts, flags))
        if isinstance(assignment, str):
            assignment = MVAssignment.from_string(assignment)
        elif assignment is not None and not isinstance(assignment, MVAssignment):
            assignment = MVAssignment(tuple(MVLabel(l) for l in assignment))
        return cls(vertices, creases, boundary, assignment, frozenset(split_vertices))

    # -- simple accessors ---------------------------------------------------

    def point(self, v: int) -> Point:
        return self.vertices[v].point

    def crease_points(self, ci: int) -> tuple[Point, Point]:
        i, j = self.creases[ci]
        return self.point(i), self.point(j)

    def incident_creases(self, v: int) -> list[int]:
        return [ci for ci, (i, j) in enumerate(self.creases) if v in (i, j)]

    def degree(self, v: int) -> int:
        return len(self.incident_creases(v))

    def interior_vertex_ids(self) -> list[int]:
        return [i for i, vert in enumerate(self.vertices) if not vert.on_boundary]

    def boundary_edges(self) -> list[tuple[Point, Point]]:
        n = len(self.boundary)
        return [
            (self.point(self.boundary[i]), self.point(self.boundary[(i + 1) % n]))
            for i in range(n)
        ]


def _validate_pattern(p: CreasePattern) -> None:
    n = len(p.vertices)
    if len(p.boundary) < 3:
        raise StructuralError("the border needs at least three vertices")
    for i in p.boundary:
        if not 0 <= i < n:
            raise StructuralError("border vertex index %d out of range" % i)
    if len(set(p.boundary)) != len(p.boundary):
        raise StructuralError("border cycle repeats a vertex")

    pts = [v.point for v in p.vertices]
    if len(set(pts)) != n:
        raise StructuralError("two vertices share the same coordinates")

    # border must be a simple polygon
    m = len(p.boundary)
    bpoly = [pts[i] for i in p.boundary]
    bedges = [(bpoly[i], bpoly[(i + 1) % m]) for i in range(m)]
    for i in range(m):
        a, b = bedges[i]
        if a == b:
            raise StructuralError("zero-length border edge")
        for j in range(i + 1, m):
            c, d = bedges[j]
            adjacent = j == i + 1 or (i == 0 and j == m - 1)
            if adjacent:
                shared = b if j == i + 1 else a
                other_c = d if j == i + 1 else c
                if _on_segment(other_c, a, b) and other_c != shared:
                    raise PlanarityError("border folds back on itself")
                if _collinear_overlap(a, b, c, d):
                    raise PlanarityError("border edges overlap")
            elif _segments_touch(a, b, c, d):
                raise PlanarityError("border edges cross")

    # boundary flags must match the geometry; everything else strictly inside
    for idx, vert in enumerate(p.vertices):
        on_border = any(_on_segment(vert.point, a, b) for a, b in bedges)
        if on_border != vert.on_boundary:
            raise StructuralError("vertex %d has a wrong border flag" % idx)
        if not on_border and not _point_in_polygon(vert.point, bpoly):
            raise StructuralError("vertex %d lies outside the paper" % idx)

    # creases: valid indices, positive length, no duplicates
    seen = set()
    for ci, (i, j) in enumerate(p.creases):
        if not (0 <= i < n and 0 <= j < n):
            raise StructuralError("crease %d has a dangling endpoint" % ci)
        if i == j:
            raise StructuralError("crease %d is a self-loop" % ci)
        key = frozenset((i, j))
        if key in seen:
            raise StructuralError("crease %d duplicates another crease" % ci)
        seen.add(key)

    # no vertex may sit in the relative interior of a crease
    for ci, (i, j) in enumerate(p.creases):
        a, b = pts[i], pts[j]
        for idx in range(n):
            if idx in (i, j):
                continue
            if _on_segment(pts[idx], a, b):
                raise PlanarityError(
                    "vertex %d lies inside crease %d; split the crease there" % (idx, ci)
                )

    # creases meet each other only at shared vertices
    for ci in range(len(p.creases)):
        i1, j1 = p.creases[ci]
        a, b = pts[i1], pts[j1]
        for cj in range(ci + 1, len(p.creases)):
            i2, j2 = p.creases[cj]
            c, d = pts[i2], pts[j2]
            if {i1, j1} & {i2, j2}:
                continue  # sharing a vertex; overlaps were caught above
            if _segments_touch(a, b, c, d):
                raise PlanarityError("creases %d and %d cross" % (ci, cj))

    # creases stay inside the paper: they may touch the border only at endpoints
    for ci, (i, j) in enumerate(p.creases):
        a, b = pts[i], pts[j]
        for c, d in bedges:
            if _proper_cross(a, b, c, d):
                raise PlanarityError("crease %d crosses the border" % ci)
            if _collinear_overlap(a, b, c, d):
                raise PlanarityError("crease %d runs along the border" % ci)

    # every interior vertex must carry at least one crease
    used = {i for crease in p.creases for i in crease}
    for idx, vert in enumerate(p.vertices):
        if not vert.on_boundary and idx not in used:
            raise StructuralError("isolated interior vertex %d" % idx)

    if p.assignment is not None and len(p.assignment) != len(p.creases):
        raise StructuralError(
            "assignment has %d labels for %d creases"
            % (len(p.assignment), len(p.creases))
        )

    for idx in p.split_vertices:
        if not 0 <= idx < n or p.vertices[idx].on_boundary:
            raise StructuralError("split tag on a non-interior vertex %d" % idx)


def normalize_pattern(p: CreasePattern) -> CreasePattern:
    """Split every border-to-border crease at its midpoint.

    The new degree-2 interior vertex is tagged in ``split_vertices`` and both
    halves inherit the original crease's label. Idempotent.
    """
    points = [v.point for v in p.vertices]
    creases: list[tuple[int, int]] = []
    labels: list[MVLabel] = []
    split = set(p.split_vertices)
    for ci, (i, j) in enumerate(p.creases):
        label = p.assignment[ci] if p.assignment is not None else None
        if p.vertices[i].on_boundary and p.vertices[j].on_boundary:
            (x1, y1), (x2, y2) = points[i], points[j]
            mid = ((x1 + x2) / 2, (y1 + y2) / 2)
            mid_id = len(points)
            points.append(mid)
            split.add(mid_id)
            creases.append((i, mid_id))
            creases.append((mid_id, j))
            if label is not None:
                labels.extend((label, label))
        else:
            creases.append((i, j))
            if label is not None:
                labels.append(label)
    assignment = MVAssignment(tuple(labels)) if p.assignment is not None else None
    return CreasePattern.build(points, creases, p.boundary, assignment, split)


# --------------------------------------------------------------------------
# vertex stars


def _half_plane(d: tuple[Fraction, Fraction]) -> int:
    dx, dy = d
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def _compare_directions(d1, d2) -> int:
    h1, h2 = _half_plane(d1), _half_plane(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    raise StructuralError("two creases leave the vertex in the same direction")


def incident_creases_ccw(
    p: CreasePattern, v: int
) -> list[tuple[int, tuple[Fraction, Fraction]]]:
    """Creases at v with their outgoing direction vectors, sorted CCW from +x."""
    vx, vy = p.point(v)
    items = []
    for ci, (i, j) in enumerate(p.creases):
        if v in (i, j):
            ox, oy = p.point(j if i == v else i)
            items.append((ci, (ox - vx, oy - vy)))
    items.sort(key=functools.cmp_to_key(lambda a, b: _compare_directions(a[1], b[1])))
    return items


def _direction_degrees_exact(d: tuple[Fraction, Fraction]) -> Optional[Fraction]:
    """Exact degree measure of a direction, or None if it is not a 45° multiple.

    Directions with a rational tangent have a rational degree measure only
    for tangents 0 and +-1 (and the vertical), so these are the only exactly
    representable cases over rational coordinates.
    """
    dx, dy = d
    if dy == 0:
        return Fraction(0) if dx > 0 else Fraction(180)
    if dx == 0:
        return Fraction(90) if dy > 0 else Fraction(270)
    if dx == dy:
        return Fraction(45) if dx > 0 else Fraction(225)
    if dx == -dy:
        return Fraction(135) if dy > 0 else Fraction(315)
    return None


def vertex_star(p: CreasePattern, v: int) -> AngleSequence:
    """Consecutive sector angles between the creases at an interior vertex.

    Exact when every incident crease direction is a multiple of 45 degrees;
    otherwise the angles come from float arithmetic and the sequence is
    flagged approximate. Either way the sectors sum to exactly 360.
    """
    if not 0 <= v < len(p.vertices):
        raise StructuralError("vertex %d out of range" % v)
    if p.vertices[v].on_boundary:
        raise StructuralError(
            "vertex %d is on the border; border vertices follow different rules" % v
        )
    incident = incident_creases_ccw(p, v)
    if not incident:
        raise StructuralError("vertex %d has no creases" % v)
    if len(incident) == 1:
        return AngleSequence((Angle(360),), exact=True)

    thetas: list[Fraction] = []
    exact = True
    for _, d in incident:
        t = _direction_degrees_exact(d)
        if t is None:
            exact = False
            t = Fraction(math.degrees(math.atan2(float(d[1]), float(d[0]))) % 360.0)
        thetas.append(t)

    sectors: list[Fraction] = [
        thetas[i + 1] - thetas[i] for i in range(len(thetas) - 1)
    ]
    sectors.append(FULL_TURN - thetas[-1] + thetas[0])
    if any(s <= 0 for s in sectors):
        raise StructuralError(
            "sectors at vertex %d are too small to resolve in floating point" % v
        )
    return AngleSequence(tuple(Angle(s) for s in sectors), exact=exact)
