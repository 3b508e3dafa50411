"""Random inputs for cross-validating the fast algorithms against the oracle.

Two families of vertex stars: generic rational angles (distinct values,
repaired to satisfy closure by scaling each parity class to a half turn) and
pooled angles drawn as compositions of a half turn in 15-degree units, which
produce genuine equal-angle runs. Plus small multi-vertex patterns on a
45-degree grid whose stars stay exactly representable.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Optional

from .core import (
    AngleSequence,
    CreasePattern,
    MVAssignment,
    MVLabel,
    normalize_pattern,
)
from .errors import StructuralError
from .vertex import alternating_sum, kawasaki

FIFTEEN = Fraction(15)


def random_flat_sequence(rng: random.Random, creases: int, pooled: bool = False) -> AngleSequence:
    """A random exact sequence of the given even length with closure repaired."""
    if creases % 2 != 0 or creases < 2:
        raise ValueError("need a positive even number of creases")
    n = creases // 2
    if pooled:
        odd = _composition(rng, 12, n)
        even = _composition(rng, 12, n)
        parts_odd = [FIFTEEN * u for u in odd]
        parts_even = [FIFTEEN * u for u in even]
    else:
        raw_odd = [Fraction(rng.randint(1, 60), rng.choice((1, 2, 3, 4))) for _ in range(n)]
        raw_even = [Fraction(rng.randint(1, 60), rng.choice((1, 2, 3, 4))) for _ in range(n)]
        parts_odd = [Fraction(180) * r / sum(raw_odd) for r in raw_odd]
        parts_even = [Fraction(180) * r / sum(raw_even) for r in raw_even]
    angles = []
    for a, b in zip(parts_odd, parts_even):
        angles.extend((a, b))
    seq = AngleSequence(tuple(angles))
    assert kawasaki(seq) and seq.is_flat
    return seq


def _composition(rng: random.Random, units: int, parts: int) -> list[int]:
    """A random composition of ``units`` into ``parts`` positive integers."""
    cuts = sorted(rng.sample(range(1, units), parts - 1)) if parts > 1 else []
    edges = [0] + cuts + [units]
    return [edges[i + 1] - edges[i] for i in range(parts)]


def random_nonclosing_sequence(rng: random.Random, creases: int) -> AngleSequence:
    """An even-length flat-total sequence that fails closure by a clear margin."""
    while True:
        n = creases // 2
        raw = [Fraction(rng.randint(1, 60), rng.choice((1, 2, 3))) for _ in range(creases)]
        total = sum(raw)
        angles = [Fraction(360) * r / total for r in raw]
        seq = AngleSequence(tuple(angles))
        defect = alternating_sum(seq)
        if abs(defect) > Fraction(1, 1000):
            return seq


def corpus_sequences(
    seed: int = 20250810, per_size: int = 50, sizes: tuple[int, ...] = (2, 4, 6, 8)
) -> list[AngleSequence]:
    """A deterministic mixed corpus of exact closure-satisfying sequences."""
    rng = random.Random(seed)
    out: list[AngleSequence] = []
    for m in sizes:
        seen = set()
        for made in range(per_size):
            seq = random_flat_sequence(rng, m, pooled=(made % 2 == 1))
            for _ in range(20):  # prefer fresh sequences, accept repeats eventually
                if seq.angles not in seen:
                    break
                seq = random_flat_sequence(rng, m, pooled=(made % 2 == 1))
            seen.add(seq.angles)
            out.append(seq)
    return out


# --------------------------------------------------------------------------
# single-vertex star patterns with prescribed angles

_STAR_DIGITS = 10 ** 15


def star_pattern(v: AngleSequence) -> CreasePattern:
    """A one-vertex pattern whose star approximates the given flat sequence.

    Prescribed angles are generally not realizable over rational coordinates
    (only 45-degree multiples are), so crease endpoints use 15-digit rational
    approximations of the unit directions. The recovered star is flagged
    approximate unless every direction happens to be a 45-degree multiple.
    """
    if not v.is_flat:
        raise ValueError("star patterns are built on flat paper")
    theta = Fraction(0)
    directions = []
    for a in v.angles:
        directions.append(theta)
        theta += a
    corners = [(-2, -2), (2, -2), (2, 2), (-2, 2)]
    points: list[tuple[Fraction, Fraction]] = [
        (Fraction(x), Fraction(y)) for x, y in corners
    ]
    center = (Fraction(0), Fraction(0))
    points.append(center)
    creases = []
    for t in directions:
        rad = math.radians(float(t))
        x = Fraction(round(math.cos(rad) * _STAR_DIGITS), _STAR_DIGITS)
        y = Fraction(round(math.sin(rad) * _STAR_DIGITS), _STAR_DIGITS)
        points.append((x, y))
        creases.append((4, len(points) - 1))
    return CreasePattern.build(points, creases, boundary=(0, 1, 2, 3))


# --------------------------------------------------------------------------
# multi-vertex chain patterns on a 45-degree grid

_PLAIN = "plain"
_DIAG_NE = "ne_sw"
_DIAG_NW = "nw_se"
_DIAG_BOTH = "both"
_STYLES = (_PLAIN, _DIAG_NE, _DIAG_NW, _DIAG_BOTH)


def chain_pattern(
    rng: random.Random, n_vertices: int, with_split: bool = False
) -> CreasePattern:
    """A normalized pattern with ``n_vertices`` collinear interior vertices.

    Each vertex carries north/south/east/west creases (west/east run to the
    neighbour or the border) plus optionally one or two straight diagonal
    pairs, keeping every star an exact 45-degree-multiple sequence that
    satisfies closure. ``with_split`` adds one border-to-border crease in an
    empty corner, which normalization then splits. Retries style choices
    that make diagonals cross.
    """
    if n_vertices < 1:
        raise ValueError("need at least one interior vertex")
    for _ in range(60):
        try:
            return _build_chain(rng, n_vertices, with_split)
        except StructuralError:
            continue
    raise RuntimeError("could not draw a planar chain pattern")


def _build_chain(rng: random.Random, k: int, with_split: bool) -> CreasePattern:
    xmax = 2 * k
    corners = [(-2, -2), (xmax, -2), (xmax, 2), (-2, 2)]
    points: list[tuple[Fraction, Fraction]] = [
        (Fraction(x), Fraction(y)) for x, y in corners
    ]
    index: dict[tuple[Fraction, Fraction], int] = {p: i for i, p in enumerate(points)}

    def pid(x, y) -> int:
        p = (Fraction(x), Fraction(y))
        if p not in index:
            index[p] = len(points)
            points.append(p)
        return index[p]

    creases: list[tuple[int, int]] = []

    def add(i: int, j: int) -> None:
        creases.append((i, j))

    centers = [pid(2 * i, 0) for i in range(k)]
    for i, c in enumerate(centers):
        x = 2 * i
        add(c, pid(x, 2))
        add(c, pid(x, -2))
        if i == 0:
            add(c, pid(-2, 0))
        if i == k - 1:
            add(c, pid(xmax, 0))
        else:
            add(c, centers[i + 1])
        style = rng.choice(_STYLES)
        if style in (_DIAG_NE, _DIAG_BOTH):
            add(c, pid(x + 2, 2))
            add(c, pid(x - 2, -2))
        if style in (_DIAG_NW, _DIAG_BOTH):
            add(c, pid(x - 2, 2))
            add(c, pid(x + 2, -2))
    if with_split:
        add(pid(-2, 1), pid(-1, 2))
    pattern = CreasePattern.build(points, creases, boundary=(0, 1, 2, 3))
    return normalize_pattern(pattern)


def random_local_parity_assignment(
    rng: random.Random, p: CreasePattern, attempts: int = 400
) -> Optional[MVAssignment]:
    """Random labels giving every interior vertex a local tally of +-2.

    Backtracks over creases in a shuffled order; returns None if the pattern
    admits no such labelling within the attempt budget.
    """
    n = len(p.creases)
    interior = p.interior_vertex_ids()
    incident = {v: p.incident_creases(v) for v in interior}
    vertex_of_crease: dict[int, list[int]] = {ci: [] for ci in range(n)}
    for v, cis in incident.items():
        for ci in cis:
            vertex_of_crease[ci].append(v)

    order = list(range(n))
    rng.shuffle(order)
    labels: list[Optional[MVLabel]] = [None] * n
    tally = {v: 0 for v in interior}
    remaining = {v: len(incident[v]) for v in interior}
    steps = 0

    def feasible(v: int) -> bool:
        if remaining[v] == 0:
            return abs(tally[v]) == 2
        return abs(tally[v]) <= remaining[v] + 2

    def assign(pos: int) -> bool:
        nonlocal steps
        steps += 1
        if steps > attempts * n:
            return False
        if pos == n:
            return True
        ci = order[pos]
        choices = [MVLabel.MOUNTAIN, MVLabel.VALLEY]
        rng.shuffle(choices)
        for label in choices:
            labels[ci] = label
            delta = 1 if label is MVLabel.MOUNTAIN else -1
            for v in vertex_of_crease[ci]:
                tally[v] += delta
                remaining[v] -= 1
            if all(feasible(v) for v in vertex_of_crease[ci]) and assign(pos + 1):
                return True
            for v in vertex_of_crease[ci]:
                tally[v] -= delta
                remaining[v] += 1
            labels[ci] = None
        return False

    if not assign(0):
        return None
    return MVAssignment(tuple(labels))  # type: ignore[arg-type]
