"""Brute-force layer-ordering oracle for single-vertex folds.

Independent ground truth at desk scale: fold the vertex star onto a ray
diagram with exact rational positions, then search stackings of the sectors
for one that satisfies the three layer constraints:

  (a) at every crease the two adjacent sectors stack in the order the
      mountain/valley label demands under a fixed orientation convention;
  (b) two folds at the same position opening the same way must not
      interleave their layer pairs;
  (c) no sector whose folded span strictly contains a fold's position may
      lie strictly between that fold's two sectors.

Overlap is measured on open intervals: creases have no width, so touching
at an endpoint never conflicts. Everything is exact; no tolerances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .core import AngleSequence, MVAssignment, MVLabel
from .errors import CapacityError, NotFlatFoldableError, UnsupportedError
from .vertex import RunCondition, kawasaki, maekawa_check

DEFAULT_LIMIT = 10

# sheet: (low, high, orientation); fold: (left sheet, right sheet, position,
# opening side, label). "left/right" is the order the boundary walk visits
# the two sheets, which fixes how the label convention reads.
_Sheet = tuple[Fraction, Fraction, int]
_Fold = tuple[int, int, Fraction, int, MVLabel]


@dataclass(frozen=True)
class LayerModel:
    """Folded 1-d geometry of a single-vertex fold.

    ``directions[j]`` is where crease j lands on the folded ray diagram,
    ``intervals[j]`` the span sector j covers, and ``orientations[j]`` which
    face of the paper sector j shows (+1 for sector 0's face). ``stacking``
    lists sectors bottom-to-top once a layer order has been chosen.
    """

    angles: AngleSequence
    directions: tuple[Fraction, ...]
    intervals: tuple[tuple[Fraction, Fraction], ...]
    orientations: tuple[int, ...]
    stacking: Optional[tuple[int, ...]] = None


def fold_directions(v: AngleSequence) -> LayerModel:
    """Walk the sectors around the vertex, alternating direction at every
    crease, and record where everything lands. Fails if the walk does not
    close up, i.e. if the alternating sector sum is nonzero."""
    if v.total > 360:
        raise UnsupportedError(
            "layer analysis supports sector totals up to one full turn"
        )
    if not kawasaki(v):
        raise NotFlatFoldableError("the folded boundary walk does not close up")
    m = len(v)
    pos = [Fraction(0)]
    for j, a in enumerate(v.angles):
        pos.append(pos[-1] + (Fraction(a) if j % 2 == 0 else -Fraction(a)))
    directions = tuple(pos[:m])
    intervals = tuple(
        (min(pos[j], pos[j + 1]), max(pos[j], pos[j + 1])) for j in range(m)
    )
    orientations = tuple(1 if j % 2 == 0 else -1 for j in range(m))
    return LayerModel(
        angles=v, directions=directions, intervals=intervals, orientations=orientations
    )


def _cyclic_net(model: LayerModel, mv: MVAssignment) -> tuple[list[_Sheet], list[_Fold]]:
    m = len(model.orientations)
    sheets = [
        (model.intervals[j][0], model.intervals[j][1], model.orientations[j])
        for j in range(m)
    ]
    folds = [
        ((j - 1) % m, j, model.directions[j], 1 if j % 2 == 0 else -1, mv[j])
        for j in range(m)
    ]
    return sheets, folds


def _fold_wants_right_above(sheets: list[_Sheet], fold: _Fold) -> bool:
    left, _right, _pos, _side, label = fold
    return (label is MVLabel.VALLEY) == (sheets[left][2] == 1)


def _interleaved(a1: int, a2: int, b1: int, b2: int) -> bool:
    return a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2


def stacking_valid(
    model: LayerModel, mv: MVAssignment, stacking: Sequence[int]
) -> bool:
    """Check one bottom-to-top sector order against all three constraints."""
    m = len(model.orientations)
    if len(mv) != m:
        raise ValueError("assignment length must match the number of creases")
    if sorted(stacking) != list(range(m)):
        raise ValueError("stacking must be a permutation of the sectors")
    sheets, folds = _cyclic_net(model, mv)
    level = [0] * m
    for lvl, s in enumerate(stacking):
        level[s] = lvl
    return _layers_ok(sheets, folds, level)


def _layers_ok(sheets: list[_Sheet], folds: list[_Fold], level: Sequence[int]) -> bool:
    for fold in folds:
        left, right = fold[0], fold[1]
        if _fold_wants_right_above(sheets, fold) != (level[right] > level[left]):
            return False
    for f1, f2 in itertools.combinations(folds, 2):
        if f1[2] == f2[2] and f1[3] == f2[3]:
            a1, a2 = sorted((level[f1[0]], level[f1[1]]))
            b1, b2 = sorted((level[f2[0]], level[f2[1]]))
            if _interleaved(a1, a2, b1, b2):
                return False
    for left, right, pos, _side, _label in folds:
        lo, hi = sorted((level[left], level[right]))
        for s, (slo, shi, _o) in enumerate(sheets):
            if s in (left, right):
                continue
            if slo < pos < shi and lo < level[s] < hi:
                return False
    return True


def _search(sheets: list[_Sheet], folds: list[_Fold]) -> Optional[list[int]]:
    """Insert sheets one by one into a growing stack, pruning as constraints
    complete. Violations are monotone in insertions (later sheets never
    reorder earlier ones), so pruning is sound and the search exhaustive."""
    n = len(sheets)
    by_step: list[list[int]] = [[] for _ in range(n)]
    for fi, fold in enumerate(folds):
        by_step[max(fold[0], fold[1])].append(fi)
    order = [0]
    complete: list[int] = []

    def partial_ok(j: int, newly: list[int]) -> bool:
        level = {s: t for t, s in enumerate(order)}
        for me, fi in enumerate(newly):
            left, right, pos, side, _label = folds[fi]
            lo, hi = sorted((level[left], level[right]))
            for fj in itertools.chain(complete, newly[:me]):
                other = folds[fj]
                if other[2] == pos and other[3] == side:
                    b1, b2 = sorted((level[other[0]], level[other[1]]))
                    if _interleaved(lo, hi, b1, b2):
                        return False
            for s in order:
                if s in (left, right):
                    continue
                slo, shi, _o = sheets[s]
                if slo < pos < shi and lo < level[s] < hi:
                    return False
        slo, shi, _o = sheets[j]
        lj = level[j]
        for fj in complete:
            left, right, pos, _side, _label = folds[fj]
            if slo < pos < shi:
                b1, b2 = sorted((level[left], level[right]))
                if b1 < lj < b2:
                    return False
        return True

    def rec(j: int) -> Optional[list[int]]:
        if j == n:
            return list(order)
        lo, hi = 0, j
        for fi in by_step[j]:
            fold = folds[fi]
            other = fold[0] if fold[1] == j else fold[1]
            right_above = _fold_wants_right_above(sheets, fold)
            j_above = right_above if fold[1] == j else not right_above
            t_other = order.index(other)
            if j_above:
                lo = max(lo, t_other + 1)
            else:
                hi = min(hi, t_other)
        for t in range(lo, hi + 1):
            order.insert(t, j)
            if partial_ok(j, by_step[j]):
                complete.extend(by_step[j])
                found = rec(j + 1)
                if found is not None:
                    return found
                del complete[len(complete) - len(by_step[j]) :]
            order.pop(t)
        return None

    if n == 1:
        return [0] if not folds else None
    return rec(1)


def _has_stacking(v: AngleSequence, mv: MVAssignment) -> bool:
    model = fold_directions(v)
    sheets, folds = _cyclic_net(model, mv)
    found = _search(sheets, folds)
    if found is None:
        return False
    assert stacking_valid(model, mv, tuple(found))
    return True


def find_stacking(v: AngleSequence, mv: MVAssignment) -> Optional[tuple[int, ...]]:
    """A witness stacking for the assignment, or None if there is none."""
    model = fold_directions(v)
    sheets, folds = _cyclic_net(model, mv)
    found = _search(sheets, folds)
    return None if found is None else tuple(found)


def _guard(v: AngleSequence, limit: int) -> None:
    if len(v) > limit:
        raise CapacityError(
            "%d sectors exceed the exhaustive-search limit of %d" % (len(v), limit)
        )
    if v.total > 360:
        raise UnsupportedError(
            "layer analysis supports sector totals up to one full turn"
        )


def oracle_is_valid(
    v: AngleSequence, mv: MVAssignment, *, limit: int = DEFAULT_LIMIT
) -> bool:
    """Definitional validity: some stacking folds the labels flat without
    the paper crossing itself."""
    _guard(v, limit)
    if len(mv) != len(v):
        raise ValueError("assignment length must match the number of creases")
    if not kawasaki(v):
        return False
    return _has_stacking(v, mv)


def _all_assignments(m: int) -> Iterable[MVAssignment]:
    for combo in itertools.product(tuple(MVLabel), repeat=m):
        yield MVAssignment(combo)


def oracle_count(
    v: AngleSequence,
    *,
    limit: int = DEFAULT_LIMIT,
    maekawa_prefilter: bool = True,
    use_flip_symmetry: bool = True,
    assignments: Optional[Iterable[MVAssignment]] = None,
) -> int:
    """Number of assignments the oracle accepts, over all 2^m by default.

    ``assignments`` restricts the enumeration to a subset (disjoint subsets
    can be counted concurrently and summed). ``use_flip_symmetry`` halves the
    work using the turn-the-paper-over bijection: an assignment folds flat
    exactly when its label-for-label flip does.
    """
    _guard(v, limit)
    if not kawasaki(v):
        return 0
    m = len(v)
    scale = 1
    if assignments is not None:
        pool: Iterable[MVAssignment] = assignments
    elif use_flip_symmetry and m >= 1:
        pool = (
            MVAssignment((MVLabel.MOUNTAIN,) + rest)
            for rest in itertools.product(tuple(MVLabel), repeat=m - 1)
        )
        scale = 2
    else:
        pool = _all_assignments(m)
    count = 0
    for mv in pool:
        if len(mv) != m:
            raise ValueError("assignment length must match the number of creases")
        if maekawa_prefilter and not maekawa_check(mv):
            continue
        if _has_stacking(v, mv):
            count += 1
    return count * scale


def enumerate_valid(
    v: AngleSequence, *, limit: int = DEFAULT_LIMIT, maekawa_prefilter: bool = True
) -> list[MVAssignment]:
    """All valid assignments, in lexicographic M-before-V order."""
    _guard(v, limit)
    if not kawasaki(v):
        return []
    out = []
    for mv in _all_assignments(len(v)):
        if maekawa_prefilter and not maekawa_check(mv):
            continue
        if _has_stacking(v, mv):
            out.append(mv)
    return out


def run_restricted_valid(
    v: AngleSequence,
    run: RunCondition,
    labels: Union[MVAssignment, Sequence[MVLabel]],
    *,
    limit: int = DEFAULT_LIMIT,
) -> bool:
    """Fold only the creases of a maximal equal-angle run, leaving the rest
    of the paper as an unfolded cone, and ask whether the labels work.

    The two sectors flanking the run become free flaps attached at the
    outermost folded creases; being strictly wider than the run angle they
    span the whole folded stack, and the unfolded cone beyond them bulges
    away from the flat layers, so it imposes no ordering of its own.
    """
    if v.total > 360:
        raise UnsupportedError(
            "layer analysis supports sector totals up to one full turn"
        )
    if run.k + 2 > limit:
        raise CapacityError(
            "%d creases exceed the exhaustive-search limit of %d" % (run.k + 2, limit)
        )
    m = len(v)
    val = Fraction(v.cyclic(run.start))
    for j in range(run.k + 1):
        if v.cyclic(run.start + j) != val:
            raise ValueError("run sectors are not all equal in this sequence")
    left_a = Fraction(v.cyclic(run.start - 1))
    right_a = Fraction(v.cyclic(run.start + run.k + 1))
    if not (left_a > val and right_a > val):
        raise ValueError("restricted folding needs strictly larger flanking sectors")
    label_list = list(labels.labels) if isinstance(labels, MVAssignment) else list(labels)
    if len(label_list) != run.k + 2:
        raise ValueError("need %d labels, got %d" % (run.k + 2, len(label_list)))

    k = run.k
    sheets: list[_Sheet] = [(-left_a, Fraction(0), 1)]
    positions = [Fraction(0)]
    pos = Fraction(0)
    direction = -1
    for j in range(k + 1):
        nxt = pos + direction * val
        sheets.append((min(pos, nxt), max(pos, nxt), 1 if j % 2 == 1 else -1))
        pos = nxt
        positions.append(pos)
        direction = -direction
    end = pos + direction * right_a
    sheets.append((min(pos, end), max(pos, end), 1 if k % 2 == 0 else -1))

    folds: list[_Fold] = [
        (jj, jj + 1, positions[jj], -1 if jj % 2 == 0 else 1, MVLabel(label_list[jj]))
        for jj in range(k + 2)
    ]
    return _search(sheets, folds) is not None
