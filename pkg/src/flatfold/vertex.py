"""Single-vertex flat-foldability tests and mountain-valley counting.

All operations are pure functions of immutable inputs and work for a vertex
on flat paper or at the apex of a cone; the closure test and the parity rule
never use the fact that the sectors sum to a full turn.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import AngleSequence, CountResult, MVAssignment, MVLabel, ReductionStep
from .errors import ExactnessError, NotFlatFoldableError, ParityError


def alternating_sum(v: AngleSequence) -> Fraction:
    """Signed sector sum a1 - a2 + a3 - ... around the vertex."""
    if len(v) % 2 != 0:
        raise ParityError(
            "alternating sum needs an even number of sectors, got %d" % len(v)
        )
    return sum(
        (Fraction(a) if i % 2 == 0 else -Fraction(a)) for i, a in enumerate(v)
    )


def kawasaki(v: AngleSequence) -> bool:
    """Closure test: even degree and alternating sector sum zero.

    Necessary and sufficient for the vertex to fold flat (ignoring labels),
    on flat paper and on cones alike. Odd degree returns False rather than
    raising: a flat-foldable vertex always has even degree.
    """
    return len(v) % 2 == 0 and alternating_sum(v) == 0


def maekawa_check(mv: MVAssignment) -> bool:
    """Mountain/valley parity rule: M - V must be +2 or -2."""
    return abs(mv.tally) == 2


@dataclass(frozen=True)
class RunCondition:
    """A block of equal consecutive sectors and the parity it forces.

    Sectors ``start .. start + k`` (cyclic) all carry the same angle; the
    creases bounding and interleaving them are ``start .. start + k + 1``.
    A labelling of those creases folds the block flat in isolation exactly
    when its mountain-valley tally lies in ``allowed_tallies``.
    """

    start: int
    k: int
    creases: tuple[int, ...]
    allowed_tallies: frozenset[int]

    @property
    def length(self) -> int:
        return self.k + 1


def find_runs(v: AngleSequence) -> list[RunCondition]:
    """All maximal equal-angle runs whose cyclic neighbours are strictly larger.

    Wrap-around runs are reported with their true (cyclic) start index.
    Returns an empty list exactly when all sectors are equal.
    """
    if not v.exact:
        raise ExactnessError("run detection requires exact sector angles")
    m = len(v)
    vals = list(v.angles)
    starts = [i for i in range(m) if vals[i] != vals[i - 1]]
    if not starts:
        return []
    runs = []
    for s_idx, s in enumerate(starts):
        nxt = starts[(s_idx + 1) % len(starts)]
        length = (nxt - s) % m
        val = vals[s]
        if vals[s - 1] > val and vals[nxt] > val:
            k = length - 1
            runs.append(
                RunCondition(
                    start=s,
                    k=k,
                    creases=tuple((s + j) % m for j in range(k + 2)),
                    allowed_tallies=frozenset({0}) if k % 2 == 0 else frozenset({-1, 1}),
                )
            )
    return runs


def _check_run_against(v: AngleSequence, run: RunCondition) -> None:
    m = len(v)
    if not 0 <= run.start < m:
        raise ValueError("run start %d out of range" % run.start)
    if run.k < 0 or run.k > m - 2:
        raise ValueError("run of %d sectors does not fit %d creases" % (run.k + 1, m))
    val = v.cyclic(run.start)
    if any(v.cyclic(run.start + j) != val for j in range(run.k + 1)):
        raise ValueError("run sectors are not all equal in this sequence")
    expected = tuple((run.start + j) % m for j in range(run.k + 2))
    if run.creases != expected:
        raise ValueError("run creases do not match its start and length")


def run_validity(v: AngleSequence, run: RunCondition, mv: MVAssignment) -> bool:
    """Whether the labels fold the run's creases flat in isolation.

    ``mv`` may label the whole vertex (the run's creases are picked out) or
    just the run's ``k + 2`` creases in order. The tally condition is both
    necessary and sufficient for those creases folded on their own, the rest
    of the paper acting as an unfolded cone.
    """
    _check_run_against(v, run)
    if len(mv) == len(v):
        labels = [mv[c] for c in run.creases]
    elif len(mv) == run.k + 2:
        labels = list(mv.labels)
    else:
        raise ValueError(
            "assignment must label all %d creases or the run's %d"
            % (len(v), run.k + 2)
        )
    t = sum(1 if l is MVLabel.MOUNTAIN else -1 for l in labels)
    return t in run.allowed_tallies


def crimp_validity(v: AngleSequence, mv: MVAssignment) -> bool:
    """Decide whether an assignment folds flat, by repeated crimping.

    Finds a sector no larger than both neighbours whose bounding creases
    carry opposite labels, folds it away (merging the neighbours), and
    repeats. Two base cases: two creases remain (valid iff both angles and
    both labels agree) or all remaining sectors are equal (valid iff the
    remaining tally is +-2). Scans for the first eligible sector in index
    order; any eligible crimp preserves validity.
    """
    if not kawasaki(v):
        raise NotFlatFoldableError(
            "closure fails, so no assignment folds this vertex flat"
        )
    if len(mv) != len(v):
        raise ValueError("assignment length must match the number of creases")
    sectors = [Fraction(a) for a in v.angles]
    labels = list(mv.labels)
    while True:
        m = len(sectors)
        if m == 2:
            return sectors[0] == sectors[1] and labels[0] == labels[1]
        if len(set(sectors)) == 1:
            t = sum(1 if l is MVLabel.MOUNTAIN else -1 for l in labels)
            return abs(t) == 2
        for i in range(m):
            if (
                sectors[i - 1] >= sectors[i]
                and sectors[(i + 1) % m] >= sectors[i]
                and labels[i] != labels[(i + 1) % m]
            ):
                break
        else:
            return False
        # fold sector i away: rotate it to index 1, merge its neighbours,
        # drop the two creases around it
        rot = (i - 1) % m
        sectors = sectors[rot:] + sectors[:rot]
        labels = labels[rot:] + labels[:rot]
        sectors = [sectors[0] - sectors[1] + sectors[2]] + sectors[3:]
        labels = [labels[0]] + labels[3:]


def bounds(v: AngleSequence) -> tuple[int, int]:
    """Sharp lower/upper bounds on the number of valid assignments: 2^n and
    2*C(2n, n-1) for a vertex of degree 2n."""
    m = len(v)
    if m % 2 != 0:
        raise ParityError("bounds are defined for even degree, got %d" % m)
    n = m // 2
    return (2 ** n, 2 * comb(m, n - 1))


def _default_pick(seq: AngleSequence, runs: list[RunCondition]) -> RunCondition:
    # smallest angle first, then smallest start index: deterministic traces
    return min(runs, key=lambda r: (seq[r.start], r.start))


def _reduce_once(seq: AngleSequence, run: RunCondition) -> AngleSequence:
    """Apply one run reduction, rotating first so the run is contiguous."""
    rot = seq.rotated(run.start - 1)
    s = list(rot.angles)
    if run.k % 2 == 0:
        merged = Fraction(s[0]) - Fraction(s[1]) + Fraction(s[run.k + 2])
        residual = [merged] + s[run.k + 3 :]
    else:
        residual = [s[0]] + s[run.k + 2 :]
    return AngleSequence(tuple(residual))


def count_mv(v: AngleSequence, *, _pick=_default_pick) -> CountResult:
    """Count the valid mountain-valley assignments of a foldable vertex.

    All sectors equal is the closed-form base case 2*C(2n, n-1); otherwise a
    maximal equal-angle run bounded by strictly larger sectors is reduced --
    merging its neighbours when the run has an odd number of sectors,
    deleting it outright when even -- and the count is the binomial factor
    of the run times the count of the residual (which may be a cone). Every
    step is recorded in the trace. Exact integers throughout.
    """
    if not v.exact:
        raise ExactnessError("counting requires exact sector angles")
    if not kawasaki(v):
        raise NotFlatFoldableError("closure fails; this vertex has no flat foldings")
    limits = bounds(v)
    current = v
    product = 1
    trace: list[ReductionStep] = []
    while True:
        if len(set(current.angles)) == 1:
            m = len(current)
            base = 2 * comb(m, m // 2 - 1)
            break
        run = _pick(current, find_runs(current))
        if run.k % 2 == 0:
            factor = comb(run.k + 2, (run.k + 2) // 2)
        else:
            factor = comb(run.k + 2, (run.k + 1) // 2)
        residual = _reduce_once(current, run)
        assert kawasaki(residual), "reduction must preserve closure"
        trace.append(
            ReductionStep(start=run.start, length=run.k + 1, factor=factor, residual=residual)
        )
        product *= factor
        current = residual
    return CountResult(count=product * base, base=base, trace=tuple(trace), bounds=limits)
