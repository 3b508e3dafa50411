import pytest

from flatfold.core import CreasePattern
from flatfold.corpus import corpus_sequences


@pytest.fixture(scope="session")
def corpus200():
    """The full cross-validation corpus: 50 sequences per size 2/4/6/8."""
    return corpus_sequences(seed=20250810, per_size=50, sizes=(2, 4, 6, 8))


@pytest.fixture(scope="session")
def corpus_small():
    """A quick corpus for exhaustive per-assignment checks."""
    return corpus_sequences(seed=99, per_size=6, sizes=(2, 4, 6))


@pytest.fixture(scope="session")
def witness_pattern():
    """Three vertices around a triangle, every local check passing.

    Locally this pattern is unimpeachable: each star is an exact
    45-degree-multiple sequence with alternating sum zero. Whether it folds
    flat globally is exactly the question the tooling refuses to answer.
    """
    points = [
        (0, 0), (6, 0), (6, 6), (0, 6),      # border corners
        (2, 2), (4, 2), (3, 3),              # triangle A, B, C
        (0, 4), (2, 0), (4, 0), (6, 4),      # ray endpoints on the border
    ]
    creases = [
        (4, 5), (5, 6), (6, 4),              # triangle sides
        (4, 7), (4, 8),                      # rays from A
        (5, 9), (5, 10),                     # rays from B
        (6, 2), (6, 3),                      # rays from C to two corners
    ]
    return CreasePattern.build(points, creases, boundary=(0, 1, 2, 3))
