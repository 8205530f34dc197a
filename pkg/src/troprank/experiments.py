"""Exploratory harnesses for the open questions.  Nothing here asserts;
each run reports what it saw.

* rank7_search: hunts for 10x10 matrices whose chromatic lower bound
  reaches 7, which would settle whether the n-3 bound is tight at n=10.
* submatrix_conjecture: samples 7x7 matrices and compares "tree rank <= 2"
  with "every 6x6 principal submatrix has tree rank <= 2".
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional

from .core import DissimilarityMatrix, principal_submatrix
from .decomposition import TREE
from .deficiency import build_deficiency, chromatic_number
from .membership import PLUECKER
from .rank import exact_rank


@dataclass(frozen=True)
class Rank7Candidate:
    trial: int
    chromatic_bound: int
    rows: list

    def to_json_dict(self) -> dict:
        return {
            "trial": self.trial,
            "chromatic_bound": self.chromatic_bound,
            "rows": self.rows,
        }


def rank7_search(trials: int, seed: int, n: int = 10, low: int = 0, high: int = 9):
    """Random n x n integer matrices whose deficiency graph needs >= 7 colors.

    Returns (candidates, best_bound_seen).  The tree rank of a candidate
    would be at least its chromatic bound; none is asserted here.
    """
    rng = random.Random(seed)
    best = 0
    candidates = []
    for trial in range(trials):
        m = DissimilarityMatrix.from_function(n, lambda i, j: rng.randint(low, high))
        chi = chromatic_number(build_deficiency(m, PLUECKER))
        best = max(best, int(chi))
        if chi >= 7:
            rows = [[None if x is None else str(x) for x in row] for row in m.to_rows()]
            candidates.append(Rank7Candidate(trial, int(chi), rows))
    return candidates, best


@dataclass(frozen=True)
class SubmatrixConjectureReport:
    trials: int
    rank_le_2_count: int
    agree_count: int
    counterexamples: int

    def to_json_dict(self) -> dict:
        return {
            "trials": self.trials,
            "rank_le_2": self.rank_le_2_count,
            "agreements": self.agree_count,
            "counterexamples": self.counterexamples,
        }


def _tree_rank_at_most_2(m: DissimilarityMatrix) -> Optional[bool]:
    result = exact_rank(m, TREE, budget=2)
    if result.status == "interval":
        return False if result.lower > 2 else None
    return result.value <= 2


def submatrix_conjecture(trials: int, seed: int) -> SubmatrixConjectureReport:
    """Compare 7x7 tree rank <= 2 against all 6x6 principal submatrices.

    A counterexample would be a matrix whose submatrices all have rank at
    most 2 while the matrix itself does not.
    """
    rng = random.Random(seed)
    le2 = agree = counter = 0
    for _ in range(trials):
        m = DissimilarityMatrix.from_function(7, lambda i, j: rng.randint(0, 6))
        subs_ok = all(
            _tree_rank_at_most_2(principal_submatrix(m, idx))
            for idx in itertools.combinations(range(1, 8), 6)
        )
        whole = _tree_rank_at_most_2(m)
        if whole:
            le2 += 1
        if whole == subs_ok:
            agree += 1
        if subs_ok and whole is False:
            counter += 1
    return SubmatrixConjectureReport(trials, le2, agree, counter)
