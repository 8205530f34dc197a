"""Rank decompositions and their exact verification.

A decomposition is a list of witness matrices, each generated by a row
vector (rank-one / star summands) or a weighted tree.  Verification is the
whole point of the constructions elsewhere: every summand must pass its
membership test and the tropical sum must equal the target entry for
entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .core import (
    DissimilarityMatrix,
    Matrix,
    Position,
    SymmetricMatrix,
    format_rational,
    rank_one_symmetric,
    star_matrix,
    trop_sum_all,
)
from .membership import is_rank1_symmetric, is_star_tree, is_tree_matrix
from .trees import WeightedTree

SYM = "sym"
STAR = "star"
TREE = "tree"
NOTIONS = (SYM, STAR, TREE)

KIND_RANK1 = "rank1-symmetric"
KIND_STAR = "star"
KIND_TREE = "tree"


@dataclass(frozen=True)
class Summand:
    kind: str
    matrix: Matrix
    generator: Union[tuple[Fraction, ...], WeightedTree]

    def to_json_dict(self) -> dict:
        out: dict = {"kind": self.kind, "matrix": _rows_json(self.matrix)}
        if isinstance(self.generator, WeightedTree):
            out["newick"] = self.generator.to_newick()
        else:
            out["generator"] = [format_rational(x) for x in self.generator]
        return out


@dataclass(frozen=True)
class Decomposition:
    notion: str
    summands: tuple[Summand, ...]

    def __len__(self) -> int:
        return len(self.summands)

    def matrices(self) -> list[Matrix]:
        return [s.matrix for s in self.summands]

    def to_json_dict(self) -> dict:
        return {
            "notion": self.notion,
            "size": len(self.summands),
            "summands": [s.to_json_dict() for s in self.summands],
        }


def _rows_json(m: Matrix) -> list[list[Optional[str]]]:
    return [
        [None if x is None else format_rational(x) for x in row] for row in m.to_rows()
    ]


def _vec(v: Sequence) -> tuple[Fraction, ...]:
    from .core import as_vector

    return as_vector(v)


def rank1_summand(v: Sequence) -> Summand:
    return Summand(KIND_RANK1, rank_one_symmetric(v), _vec(v))


def star_summand(v: Sequence) -> Summand:
    return Summand(KIND_STAR, star_matrix(v), _vec(v))


def tree_summand(tree: WeightedTree) -> Summand:
    return Summand(KIND_TREE, tree.leaf_distance_matrix(), tree)


def membership_test_for(notion: str):
    if notion == SYM:
        return is_rank1_symmetric
    if notion == STAR:
        return is_star_tree
    if notion == TREE:
        return is_tree_matrix
    raise ValueError(f"unknown rank notion {notion!r}; expected one of {NOTIONS}")


def space_for(notion: str):
    return SymmetricMatrix if notion == SYM else DissimilarityMatrix


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    failure: Optional[str] = None
    summand_index: Optional[int] = None
    position: Optional[Position] = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json_dict(self) -> dict:
        out: dict = {"ok": self.ok}
        if not self.ok:
            out["failure"] = self.failure
            if self.summand_index is not None:
                out["summand"] = self.summand_index + 1
            if self.position is not None:
                out["position"] = list(self.position)
        return out


def verify_matrices(m: Matrix, matrices: Sequence[Matrix], notion: str) -> VerificationReport:
    """Membership of every summand matrix plus exact tropical-sum equality."""
    if not isinstance(m, space_for(notion)):
        return VerificationReport(False, "matrix lives in the wrong space")
    test = membership_test_for(notion)
    if not matrices:
        return VerificationReport(False, "empty decomposition")
    for idx, summand in enumerate(matrices):
        if type(summand) is not type(m) or summand.n != m.n:
            return VerificationReport(False, "summand has mismatched shape", idx)
        if not test(summand):
            return VerificationReport(False, "summand fails its membership test", idx)
    total = trop_sum_all(list(matrices))
    for pos in m.positions():
        if total[pos] != m[pos]:
            return VerificationReport(
                False,
                f"tropical sum disagrees with the target at {pos}",
                None,
                pos,
            )
    return VerificationReport(True)


def verify(m: Matrix, decomposition: Decomposition) -> VerificationReport:
    """Membership of every summand plus exact tropical-sum equality."""
    return verify_matrices(m, decomposition.matrices(), decomposition.notion)
