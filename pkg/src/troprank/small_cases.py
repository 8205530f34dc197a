"""Closed-form rank classifiers for 3x3 symmetric and 5x5 dissimilarity
matrices, with explicit two-term decompositions as certificates.

The 5x5 star tree classifier rests on the 12-term degree-5 polynomial
whose terms are the pentagons (5-cycles) on five labels; the 5x5 tree
classifier on its 22-term extension that also carries the ten triangle
terms x_ab x_bc x_ca x_de^2.  In both cases the matrix has rank 2 exactly
when the minimum lands on a suitably-shaped term, and a relabeling search
(120 permutations at most) replaces the "without loss of generality"
normalizations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import (
    DissimilarityMatrix,
    Position,
    SymmetricMatrix,
    apply_permutation,
    pad_generator,
    principal_submatrix,
    star_generator,
)
from .decomposition import (
    Decomposition,
    STAR,
    SYM,
    TREE,
    rank1_summand,
    star_summand,
    tree_summand,
    verify,
)
from .membership import (
    TropicalMonomial,
    is_rank1_symmetric,
    is_star_tree,
    is_tree_matrix,
    is_tropically_singular_3x3,
)
from .deficiency import FIVE_CYCLE, classify_petersen
from .rank import (
    ConstructionError,
    INFINITE,
    finiteness_violation,
    normalize_diagonal,
    star_upper_decomposition,
    symmetric_upper_decomposition,
)
from .trees import embed_tree_block, realize_tree

PENTAGON = "pentagon"
TRIANGLE = "triangle"


def _edge(i: int, j: int) -> Position:
    return (i, j) if i < j else (j, i)


def _five_cycles() -> list[frozenset[Position]]:
    seen = set()
    out = []
    for perm in itertools.permutations((2, 3, 4, 5)):
        cycle = (1,) + perm
        edges = frozenset(
            _edge(cycle[k], cycle[(k + 1) % 5]) for k in range(5)
        )
        if edges not in seen:
            seen.add(edges)
            out.append(edges)
    assert len(out) == 12
    return out


FIVE_CYCLES: tuple[frozenset[Position], ...] = tuple(_five_cycles())


@dataclass(frozen=True)
class PolynomialTerm:
    kind: str  # pentagon | triangle
    monomial: TropicalMonomial

    def label(self) -> str:
        return f"{self.kind}:{self.monomial.label()}"


def pentad_terms() -> list[PolynomialTerm]:
    """The 12 pentagon terms, one per 5-cycle on the labels 1..5."""
    return [
        PolynomialTerm(PENTAGON, TropicalMonomial.from_positions(sorted(edges)))
        for edges in FIVE_CYCLES
    ]


def p22_terms() -> list[PolynomialTerm]:
    """The 22 degree-5 terms in which every label appears exactly twice."""
    terms = pentad_terms()
    for trio in itertools.combinations(range(1, 6), 3):
        a, b, c = trio
        d, e = sorted(set(range(1, 6)) - set(trio))
        positions = [_edge(a, b), _edge(b, c), _edge(a, c), (d, e), (d, e)]
        terms.append(PolynomialTerm(TRIANGLE, TropicalMonomial.from_positions(positions)))
    assert len(terms) == 22
    return terms


@dataclass(frozen=True)
class TermEvaluation:
    terms: tuple[PolynomialTerm, ...]
    values: tuple[Fraction, ...]

    @property
    def minimum(self) -> Fraction:
        return min(self.values)

    def minimizers(self) -> list[PolynomialTerm]:
        lo = self.minimum
        return [t for t, v in zip(self.terms, self.values) if v == lo]

    def to_json_dict(self) -> dict:
        return {
            "terms": [
                {"term": t.label(), "value": str(v), "minimal": v == self.minimum}
                for t, v in zip(self.terms, self.values)
            ]
        }


def evaluate_pentad(m: DissimilarityMatrix) -> TermEvaluation:
    terms = tuple(pentad_terms())
    return TermEvaluation(terms, tuple(t.monomial.evaluate(m) for t in terms))


def evaluate_p22(m: DissimilarityMatrix) -> TermEvaluation:
    terms = tuple(p22_terms())
    return TermEvaluation(terms, tuple(t.monomial.evaluate(m) for t in terms))


# --- 3x3 symmetric ----------------------------------------------------------


@dataclass(frozen=True)
class Sym3Result:
    value: object  # 1, 2, 3 or math.inf
    decomposition: Optional[Decomposition]
    infinite_witness: Optional[Position] = None


def sym3_rank(m: SymmetricMatrix) -> Sym3Result:
    """Rank of a 3x3 symmetric matrix: infinite, or 1, 2, 3 exactly.

    Rank <= 2 is equivalent to tropical singularity together with the
    finiteness inequalities; the two-term witness pins a zero off-diagonal
    entry of the diagonal-normalized matrix.
    """
    if m.n != 3:
        raise ValueError("this classifier handles n = 3 only")
    violation = finiteness_violation(m)
    if violation is not None:
        return Sym3Result(INFINITE, None, violation)
    if is_rank1_symmetric(m):
        gen = tuple(m[(i, i)] / 2 for i in (1, 2, 3))
        dec = Decomposition(SYM, (rank1_summand(gen),))
        assert verify(m, dec)
        return Sym3Result(1, dec)
    if is_tropically_singular_3x3(m):
        dec = _sym3_two_term(m)
        return Sym3Result(2, dec)
    dec = symmetric_upper_decomposition(m)
    assert len(dec) == 3
    return Sym3Result(3, dec)


def _sym3_two_term(m: SymmetricMatrix) -> Decomposition:
    normalized, offsets = normalize_diagonal(m)
    pair = next(
        (
            (i, j)
            for i, j in itertools.combinations((1, 2, 3), 2)
            if normalized[(i, j)] == 0
        ),
        None,
    )
    assert pair is not None, "singular normalized matrix must have a zero entry"
    k = next(v for v in (1, 2, 3) if v not in pair)
    i, j = pair
    c = 1 + 2 * m.max_abs_entry()
    for _ in range(40):
        first = pad_generator({i: Fraction(0), j: Fraction(0)}, 3, c)
        second = [Fraction(0)] * 3
        second[i - 1] = normalized[(i, k)]
        second[j - 1] = normalized[(j, k)]
        second[k - 1] = Fraction(0)
        summands = []
        for gen in (first, tuple(second)):
            summands.append(
                rank1_summand([gen[t] + offsets[t] for t in range(3)])
            )
        dec = Decomposition(SYM, tuple(summands))
        if verify(m, dec):
            return dec
        c *= 2
    raise ConstructionError("two-term witness failed at every padding scale")


# --- 5x5 star tree ----------------------------------------------------------

CANONICAL_PENTAGON = frozenset({(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)})
CANONICAL_SWAPPED = frozenset({(1, 3), (2, 3), (2, 4), (4, 5), (1, 5)})


@dataclass(frozen=True)
class Star5Witness:
    trivial: bool  # star tree matrix, no pentad reasoning needed
    pair: Optional[tuple[frozenset[Position], frozenset[Position]]] = None
    relabeling: Optional[tuple[int, ...]] = None  # image of 1..5


def differ_by_transposition(t1: frozenset, t2: frozenset) -> bool:
    """Do the two pentagon terms differ by transposing two labels?"""
    for a, b in itertools.combinations(range(1, 6), 2):
        perm = list(range(1, 6))
        perm[a - 1], perm[b - 1] = b, a
        if _relabel_edges(t1, perm) == t2:
            return True
    return False


def _relabel_edges(edges: frozenset, perm: Sequence[int]) -> frozenset:
    return frozenset(_edge(perm[i - 1], perm[j - 1]) for i, j in edges)


def star5_rank2_test(m: DissimilarityMatrix) -> tuple[bool, Optional[Star5Witness]]:
    """Star tree rank <= 2 for n = 5, by the pentagon-minimizer criterion.

    Rank-one inputs short-circuit.  Otherwise some minimizing pair of
    pentagon terms must differ by a transposition and, after relabeling
    the pair onto the canonical one, satisfy
    M_14 + M_23 <= M_12 + M_34 = M_13 + M_24.  Every minimizing pair is
    tried, which is the permissive reading when more than two terms tie.
    """
    if m.n != 5:
        raise ValueError("this classifier handles n = 5 only")
    if is_star_tree(m):
        return True, Star5Witness(trivial=True)
    evaluation = evaluate_pentad(m)
    minimizers = [frozenset(t.monomial.positions()) for t in evaluation.minimizers()]
    canon = {CANONICAL_PENTAGON, CANONICAL_SWAPPED}
    for t1, t2 in itertools.combinations(minimizers, 2):
        if not differ_by_transposition(t1, t2):
            continue
        for perm in itertools.permutations(range(1, 6)):
            if {_relabel_edges(t1, perm), _relabel_edges(t2, perm)} != canon:
                continue
            mm = apply_permutation(m, perm)
            lhs = mm[(1, 4)] + mm[(2, 3)]
            a1 = mm[(1, 2)] + mm[(3, 4)]
            a2 = mm[(1, 3)] + mm[(2, 4)]
            if a1 == a2 and lhs <= a1:
                return True, Star5Witness(False, (t1, t2), perm)
    return False, None


def _unpermute_vector(v: Sequence[Fraction], perm: Sequence[int]) -> tuple[Fraction, ...]:
    # v lives in the relabeled frame; coordinate i of the original matrix
    # corresponds to frame coordinate perm[i-1].
    return tuple(v[perm[i - 1] - 1] for i in range(1, len(perm) + 1))


def star5_rank2_decompose(
    m: DissimilarityMatrix, witness: Optional[Star5Witness] = None
) -> Decomposition:
    """The two-star witness behind a passing rank-2 test."""
    if witness is None:
        ok, witness = star5_rank2_test(m)
        if not ok:
            raise ValueError("matrix fails the rank-2 criterion")
    assert witness is not None
    if witness.trivial:
        v = star_generator(m)
        dec = Decomposition(STAR, (star_summand(v), star_summand(v)))
        assert verify(m, dec)
        return dec
    perm = witness.relabeling
    assert perm is not None
    mm = apply_permutation(m, perm)
    a = mm[(1, 2)] + mm[(3, 4)]
    block = DissimilarityMatrix.from_rows(
        [
            [None, mm[(1, 2)], mm[(1, 3)], a - mm[(2, 3)]],
            [mm[(1, 2)], None, mm[(2, 3)], mm[(2, 4)]],
            [mm[(1, 3)], mm[(2, 3)], None, mm[(3, 4)]],
            [a - mm[(2, 3)], mm[(2, 4)], mm[(3, 4)], None],
        ]
    )
    u = star_generator(block)  # raises if the forced block is not rank one
    w1 = (mm[(1, 4)] + mm[(1, 5)] - mm[(4, 5)]) / 2
    w = (
        w1,
        mm[(2, 5)] - (mm[(1, 5)] - w1),
        mm[(3, 5)] - (mm[(1, 5)] - w1),
        mm[(1, 4)] - w1,
        mm[(1, 5)] - w1,
    )
    c = 1 + 2 * m.max_abs_entry()
    for _ in range(40):
        first = u + (max(c / 2, c - min(u)),)
        dec = Decomposition(
            STAR,
            (
                star_summand(_unpermute_vector(first, perm)),
                star_summand(_unpermute_vector(w, perm)),
            ),
        )
        if verify(m, dec):
            return dec
        c *= 2
    raise ConstructionError("two-star witness failed at every padding scale")


# --- 5x5 tree ---------------------------------------------------------------


@dataclass(frozen=True)
class Tree5Result:
    value: int
    decomposition: Optional[Decomposition]
    five_cycle: Optional[tuple[frozenset[Position], ...]] = None
    triangle: Optional[PolynomialTerm] = None

    def to_json_dict(self) -> dict:
        out: dict = {"rank": self.value}
        if self.five_cycle is not None:
            out["five_cycle"] = [sorted(map(list, e)) for e in self.five_cycle]
        if self.triangle is not None:
            out["triangle_term"] = self.triangle.label()
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition.to_json_dict()
        return out


def tree5_rank(m: DissimilarityMatrix) -> Tree5Result:
    """Tree rank of a 5x5 matrix: 1, 2 or 3, with certificates.

    Rank 1 is the four-point condition; rank <= 2 holds exactly when the
    22-term polynomial is minimized at a triangle term; otherwise the
    deficiency graph is a 5-cycle and the rank is 3.
    """
    if m.n != 5:
        raise ValueError("this classifier handles n = 5 only")
    if is_tree_matrix(m):
        dec = Decomposition(TREE, (tree_summand(realize_tree(m)),))
        assert verify(m, dec)
        return Tree5Result(1, dec)
    evaluation = evaluate_p22(m)
    triangles = [t for t in evaluation.minimizers() if t.kind == TRIANGLE]
    if triangles:
        dec = tree5_rank2_decompose(m, triangles[0])
        return Tree5Result(2, dec, triangle=triangles[0])
    classification = classify_petersen(m)
    assert classification.tag == FIVE_CYCLE
    stars = star_upper_decomposition(m)
    dec = Decomposition(TREE, stars.summands)
    assert verify(m, dec)
    return Tree5Result(3, dec, five_cycle=tuple(sorted(classification.edges, key=sorted)))


def tree5_rank2_decompose(
    m: DissimilarityMatrix, triangle: Optional[PolynomialTerm] = None
) -> Decomposition:
    """Two tree summands when the 22-term polynomial picks a triangle.

    Normalizes the triangle onto {3,4,5} with repeated pair {1,2}, orients
    by the two cyclic inequalities (a relabeling always exists), fills the
    completion entries forced by equality on rows 1 and 2, and pairs the
    result with an extension of the {3,4,5} block.
    """
    if triangle is None:
        evaluation = evaluate_p22(m)
        candidates = [t for t in evaluation.minimizers() if t.kind == TRIANGLE]
        if not candidates:
            raise ValueError("no triangle term minimizes the polynomial")
        triangle = candidates[0]
    doubled = next(p for p, e in triangle.monomial.exponents if e == 2)
    trio = tuple(sorted(set(range(1, 6)) - set(doubled)))
    perm_found = None
    for trio_image in itertools.permutations((3, 4, 5)):
        for pair_image in itertools.permutations((1, 2)):
            perm = [0] * 5
            for src, dst in zip(trio, trio_image):
                perm[src - 1] = dst
            for src, dst in zip(sorted(doubled), pair_image):
                perm[src - 1] = dst
            mm = apply_permutation(m, tuple(perm))
            ok_b = mm[(1, 5)] + mm[(2, 4)] <= mm[(1, 4)] + mm[(2, 5)]
            ok_c = mm[(1, 3)] + mm[(2, 5)] <= mm[(1, 5)] + mm[(2, 3)]
            if ok_b and ok_c:
                perm_found = tuple(perm)
                break
        if perm_found:
            break
    assert perm_found is not None, "orientation relabeling must exist"
    mm = apply_permutation(m, perm_found)
    t_rows = _triangle_complement_matrix(mm)
    assert is_tree_matrix(t_rows)
    assert all(t_rows[p] >= mm[p] for p in mm.positions())
    inverse = [0] * 5
    for i, img in enumerate(perm_found, start=1):
        inverse[img - 1] = i
    back = {v: inverse[v - 1] for v in range(1, 6)}
    first_tree = realize_tree(t_rows).relabelled_leaves(back, 5)
    block = principal_submatrix(mm, (3, 4, 5))
    c = 1 + 2 * m.max_abs_entry()
    for _ in range(40):
        second_tree = embed_tree_block(block, (3, 4, 5), 5, c).relabelled_leaves(back, 5)
        dec = Decomposition(
            TREE, (tree_summand(first_tree), tree_summand(second_tree))
        )
        if verify(m, dec):
            return dec
        c *= 2
    raise ConstructionError("two-tree witness failed at every padding scale")


def _triangle_complement_matrix(mm: DissimilarityMatrix) -> DissimilarityMatrix:
    completed = {
        (3, 4): mm[(2, 4)] + mm[(1, 3)] - mm[(1, 2)],
        (3, 5): mm[(2, 5)] + mm[(1, 3)] - mm[(1, 2)],
        (4, 5): mm[(1, 5)] + mm[(2, 4)] - mm[(1, 2)],
    }
    return DissimilarityMatrix.from_function(
        5, lambda i, j: completed[(i, j)] if (i, j) in completed else mm[(i, j)]
    )
