"""Min-plus primitives: exact scalars, the two matrix spaces, rank-one
generators, the diagonal-dropping projection, and block extensions.

Entries are exact rationals (``fractions.Fraction``), so every tie in a
minimum is decidable and all membership/decomposition checks below reduce
to exact equality.  Matrices are immutable; one value is stored per
unordered index pair.  Indices are 1-based in the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

Scalar = Fraction


def frac(value) -> Fraction:
    """Coerce an int, string ("7", "-3/4") or Fraction to an exact rational.

    Floats are rejected: rounding would make min-ties undecidable.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Render as "p/q", or plain integer when the denominator is 1."""
    return str(q)


def format_decimal_or_ratio(q: Fraction) -> str:
    """Decimal string when the expansion terminates, else "p/q".

    Used for Newick branch lengths, where fractional notation is unusual
    but exactness must be preserved.
    """
    den = q.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return str(q)
    digits = max(twos, fives)
    if digits == 0:
        return str(q.numerator)
    scaled = q * 10**digits
    sign = "-" if scaled < 0 else ""
    text = str(abs(int(scaled))).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


Position = tuple[int, int]


def symmetric_positions(n: int) -> list[Position]:
    """All unordered pairs {i, j} with i <= j (diagonal included)."""
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def offdiag_positions(n: int) -> list[Position]:
    """All unordered pairs {i, j} with i < j."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


class _PairIndexed:
    """Shared storage/indexing for the two matrix spaces."""

    __slots__ = ()

    n: int
    values: tuple[Fraction, ...]

    def _index(self, i: int, j: int) -> int:
        raise NotImplementedError

    def __getitem__(self, ij: Position) -> Fraction:
        i, j = ij
        return self.values[self._index(i, j)]

    def positions(self) -> list[Position]:
        raise NotImplementedError

    def items(self) -> Iterator[tuple[Position, Fraction]]:
        for pos in self.positions():
            yield pos, self[pos]

    def max_abs_entry(self) -> Fraction:
        return max((abs(v) for v in self.values), default=Fraction(0))


def _check_bounds(n: int, i: int, j: int) -> None:
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"index pair ({i},{j}) out of range for n={n}")


@dataclass(frozen=True)
class SymmetricMatrix(_PairIndexed):
    """An n x n symmetric matrix stored as its upper triangle (diagonal kept)."""

    n: int
    values: tuple[Fraction, ...]

    kind = "symmetric"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("symmetric matrix needs n >= 1")
        expected = self.n * (self.n + 1) // 2
        if len(self.values) != expected:
            raise ValueError(f"expected {expected} entries, got {len(self.values)}")

    def _index(self, i: int, j: int) -> int:
        _check_bounds(self.n, i, j)
        if i > j:
            i, j = j, i
        return (i - 1) * (2 * self.n - i + 2) // 2 + (j - i)

    def positions(self) -> list[Position]:
        return symmetric_positions(self.n)

    @classmethod
    def from_function(cls, n: int, entry: Callable[[int, int], object]) -> "SymmetricMatrix":
        vals = tuple(frac(entry(i, j)) for i in range(1, n + 1) for j in range(i, n + 1))
        return cls(n, vals)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "SymmetricMatrix":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("rows must form a square matrix")
        grid = [[frac(x) for x in row] for row in rows]
        for i in range(n):
            for j in range(i + 1, n):
                if grid[i][j] != grid[j][i]:
                    raise ValueError(f"not symmetric at ({i + 1},{j + 1})")
        return cls.from_function(n, lambda i, j: grid[i - 1][j - 1])

    def to_rows(self) -> list[list[Fraction]]:
        return [[self[(i, j)] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]


@dataclass(frozen=True)
class DissimilarityMatrix(_PairIndexed):
    """A map from unordered pairs of [n] to rationals; no diagonal exists."""

    n: int
    values: tuple[Fraction, ...]

    kind = "dissimilarity"

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("dissimilarity matrix needs n >= 3")
        expected = self.n * (self.n - 1) // 2
        if len(self.values) != expected:
            raise ValueError(f"expected {expected} entries, got {len(self.values)}")

    def _index(self, i: int, j: int) -> int:
        _check_bounds(self.n, i, j)
        if i > j:
            i, j = j, i
        if i == j:
            raise IndexError("dissimilarity matrices have no diagonal entries")
        return (i - 1) * (2 * self.n - i) // 2 + (j - i - 1)

    def positions(self) -> list[Position]:
        return offdiag_positions(self.n)

    @classmethod
    def from_function(cls, n: int, entry: Callable[[int, int], object]) -> "DissimilarityMatrix":
        vals = tuple(frac(entry(i, j)) for i in range(1, n + 1) for j in range(i + 1, n + 1))
        return cls(n, vals)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "DissimilarityMatrix":
        """Rows with arbitrary diagonal cells (ignored; may be None or '*')."""
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("rows must form a square matrix")
        grid = [[None if (x is None or x == "*") else frac(x) for x in row] for row in rows]
        for i in range(n):
            for j in range(i + 1, n):
                if grid[i][j] is None or grid[j][i] is None:
                    raise ValueError(f"missing off-diagonal entry at ({i + 1},{j + 1})")
                if grid[i][j] != grid[j][i]:
                    raise ValueError(f"not symmetric at ({i + 1},{j + 1})")
        return cls.from_function(n, lambda i, j: grid[i - 1][j - 1])

    def to_rows(self) -> list[list[Union[Fraction, None]]]:
        return [
            [None if i == j else self[(i, j)] for j in range(1, self.n + 1)]
            for i in range(1, self.n + 1)
        ]


Matrix = Union[SymmetricMatrix, DissimilarityMatrix]


def trop_sum(a: Matrix, b: Matrix) -> Matrix:
    """Entrywise minimum.  Both operands must live in the same space."""
    if type(a) is not type(b):
        raise TypeError("cannot mix symmetric and dissimilarity matrices")
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    return type(a)(a.n, tuple(min(x, y) for x, y in zip(a.values, b.values)))


def trop_sum_all(matrices: Sequence[Matrix]) -> Matrix:
    if not matrices:
        raise ValueError("empty tropical sum has no finite value")
    out = matrices[0]
    for m in matrices[1:]:
        out = trop_sum(out, m)
    return out


def as_vector(values: Iterable[object]) -> tuple[Fraction, ...]:
    return tuple(frac(v) for v in values)


def rank_one_symmetric(v: Sequence[object]) -> SymmetricMatrix:
    """The symmetric matrix with entry {i,j} equal to v_i + v_j."""
    w = as_vector(v)
    return SymmetricMatrix.from_function(len(w), lambda i, j: w[i - 1] + w[j - 1])


def star_matrix(v: Sequence[object]) -> DissimilarityMatrix:
    """Off-diagonal part of the rank-one matrix of v: a star tree matrix."""
    w = as_vector(v)
    return DissimilarityMatrix.from_function(len(w), lambda i, j: w[i - 1] + w[j - 1])


def project(m: SymmetricMatrix) -> DissimilarityMatrix:
    """Drop the diagonal.  Defined for n >= 3 (smaller spaces have no target)."""
    if not isinstance(m, SymmetricMatrix):
        raise TypeError("projection applies to symmetric matrices")
    if m.n < 3:
        raise ValueError("projection needs n >= 3")
    return DissimilarityMatrix.from_function(m.n, lambda i, j: m[(i, j)])


def rank_one_generator(m: SymmetricMatrix) -> tuple[Fraction, ...]:
    """Recover v with m = v^T (+) v, or raise ValueError.

    The generator is forced: v_i = m_ii / 2.
    """
    v = tuple(m[(i, i)] / 2 for i in range(1, m.n + 1))
    for i in range(1, m.n + 1):
        for j in range(i + 1, m.n + 1):
            if m[(i, j)] != v[i - 1] + v[j - 1]:
                raise ValueError("matrix is not rank one")
    return v


def is_rank_one(m: SymmetricMatrix) -> bool:
    try:
        rank_one_generator(m)
    except ValueError:
        return False
    return True


def star_generator(m: DissimilarityMatrix) -> tuple[Fraction, ...]:
    """Recover v with m = projection of v^T (+) v, or raise ValueError."""
    v1 = (m[(1, 2)] + m[(1, 3)] - m[(2, 3)]) / 2
    v = [v1] + [m[(1, j)] - v1 for j in range(2, m.n + 1)]
    for i in range(2, m.n + 1):
        for j in range(i + 1, m.n + 1):
            if m[(i, j)] != v[i - 1] + v[j - 1]:
                raise ValueError("matrix is not a star tree matrix")
    return tuple(v)


def _pad_value(v: Sequence[Fraction], c: Fraction) -> Fraction:
    # Weakest padding that keeps every new entry at least c: both the
    # cross terms v_i + c' and the doubled term 2c' must clear c.
    return max(c / 2, c - min(v))


def pad_generator(values: dict[int, Fraction], n: int, c) -> tuple[Fraction, ...]:
    """Complete a partial generator to length n, padding unset coordinates.

    The pad is max(c/2, c - min of the set values), so every entry of the
    resulting rank-one matrix outside the set block is >= c.
    """
    c = frac(c)
    fixed = [frac(x) for x in values.values()]
    pad = max(c / 2, c - min(fixed)) if fixed else c
    return tuple(frac(values[i]) if i in values else pad for i in range(1, n + 1))


def extend_rank_one(m: SymmetricMatrix, n: int, c) -> SymmetricMatrix:
    """Extend an m x m rank-one matrix to n x n, new entries all >= c.

    The generator gains n - m trailing copies of max(c/2, c - min_i v_i).
    """
    if n <= m.n:
        raise ValueError("target dimension must exceed the current one")
    v = rank_one_generator(m)
    c = frac(c)
    w = v + (_pad_value(v, c),) * (n - m.n)
    return rank_one_symmetric(w)


def extend_star_tree(m: DissimilarityMatrix, n: int, c) -> DissimilarityMatrix:
    """Star-tree analogue of extend_rank_one, acting through the projection."""
    if n <= m.n:
        raise ValueError("target dimension must exceed the current one")
    v = star_generator(m)
    c = frac(c)
    w = v + (_pad_value(v, c),) * (n - m.n)
    return star_matrix(w)


def apply_permutation(m: Matrix, perm: Sequence[int]) -> Matrix:
    """Relabel index i as perm[i-1]; entry {i,j} moves to {perm i, perm j}."""
    if sorted(perm) != list(range(1, m.n + 1)):
        raise ValueError("not a permutation of 1..n")
    inverse = [0] * m.n
    for i, image in enumerate(perm, start=1):
        inverse[image - 1] = i
    return type(m).from_function(m.n, lambda i, j: m[(inverse[i - 1], inverse[j - 1])])


def principal_submatrix(m: Matrix, indices: Sequence[int]) -> Matrix:
    """Submatrix on the given (ordered, distinct) indices, relabelled 1..k."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        raise ValueError("indices must be distinct")
    return type(m).from_function(len(idx), lambda a, b: m[(idx[a - 1], idx[b - 1])])
