"""Leaf-labelled weighted trees and exact tree-metric realization.

Convention: a dissimilarity matrix is a tree matrix when the minimum of the
three pairings M_ij+M_kl, M_ik+M_jl, M_il+M_jk is attained at least twice
for every quadruple.  Such matrices are exactly the leaf-distance matrices
of trees whose internal edges carry nonpositive weights (pendant edges are
unrestricted).  Negating entries turns this into the classical four-point
condition with nonnegative internal weights, which is the orientation the
insertion algorithm below works in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .core import DissimilarityMatrix, format_decimal_or_ratio, frac


class NotTreeMatrixError(ValueError):
    """Raised when a four-point violation blocks a tree realization."""


def four_point_violation(m: DissimilarityMatrix) -> Optional[tuple[int, int, int, int]]:
    """First quadruple whose pairing minimum is attained only once, if any."""
    n = m.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for l in range(k + 1, n + 1):
                    p = m[(i, j)] + m[(k, l)]
                    q = m[(i, k)] + m[(j, l)]
                    r = m[(i, l)] + m[(j, k)]
                    lo = min(p, q, r)
                    if (p == lo) + (q == lo) + (r == lo) < 2:
                        return (i, j, k, l)
    return None


@dataclass
class WeightedTree:
    """A tree on leaves 1..n_leaves with rational edge weights.

    Internal vertices use labels above n_leaves.  Leaves have degree 1 and
    internal edges (both endpoints internal) must have weight <= 0.  Treat
    instances as immutable; builders in this module construct fresh ones.
    """

    n_leaves: int
    adjacency: dict[int, dict[int, Fraction]] = field(default_factory=dict)

    def vertices(self) -> list[int]:
        return sorted(self.adjacency)

    def leaves(self) -> list[int]:
        return list(range(1, self.n_leaves + 1))

    def is_leaf(self, v: int) -> bool:
        return 1 <= v <= self.n_leaves

    def edges(self) -> list[tuple[int, int, Fraction]]:
        out = []
        for u in sorted(self.adjacency):
            for v, w in sorted(self.adjacency[u].items()):
                if u < v:
                    out.append((u, v, w))
        return out

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def copy(self) -> "WeightedTree":
        return WeightedTree(self.n_leaves, {u: dict(nb) for u, nb in self.adjacency.items()})

    def validate(self) -> None:
        verts = self.vertices()
        if not verts:
            raise ValueError("empty tree")
        edge_count = sum(len(nb) for nb in self.adjacency.values()) // 2
        if edge_count != len(verts) - 1 or not self._connected():
            raise ValueError("not a connected acyclic graph")
        for leaf in self.leaves():
            if leaf not in self.adjacency or self.degree(leaf) != 1:
                raise ValueError(f"leaf {leaf} must be present with degree 1")
        for u, v, w in self.edges():
            if not self.is_leaf(u) and not self.is_leaf(v) and w > 0:
                raise ValueError(f"internal edge ({u},{v}) has positive weight {w}")

    def _connected(self) -> bool:
        verts = self.vertices()
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            u = stack.pop()
            for v in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == len(verts)

    def distances_from(self, source: int) -> dict[int, Fraction]:
        dist = {source: Fraction(0)}
        stack = [source]
        while stack:
            u = stack.pop()
            for v, w in self.adjacency[u].items():
                if v not in dist:
                    dist[v] = dist[u] + w
                    stack.append(v)
        return dist

    def leaf_distance_matrix(self) -> DissimilarityMatrix:
        n = self.n_leaves
        dists = {leaf: self.distances_from(leaf) for leaf in range(1, n)}
        return DissimilarityMatrix.from_function(
            n, lambda i, j: dists[min(i, j)][max(i, j)]
        )

    def simplified(self) -> "WeightedTree":
        """Contract zero-weight internal edges and unsplice degree-2 internals."""
        t = self.copy()
        changed = True
        while changed:
            changed = False
            for u, v, w in t.edges():
                if w == 0 and not t.is_leaf(u) and not t.is_leaf(v):
                    t._contract(u, v)
                    changed = True
                    break
            else:
                for v in list(t.adjacency):
                    if not t.is_leaf(v) and t.degree(v) == 2:
                        (a, wa), (b, wb) = t.adjacency[v].items()
                        del t.adjacency[v]
                        del t.adjacency[a][v]
                        del t.adjacency[b][v]
                        # Parallel edges cannot arise: a-v-b was a path in a tree.
                        t.adjacency[a][b] = wa + wb
                        t.adjacency[b][a] = wa + wb
                        changed = True
                        break
        return t

    def _contract(self, keep: int, drop: int) -> None:
        del self.adjacency[keep][drop]
        del self.adjacency[drop][keep]
        for nb, w in self.adjacency.pop(drop).items():
            # In a tree keep and nb cannot already be adjacent.
            del self.adjacency[nb][drop]
            self.adjacency[keep][nb] = w
            self.adjacency[nb][keep] = w

    def relabelled_leaves(self, mapping: dict[int, int], n_leaves: int) -> "WeightedTree":
        """Rename leaves through `mapping`; internal labels move above n_leaves."""
        internal = [v for v in self.vertices() if not self.is_leaf(v)]
        new_names = {v: n_leaves + k + 1 for k, v in enumerate(internal)}
        for old, new in mapping.items():
            new_names[old] = new
        adj: dict[int, dict[int, Fraction]] = {}
        for u, nb in self.adjacency.items():
            adj[new_names[u]] = {new_names[v]: w for v, w in nb.items()}
        return WeightedTree(n_leaves, adj)

    def to_newick(self) -> str:
        """Newick with branch lengths; exact values, decimal when terminating."""
        root = next((v for v in self.vertices() if not self.is_leaf(v)), None)
        if root is None:
            raise ValueError("tree has no internal vertex")

        def emit(v: int, parent: int) -> str:
            children = [u for u in sorted(self.adjacency[v]) if u != parent]
            if not children:
                return str(v)
            inner = ",".join(
                emit(u, v) + ":" + format_decimal_or_ratio(self.adjacency[v][u])
                for u in children
            )
            return f"({inner})"

        return emit(root, -1) + ";"


def _add_edge(adj: dict[int, dict[int, Fraction]], u: int, v: int, w: Fraction) -> None:
    adj.setdefault(u, {})[v] = w
    adj.setdefault(v, {})[u] = w


def star_tree(pendants: Sequence[Fraction]) -> WeightedTree:
    """Star with leaf i at distance pendants[i-1] from the single hub."""
    n = len(pendants)
    hub = n + 1
    adj: dict[int, dict[int, Fraction]] = {}
    for i, w in enumerate(pendants, start=1):
        _add_edge(adj, i, hub, frac(w))
    return WeightedTree(n, adj)


def realize_tree(m: DissimilarityMatrix) -> WeightedTree:
    """Build a weighted tree whose leaf distances equal `m` exactly.

    Works in the negated (classical) orientation: insert leaves one at a
    time, locating each attachment point by the smallest Gromov-type sum
    over pairs of placed leaves, then trying every split position along
    the host path and keeping the one that reproduces all distances.
    The exhaustive split trial sidesteps non-monotone cumulative lengths
    caused by negative pendant weights.
    """
    violation = four_point_violation(m)
    if violation is not None:
        raise NotTreeMatrixError(f"four-point condition fails on quadruple {violation}")
    n = m.n

    def d(i: int, j: int) -> Fraction:
        return -m[(i, j)]

    # Base: three leaves around a hub.
    next_id = n + 1
    tree = WeightedTree(n_leaves=n)
    hub = next_id
    next_id += 1
    _add_edge(tree.adjacency, 1, hub, (d(1, 2) + d(1, 3) - d(2, 3)) / 2)
    _add_edge(tree.adjacency, 2, hub, (d(1, 2) + d(2, 3) - d(1, 3)) / 2)
    _add_edge(tree.adjacency, 3, hub, (d(1, 3) + d(2, 3) - d(1, 2)) / 2)

    for x in range(4, n + 1):
        placed = list(range(1, x))
        best: Optional[tuple[Fraction, int, int]] = None
        for a_i in range(len(placed)):
            for b_i in range(a_i + 1, len(placed)):
                i, j = placed[a_i], placed[b_i]
                g = (d(i, x) + d(j, x) - d(i, j)) / 2
                if best is None or g < best[0]:
                    best = (g, i, j)
        assert best is not None
        alpha, i, j = best
        path = _tree_path(tree, i, j)
        u = d(i, x) - alpha  # distance from i to the attachment point
        if not _try_insert(tree, path, x, u, alpha, placed, d, next_id):
            raise NotTreeMatrixError("tree insertion failed; matrix is not a tree metric")
        next_id += 1

    for u in tree.adjacency:
        for v in tree.adjacency[u]:
            tree.adjacency[u][v] = -tree.adjacency[u][v]
    tree = tree.simplified()
    tree.validate()
    return tree


def _tree_path(tree: WeightedTree, i: int, j: int) -> list[int]:
    parent = {i: i}
    stack = [i]
    while stack:
        u = stack.pop()
        if u == j:
            break
        for v in tree.adjacency[u]:
            if v not in parent:
                parent[v] = u
                stack.append(v)
    path = [j]
    while path[-1] != i:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _try_insert(tree, path, x, u, alpha, placed, d, next_id) -> bool:
    cumulative = [Fraction(0)]
    for a, b in zip(path, path[1:]):
        cumulative.append(cumulative[-1] + tree.adjacency[a][b])
    for t in range(len(path) - 1):
        a, b = path[t], path[t + 1]
        delta = u - cumulative[t]
        saved = tree.adjacency[a][b]
        split = next_id
        # Split a-b at distance delta from a, hang x off the split point.
        del tree.adjacency[a][b]
        del tree.adjacency[b][a]
        _add_edge(tree.adjacency, a, split, delta)
        _add_edge(tree.adjacency, split, b, saved - delta)
        _add_edge(tree.adjacency, x, split, alpha)
        dist = tree.distances_from(x)
        if all(dist[leaf] == d(leaf, x) for leaf in placed):
            return True
        del tree.adjacency[x]
        del tree.adjacency[a][split]
        del tree.adjacency[b][split]
        del tree.adjacency[split]
        _add_edge(tree.adjacency, a, b, saved)
    return False


def embed_tree_block(
    block: DissimilarityMatrix,
    positions: Sequence[int],
    n: int,
    c,
) -> WeightedTree:
    """An n-leaf tree matching `block` on `positions`, other entries >= c.

    Realizes the block, then hangs the remaining leaves off one internal
    vertex with pendant weight max(c/2, c - nearest leaf distance), the
    same padding rule used for rank-one extensions.
    """
    c = frac(c)
    idx = list(positions)
    if len(idx) != block.n or sorted(set(idx)) != sorted(idx):
        raise ValueError("positions must be distinct and match the block size")
    if any(not 1 <= i <= n for i in idx) or n <= len(idx):
        raise ValueError("positions must sit strictly inside 1..n")
    small = realize_tree(block)
    tree = small.relabelled_leaves({k + 1: idx[k] for k in range(len(idx))}, n)
    anchor_new = next(v for v in tree.vertices() if not tree.is_leaf(v))
    nearest = min(tree.distances_from(anchor_new)[leaf] for leaf in idx)
    pendant = max(c / 2, c - nearest)
    for leaf in range(1, n + 1):
        if leaf not in idx:
            _add_edge(tree.adjacency, leaf, anchor_new, pendant)
    tree.validate()
    return tree


def extend_tree(m: DissimilarityMatrix, n: int, c) -> DissimilarityMatrix:
    """Extend a tree matrix to n x n keeping the block; new entries >= c."""
    if n <= m.n:
        raise ValueError("target dimension must exceed the current one")
    tree = embed_tree_block(m, list(range(1, m.n + 1)), n, c)
    return tree.leaf_distance_matrix()


def extend_tree_with_witness(
    m: DissimilarityMatrix, n: int, c
) -> tuple[DissimilarityMatrix, WeightedTree]:
    tree = embed_tree_block(m, list(range(1, m.n + 1)), n, c)
    return tree.leaf_distance_matrix(), tree


def two_leaf_block_tree(i: int, j: int, value, n: int, c) -> WeightedTree:
    """Tree with distance(i,j) = value and every other distance >= c."""
    c = frac(c)
    value = frac(value)
    hub = n + 1
    adj: dict[int, dict[int, Fraction]] = {}
    _add_edge(adj, i, hub, value / 2)
    _add_edge(adj, j, hub, value / 2)
    pendant = max(c / 2, c - value / 2)
    for leaf in range(1, n + 1):
        if leaf not in (i, j):
            _add_edge(adj, leaf, hub, pendant)
    return WeightedTree(n, adj)
