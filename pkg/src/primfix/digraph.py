"""Dense digraphs (loops allowed) and the operations the constructions are built from."""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import ClosureExceedsCap, Irregular, NotAGraph
from .permgroup import DEFAULT_CAP, Permutation, PermutationGroup, is_transitive


class Digraph:
    """A digraph on vertices ``0..n-1`` given by a boolean adjacency matrix.

    Instances are immutable; equality is exact matrix equality.
    """

    __slots__ = ("_adj",)

    def __init__(self, adjacency):
        adj = np.array(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1] or adj.shape[0] < 1:
            raise ValueError(f"adjacency must be a nonempty square matrix, got shape {adj.shape}")
        adj.setflags(write=False)
        self._adj = adj

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in arcs:
            adj[u, v] = True
        return cls(adj)

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    def arcs(self) -> list[tuple[int, int]]:
        """Arcs in ascending ``(u, v)`` order."""
        us, vs = np.nonzero(self._adj)
        return list(zip(us.tolist(), vs.tolist()))

    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs())

    @property
    def arc_count(self) -> int:
        return int(self._adj.sum())

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def out_neighbours(self, v: int) -> list[int]:
        return np.nonzero(self._adj[v])[0].tolist()

    def is_graph(self) -> bool:
        return bool((self._adj == self._adj.T).all())

    def has_loops(self) -> bool:
        return bool(self._adj.diagonal().any())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Digraph) and self._adj.shape == other._adj.shape \
            and bool((self._adj == other._adj).all())

    def __hash__(self) -> int:
        return hash((self.n, np.packbits(self._adj).tobytes()))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arc_count})"

    def relabel(self, perm: Permutation | Sequence[int]) -> "Digraph":
        """Image under the vertex map ``v -> perm[v]``."""
        p = np.asarray(perm.images if isinstance(perm, Permutation) else perm)
        adj = np.zeros_like(self._adj)
        adj[np.ix_(p, p)] = self._adj
        return Digraph(adj)

    def is_automorphism(self, perm: Permutation | Sequence[int]) -> bool:
        p = np.asarray(perm.images if isinstance(perm, Permutation) else perm)
        return bool((self._adj[np.ix_(p, p)] == self._adj).all())


def loop_graph(m: int) -> Digraph:
    return Digraph(np.eye(m, dtype=bool))


def complete_graph(m: int) -> Digraph:
    return Digraph(~np.eye(m, dtype=bool))


def empty_graph(m: int) -> Digraph:
    return Digraph(np.zeros((m, m), dtype=bool))


def cycle_graph(m: int) -> Digraph:
    """Undirected m-cycle."""
    adj = np.zeros((m, m), dtype=bool)
    for v in range(m):
        adj[v, (v + 1) % m] = adj[(v + 1) % m, v] = True
    return Digraph(adj)


def direct_product(factors: Sequence[Digraph], cap: int = DEFAULT_CAP) -> Digraph:
    """Tensor product; vertex ``(u_1..u_r)`` has index with coordinate 0 most significant."""
    if not factors:
        raise ValueError("direct product needs at least one factor")
    size = 1
    for f in factors:
        size *= f.n
    if size > cap:
        raise ClosureExceedsCap(f"product has {size} vertices, cap {cap}")
    return Digraph(reduce(np.kron, (f.adjacency.astype(np.uint8) for f in factors)))


def union(a: Digraph, b: Digraph) -> Digraph:
    if a.n != b.n:
        raise ValueError(f"vertex counts differ: {a.n} vs {b.n}")
    return Digraph(a.adjacency | b.adjacency)


def complement(g: Digraph) -> Digraph:
    """Loopless complement: ``(u, v)``, ``u != v``, is an arc iff it is not one of ``g``."""
    adj = ~g.adjacency
    np.fill_diagonal(adj, False)
    return Digraph(adj)


def out_valency(g: Digraph) -> int:
    degs = g.adjacency.sum(axis=1)
    if (degs != degs[0]).any():
        raise Irregular(f"out-valencies differ: {sorted(set(degs.tolist()))}")
    return int(degs[0])


def is_connected(g: Digraph) -> bool:
    """Weak connectivity of the underlying undirected graph (loops ignored)."""
    sym = g.adjacency | g.adjacency.T
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    frontier = seen.copy()
    while frontier.any():
        reach = sym[frontier].any(axis=0) & ~seen
        seen |= reach
        frontier = reach
    return bool(seen.all())


def is_vertex_transitive_under(g: Digraph, group: PermutationGroup) -> bool:
    """True iff every generator of ``group`` is an automorphism and ``group`` is transitive."""
    if group.degree != g.n:
        raise ValueError("group degree differs from vertex count")
    return all(g.is_automorphism(h) for h in group.generators) and is_transitive(group)


def srg_parameters(g: Digraph) -> tuple[int, int, int, int] | None:
    """``(v, d, lambda, mu)`` if ``g`` is strongly regular, else None.

    Complete and edgeless graphs are treated as degenerate and give None.
    """
    adj = g.adjacency
    if not g.is_graph() or g.has_loops():
        raise NotAGraph("srg_parameters needs a loopless undirected graph")
    n = g.n
    degs = adj.sum(axis=1)
    if (degs != degs[0]).any():
        return None
    d = int(degs[0])
    if d == 0 or d == n - 1:
        return None
    a = adj.astype(np.int64)
    common = a @ a
    off = ~np.eye(n, dtype=bool)
    on_edges = common[adj]
    on_non = common[~adj & off]
    if (on_edges != on_edges[0]).any() or (on_non != on_non[0]).any():
        return None
    return n, d, int(on_edges[0]), int(on_non[0])


def srg_feasible(params: tuple[int, int, int, int]) -> bool:
    v, d, lam, mu = params
    return (v - d - 1) * mu == d * (d - lam - 1)
