"""Automorphism groups and isomorphism testing by individualization-refinement.

The search fixes one path down the refinement tree (always individualizing the
smallest vertex of the first non-singleton cell).  Walking that path bottom-up,
level ``l`` asks, for every vertex ``w`` of the target cell, whether some
automorphism fixes the earlier base points and sends the base point to ``w``.
Vertices already in the orbit of the generators found so far are skipped, so
the generators found form a strong generating set along the path and the group
order is the product of the basic orbit lengths.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .digraph import Digraph
from .errors import SearchBudgetExceeded
from .permgroup import Permutation, PermutationGroup

Cells = list  # list[list[int]]


class _Refiner:
    """Equitable refinement of ordered partitions of one digraph."""

    def __init__(self, graph: Digraph):
        adj = graph.adjacency
        self.n = graph.n
        self.out = adj.astype(np.int32)
        self.inn = np.ascontiguousarray(self.out.T)
        loops = adj.diagonal().astype(np.int64)
        self.start_keys = np.stack([loops, adj.sum(axis=1), adj.sum(axis=0)], axis=1)

    def initial(self) -> tuple[Cells, tuple]:
        groups: dict[tuple, list[int]] = {}
        for v, key in enumerate(map(tuple, self.start_keys.tolist())):
            groups.setdefault(key, []).append(v)
        keys = sorted(groups)
        cells = [groups[k] for k in keys]
        head = tuple((k, len(groups[k])) for k in keys)
        cells, trace = self.refine(cells)
        return cells, (head, trace)

    def refine(self, cells: Cells) -> tuple[Cells, tuple]:
        n = self.n
        trace = []
        while True:
            color = np.empty(n, dtype=np.int64)
            for ci, cell in enumerate(cells):
                color[cell] = ci
            onehot = np.zeros((n, len(cells)), dtype=np.int32)
            onehot[np.arange(n), color] = 1
            sig = np.concatenate([self.out @ onehot, self.inn @ onehot], axis=1)
            new_cells = []
            split = False
            for ci, cell in enumerate(cells):
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                sub = sig[cell]
                if (sub == sub[0]).all():
                    new_cells.append(cell)
                    continue
                groups: dict[tuple, list[int]] = {}
                for v, key in zip(cell, map(tuple, sub.tolist())):
                    groups.setdefault(key, []).append(v)
                keys = sorted(groups)
                trace.append((ci, tuple((k, len(groups[k])) for k in keys)))
                new_cells.extend(groups[k] for k in keys)
                split = True
            cells = new_cells
            if not split:
                reps = [cell[0] for cell in cells]
                trace.append(sig[reps].tobytes())
                return cells, tuple(trace)

    def individualize(self, cells: Cells, ci: int, v: int) -> tuple[Cells, tuple]:
        cell = cells[ci]
        rest = [w for w in cell if w != v]
        return self.refine(cells[:ci] + [[v], rest] + cells[ci + 1:])


def _first_nonsingleton(cells: Cells) -> int:
    for ci, cell in enumerate(cells):
        if len(cell) > 1:
            return ci
    return -1


@dataclass(frozen=True)
class AutResult:
    group: PermutationGroup
    order: int
    base: tuple[int, ...]

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self.group.generators


class _PathSearch:
    """One refinement path of ``left``; finds leaves of ``right`` that match it."""

    def __init__(self, left: Digraph, right: Digraph, budget_ms: float | None):
        self.left = _Refiner(left)
        self.right = self.left if right is left else _Refiner(right)
        self.right_adj = right.adjacency
        self.left_adj = left.adjacency
        self.deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0

        cells, trace = self.left.initial()
        self.root_trace = trace
        self.levels: list[Cells] = [cells]
        self.traces: list[tuple] = [trace]
        self.target: list[int] = []
        self.base: list[int] = []
        while True:
            ci = _first_nonsingleton(cells)
            if ci < 0:
                break
            v = min(cells[ci])
            self.target.append(ci)
            self.base.append(v)
            cells, trace = self.left.individualize(cells, ci, v)
            self.levels.append(cells)
            self.traces.append(trace)
        self.depth = len(self.base)
        self.leaf = [cell[0] for cell in self.levels[-1]]

    def _tick(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SearchBudgetExceeded("search budget exhausted")

    def _leaf_map(self, cells: Cells) -> np.ndarray | None:
        perm = np.empty(len(self.leaf), dtype=np.int64)
        perm[self.leaf] = [cell[0] for cell in cells]
        if (self.right_adj[np.ix_(perm, perm)] == self.left_adj).all():
            return perm
        return None

    def descend(self, level: int, cells: Cells) -> np.ndarray | None:
        """Search below a right-hand node whose trace matched ``levels[level]``."""
        self._tick()
        if level == self.depth:
            return self._leaf_map(cells)
        ci = self.target[level]
        for u in cells[ci]:
            child, trace = self.right.individualize(cells, ci, u)
            if trace != self.traces[level + 1]:
                continue
            found = self.descend(level + 1, child)
            if found is not None:
                return found
        return None


def _orbit(point: int, gens: list[np.ndarray]) -> set[int]:
    orbit = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = int(g[x])
            if y not in orbit:
                orbit.add(y)
                stack.append(y)
    return orbit


def automorphism_group(graph: Digraph, budget_ms: float | None = None) -> AutResult:
    """Generators and exact order of Aut(graph).

    Raises SearchBudgetExceeded when ``budget_ms`` elapses first.
    """
    search = _PathSearch(graph, graph, budget_ms)
    gens: list[np.ndarray] = []
    order = 1
    for level in reversed(range(search.depth)):
        cells = search.levels[level]
        ci = search.target[level]
        b = search.base[level]
        orbit = _orbit(b, gens)
        failed: set[int] = set()
        for w in sorted(cells[ci]):
            if w in orbit or w in failed:
                continue
            child, trace = search.left.individualize(cells, ci, w)
            found = None
            if trace == search.traces[level + 1]:
                found = search.descend(level + 1, child)
            if found is not None:
                gens.append(found)
                orbit = _orbit(b, gens)
            else:
                failed |= _orbit(w, gens)
        order *= len(orbit)
    group = PermutationGroup(graph.n, [Permutation(g.tolist()) for g in gens], order=order)
    return AutResult(group=group, order=order, base=tuple(search.base))


def find_isomorphism(a: Digraph, b: Digraph, budget_ms: float | None = None) -> Permutation | None:
    """A vertex bijection ``p`` with ``a.relabel(p) == b``, or None."""
    if a.n != b.n or a.arc_count != b.arc_count:
        return None
    adj_a, adj_b = a.adjacency, b.adjacency
    if sorted(adj_a.sum(axis=1)) != sorted(adj_b.sum(axis=1)):
        return None
    if sorted(adj_a.sum(axis=0)) != sorted(adj_b.sum(axis=0)):
        return None
    search = _PathSearch(a, b, budget_ms)
    cells, trace = search.right.initial()
    if trace != search.root_trace:
        return None
    found = search.descend(0, cells)
    return None if found is None else Permutation(found.tolist())


def are_isomorphic(a: Digraph, b: Digraph, budget_ms: float | None = None) -> bool:
    return find_isomorphism(a, b, budget_ms) is not None
