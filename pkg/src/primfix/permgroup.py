"""Permutations, permutation groups and the product action of wreath products.

Points are ``0..n-1``. Permutations act on the right: ``compose(p, q)`` first
applies ``p`` and then ``q``, so ``compose(p, q)(i) == q(p(i))``.

Groups are kept as generator lists and are only materialized (breadth-first
closure, hard element cap) when something needs the full element set, such as
the minimal degree.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ClosureExceedsCap, NotTransitive, TrivialGroup

DEFAULT_CAP = 10**7


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image list."""

    __slots__ = ("_images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if not images:
            raise ValueError("a permutation needs degree >= 1")
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self._images = images

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        """Build from disjoint cycles, e.g. ``from_cycles(6, (0, 1, 2), (3, 4))``."""
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if a in seen or not 0 <= a < degree:
                    raise ValueError(f"bad cycle {cyc} for degree {degree}")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + tuple(cyc[:1])):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    def __call__(self, point: int) -> int:
        return self._images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={self.degree})"

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self._images):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._images))

    def support(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self._images) if i != j)

    def fixed_count(self) -> int:
        return sum(1 for i, j in enumerate(self._images) if i == j)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self._images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self._images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self._images[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def as_array(self) -> np.ndarray:
        return np.asarray(self._images, dtype=np.int64)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation(qi[i] for i in p.images)


def support(p: Permutation) -> frozenset[int]:
    return p.support()


def fixed_count(p: Permutation) -> int:
    return p.fixed_count()


def _point_dtype(degree: int):
    if degree <= 1 << 8:
        return np.uint8
    if degree <= 1 << 16:
        return np.uint16
    return np.uint32


class PermutationGroup:
    """Group generated by permutations of a common degree.

    ``order`` may be supplied when it is already known exactly (the
    automorphism search computes it from its stabilizer chain); otherwise it is
    obtained by materializing the closure.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = (),
                 order: int | None = None):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != group degree {degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self._order = order
        self._elements: np.ndarray | None = None
        self._orbits: list[tuple[int, ...]] | None = None

    @classmethod
    def from_elements(cls, degree: int, elements: Iterable[Permutation]) -> "PermutationGroup":
        """Group from a full (closed) element list; keeps a small generating set."""
        elements = list(elements)
        gens: list[Permutation] = []
        span: set[tuple[int, ...]] = {tuple(range(degree))}
        for e in elements:
            if e.images in span:
                continue
            gens.append(e)
            span = {tuple(int(x) for x in row) for row in _closure(degree, gens, len(elements) + 1)}
        group = cls(degree, gens)
        if len(span) != len(set(e.images for e in elements)):
            raise ValueError("element list is not closed under composition")
        return group

    def __repr__(self) -> str:
        gens = ", ".join(g.cycle_string() for g in self.generators) or "()"
        return f"PermutationGroup(degree={self.degree}, gens=[{gens}])"

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = len(self.elements())
        return self._order

    def order_known(self) -> bool:
        return self._order is not None

    def elements(self, cap: int = DEFAULT_CAP) -> np.ndarray:
        """All elements as an ``(order, degree)`` array of images, identity first."""
        if self._elements is None:
            if self._order is not None and self._order > cap:
                raise ClosureExceedsCap(f"group order {self._order} exceeds cap {cap}")
            self._elements = _closure(self.degree, self.generators, cap)
            if self._order is not None and self._order != len(self._elements):
                raise AssertionError("closure size disagrees with known order")
            self._order = len(self._elements)
        return self._elements

    def iter_elements(self, cap: int = DEFAULT_CAP) -> Iterable[Permutation]:
        for row in self.elements(cap):
            yield Permutation(row.tolist())

    def contains(self, p: Permutation) -> bool:
        target = np.asarray(p.images, dtype=self.elements().dtype)
        return bool((self.elements() == target).all(axis=1).any())

    def orbits(self) -> list[tuple[int, ...]]:
        if self._orbits is None:
            uf = UnionFind(self.degree)
            for g in self.generators:
                for i, j in enumerate(g.images):
                    uf.union(i, j)
            self._orbits = uf.blocks()
        return self._orbits


def _closure(degree: int, gens: Sequence[Permutation], cap: int) -> np.ndarray:
    dtype = _point_dtype(degree)
    ident = np.arange(degree, dtype=dtype)
    gen_arrays = [np.asarray(g.images, dtype=dtype) for g in gens]
    seen = {ident.tobytes()}
    rows = [ident]
    frontier = [ident]
    while frontier:
        block = np.stack(frontier)
        frontier = []
        for g in gen_arrays:
            prod = g[block]
            for row in prod:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    rows.append(row)
                    frontier.append(row)
                    if len(rows) > cap:
                        raise ClosureExceedsCap(f"closure exceeds {cap} elements")
    return np.stack(rows)


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        return True

    def blocks(self) -> list[tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(tuple(b) for b in groups.values())


def generate(degree: int, gens: Iterable[Permutation], cap: int = DEFAULT_CAP) -> PermutationGroup:
    """Materialize ``<gens>``; raises ClosureExceedsCap past ``cap`` elements."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    group = PermutationGroup(degree, gens)
    group.elements(cap)
    return group


def orbits(group: PermutationGroup) -> list[tuple[int, ...]]:
    return group.orbits()


def is_transitive(group: PermutationGroup) -> bool:
    return len(group.orbits()) == 1


def minimal_block(group: PermutationGroup, alpha: int, beta: int) -> list[tuple[int, ...]]:
    """Finest block system in which ``alpha`` and ``beta`` share a block."""
    uf = UnionFind(group.degree)
    gens = [g.images for g in group.generators]
    uf.union(alpha, beta)
    queue = deque([(alpha, beta)])
    while queue:
        x, y = queue.popleft()
        for g in gens:
            gx, gy = g[x], g[y]
            if uf.union(gx, gy):
                queue.append((gx, gy))
    return uf.blocks()


def is_primitive(group: PermutationGroup) -> bool:
    """True iff the (transitive) group preserves no nontrivial block system."""
    if not is_transitive(group):
        raise NotTransitive("primitivity is only defined for transitive groups")
    if group.degree <= 2:
        return True
    for beta in range(1, group.degree):
        if len(minimal_block(group, 0, beta)) > 1:
            return False
    return True


def is_regular(group: PermutationGroup) -> bool:
    if not is_transitive(group):
        return False
    if group.order_known():
        return group.order == group.degree
    # A transitive group has order >= degree; stop the closure as soon as it overshoots.
    try:
        elems = _closure(group.degree, group.generators, group.degree)
    except ClosureExceedsCap:
        return False
    return len(elems) == group.degree


def minimal_degree(group: PermutationGroup, cap: int = DEFAULT_CAP) -> tuple[int, Permutation]:
    """Minimum support size over nonidentity elements, with a witness.

    The witness is the first element of minimal support in closure order.
    """
    elems = group.elements(cap)
    if len(elems) == 1:
        raise TrivialGroup("minimal degree of the trivial group is undefined")
    moved = (elems != np.arange(group.degree, dtype=elems.dtype)).sum(axis=1)
    moved[0] = group.degree + 1
    idx = int(np.argmin(moved))
    return int(moved[idx]), Permutation(elems[idx].tolist())


# --------------------------------------------------------------------------
# Standard groups
# --------------------------------------------------------------------------

def symmetric_group(n: int) -> PermutationGroup:
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, (0, 1)))
    if n >= 3:
        gens.append(Permutation.from_cycles(n, tuple(range(n))))
    return PermutationGroup(n, gens, order=math.factorial(n))


def alternating_group(n: int) -> PermutationGroup:
    gens = [Permutation.from_cycles(n, (0, 1, i)) for i in range(2, n)]
    return PermutationGroup(n, gens, order=max(1, math.factorial(n) // 2))


def cyclic_group(n: int) -> PermutationGroup:
    gens = [Permutation.from_cycles(n, tuple(range(n)))] if n >= 2 else []
    return PermutationGroup(n, gens, order=n)


def trivial_group(n: int) -> PermutationGroup:
    return PermutationGroup(n, [], order=1)


def klein_four() -> PermutationGroup:
    return PermutationGroup(4, [Permutation.from_cycles(4, (0, 1), (2, 3)),
                                Permutation.from_cycles(4, (0, 2), (1, 3))], order=4)


# --------------------------------------------------------------------------
# Product action
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TupleCodec:
    """Mixed-radix bijection between ``0..base**r-1`` and tuples in ``range(base)**r``.

    Coordinate 0 is the most significant digit, so index order is
    lexicographic tuple order (the order of ``itertools.product``).
    """

    base: int
    r: int

    @property
    def size(self) -> int:
        return self.base ** self.r

    def encode(self, t: Sequence[int]) -> int:
        if len(t) != self.r:
            raise ValueError(f"expected a {self.r}-tuple, got {t}")
        idx = 0
        for x in t:
            if not 0 <= x < self.base:
                raise ValueError(f"entry {x} out of range for base {self.base}")
            idx = idx * self.base + x
        return idx

    def decode(self, idx: int) -> tuple[int, ...]:
        if not 0 <= idx < self.size:
            raise ValueError(f"index {idx} out of range")
        out = []
        for _ in range(self.r):
            idx, x = divmod(idx, self.base)
            out.append(x)
        return tuple(reversed(out))

    def all_tuples(self) -> np.ndarray:
        """``(size, r)`` array whose row ``i`` decodes index ``i``."""
        if self.r == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.indices((self.base,) * self.r).reshape(self.r, -1)
        return grids.T.astype(np.int64)

    def weights(self) -> np.ndarray:
        return self.base ** np.arange(self.r - 1, -1, -1, dtype=np.int64)


def _check_size(base: int, r: int, cap: int) -> None:
    if base ** r > cap:
        raise ClosureExceedsCap(f"{base}**{r} points exceeds cap {cap}")


def coordinate_permutation(h: Permutation, base: int) -> Permutation:
    """Image of ``h`` in the rank-r action on ``range(base)**r``.

    Coordinate ``j`` of a tuple moves to position ``h(j)``, i.e. the image of
    ``(x_1..x_r)`` is ``(x_{1h^-1}, .., x_{rh^-1})``.
    """
    codec = TupleCodec(base, h.degree)
    tuples = codec.all_tuples()
    moved = np.empty_like(tuples)
    moved[:, list(h.images)] = tuples
    return Permutation((moved @ codec.weights()).tolist())


def coordinatewise_permutation(k: Permutation, coord: int, r: int) -> Permutation:
    """``k`` acting on coordinate ``coord`` of ``range(k.degree)**r``, identity elsewhere."""
    codec = TupleCodec(k.degree, r)
    tuples = codec.all_tuples()
    tuples[:, coord] = np.asarray(k.images)[tuples[:, coord]]
    return Permutation((tuples @ codec.weights()).tolist())


def rank_r_action(top: PermutationGroup, x_size: int, cap: int = DEFAULT_CAP) -> PermutationGroup:
    """Action of ``top`` (on r points) on ``range(x_size)**r`` by permuting coordinates."""
    if x_size < 1:
        raise ValueError("x_size must be >= 1")
    _check_size(x_size, top.degree, cap)
    gens = [coordinate_permutation(h, x_size) for h in top.generators]
    order = top._order if x_size >= 2 else None
    return PermutationGroup(x_size ** top.degree, gens, order=order)


@dataclass(frozen=True)
class WreathAction:
    inner: PermutationGroup
    top: PermutationGroup
    group: PermutationGroup
    codec: TupleCodec

    @property
    def product_degree(self) -> int:
        return self.codec.size


def wreath_product_action(inner: PermutationGroup, top: PermutationGroup,
                          cap: int = DEFAULT_CAP) -> WreathAction:
    """``inner`` wr ``top`` in product action on ``Delta**r`` (``r = top.degree``)."""
    m, r = inner.degree, top.degree
    if m < 2:
        raise ValueError("inner group must have degree >= 2")
    _check_size(m, r, cap)
    gens = [coordinatewise_permutation(k, c, r) for c in range(r) for k in inner.generators]
    gens += [coordinate_permutation(h, m) for h in top.generators]
    order = None
    if inner.order_known() and top.order_known():
        order = inner.order ** r * top.order
    group = PermutationGroup(m ** r, gens, order=order)
    return WreathAction(inner, top, group, TupleCodec(m, r))


# --------------------------------------------------------------------------
# Orbitals
# --------------------------------------------------------------------------

def orbitals(group: PermutationGroup) -> list[frozenset[tuple[int, int]]]:
    """Orbits on ordered pairs, sorted by their smallest pair (diagonal first)."""
    if not is_transitive(group):
        raise NotTransitive("orbitals are computed for transitive groups only")
    return pair_orbits(group)


def pair_orbits(group: PermutationGroup) -> list[frozenset[tuple[int, int]]]:
    """Orbits on ordered pairs for any group, sorted by smallest pair."""
    n = group.degree
    uf = UnionFind(n * n)
    for g in group.generators:
        img = g.images
        for a in range(n):
            ga = img[a] * n
            base = a * n
            for b in range(n):
                uf.union(base + b, ga + img[b])
    classes: dict[int, list[tuple[int, int]]] = {}
    for idx in range(n * n):
        classes.setdefault(uf.find(idx), []).append(divmod(idx, n))
    return [frozenset(arcs) for arcs in sorted(classes.values(), key=lambda c: c[0])]


def permutational_rank(group: PermutationGroup) -> int:
    return len(orbitals(group))


def is_self_paired(arcs: Iterable[tuple[int, int]]) -> bool:
    arcs = set(arcs)
    return all((b, a) in arcs for a, b in arcs)


def all_permutations(r: int) -> list[Permutation]:
    """Every element of Sym(r) in lexicographic image order."""
    return [Permutation(p) for p in itertools.permutations(range(r))]
