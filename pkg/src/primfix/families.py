"""Graph families: Johnson, squashed Johnson, generalised Hamming, merged product action."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .digraph import Digraph, complement, complete_graph, direct_product, loop_graph
from .errors import NotHomogeneous
from .jset import JSet, is_homogeneous
from .permgroup import (DEFAULT_CAP, Permutation, PermutationGroup, TupleCodec,
                        pair_orbits, rank_r_action, symmetric_group)


# --------------------------------------------------------------------------
# Vertex sets
# --------------------------------------------------------------------------

def k_subsets(m: int, k: int) -> list[tuple[int, ...]]:
    """``k``-subsets of ``{1..m}`` in colexicographic order."""
    return sorted(itertools.combinations(range(1, m + 1), k), key=lambda s: s[::-1])


def half_partitions(m: int) -> list[tuple[int, ...]]:
    """Partitions of ``{1..2m}`` into two ``m``-sets, each named by its part containing 1."""
    return [s for s in k_subsets(2 * m, m) if s[0] == 1]


def _incidence(sets: Sequence[tuple[int, ...]], m: int) -> np.ndarray:
    inc = np.zeros((len(sets), m), dtype=np.int64)
    for row, s in enumerate(sets):
        inc[row, [x - 1 for x in s]] = 1
    return inc


# --------------------------------------------------------------------------
# Johnson-type graphs
# --------------------------------------------------------------------------

def johnson(m: int, k: int, i: int) -> Digraph:
    """Distance-i Johnson graph J(m, k, i): k-sets adjacent iff they share ``k - i`` points."""
    if not (1 <= k <= m and 0 <= i <= k):
        raise ValueError(f"need 1 <= k <= m and 0 <= i <= k, got m={m}, k={k}, i={i}")
    inc = _incidence(k_subsets(m, k), m)
    return Digraph(inc @ inc.T == k - i)


def squashed_johnson(two_m: int, m: int, i: int) -> Digraph:
    """QJ(2m, m, i): J(2m, m, i) with complementary m-sets identified.

    Classes ``[X]``, ``[Y]`` are adjacent iff ``|X & Y|`` is ``m - i`` or ``i``.
    The family uses ``0 <= i <= m // 2``; larger ``i`` is accepted because
    QJ(2m, m, i) and QJ(2m, m, m - i) coincide.
    """
    if two_m != 2 * m or m < 2 or not 0 <= i <= m:
        raise ValueError(f"need two_m = 2m, m >= 2, 0 <= i <= m; got {two_m}, {m}, {i}")
    inc = _incidence(half_partitions(m), two_m)
    inter = inc @ inc.T
    return Digraph((inter == m - i) | (inter == i))


def johnson_family(m: int, k: int) -> list[Digraph]:
    return [johnson(m, k, i) for i in range(k + 1)]


def squashed_family(m: int) -> list[Digraph]:
    return [squashed_johnson(2 * m, m, i) for i in range(m // 2 + 1)]


def _induced(points: Sequence[tuple[int, ...]], gens: Sequence[Permutation], normalize) -> list[Permutation]:
    index = {p: n for n, p in enumerate(points)}
    out = []
    for g in gens:
        img = g.images
        out.append(Permutation(index[normalize(tuple(sorted(img[x - 1] + 1 for x in p)))]
                               for p in points))
    return out


def group_on_subsets(group: PermutationGroup, k: int) -> PermutationGroup:
    """Induced action of ``group`` (on ``m`` points) on k-subsets, in ``k_subsets`` order."""
    points = k_subsets(group.degree, k)
    return PermutationGroup(len(points), _induced(points, group.generators, lambda s: s))


def group_on_half_partitions(group: PermutationGroup) -> PermutationGroup:
    """Induced action of ``group`` (on ``2m`` points) on ``half_partitions(m)``."""
    two_m = group.degree
    points = half_partitions(two_m // 2)
    full = set(range(1, two_m + 1))

    def rep(s):
        return s if s[0] == 1 else tuple(sorted(full - set(s)))

    return PermutationGroup(len(points), _induced(points, group.generators, rep))


# --------------------------------------------------------------------------
# Merged product action digraphs
# --------------------------------------------------------------------------

def merged_product_action(r: int, graphs: Sequence[Digraph], jset: JSet,
                          cap: int = DEFAULT_CAP) -> Digraph:
    """Union over ``(j_1..j_r)`` in ``jset`` of ``graphs[j_1] x ... x graphs[j_r]``."""
    if not graphs:
        raise ValueError("need at least the loop graph")
    m = graphs[0].n
    if any(g.n != m for g in graphs):
        raise ValueError("all factor digraphs must share the same vertex count")
    if graphs[0] != loop_graph(m):
        raise ValueError("graphs[0] must be the loop graph L_m")
    if jset.r != r:
        raise ValueError(f"J-set arity {jset.r} != r = {r}")
    if m ** r > cap:
        raise ValueError(f"{m}**{r} vertices exceeds cap {cap}")
    adj = np.zeros((m ** r, m ** r), dtype=bool)
    for t in jset.sorted_tuples():
        if max(t) >= len(graphs):
            raise IndexError(f"index tuple {t} refers past graph {len(graphs) - 1}")
        adj |= direct_product([graphs[j] for j in t], cap).adjacency
    return Digraph(adj)


def generalized_hamming(r: int, m: int, jset: JSet) -> Digraph:
    """H(r, m, J) = merged product action over ``{L_m, K_m}``; ``J`` must be homogeneous."""
    if jset.k != 1:
        raise ValueError("generalised Hamming graphs take J inside {0,1}^r")
    if not is_homogeneous(jset):
        raise NotHomogeneous(f"J = {jset.sorted_tuples()} is not homogeneous")
    return merged_product_action(r, [loop_graph(m), complete_graph(m)], jset)


def unit_vectors(r: int) -> JSet:
    """``{e_1, .., e_r}``; with ``{L_m, K_m}`` this gives the Hamming graph H(r, m)."""
    return JSet.of(r, 1, [tuple(int(c == i) for c in range(r)) for i in range(r)])


def hamming_graph(r: int, m: int) -> Digraph:
    return generalized_hamming(r, m, unit_vectors(r))


# --------------------------------------------------------------------------
# Orbital digraphs of wreath products
# --------------------------------------------------------------------------

def orbital_digraphs_wreath(k_orbitals: Sequence[Digraph], top: PermutationGroup) -> list[Digraph]:
    """Orbital digraphs of ``K wr H`` from those of ``K`` (diagonal first).

    One digraph per orbit of ``top`` on index tuples, ordered by the orbit's
    lexicographically smallest tuple.
    """
    r = top.degree
    x_size = len(k_orbitals)
    codec = TupleCodec(x_size, r)
    action = rank_r_action(top, x_size)
    out = []
    for orbit in action.orbits():
        jset = JSet(r, x_size - 1, frozenset(codec.decode(i) for i in orbit))
        out.append(merged_product_action(r, k_orbitals, jset))
    return out


def orbitals_match(group: PermutationGroup, k_orbitals: Sequence[Digraph],
                   top: PermutationGroup) -> bool:
    """Whether ``group``'s orbital partition equals the one predicted for ``K wr H``."""
    m, r = k_orbitals[0].n, top.degree
    if group.degree != m ** r:
        raise ValueError(f"group degree {group.degree} != {m}**{r}")
    actual = {frozenset(o) for o in pair_orbits(group)}
    predicted = {g.arc_set() for g in orbital_digraphs_wreath(k_orbitals, top)}
    return actual == predicted


def orbital_digraphs(group: PermutationGroup) -> list[Digraph]:
    """Orbital digraphs of a transitive group, ordered by smallest arc."""
    from .permgroup import orbitals

    return [Digraph.from_arcs(group.degree, arcs) for arcs in orbitals(group)]


# --------------------------------------------------------------------------
# Family descriptors
# --------------------------------------------------------------------------

class Family(str, Enum):
    HAMMING = "GeneralisedHamming"
    JOHNSON = "Johnson"
    SQUASHED = "SquashedJohnson"
    SRG = "SrgProduct"


@dataclass(frozen=True)
class FamilyDescriptor:
    """A member of one of the classified families.

    ``m`` is the Johnson/Hamming ground-set size, the half size for squashed
    Johnson graphs (QJ(2m, m, .)), and the table row parameter for SRG rows
    (``q`` for row ``"i"``).
    """

    tag: Family
    r: int
    m: int
    jset: JSet
    k: int | None = None
    row: str | None = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tag", Family(self.tag))
        if self.jset.r != self.r:
            raise ValueError("J-set arity must equal r")
        if self.tag is Family.HAMMING:
            if self.jset.k != 1 or self.m < 2:
                raise ValueError("Hamming descriptors need J in {0,1}^r and m >= 2")
        elif self.tag is Family.JOHNSON:
            if self.k is None or not 1 <= self.k <= self.m or self.jset.k != self.k:
                raise ValueError("Johnson descriptors need 1 <= k <= m and J over {0..k}")
        elif self.tag is Family.SQUASHED:
            if self.m < 2 or self.jset.k != self.m // 2:
                raise ValueError("squashed descriptors need m >= 2 and J over {0..m//2}")
        elif self.tag is Family.SRG:
            if self.row is None or self.jset.k != 2:
                raise ValueError("SRG descriptors need a row id and J over {0,1,2}")

    def in_theorem_range(self) -> bool:
        """Side conditions under which the family appears in the classification."""
        if self.tag is Family.HAMMING:
            return self.m >= 4
        if self.tag is Family.JOHNSON:
            return self.k >= 2 and self.m >= 2 * self.k + 2
        if self.tag is Family.SQUASHED:
            return self.m >= 4
        return True

    def params(self) -> dict:
        out = {"r": self.r, "m": self.m, "J": self.jset.sorted_tuples()}
        if self.k is not None:
            out["k"] = self.k
        if self.row is not None:
            out["row"] = self.row
        return out

    def describe(self) -> str:
        if self.label:
            return self.label
        j = ";".join(".".join(map(str, t)) for t in self.jset.sorted_tuples())
        extra = f" k={self.k}" if self.k is not None else ""
        extra += f" row={self.row}" if self.row is not None else ""
        return f"{self.tag.value}(r={self.r} m={self.m}{extra} J={j})"


def hamming_descriptor(r: int, m: int, jset: JSet | None = None) -> FamilyDescriptor:
    return FamilyDescriptor(Family.HAMMING, r, m, jset or unit_vectors(r))


def johnson_descriptor(m: int, k: int, indices: Sequence[int] = (1,), r: int = 1,
                       jset: JSet | None = None) -> FamilyDescriptor:
    jset = jset or JSet.of(1, k, [(i,) for i in indices])
    return FamilyDescriptor(Family.JOHNSON, r, m, jset, k=k)


def squashed_descriptor(m: int, indices: Sequence[int] = (1,), r: int = 1,
                        jset: JSet | None = None) -> FamilyDescriptor:
    jset = jset or JSet.of(1, m // 2, [(i,) for i in indices])
    return FamilyDescriptor(Family.SQUASHED, r, m, jset)


def srg_descriptor(row: str, m: int, indices: Sequence[int] = (1,), r: int = 1,
                   jset: JSet | None = None) -> FamilyDescriptor:
    jset = jset or JSet.of(1, 2, [(i,) for i in indices])
    return FamilyDescriptor(Family.SRG, r, m, jset, row=row)


def component_graphs(desc: FamilyDescriptor) -> list[Digraph]:
    """The digraph list ``[L, G_1, .., G_k]`` the descriptor's graph is merged from."""
    if desc.tag is Family.HAMMING:
        return [loop_graph(desc.m), complete_graph(desc.m)]
    if desc.tag is Family.JOHNSON:
        return johnson_family(desc.m, desc.k)
    if desc.tag is Family.SQUASHED:
        return squashed_family(desc.m)
    from .geometry import row_graph

    g1 = row_graph(desc.row, desc.m).graph
    return [loop_graph(g1.n), g1, complement(g1)]


def construct(desc: FamilyDescriptor) -> Digraph:
    if desc.tag is Family.HAMMING:
        return generalized_hamming(desc.r, desc.m, desc.jset)
    return merged_product_action(desc.r, component_graphs(desc), desc.jset)


def vertex_count(desc: FamilyDescriptor) -> int:
    if desc.tag is Family.HAMMING:
        base = desc.m
    elif desc.tag is Family.JOHNSON:
        base = math.comb(desc.m, desc.k)
    elif desc.tag is Family.SQUASHED:
        base = math.comb(2 * desc.m, desc.m) // 2
    else:
        from .geometry import row_graph

        base = row_graph(desc.row, desc.m).graph.n
    return base ** desc.r


def sym_on_subsets(m: int, k: int) -> PermutationGroup:
    return group_on_subsets(symmetric_group(m), k)


def sym_on_half_partitions(m: int) -> PermutationGroup:
    return group_on_half_partitions(symmetric_group(2 * m))
