"""Index-tuple sets ``J`` in ``X**r`` (``X = {0..k}``): stabilizers, homogeneity, Hamming test.

A set is *homogeneous* when its setwise stabilizer in Sym(r), acting by
permuting coordinates, is transitive on the ``r`` coordinates.  It is
*Hamming* when it is the union of the stabilizer images of one core
``(X - {0})**a x X**b x {0}**(r-a-b)``.  Any transitive group witnessing the
Hamming property lies in the stabilizer and the stabilizer keeps every image of
a core inside ``J``, so testing with the full stabilizer is exact.

Small universes (``(k+1)**r <= 64`` and ``r <= 4``) go through a vectorized
bitmask kernel that can classify millions of sets at once; larger ones use a
direct set-based path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import NotHomogeneous
from .permgroup import (Permutation, PermutationGroup, TupleCodec, UnionFind,
                        all_permutations, coordinate_permutation)

MAX_ARITY = 8


@dataclass(frozen=True)
class JSet:
    r: int
    k: int
    tuples: frozenset

    def __post_init__(self):
        if self.r < 1 or self.k < 0:
            raise ValueError(f"need r >= 1 and k >= 0, got r={self.r}, k={self.k}")
        tuples = frozenset(tuple(int(x) for x in t) for t in self.tuples)
        if not tuples:
            raise ValueError("a J-set must be nonempty")
        for t in tuples:
            if len(t) != self.r or any(not 0 <= x <= self.k for x in t):
                raise ValueError(f"tuple {t} is not in {{0..{self.k}}}^{self.r}")
        object.__setattr__(self, "tuples", tuples)

    @classmethod
    def of(cls, r: int, k: int, tuples: Iterable[Iterable[int]]) -> "JSet":
        return cls(r, k, frozenset(tuple(t) for t in tuples))

    @classmethod
    def from_mask(cls, r: int, k: int, mask: int) -> "JSet":
        codec = TupleCodec(k + 1, r)
        return cls(r, k, frozenset(codec.decode(i) for i in range(codec.size) if mask >> i & 1))

    @property
    def codec(self) -> TupleCodec:
        return TupleCodec(self.k + 1, self.r)

    @property
    def mask(self) -> int:
        codec = self.codec
        return sum(1 << codec.encode(t) for t in self.tuples)

    def sorted_tuples(self) -> list[tuple[int, ...]]:
        return sorted(self.tuples)

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self):
        return iter(self.sorted_tuples())

    def image(self, h: Permutation) -> "JSet":
        """``J^h`` under the coordinate-permuting action."""
        return JSet(self.r, self.k, frozenset(_act(t, h.images) for t in self.tuples))


def _act(t: tuple[int, ...], h: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(t)
    for j, x in enumerate(t):
        out[h[j]] = x
    return tuple(out)


def _is_transitive(perms: Iterable[Permutation], r: int) -> bool:
    uf = UnionFind(r)
    for p in perms:
        for i, j in enumerate(p.images):
            uf.union(i, j)
    return len(uf.blocks()) == 1


def core(r: int, k: int, a: int, b: int) -> frozenset:
    """``(X - {0})**a x X**b x {0}**(r-a-b)`` with ``X = {0..k}``."""
    factors = [range(1, k + 1)] * a + [range(k + 1)] * b + [(0,)] * (r - a - b)
    return frozenset(itertools.product(*factors))


def _core_orbit_unions(r: int, k: int, group: list[Permutation]) -> set[frozenset]:
    out = set()
    for a in range(r + 1):
        for b in range(r - a + 1):
            base = core(r, k, a, b)
            if not base:
                continue
            out.add(frozenset(_act(t, h.images) for h in group for t in base))
    return out


# --------------------------------------------------------------------------
# Vectorized bitmask kernel
# --------------------------------------------------------------------------

class MaskKernel:
    """Classifies J-sets of a fixed ``(r, k)`` given as integer bitmasks.

    Bit ``i`` of a mask stands for the tuple with mixed-radix index ``i``.
    """

    def __init__(self, r: int, k: int):
        self.r, self.k = r, k
        self.universe = (k + 1) ** r
        if self.universe > 64 or r > 4:
            raise ValueError("bitmask kernel needs (k+1)**r <= 64 and r <= 4")
        self.dtype = np.uint32 if self.universe <= 32 else np.uint64
        self.perms = all_permutations(r)
        self.point_maps = [coordinate_permutation(h, k + 1).images for h in self.perms]
        self.n_chunks = (self.universe + 15) // 16
        self.tables = [None if h.is_identity() else self._tables(pm)
                       for h, pm in zip(self.perms, self.point_maps)]
        self._transitive: dict[int, bool] = {}
        self._targets: dict[int, np.ndarray] = {}

    def _tables(self, point_map) -> list[np.ndarray]:
        values = np.arange(1 << 16, dtype=np.uint64)
        tables = []
        for c in range(self.n_chunks):
            table = np.zeros(1 << 16, dtype=np.uint64)
            for bit in range(16):
                point = 16 * c + bit
                if point >= self.universe:
                    break
                table |= ((values >> np.uint64(bit)) & np.uint64(1)) << np.uint64(point_map[point])
            tables.append(table.astype(self.dtype))
        return tables

    def image_masks(self, masks: np.ndarray, idx: int) -> np.ndarray:
        tables = self.tables[idx]
        if tables is None:
            return masks
        out = tables[0][masks & self.dtype(0xFFFF)]
        for c in range(1, self.n_chunks):
            out |= tables[c][(masks >> self.dtype(16 * c)) & self.dtype(0xFFFF)]
        return out

    def stabilizer_codes(self, masks: np.ndarray) -> np.ndarray:
        """Bit ``i`` of the code is set iff ``perms[i]`` stabilizes the set."""
        masks = np.asarray(masks, dtype=self.dtype)
        codes = np.zeros(masks.shape, dtype=np.uint64)
        for i in range(len(self.perms)):
            same = self.image_masks(masks, i) == masks
            codes |= same.astype(np.uint64) << np.uint64(i)
        return codes

    def code_elements(self, code: int) -> list[Permutation]:
        return [h for i, h in enumerate(self.perms) if code >> i & 1]

    def code_transitive(self, code: int) -> bool:
        if code not in self._transitive:
            self._transitive[code] = _is_transitive(self.code_elements(code), self.r)
        return self._transitive[code]

    def code_targets(self, code: int) -> np.ndarray:
        if code not in self._targets:
            codec = TupleCodec(self.k + 1, self.r)
            sets = _core_orbit_unions(self.r, self.k, self.code_elements(code))
            masks = sorted(sum(1 << codec.encode(t) for t in s) for s in sets)
            self._targets[code] = np.asarray(masks, dtype=self.dtype)
        return self._targets[code]

    def classify(self, masks: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per mask: stabilizer code, homogeneous flag, Hamming flag."""
        masks = np.asarray(masks, dtype=self.dtype)
        codes = self.stabilizer_codes(masks)
        homogeneous = np.zeros(masks.shape, dtype=bool)
        hamming = np.zeros(masks.shape, dtype=bool)
        for code in np.unique(codes).tolist():
            if not self.code_transitive(code):
                continue
            sel = codes == code
            homogeneous[sel] = True
            hamming[sel] = np.isin(masks[sel], self.code_targets(code))
        return codes, homogeneous, hamming


@lru_cache(maxsize=None)
def mask_kernel(r: int, k: int) -> MaskKernel:
    return MaskKernel(r, k)


def _kernel_applies(j: JSet) -> bool:
    return (j.k + 1) ** j.r <= 64 and j.r <= 4


# --------------------------------------------------------------------------
# Public operations
# --------------------------------------------------------------------------

def _stabilizer_elements(j: JSet) -> list[Permutation]:
    if j.r > MAX_ARITY:
        raise ValueError(f"arity {j.r} exceeds the Sym(r) scan limit {MAX_ARITY}")
    if _kernel_applies(j):
        kernel = mask_kernel(j.r, j.k)
        code = int(kernel.stabilizer_codes(np.array([j.mask]))[0])
        return kernel.code_elements(code)
    return stabilizer_elements_direct(j)


def stabilizer_elements_direct(j: JSet) -> list[Permutation]:
    """Set-based stabilizer scan over Sym(r), used past the kernel's size limit."""
    return [h for h in all_permutations(j.r)
            if all(_act(t, h.images) in j.tuples for t in j.tuples)]


def is_hamming_direct(j: JSet) -> bool:
    elems = stabilizer_elements_direct(j)
    if not _is_transitive(elems, j.r):
        raise NotHomogeneous("Hamming test needs a homogeneous set")
    return j.tuples in _core_orbit_unions(j.r, j.k, elems)


def jset_stabilizer(j: JSet) -> PermutationGroup:
    """Setwise stabilizer of ``J`` in Sym(r) under the rank-r action."""
    return PermutationGroup.from_elements(j.r, _stabilizer_elements(j))


def is_homogeneous(j: JSet) -> bool:
    if j.r > MAX_ARITY:
        raise ValueError(f"arity {j.r} exceeds the Sym(r) scan limit {MAX_ARITY}")
    if _kernel_applies(j):
        _, homogeneous, _ = mask_kernel(j.r, j.k).classify(np.array([j.mask]))
        return bool(homogeneous[0])
    return _is_transitive(stabilizer_elements_direct(j), j.r)


def is_hamming(j: JSet) -> bool:
    """Whether a homogeneous ``J`` is a union of stabilizer images of one core."""
    if j.r > MAX_ARITY:
        raise ValueError(f"arity {j.r} exceeds the Sym(r) scan limit {MAX_ARITY}")
    if _kernel_applies(j):
        _, homogeneous, hamming = mask_kernel(j.r, j.k).classify(np.array([j.mask]))
        if not homogeneous[0]:
            raise NotHomogeneous("Hamming test needs a homogeneous set")
        return bool(hamming[0])
    return is_hamming_direct(j)


def hamming_core(j: JSet) -> tuple[int, int] | None:
    """First ``(a, b)`` whose core generates ``J``, or None if ``J`` is non-Hamming."""
    elems = _stabilizer_elements(j)
    if not _is_transitive(elems, j.r):
        raise NotHomogeneous("Hamming test needs a homogeneous set")
    for a in range(j.r + 1):
        for b in range(j.r - a + 1):
            base = core(j.r, j.k, a, b)
            if base and frozenset(_act(t, h.images) for h in elems for t in base) == j.tuples:
                return a, b
    return None


def to_binary_jset(j: JSet) -> JSet:
    """Replace every nonzero entry by 1."""
    return JSet(j.r, 1, frozenset(tuple(1 if x else 0 for x in t) for t in j.tuples))


def all_jsets(r: int, k: int) -> Iterable[JSet]:
    """Every nonempty J-set over ``{0..k}**r`` in increasing mask order."""
    size = (k + 1) ** r
    for mask in range(1, 1 << size):
        yield JSet.from_mask(r, k, mask)
