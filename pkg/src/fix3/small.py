"""Brute-force subgroup work for small permutation groups, and the
classification of hypothesis-satisfying groups of degree at most 6."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constructors import sym
from .hypothesis import HypothesisVerdict, check_exhaustive
from .perm import Permutation, PermGroup, element_array

# number of transitive groups of degree n up to conjugacy in Sym(n)
TRANSITIVE_COUNTS = {1: 1, 2: 1, 3: 2, 4: 5, 5: 5, 6: 16}


class CayleyGroup:
    """Multiplication, inverse and conjugation tables of an enumerated group.

    Elements are indexed in the lexicographic order of their image tables.
    Subgroups are boolean masks over those indices.
    """

    def __init__(self, G: PermGroup, bound: int = 5040):
        if G.order() > bound:
            raise ValueError(f"group of order {G.order()} is too large for Cayley tables")
        n = G.degree
        E = element_array(G).astype(np.int64)
        E = E[np.lexsort(E.T[::-1])]
        self.G = G
        self.degree = n
        self.elements = E
        self.order = E.shape[0]
        weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
        self._weights = weights
        self._codes = E @ weights
        # mul[i, j] = index of E[i] * E[j], which applies E[i] first
        mul = np.empty((self.order, self.order), dtype=np.int32)
        for i in range(self.order):
            mul[i] = self.index_of(E[:, E[i]])
        self.mul = mul
        self.identity = int(self.index_of(np.arange(n)[None, :])[0])
        self.inv = np.argmax(mul == self.identity, axis=1).astype(np.int32)
        # conj[g, h] = g^-1 h g
        self.conj = self._conj_table()

    def _conj_table(self) -> np.ndarray:
        m, inv = self.mul, self.inv
        g = np.arange(self.order)
        left = m[inv[g][:, None], g[None, :]]  # g^-1 h
        return m[left, g[:, None]]

    def index_of(self, rows: np.ndarray) -> np.ndarray:
        codes = np.asarray(rows, dtype=np.int64) @ self._weights
        idx = np.searchsorted(self._codes, codes)
        if np.any(idx >= self.order) or np.any(self._codes[np.minimum(idx, self.order - 1)] != codes):
            raise ValueError("row is not an element of the group")
        return idx

    def perm(self, i: int) -> Permutation:
        return Permutation(self.elements[i])

    def closure(self, gens) -> np.ndarray:
        mask = np.zeros(self.order, dtype=bool)
        mask[self.identity] = True
        gens = np.asarray(list(gens), dtype=np.int64)
        frontier = np.array([self.identity])
        while frontier.size:
            new = np.unique(self.mul[frontier][:, gens].ravel())
            new = new[~mask[new]]
            mask[new] = True
            frontier = new
        return mask

    def conjugacy_class_reps(self) -> list[int]:
        seen = np.zeros(self.order, dtype=bool)
        reps = []
        for h in range(self.order):
            if not seen[h]:
                reps.append(h)
                seen[self.conj[:, h]] = True
        return reps

    def subgroup_key(self, mask: np.ndarray) -> bytes:
        return np.packbits(mask).tobytes()

    def conjugacy_key(self, mask: np.ndarray) -> bytes:
        """The least packed mask among all conjugates of the subgroup."""
        idx = np.flatnonzero(mask)
        images = self.conj[:, idx]
        conj_masks = np.zeros((self.order, self.order), dtype=bool)
        conj_masks[np.arange(self.order)[:, None], images] = True
        packed = np.packbits(conj_masks, axis=1)
        keys = sorted(row.tobytes() for row in packed)
        return keys[0]

    def subgroups(self, first_from: list[int] | None = None) -> dict[bytes, tuple[np.ndarray, tuple[int, ...]]]:
        """All subgroups generated by at most two elements, with the first
        generator taken from ``first_from`` (default: every element)."""
        firsts = range(self.order) if first_from is None else first_from
        found: dict[bytes, tuple[np.ndarray, tuple[int, ...]]] = {}
        trivial = self.closure([])
        found[self.subgroup_key(trivial)] = (trivial, ())
        for a in firsts:
            cyc = self.closure([a])
            found.setdefault(self.subgroup_key(cyc), (cyc, (a,)))
            for b in range(self.order):
                if cyc[b]:
                    continue
                m = self.closure([a, b])
                found.setdefault(self.subgroup_key(m), (m, (a, b)))
        return found

    def subgroup_classes(self, subgroups=None) -> list[tuple[np.ndarray, tuple[int, ...]]]:
        """One subgroup per conjugacy class, ordered by order then key."""
        subgroups = subgroups if subgroups is not None else self.subgroups()
        classes: dict[bytes, tuple[np.ndarray, tuple[int, ...]]] = {}
        for mask, gens in subgroups.values():
            key = self.conjugacy_key(mask)
            classes.setdefault(key, (mask, gens))
        return sorted(classes.values(), key=lambda mg: (int(mg[0].sum()), self.subgroup_key(mg[0])))

    def as_group(self, gens: tuple[int, ...]) -> PermGroup:
        return PermGroup([self.perm(i) for i in gens], self.degree)

    def is_transitive(self, mask: np.ndarray) -> bool:
        return np.unique(self.elements[mask][:, 0]).size == self.degree


@dataclass
class SmallResult:
    group: PermGroup
    order: int
    verdict: HypothesisVerdict


def transitive_classes(n: int) -> list[PermGroup]:
    """Transitive subgroups of ``Sym(n)`` up to conjugacy, from 2-generated closures.

    Raises when the count differs from the known number, which would mean
    some transitive group of this degree needs more than two generators.
    """
    if n == 1:
        return [PermGroup([], 1)]
    C = CayleyGroup(sym(n), bound=math.factorial(6))
    subs = C.subgroups(first_from=C.conjugacy_class_reps())
    trans = {k: v for k, v in subs.items() if C.is_transitive(v[0])}
    classes = C.subgroup_classes(trans)
    if n in TRANSITIVE_COUNTS and len(classes) != TRANSITIVE_COUNTS[n]:
        raise AssertionError(
            f"found {len(classes)} transitive classes of degree {n}, expected {TRANSITIVE_COUNTS[n]}"
        )
    return [C.as_group(gens) for _, gens in classes]


def classify_small(n: int) -> list[SmallResult]:
    """Every transitive group of degree ``n <= 6`` satisfying the hypothesis."""
    if not 1 <= n <= 6:
        raise ValueError("classify_small supports degrees 1..6")
    out = []
    for G in transitive_classes(n):
        verdict, _ = check_exhaustive(G)
        if verdict.satisfied:
            out.append(SmallResult(G, G.order(), verdict))
    return out
