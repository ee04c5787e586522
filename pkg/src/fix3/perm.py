"""Permutations, permutation groups and stabilizer chains.

Conventions
-----------
Points are ``0 .. n-1``.  A permutation is stored as its image table, and
products are read left to right: ``p * q`` first applies ``p`` and then ``q``,
so ``(p * q)(w) == q(p(w))``.  On image tables this is ``q.images[p.images]``.

Stabilizer chains are built by a deterministic Schreier-Sims: base points
are the smallest moved points, Schreier generators are processed in a fixed
order, and an optional order hint (a proven upper bound on the group order)
lets construction stop as soon as the chain reaches it.
"""

from __future__ import annotations

import math
import os
from functools import reduce
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DegreeMismatchError, EnumerationBoundError

DEFAULT_ENUM_BOUND = 10**7

# Upper bound on entries held by one enumeration block or cached transversal.
_BLOCK_ENTRIES = 1 << 23
_CACHE_ENTRIES = 1 << 24


def enumeration_bound() -> int:
    """The element-enumeration bound, honouring ``FIX3_MAX_ENUM``."""
    value = os.environ.get("FIX3_MAX_ENUM")
    if value:
        return int(value)
    return DEFAULT_ENUM_BOUND


def perm_dtype(n: int):
    if n <= 256:
        return np.uint8
    if n <= 65536:
        return np.uint16
    return np.uint32


def _identity_array(n: int) -> np.ndarray:
    return np.arange(n, dtype=perm_dtype(n))


def _inverse_array(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(a.size, dtype=a.dtype)
    return inv


def _is_identity(a: np.ndarray, ident: np.ndarray) -> bool:
    return bool(np.array_equal(a, ident))


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as an image table."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int] | np.ndarray):
        arr = np.asarray(images)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("a permutation needs a non-empty 1-D image list")
        if arr.dtype.kind not in "iu":
            if arr.dtype.kind == "f" and np.all(arr == np.round(arr)):
                arr = arr.astype(np.int64)
            else:
                raise ValueError("permutation images must be integers")
        n = arr.size
        if arr.min() < 0 or arr.max() >= n or np.unique(arr).size != n:
            raise ValueError("image list is not a bijection of 0..n-1")
        arr = arr.astype(perm_dtype(n))
        arr.flags.writeable = False
        self._img = arr
        self._hash = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Permutation":
        # trusted internal constructor: no validation, no copy
        p = object.__new__(cls)
        if arr.flags.writeable:
            arr = arr.copy()
            arr.flags.writeable = False
        p._img = arr
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(_identity_array(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 0-indexed disjoint cycles."""
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for a in cyc:
                if not 0 <= a < degree:
                    raise ValueError(f"point {a} outside degree {degree}")
                if a in seen:
                    raise ValueError(f"point {a} appears twice in the cycles")
                seen.add(a)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return self._img.size

    @property
    def images(self) -> np.ndarray:
        return self._img

    def __len__(self) -> int:
        return self._img.size

    def __call__(self, point: int) -> int:
        return int(self._img[point])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = _identity_array(self.degree)
        base = self._img
        while k:
            if k & 1:
                result = base[result]
            base = base[base]
            k >>= 1
        return Permutation._wrap(result)

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def inverse(self) -> "Permutation":
        return Permutation._wrap(_inverse_array(self._img))

    def conjugate(self, g: "Permutation") -> "Permutation":
        """``g^-1 * self * g``; maps ``w^g`` to ``(w^self)^g``."""
        return g.inverse() * self * g

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img.size == other._img.size and bool(np.array_equal(self._img, other._img))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img.tobytes())
        return self._hash

    def is_identity(self) -> bool:
        return bool(np.all(self._img == np.arange(self._img.size)))

    def fixed_points(self) -> set[int]:
        return {int(w) for w in np.flatnonzero(self._img == np.arange(self._img.size))}

    def num_fixed(self) -> int:
        return int(np.count_nonzero(self._img == np.arange(self._img.size)))

    def support(self) -> list[int]:
        return [int(w) for w in np.flatnonzero(self._img != np.arange(self._img.size))]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        img = self._img.tolist()
        seen = [False] * len(img)
        out = []
        for start in range(len(img)):
            if seen[start] or img[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            j = img[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = img[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def cycle_string(self, one_indexed: bool = True) -> str:
        off = 1 if one_indexed else 0
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(a + off) for a in c) + ")" for c in cycs)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string(one_indexed=False)}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Left-to-right product: first ``p``, then ``q``."""
    if p.degree != q.degree:
        raise DegreeMismatchError(f"cannot compose degrees {p.degree} and {q.degree}")
    return Permutation._wrap(q._img[p._img])


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def fixed_points(p: Permutation) -> set[int]:
    return p.fixed_points()


# ---------------------------------------------------------------------------
# stabilizer chains


class _Level:
    """One level of a stabilizer chain: base point, strong generators fixing
    all earlier base points, and the orbit stored as a Schreier vector."""

    __slots__ = ("point", "gens", "invs", "orbit", "via", "parent", "done", "_uinv", "_umat", "_pos", "_cache_ok")

    def __init__(self, point: int, degree: int, cache_ok: bool):
        self.point = point
        self.gens: list[np.ndarray] = []
        self.invs: list[np.ndarray] = []
        self.via = np.full(degree, -1, dtype=np.int32)
        self.via[point] = -2
        self.parent = np.full(degree, -1, dtype=np.int64)
        self.orbit = np.array([point], dtype=np.int64)
        self.done: list[int] = []
        self._uinv: dict[int, np.ndarray] = {}
        self._umat = None
        self._pos = None
        self._cache_ok = cache_ok

    def add_gens(self, arrays: list[np.ndarray]) -> None:
        first = len(self.gens)
        for a in arrays:
            self.gens.append(a)
            self.invs.append(_inverse_array(a))
            self.done.append(0)
        self._umat = None
        self._extend_orbit(first)

    def _extend_orbit(self, gen_start: int) -> None:
        frontier = self.orbit
        chunks = [self.orbit]
        via, parent = self.via, self.parent
        while frontier.size:
            found = []
            for j in range(gen_start, len(self.gens)):
                img = self.gens[j][frontier]
                mask = via[img] == -1
                if not mask.any():
                    continue
                tgt, first = np.unique(img[mask], return_index=True)
                via[tgt] = j
                parent[tgt] = frontier[mask][first]
                found.append(tgt.astype(np.int64))
            gen_start = 0
            if not found:
                break
            frontier = np.concatenate(found)
            chunks.append(frontier)
        self.orbit = np.concatenate(chunks)

    def size(self) -> int:
        return int(self.orbit.size)

    def in_orbit(self, beta) -> bool:
        return self.via[beta] != -1

    def _path(self, beta: int) -> list[int]:
        path = []
        via, parent = self.via, self.parent
        while beta != self.point:
            path.append(int(via[beta]))
            beta = int(parent[beta])
        return path

    def transversal(self, beta: int, ident: np.ndarray) -> np.ndarray:
        """The coset representative mapping the base point to ``beta``."""
        if self._umat is not None:
            return self._umat[self._index_of(beta)]
        u = ident
        for j in reversed(self._path(beta)):
            u = self.gens[j][u]
        return u

    def transversal_inverse(self, beta: int, ident: np.ndarray) -> np.ndarray:
        if self._cache_ok:
            inv = self._uinv.get(beta)
            if inv is None:
                inv = _inverse_array(self.transversal(beta, ident))
                self._uinv[beta] = inv
            return inv
        return _inverse_array(self.transversal(beta, ident))

    def strip(self, g: np.ndarray, beta: int) -> np.ndarray:
        """``g * u_beta^-1`` where ``g`` maps the base point to ``beta``."""
        if self._cache_ok:
            return self.transversal_inverse(beta, _identity_array(g.size))[g]
        via, parent, invs = self.via, self.parent, self.invs
        while beta != self.point:
            g = invs[via[beta]][g]
            beta = int(parent[beta])
        return g

    def _index_of(self, beta: int) -> int:
        return int(self._pos[beta])

    def transversal_matrix(self, ident: np.ndarray) -> np.ndarray:
        """All transversal elements, row ``k`` for ``orbit[k]``."""
        if self._umat is None:
            n = ident.size
            mat = np.empty((self.orbit.size, n), dtype=ident.dtype)
            pos = np.full(n, -1, dtype=np.int64)
            pos[self.orbit] = np.arange(self.orbit.size)
            mat[0] = ident
            # orbit is in BFS order: every parent precedes its child
            par = self.parent[self.orbit[1:]]
            for k in range(1, self.orbit.size):
                beta = self.orbit[k]
                mat[k] = self.gens[self.via[beta]][mat[pos[par[k - 1]]]]
            self._umat = mat
            self._pos = pos
        return self._umat


class StabilizerChain:
    """Base, strong generators and Schreier-vector transversals of a group."""

    def __init__(self, degree: int, levels: list[_Level]):
        self.degree = degree
        self.levels = levels
        self._ident = _identity_array(degree)

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(L.point for L in self.levels)

    def orbit_sizes(self) -> list[int]:
        return [L.size() for L in self.levels]

    def order(self) -> int:
        return math.prod(self.orbit_sizes())

    def strong_generators(self, level: int = 0) -> list[np.ndarray]:
        if level >= len(self.levels):
            return []
        return list(self.levels[level].gens)

    def sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        """Strip ``g`` through the chain; returns the residue and the level
        where stripping stopped (``len(levels)`` if it passed every level)."""
        for i in range(start, len(self.levels)):
            L = self.levels[i]
            beta = int(g[L.point])
            if L.via[beta] == -1:
                return g, i
            if beta != L.point:
                g = L.strip(g, beta)
        return g, len(self.levels)

    def contains_array(self, g: np.ndarray) -> bool:
        h, _ = self.sift(g)
        return _is_identity(h, self._ident)

    def transversal_element(self, level: int, beta: int) -> np.ndarray:
        return self.levels[level].transversal(beta, self._ident)

    def tail(self, k: int) -> "StabilizerChain":
        """Chain of the pointwise stabilizer of the first ``k`` base points."""
        return StabilizerChain(self.degree, self.levels[k:])

    def verify(self) -> bool:
        """Every strong generator sifts to the identity from its own level."""
        for i, L in enumerate(self.levels):
            for g in L.gens:
                h, _ = self.sift(g, i)
                if not _is_identity(h, self._ident):
                    return False
        return True

    def random_array(self, rng: np.random.Generator) -> np.ndarray:
        g = self._ident
        for L in reversed(self.levels):
            beta = int(L.orbit[rng.integers(L.size())])
            g = L.transversal(beta, self._ident)[g]
        return g


def schreier_sims(
    generators: Sequence[np.ndarray],
    degree: int,
    base: Sequence[int] = (),
    order_hint: int | None = None,
) -> StabilizerChain:
    """Deterministic Schreier-Sims.

    ``base`` is a prefix the chain must start with.  ``order_hint``, if given,
    must be an upper bound on the group order; construction stops as soon as
    the chain order reaches it (which then proves equality).
    """
    ident = _identity_array(degree)
    gens = []
    seen = set()
    for g in generators:
        g = np.asarray(g, dtype=ident.dtype)
        key = g.tobytes()
        if key in seen or _is_identity(g, ident):
            continue
        seen.add(key)
        gens.append(g)

    builder = _Builder(degree, base)
    builder.add_initial(gens)
    builder.run(order_hint)
    return StabilizerChain(degree, builder.levels)


class _Builder:
    def __init__(self, degree: int, base: Sequence[int]):
        self.degree = degree
        self.ident = _identity_array(degree)
        self.levels: list[_Level] = []
        for b in base:
            self._new_level(int(b))

    def _new_level(self, point: int) -> _Level:
        # cache transversal inverses when the whole level fits comfortably
        L = _Level(point, self.degree, self.degree * self.degree <= _CACHE_ENTRIES)
        self.levels.append(L)
        return L

    def _ensure_moves_base(self, g: np.ndarray) -> None:
        for L in self.levels:
            if g[L.point] != L.point:
                return
        moved = np.flatnonzero(g != self.ident)
        self._new_level(int(moved[0]))

    def add_initial(self, gens: list[np.ndarray]) -> None:
        for g in gens:
            self._ensure_moves_base(g)
        per_level: list[list[np.ndarray]] = [[] for _ in self.levels]
        for g in gens:
            for i, L in enumerate(self.levels):
                per_level[i].append(g)
                if g[L.point] != L.point:
                    break
        for L, gs in zip(self.levels, per_level):
            if gs:
                L.add_gens(gs)

    def order(self) -> int:
        return math.prod(L.size() for L in self.levels)

    def _add_residue(self, h: np.ndarray, lo: int, hi: int) -> None:
        if hi == len(self.levels):
            moved = np.flatnonzero(h != self.ident)
            self._new_level(int(moved[0]))
        for l in range(lo, hi + 1):
            self.levels[l].add_gens([h])

    def _sift(self, g: np.ndarray, start: int) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.levels)):
            L = self.levels[i]
            beta = int(g[L.point])
            if L.via[beta] == -1:
                return g, i
            if beta != L.point:
                g = L.strip(g, beta)
        return g, len(self.levels)

    def _check_level(self, i: int):
        L = self.levels[i]
        for j in range(len(L.gens)):
            s = L.gens[j]
            while L.done[j] < L.orbit.size:
                beta = int(L.orbit[L.done[j]])
                L.done[j] += 1
                u = L.transversal(beta, self.ident)
                h = s[u]
                gamma = int(s[beta])
                if gamma != L.point:
                    h = L.strip(h, gamma)
                h, drop = self._sift(h, i + 1)
                if drop < len(self.levels) or not _is_identity(h, self.ident):
                    return h, drop
        return None

    def run(self, order_hint: int | None) -> None:
        if order_hint is not None and self.order() >= order_hint:
            return
        i = len(self.levels) - 1
        while i >= 0:
            found = self._check_level(i)
            if found is None:
                i -= 1
                continue
            h, drop = found
            self._add_residue(h, i + 1, drop)
            if order_hint is not None and self.order() >= order_hint:
                return
            i = drop

    def extend(self, g: np.ndarray, order_hint: int | None = None) -> bool:
        """Add a generator to a finished chain; False if it was already a member."""
        h, drop = self._sift(g, 0)
        if drop == len(self.levels) and _is_identity(h, self.ident):
            return False
        self._add_residue(h, 0, drop)
        i = drop
        while i >= 0:
            found = self._check_level(i)
            if found is None:
                i -= 1
                continue
            h, d = found
            self._add_residue(h, i + 1, d)
            if order_hint is not None and self.order() >= order_hint:
                return True
            i = d
        return True


def build_chain(G: "PermGroup") -> StabilizerChain:
    return G.chain


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A permutation group given by generators; the stabilizer chain is built
    on first use and never mutated afterwards."""

    def __init__(
        self,
        generators: Sequence[Permutation],
        degree: int | None = None,
        *,
        name: str | None = None,
        order_hint: int | None = None,
        base: Sequence[int] = (),
        chain: StabilizerChain | None = None,
    ):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("need a degree or at least one generator")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatchError(f"generator of degree {g.degree} in a group of degree {degree}")
        if not gens:
            gens = [Permutation.identity(degree)]
        self.degree = degree
        self.generators = gens
        self.name = name
        self._order_hint = order_hint
        self._base = tuple(base)
        self._chain = chain

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = schreier_sims(
                [g.images for g in self.generators], self.degree, self._base, self._order_hint
            )
        return self._chain

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def order(self) -> int:
        return self.chain.order()

    def __len__(self):  # pragma: no cover - orders can exceed sys.maxsize
        return self.order()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatchError(f"permutation of degree {p.degree} vs group of degree {self.degree}")
        return self.chain.contains_array(p.images)

    __contains__ = contains

    def orbit(self, point: int) -> set[int]:
        return orbit(self, point)

    def orbits(self) -> list[np.ndarray]:
        return orbits(self)

    def is_transitive(self) -> bool:
        return is_transitive(self)

    def pointwise_stabilizer(self, points: Sequence[int]) -> "Subgroup":
        return pointwise_stabilizer(self, points)

    def elements(self, bound: int | None = None) -> Iterator[Permutation]:
        return elements(self, bound)

    def random_element(self, seed) -> Permutation:
        return random_element(self, seed)

    def subgroup(self, generators: Sequence[Permutation], **kw) -> "Subgroup":
        return Subgroup(self, generators, **kw)

    def is_trivial(self) -> bool:
        return self.order() == 1

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={len(self.generators)}>"


class Subgroup(PermGroup):
    """A subgroup of ``parent``; membership of the generators is checked
    unless ``check=False``."""

    def __init__(self, parent: PermGroup, generators: Sequence[Permutation], *, check: bool = True, **kw):
        super().__init__(generators, parent.degree, **kw)
        self.parent = parent
        if check:
            for g in self.generators:
                if not parent.contains(g):
                    raise ValueError("subgroup generator is not in the parent group")


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, p: Permutation) -> bool:
    return G.contains(p)


def orbit(G: PermGroup, point: int) -> set[int]:
    if not 0 <= point < G.degree:
        raise ValueError(f"point {point} outside degree {G.degree}")
    seen = np.zeros(G.degree, dtype=bool)
    seen[point] = True
    frontier = np.array([point])
    imgs = [g.images for g in G.generators]
    while frontier.size:
        nxt = np.unique(np.concatenate([a[frontier] for a in imgs]))
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return {int(w) for w in np.flatnonzero(seen)}


def orbit_labels(generators: Sequence[np.ndarray], degree: int) -> np.ndarray:
    """Smallest point of each point's orbit under the generated group."""
    labels = np.arange(degree, dtype=np.int64)
    arrays = [np.asarray(a, dtype=np.int64) for a in generators]
    while True:
        before = labels.copy()
        for a in arrays:
            # push labels forward and backward along every generator edge
            np.minimum.at(labels, a, labels.copy())
            labels = np.minimum(labels, labels[a])
        labels = labels[labels]
        if np.array_equal(before, labels):
            return labels


def orbits(G: PermGroup) -> list[np.ndarray]:
    labels = orbit_labels([g.images for g in G.generators], G.degree)
    return [np.flatnonzero(labels == r) for r in np.unique(labels)]


def is_transitive(G: PermGroup) -> bool:
    return len(orbit(G, 0)) == G.degree


def pointwise_stabilizer(G: PermGroup, points: Sequence[int]) -> Subgroup:
    pts = [int(p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("stabilized points must be distinct")
    for p in pts:
        if not 0 <= p < G.degree:
            raise ValueError(f"point {p} outside degree {G.degree}")
    if not pts:
        return Subgroup(G, G.generators, check=False, chain=G.chain)
    chain = G.chain
    k = len(pts)
    if chain.base[:k] != tuple(pts):
        chain = schreier_sims(chain.strong_generators(0) or [g.images for g in G.generators],
                              G.degree, pts, G.order())
    tail = chain.tail(k)
    gens = [Permutation._wrap(a) for a in tail.strong_generators(0)]
    return Subgroup(G, gens, check=False, chain=tail)


# ---------------------------------------------------------------------------
# element enumeration


def _check_bound(G: PermGroup, bound: int | None) -> None:
    if bound is None:
        bound = enumeration_bound()
    if G.order() > bound:
        raise EnumerationBoundError(G.order(), bound)


def element_blocks(G: PermGroup, bound: int | None = None, max_entries: int = _BLOCK_ENTRIES) -> Iterator[np.ndarray]:
    """Every element of ``G`` exactly once, as rows of 2-D image arrays.

    The lower part of the chain is expanded in full; the upper levels are
    walked in mixed radix, each combination yielding one block.
    """
    _check_bound(G, bound)
    chain = G.chain
    n = G.degree
    ident = chain._ident
    levels = chain.levels
    block = ident[None, :]
    k = len(levels)
    while k > 0:
        L = levels[k - 1]
        if block.shape[0] * L.size() * n > max_entries and block.shape[0] > 1:
            break
        T = L.transversal_matrix(ident)
        # rows x * u for x in block, u in transversal
        block = np.take(T, block, axis=1).reshape(-1, n)
        k -= 1
    if k == 0:
        yield block
        return
    yield from _walk_upper(levels, k, ident, block)


def _walk_upper(levels, k, ident, block):
    n = ident.size
    use_mat = [L.size() * n <= _CACHE_ENTRIES for L in levels[:k]]

    def rec(i, prefix):
        # prefix = u_{i} ... u_{k-1} already composed (applied after block)
        if i < 0:
            yield prefix[block]
            return
        L = levels[i]
        if use_mat[i]:
            T = L.transversal_matrix(ident)
            for row in T:
                yield from rec(i - 1, row[prefix])
        else:
            for beta in L.orbit:
                u = L.transversal(int(beta), ident)
                yield from rec(i - 1, u[prefix])

    yield from rec(k - 1, ident)


def elements(G: PermGroup, bound: int | None = None) -> Iterator[Permutation]:
    """Iterate over every element exactly once (refuses above ``bound``)."""
    for block in element_blocks(G, bound):
        for row in block:
            yield Permutation._wrap(row)


def element_array(G: PermGroup, bound: int | None = None) -> np.ndarray:
    """All elements stacked into one array (for small groups)."""
    return np.concatenate(list(element_blocks(G, bound)), axis=0)


def random_element(G: PermGroup, seed) -> Permutation:
    """Uniform element: one uniform transversal element per chain level."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return Permutation._wrap(G.chain.random_array(rng))


# ---------------------------------------------------------------------------
# brute-force subgroup queries


def _rows_to_subgroup(G: PermGroup, rows: np.ndarray) -> Subgroup:
    count = rows.shape[0]
    if count == G.order():
        return Subgroup(G, G.generators, check=False, chain=G.chain)
    ident = G.chain._ident
    builder = _Builder(G.degree, ())
    builder.add_initial([])
    gens = []
    for row in rows:
        if _is_identity(row, ident):
            continue
        if builder.extend(np.ascontiguousarray(row), count):
            gens.append(Permutation._wrap(np.array(row)))
        if builder.order() >= count:
            break
    if builder.order() != count:
        raise AssertionError("brute-force element set is not closed under multiplication")
    chain = StabilizerChain(G.degree, builder.levels)
    return Subgroup(G, gens, check=False, chain=chain)


def centralizer_rows(G: PermGroup, x: Permutation, bound: int | None = None) -> np.ndarray:
    xa = x.images
    out = []
    for B in element_blocks(G, bound):
        # g commutes with x  <=>  g(x(w)) == x(g(w)) for all w
        mask = np.all(B[:, xa] == xa[B], axis=1)
        if mask.any():
            out.append(B[mask])
    return np.concatenate(out, axis=0)


def centralizer_bruteforce(G: PermGroup, x: Permutation, bound: int | None = None) -> Subgroup:
    if x.degree != G.degree:
        raise DegreeMismatchError("element and group degrees differ")
    return _rows_to_subgroup(G, centralizer_rows(G, x, bound))


def _row_keys(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


def conjugates_rows(B: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Row ``r`` is ``g^-1 x g`` for ``g = B[r]``: it maps ``g(w)`` to ``g(x(w))``."""
    out = np.empty_like(B)
    np.put_along_axis(out, B.astype(np.int64), B[:, x], axis=1)
    return out


def normalizer_rows(G: PermGroup, H: PermGroup, bound: int | None = None) -> np.ndarray:
    if H.order() > 10**6:
        raise EnumerationBoundError(H.order(), 10**6)
    h_keys = _row_keys(element_array(H))
    gens = [h.images for h in H.generators if not h.is_identity()]
    out = []
    for B in element_blocks(G, bound):
        mask = np.ones(B.shape[0], dtype=bool)
        for h in gens:
            conj = conjugates_rows(B[mask], h)
            ok = np.isin(_row_keys(conj), h_keys)
            idx = np.flatnonzero(mask)
            mask[idx[~ok]] = False
            if not mask.any():
                break
        if mask.any():
            out.append(B[mask])
    return np.concatenate(out, axis=0)


def normalizer_bruteforce(G: PermGroup, H: PermGroup, bound: int | None = None) -> Subgroup:
    """``{g : H^g = H}``; a conjugate of each generator must land in ``H``,
    and equal orders make ``H^g <= H`` an equality."""
    return _rows_to_subgroup(G, normalizer_rows(G, H, bound))


def element_order_histogram(G: PermGroup, bound: int | None = None) -> dict[int, int]:
    hist: dict[int, int] = {}
    for p in elements(G, bound):
        o = p.order()
        hist[o] = hist.get(o, 0) + 1
    return dict(sorted(hist.items()))


def sylow_subgroup(G: PermGroup, p: int, bound: int | None = None) -> Subgroup:
    """A Sylow ``p``-subgroup, grown greedily from elements in enumeration order."""
    n = G.order()
    target = 1
    while n % p == 0:
        n //= p
        target *= p
    if target == 1:
        return Subgroup(G, [], check=False)
    gens: list[Permutation] = []
    current = 1
    while current < target:
        grown = False
        for g in elements(G, bound):
            o = g.order()
            if o == 1 or target % o:
                continue
            trial = PermGroup(gens + [g], G.degree)
            t = trial.order()
            if t > current and target % t == 0:
                gens.append(g)
                current = t
                grown = True
                if current == target:
                    break
        if not grown:
            raise AssertionError("Sylow search stalled")
    return Subgroup(G, gens, check=False)


def is_abelian(G: PermGroup) -> bool:
    gs = G.generators
    return all(a * b == b * a for i, a in enumerate(gs) for b in gs[i + 1:])


def cyclic_generator(G: PermGroup, bound: int | None = None) -> Permutation | None:
    """An element of order ``|G|``, or None when ``G`` is not cyclic."""
    n = G.order()
    for g in G.generators:
        if g.order() == n:
            return g
    for g in elements(G, bound):
        if g.order() == n:
            return g
    return None


def generate_until(candidates: Iterable[Permutation], degree: int, target: int) -> list[Permutation]:
    """Add candidates that are not yet members, in order, until the generated
    group has order ``target``.  No order hint is used, so the chain is always
    complete and the final order is exact."""
    builder = _Builder(degree, ())
    builder.add_initial([])
    chosen: list[Permutation] = []
    for c in candidates:
        if builder.extend(np.array(c.images)):
            chosen.append(c)
            if builder.order() >= target:
                break
    if builder.order() != target:
        raise ValueError(f"candidates generate a group of order {builder.order()}, not {target}")
    return chosen
