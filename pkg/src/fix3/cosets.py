"""Right-coset actions and the stabilizer tree used to decide fixed-point bounds.

A right coset ``Hg = {h * g}`` is named by its canonical representative: walk
down ``H``'s stabilizer chain and at each level pick the transversal element
that makes the image of that level's base point as small as possible.  The
resulting image tuple on ``H``'s base is lexicographically least over the
coset, and because an element of ``H`` is determined by its base images the
representative is unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CosetDegreeError
from .perm import (
    Permutation,
    PermGroup,
    StabilizerChain,
    _row_keys,
    element_array,
    orbit_labels,
    perm_dtype,
    schreier_sims,
)

DEFAULT_DEGREE_CAP = 10**5

# groups with |S| * degree below this are handled as explicit element arrays
_ELEMENT_MODE_ENTRIES = 1 << 22


def canonical_coset_rep(H: PermGroup, g: Permutation) -> Permutation:
    """The canonical element of the right coset ``H g``."""
    if g.degree != H.degree:
        raise ValueError("degree mismatch")
    return Permutation._wrap(canonical_rows(H.chain, g.images[None, :])[0])


def canonical_rows(chain: StabilizerChain, X: np.ndarray) -> np.ndarray:
    """Canonical representatives of ``H x`` for every row ``x`` of ``X``."""
    X = np.array(X, copy=True)
    rows = np.arange(X.shape[0])
    for L in chain.levels:
        if L.size() == 1:
            continue
        T = L.transversal_matrix(chain._ident)
        # minimize x(u(b)) = x(delta) over delta in the level orbit
        idx = np.argmin(X[:, L.orbit], axis=1)
        U = T[idx]
        X = X[rows[:, None], U]
    return X


@dataclass
class CosetAction:
    """``G`` acting on the right cosets of ``H`` by right multiplication.

    Coset 0 is ``H`` itself.  ``representatives[i]`` is the canonical element
    of coset ``i``; ``keys`` maps its image tuple on ``G``'s base to ``i``.
    """

    parent: PermGroup
    subgroup: PermGroup
    representatives: np.ndarray
    generator_images: list[Permutation]
    _keys: dict = field(repr=False, default_factory=dict)
    _group: PermGroup | None = field(repr=False, default=None)

    @property
    def degree(self) -> int:
        return self.representatives.shape[0]

    @property
    def group(self) -> PermGroup:
        """The image group on the cosets.  Its chain is built with ``|G|`` as
        an order bound, which is sound because the image is a quotient."""
        if self._group is None:
            self._group = PermGroup(
                self.generator_images, self.degree, name=f"{self.parent.name or 'G'}/cosets",
                order_hint=self.parent.order(),
            )
        return self._group

    def is_faithful(self) -> bool:
        return self.group.order() == self.parent.order()

    def _index_rows(self, X: np.ndarray) -> np.ndarray:
        canon = canonical_rows(self.subgroup.chain, X)
        base = list(self.parent.chain.base)
        keys = _row_keys(np.ascontiguousarray(canon[:, base]))
        out = np.fromiter((self._keys.get(k.tobytes(), -1) for k in keys), dtype=np.int64, count=len(keys))
        return out

    def coset_of(self, g: Permutation) -> int:
        return int(self._index_rows(g.images[None, :])[0])

    def image(self, g: Permutation) -> Permutation:
        """The permutation of the cosets induced by ``g``."""
        X = g.images[self.representatives]
        idx = self._index_rows(X)
        if np.any(idx < 0):
            raise ValueError("element is not in the parent group")
        return Permutation(idx)


def coset_action(G: PermGroup, H: PermGroup, cap: int = DEFAULT_DEGREE_CAP) -> CosetAction:
    """Breadth-first enumeration of the cosets of ``H`` from ``H`` itself."""
    index, rem = divmod(G.order(), H.order())
    if rem:
        raise ValueError("subgroup order does not divide the group order")
    if index > cap:
        raise CosetDegreeError(index, cap)
    n = G.degree
    dt = perm_dtype(n)
    base = list(G.chain.base)
    Hchain = H.chain
    reps = np.empty((index, n), dtype=dt)
    reps[0] = canonical_rows(Hchain, np.arange(n, dtype=dt)[None, :])[0]
    keys: dict[bytes, int] = {reps[0][base].tobytes(): 0}
    count = 1
    gens = [g.images for g in G.generators]
    images = [np.full(index, -1, dtype=np.int64) for _ in gens]
    frontier = np.array([0])
    while frontier.size:
        new = []
        for j, s in enumerate(gens):
            X = s[reps[frontier]]
            canon = canonical_rows(Hchain, X)
            bk = _row_keys(np.ascontiguousarray(canon[:, base]))
            img = images[j]
            for r, key in enumerate(bk):
                kb = key.tobytes()
                idx = keys.get(kb)
                if idx is None:
                    if count >= index:
                        raise AssertionError("more cosets than the index allows")
                    idx = count
                    keys[kb] = idx
                    reps[idx] = canon[r]
                    new.append(idx)
                    count += 1
                img[frontier[r]] = idx
        frontier = np.array(new, dtype=np.int64)
    if count != index:
        raise AssertionError(f"found {count} cosets, expected {index}")
    perms = [Permutation(img) for img in images]
    return CosetAction(G, H, reps, perms, keys)


# ---------------------------------------------------------------------------
# stabilizer tree


@dataclass
class StabNode:
    """Pointwise stabilizer of ``points`` (depth = number of points)."""

    points: tuple[int, ...]
    order: int
    fixed: int
    elements: np.ndarray | None = field(repr=False, default=None)
    chain: StabilizerChain | None = field(repr=False, default=None)
    children: list["StabNode"] = field(default_factory=list, repr=False)

    @property
    def depth(self) -> int:
        return len(self.points)

    def nontrivial_element(self) -> Permutation | None:
        if self.order == 1:
            return None
        if self.elements is not None:
            ident = np.arange(self.elements.shape[1])
            for row in self.elements:
                if not np.array_equal(row, ident):
                    return Permutation._wrap(row)
        for L in self.chain.levels:
            if L.gens:
                return Permutation._wrap(L.gens[0])
        return None


@dataclass
class StabTree:
    """Orbit-representative tree of pointwise stabilizers.

    The root is the whole group (depth 0).  Children of a node with stabilizer
    ``S`` are the ``S``-orbit representatives among the points ``S`` moves; a
    point fixed by all of ``S`` would give the same stabilizer and is skipped.
    Every tuple of distinct points is conjugate to a path in the tree followed
    by points fixed by the last node, so the largest fixed-point count of a
    nontrivial element is the largest ``fixed`` over nontrivial nodes.
    """

    degree: int
    group_order: int
    root: StabNode

    def nodes(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def at_depth(self, d: int) -> list[StabNode]:
        return [nd for nd in self.nodes() if nd.depth == d]

    def max_fix_nontrivial(self) -> int:
        fixes = [nd.fixed for nd in self.nodes() if nd.order > 1]
        return max(fixes) if fixes else 0

    def nontrivial_at_least(self, k: int) -> StabNode | None:
        """A nontrivial node whose stabilizer fixes at least ``k`` points."""
        for nd in self.nodes():
            if nd.order > 1 and nd.fixed >= k:
                return nd
        return None

    def stabilizer_orders(self, k: int) -> list[int]:
        """Orders of the pointwise stabilizers of ``k``-tuples, one entry per
        tree node standing for a conjugacy class of such tuples.

        A node of depth ``d <= k`` stands for ``k``-tuples when it is at depth
        ``k`` or when its stabilizer fixes at least ``k`` points (the tuple is
        completed inside the fixed set, leaving the stabilizer unchanged).
        """
        return [nd.order for nd in self.nodes() if nd.depth <= k and (nd.depth == k or nd.fixed >= k)]


def _node_from_elements(points, E: np.ndarray) -> StabNode:
    fixed = int(np.count_nonzero(np.all(E == np.arange(E.shape[1]), axis=0)))
    return StabNode(tuple(points), E.shape[0], fixed, elements=E)


def _fixed_by_chain(chain: StabilizerChain, degree: int) -> int:
    gens = chain.strong_generators(0)
    if not gens:
        return degree
    ident = np.arange(degree)
    mask = np.ones(degree, dtype=bool)
    for g in gens:
        mask &= g == ident
    return int(np.count_nonzero(mask))


def stab_tree(G: PermGroup, max_nodes: int = 10**6) -> StabTree:
    """Expand the tree until every leaf stabilizer is trivial."""
    n = G.degree
    ident = np.arange(n)
    root = StabNode((), G.order(), _fixed_by_chain(G.chain, n), chain=G.chain)
    _maybe_elements(root, n)
    count = 1
    stack = [root]
    while stack:
        node = stack.pop()
        if node.order == 1:
            continue
        if node.elements is not None:
            E = node.elements
            labels = E.min(axis=0)
            moved = ~np.all(E == ident, axis=0)
            reps = np.flatnonzero((labels == ident) & moved)
            for b in reps:
                child = _node_from_elements(node.points + (int(b),), E[E[:, b] == b])
                node.children.append(child)
        else:
            chain = node.chain
            gens = chain.strong_generators(0)
            labels = orbit_labels(gens, n)
            moved = np.zeros(n, dtype=bool)
            for g in gens:
                moved |= g != ident
            reps = np.flatnonzero((labels == ident) & moved)
            for b in reps:
                b = int(b)
                sub = schreier_sims(gens, n, base=[b], order_hint=node.order).tail(1)
                child = StabNode(node.points + (b,), sub.order(), _fixed_by_chain(sub, n), chain=sub)
                _maybe_elements(child, n)
                node.children.append(child)
        count += len(node.children)
        if count > max_nodes:
            raise RuntimeError(f"stabilizer tree exceeds {max_nodes} nodes")
        stack.extend(node.children)
    return StabTree(n, G.order(), root)


def _maybe_elements(node: StabNode, n: int) -> None:
    if node.order * n <= _ELEMENT_MODE_ENTRIES:
        G = PermGroup([], n, chain=node.chain) if node.chain is not None else None
        node.elements = element_array(G, bound=node.order)
        node.chain = None
