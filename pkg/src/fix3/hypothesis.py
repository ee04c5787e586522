"""Deciding the hypothesis (every 4-point stabilizer trivial, some 3-point
stabilizer nontrivial) and auditing consequences of it.

An action satisfies the hypothesis when it is faithful, transitive and not
regular, every nontrivial element fixes at most three points, and some
nontrivial element fixes exactly three.  Equivalently: the largest number of
points fixed by a nontrivial element is exactly 3.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .cosets import StabTree, stab_tree
from .errors import AuditFailure, CertificateRefused
from .gf import prime_factors
from .perm import (
    Permutation,
    PermGroup,
    _row_keys,
    centralizer_rows,
    conjugates_rows,
    element_array,
    element_blocks,
    elements,
    is_transitive,
    normalizer_rows,
)

TIERS = ("exhaustive", "tree", "structural", "conditional")


@dataclass
class FixedPointSpectrum:
    """Number of elements with exactly ``k`` fixed points, identity included."""

    counts: dict[int, int] = field(default_factory=dict)

    def add(self, k: int, n: int = 1) -> None:
        self.counts[k] = self.counts.get(k, 0) + n

    def merge(self, other: "FixedPointSpectrum") -> "FixedPointSpectrum":
        out = FixedPointSpectrum(dict(self.counts))
        for k, n in other.counts.items():
            out.add(k, n)
        return out

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def weighted(self) -> int:
        """``sum_g |fix(g)|``; equals ``|G|`` times the number of orbits."""
        return sum(k * n for k, n in self.counts.items())

    def nonzero_nontrivial(self, degree: int) -> set[int]:
        return {k for k in self.counts if 0 < k < degree}

    def as_dict(self) -> dict[int, int]:
        return dict(sorted(self.counts.items(), reverse=True))


@dataclass
class HypothesisVerdict:
    satisfied: bool
    tier: str
    max_fix_nontrivial: int
    degree: int
    group_order: int
    witness3: Permutation | None = None
    violation: str | None = None
    conditional: bool = False
    certificate: "StructuralCertificate | None" = None

    def summary(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "tier": self.tier,
            "max_fix": self.max_fix_nontrivial,
            "degree": self.degree,
            "order": self.group_order,
            "violation": self.violation,
            "conditional": self.conditional,
        }


def _preconditions(G: PermGroup, parent_order: int | None) -> str | None:
    if not is_transitive(G):
        return "not transitive"
    if parent_order is not None and G.order() != parent_order:
        return f"not faithful (image order {G.order()} < {parent_order})"
    if G.order() == G.degree:
        return "regular action (point stabilizers are trivial)"
    return None


def _judge(G: PermGroup, tier: str, max_fix: int, witness: Permutation | None,
           bad: Permutation | None, pre: str | None) -> HypothesisVerdict:
    n = G.degree
    if pre is not None:
        return HypothesisVerdict(False, tier, max_fix, n, G.order(), violation=pre)
    if max_fix >= 4:
        msg = f"a nontrivial element fixes {max_fix} points"
        if bad is not None:
            msg += f": {bad.cycle_string()}"
        return HypothesisVerdict(False, tier, max_fix, n, G.order(), violation=msg)
    if max_fix < 3:
        return HypothesisVerdict(False, tier, max_fix, n, G.order(),
                                 violation="no nontrivial 3-point stabilizer")
    if witness is None or witness.num_fixed() != 3 or witness.is_identity():
        raise AssertionError("3-point witness failed its direct fixed-point count")
    return HypothesisVerdict(True, tier, 3, n, G.order(), witness3=witness)


def check_exhaustive(G: PermGroup, parent_order: int | None = None,
                     bound: int | None = None) -> tuple[HypothesisVerdict, FixedPointSpectrum]:
    """Inspect every element: exact verdict and fixed-point spectrum."""
    n = G.degree
    ident = np.arange(n)
    spectrum = FixedPointSpectrum()
    max_fix = 0
    witness = bad = None
    for B in element_blocks(G, bound):
        fix = np.count_nonzero(B == ident, axis=1)
        ks, cnt = np.unique(fix, return_counts=True)
        for k, c in zip(ks.tolist(), cnt.tolist()):
            spectrum.add(k, c)
        nontriv = fix < n
        if not nontriv.any():
            continue
        f = fix[nontriv]
        top = int(f.max())
        if top > max_fix:
            max_fix = top
            bad = Permutation._wrap(B[nontriv][int(f.argmax())])
        if witness is None:
            hit = np.flatnonzero((fix == 3) & nontriv)
            if hit.size:
                witness = Permutation._wrap(B[hit[0]])
    if spectrum.total != G.order():
        raise AssertionError("enumeration did not visit every element exactly once")
    pre = _preconditions(G, parent_order)
    return _judge(G, "exhaustive", max_fix, witness, bad if max_fix >= 4 else None, pre), spectrum


def check_tree(G: PermGroup, parent_order: int | None = None,
               tree: StabTree | None = None) -> HypothesisVerdict:
    """Decide the hypothesis from the stabilizer tree; the witnesses are
    re-checked by counting their fixed points directly."""
    pre = _preconditions(G, parent_order)
    if pre is not None and pre.startswith("not transitive"):
        return _judge(G, "tree", 0, None, None, pre)
    tree = tree or stab_tree(G)
    max_fix = tree.max_fix_nontrivial()
    witness = bad = None
    if max_fix >= 4:
        node = tree.nontrivial_at_least(4)
        bad = node.nontrivial_element()
        if bad.num_fixed() < 4:
            raise AssertionError("tree violation witness fixes fewer than 4 points")
    elif max_fix == 3:
        node = tree.nontrivial_at_least(3)
        witness = node.nontrivial_element()
    return _judge(G, "tree", max_fix, witness, bad, pre)


# ---------------------------------------------------------------------------
# structural certificates


@dataclass
class StructuralCertificate:
    """Evidence that every nontrivial element fixes 0 or 3 cosets of ``H``.

    ``H`` cyclic with ``C_G(y) = H`` for each nontrivial ``y`` in ``H`` means
    a nontrivial element lies in at most one conjugate of ``H``; the cosets it
    fixes are then those of that conjugate's normalizer, ``|N_G(H):H|`` many.
    """

    H_order: int
    H_cyclic: bool
    self_centralizing: str
    normalizer_index: int
    implied_degree: int
    conditional: bool
    checked_powers: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def implies_hypothesis(self) -> bool:
        return self.H_cyclic and self.normalizer_index == 3 and self.self_centralizing != "failed"

    def as_dict(self) -> dict:
        return asdict(self)


def _cyclic_generator(H: PermGroup) -> Permutation | None:
    n = H.order()
    for g in H.generators:
        if g.order() == n:
            return g
    if n <= 10**6:
        for g in elements(H):
            if g.order() == n:
                return g
    return None


def structural_certificate(G: PermGroup, H: PermGroup, mode: str = "bruteforce",
                           assumed_centralizer: int | None = None,
                           normalizing_element: Permutation | None = None,
                           bound: int | None = None) -> StructuralCertificate:
    """Certify ``C_G(y) = H`` for nontrivial ``y`` in cyclic ``H`` and
    ``|N_G(H):H| = 3``.

    ``mode="bruteforce"`` computes both by scanning ``G``.  ``mode="assumed"``
    takes ``|C_G(x)| = assumed_centralizer`` as given and exhibits the index
    with ``normalizing_element``; the certificate is then conditional.
    """
    h = H.order()
    x = _cyclic_generator(H)
    if x is None:
        raise CertificateRefused("H is not cyclic")
    g_order = G.order()
    if g_order % h:
        raise CertificateRefused("|H| does not divide |G|")
    implied = g_order // h
    # element orders checked: |H| itself and each prime dividing it
    powers = sorted({h, *prime_factors(h)}, reverse=True) if h > 1 else []

    if mode == "bruteforce":
        for e in powers:
            y = x ** (h // e)
            c = centralizer_rows(G, y, bound).shape[0]
            if c != h:
                raise CertificateRefused(f"|C_G(y)| = {c} for y of order {e}, expected {h}")
        nrows = normalizer_rows(G, H, bound).shape[0]
        index = nrows // h
        if index != 3:
            raise CertificateRefused(f"|N_G(H):H| = {index}, not 3")
        return StructuralCertificate(h, True, "verified", index, implied, False, powers)

    if mode == "assumed":
        if assumed_centralizer is None or normalizing_element is None:
            raise CertificateRefused("assumed mode needs a centralizer order and a normalizing element")
        if assumed_centralizer != h:
            raise CertificateRefused(f"assumed |C_G(x)| = {assumed_centralizer} differs from |H| = {h}")
        n = normalizing_element
        if not G.contains(n):
            raise CertificateRefused("normalizing element is not in G")
        xn = n.inverse() * x * n
        if not H.contains(xn):
            raise CertificateRefused("exhibited element does not normalize H")
        if xn == x:
            raise CertificateRefused("exhibited element centralizes H")
        ext = PermGroup(list(H.generators) + [n], G.degree).order()
        if ext != 3 * h:
            raise CertificateRefused(f"<H, n> has order {ext}, not 3|H|")
        cert = StructuralCertificate(h, True, f"assumed({assumed_centralizer})", 3, implied, True, powers)
        cert.notes.append("index 3 exhibited by <H, n>; exact normalizer index and centralizer order assumed")
        return cert

    raise ValueError(f"unknown certificate mode {mode!r}")


def verdict_from_certificate(cert: StructuralCertificate, group_order: int) -> HypothesisVerdict:
    tier = "conditional" if cert.conditional else "structural"
    if not cert.implies_hypothesis():
        return HypothesisVerdict(False, tier, -1, cert.implied_degree, group_order,
                                 violation="certificate does not imply the hypothesis",
                                 conditional=cert.conditional, certificate=cert)
    return HypothesisVerdict(True, tier, 3, cert.implied_degree, group_order,
                             conditional=cert.conditional, certificate=cert)


# ---------------------------------------------------------------------------
# audits


@dataclass
class AuditResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"passed": self.passed, **self.detail}


ALL_SUBGROUPS_LIMIT = 64


def _subgroup_generators(H: PermGroup) -> list[list[Permutation]]:
    """Generator lists for the nontrivial subgroups of ``H`` that the audit visits.

    Every cyclic subgroup is visited, and ``H`` itself.  When ``|H|`` is at
    most ``ALL_SUBGROUPS_LIMIT`` every 2-generated subgroup is visited too.
    """
    E = element_array(H)
    ident = np.arange(H.degree)
    seen: set[bytes] = set()
    out: list[list[Permutation]] = []

    def visit(gens: list[Permutation]) -> None:
        S = PermGroup(gens, H.degree)
        key = np.sort(_row_keys(element_array(S))).tobytes()
        if key not in seen:
            seen.add(key)
            out.append(gens)

    nontrivial = [Permutation._wrap(r) for r in E if not np.array_equal(r, ident)]
    for x in nontrivial:
        visit([x])
    if H.order() > 1:
        visit(list(H.generators))
    # a cyclic H has only cyclic subgroups, all visited already
    is_cyclic = any(x.order() == H.order() for x in nontrivial)
    if H.order() <= ALL_SUBGROUPS_LIMIT and not is_cyclic:
        for i, a in enumerate(nontrivial):
            for b in nontrivial[i + 1:]:
                visit([a, b])
    return out


def normalizer_fixed_point_audit(G: PermGroup, H: PermGroup, fixed_points: Callable[[Permutation], np.ndarray],
                                 bound: int | None = None) -> AuditResult:
    """For ``1 != X <= H = G_alpha`` with ``k`` common fixed points, ``k <= 3``:
    the ``N_G(X)``-orbit of ``alpha`` has length at most ``k``.

    ``fixed_points(x)`` returns the fixed points of ``x`` in the action.  Every
    pair ``(X, alpha)`` with ``alpha`` fixed by ``X`` is conjugate to one with
    ``alpha`` the point stabilized by ``H``, so subgroups of ``H`` suffice.
    The orbit length is ``|N_G(X) : N_G(X) ∩ H|``.
    """
    hkeys = _row_keys(element_array(H))
    worst: dict[int, int] = {}
    checked = 0
    for gens in _subgroup_generators(H):
        fix = None
        for x in gens:
            f = set(np.asarray(fixed_points(x)).tolist())
            fix = f if fix is None else fix & f
        k = len(fix)
        if k not in (1, 2, 3):
            continue
        xkeys = _row_keys(element_array(PermGroup(gens, H.degree)))
        n_count = 0
        n_in_h = 0
        for B in element_blocks(G, bound):
            mask = np.ones(B.shape[0], dtype=bool)
            for x in gens:
                conj = conjugates_rows(B, x.images)
                mask &= np.isin(_row_keys(conj), xkeys)
            if mask.any():
                N = B[mask]
                n_count += N.shape[0]
                n_in_h += int(np.count_nonzero(np.isin(_row_keys(N), hkeys)))
        index = n_count // n_in_h
        worst[k] = max(worst.get(k, 0), index)
        checked += 1
        if index > k:
            return AuditResult("normalizer_fixed_points", False,
                               {"k": k, "index": index, "generators": [x.cycle_string() for x in gens]})
    return AuditResult("normalizer_fixed_points", True,
                       {"checked": checked, "max_index_by_fixed_count": dict(sorted(worst.items()))})


def center_order(G: PermGroup, bound: int | None = None) -> int:
    gens = [g.images for g in G.generators]
    count = 0
    for B in element_blocks(G, bound):
        mask = np.ones(B.shape[0], dtype=bool)
        for s in gens:
            mask &= np.all(B[:, s] == s[B], axis=1)
        count += int(np.count_nonzero(mask))
    return count


def center_audit(G: PermGroup, bound: int | None = None) -> AuditResult:
    z = center_order(G, bound)
    return AuditResult("center", z in (1, 3), {"center_order": z})


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def sylow_audit(group_order: int, stab_order: int) -> AuditResult:
    """For primes ``p >= 5`` dividing ``|G_alpha|``, ``G_alpha`` has full ``p``-part."""
    primes = [p for p in prime_factors(stab_order) if p >= 5]
    bad = [p for p in primes if _p_part(stab_order, p) != _p_part(group_order, p)]
    return AuditResult("sylow", not bad, {"primes": primes, "failing": bad})


def burnside_audit(spectrum: FixedPointSpectrum, group_order: int) -> AuditResult:
    total = spectrum.weighted
    return AuditResult("burnside", total == group_order, {"sum_fix": total, "order": group_order})


def require(result: AuditResult) -> AuditResult:
    if not result.passed:
        raise AuditFailure(f"{result.name} audit failed: {result.detail}")
    return result


def fixed_point_formula(G: PermGroup, H: PermGroup, x: Permutation, bound: int | None = None) -> dict:
    """``|C_G(x)| * |x^G ∩ H| / |H|``, the number of cosets of ``H`` fixed by ``x``.

    Both counts come from one scan of ``G``: ``g^-1 x g`` equals ``x`` on the
    centralizer and lands in ``H`` exactly for the class members inside ``H``.
    """
    xa = x.images
    hkeys = _row_keys(element_array(H))
    cent = 0
    meet: set[bytes] = set()
    for B in element_blocks(G, bound):
        conj = conjugates_rows(B, xa)
        cent += int(np.count_nonzero(np.all(conj == xa, axis=1)))
        keys = _row_keys(conj)
        for k in np.unique(keys[np.isin(keys, hkeys)]):
            meet.add(k.tobytes())
    num = cent * len(meet)
    h = H.order()
    if num % h:
        raise AssertionError("fixed-point formula is not an integer")
    return {"centralizer": cent, "class_in_H": len(meet), "fixed": num // h}
