"""Named groups and the example actions that the hypothesis checker verifies.

Every builder is deterministic: the same call returns the same generators and
the same point labelling.  Searches that pick a subgroup or an element use a
fixed per-recipe seed, recorded on the returned case.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import ConstructionError
from .gf import (
    GF,
    Field,
    MatrixFq,
    PointGeometry,
    companion_matrix,
    hermitian_isotropic_points,
    is_unitary,
    matrix_perm,
    prime_power,
    primitive_polynomial,
    projective_points,
)
from .perm import (
    Permutation,
    PermGroup,
    Subgroup,
    centralizer_rows,
    element_array,
    generate_until,
    pointwise_stabilizer,
    random_element,
    sylow_subgroup,
    _row_keys,
)

SEARCH_BUDGET = 20000


@dataclass(frozen=True)
class GroupRecipe:
    name: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}:{','.join(str(p) for p in self.params)}"


@dataclass
class ExampleCase:
    """A group ``G`` with the subgroup ``H`` whose right cosets form the action.

    When ``natural`` is set, ``H`` is the stabilizer of point 0 in ``G``'s own
    transitive action and that action is the one meant.
    """

    name: str
    recipe: GroupRecipe
    group: PermGroup
    subgroup: PermGroup
    expected_degree: int
    expected_stab_order: int
    natural: bool = False
    seed: int | None = None
    normalizing_element: Permutation | None = None
    assumed_centralizer: int | None = None
    notes: list[str] = field(default_factory=list)

    def validate(self) -> "ExampleCase":
        g, h = self.group.order(), self.subgroup.order()
        if self.expected_degree * self.expected_stab_order != g:
            raise ConstructionError(
                f"{self.name}: expected degree {self.expected_degree} x stabilizer "
                f"{self.expected_stab_order} != |G| = {g}"
            )
        if h != self.expected_stab_order:
            raise ConstructionError(f"{self.name}: subgroup order {h}, expected {self.expected_stab_order}")
        return self


def recipe_seed(label: str) -> int:
    return zlib.crc32(label.encode())


def cyc(cycles, degree: int) -> Permutation:
    """Permutation from 1-indexed cycles."""
    return Permutation.from_cycles([[a - 1 for a in c] for c in cycles], degree)


def _checked(G: PermGroup, expected: int, label: str) -> PermGroup:
    got = G.order()
    if got != expected:
        raise ConstructionError(f"{label}: constructed order {got}, expected {expected}")
    return G


# ---------------------------------------------------------------------------
# symmetric, alternating, affine


@lru_cache(maxsize=None)
def sym(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("sym needs n >= 1")
    if n == 1:
        return PermGroup([], 1, name="Sym1")
    gens = [Permutation.from_cycles([[0, 1]], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([list(range(n))], n))
    return _checked(PermGroup(gens, n, name=f"Sym{n}"), math.factorial(n), f"sym({n})")


@lru_cache(maxsize=None)
def alt(n: int) -> PermGroup:
    if n < 3:
        raise ValueError("alt needs n >= 3")
    gens = [Permutation.from_cycles([[0, 1, 2]], n)]
    if n > 3:
        long = list(range(n)) if n % 2 else list(range(1, n))
        gens.append(Permutation.from_cycles([long], n))
    return _checked(PermGroup(gens, n, name=f"Alt{n}"), math.factorial(n) // 2, f"alt({n})")


def _field_translations(F: Field) -> list[Permutation]:
    codes = np.arange(F.q)
    return [Permutation(F.add[codes, F.p**i]) for i in range(F.a)]


def _field_multiplication(F: Field, c: int) -> Permutation:
    return Permutation(F.mul[np.arange(F.q), c])


def _field_power(F: Field, e: int) -> Permutation:
    return Permutation(np.array([F.power(x, e) for x in range(F.q)]))


@lru_cache(maxsize=None)
def agl1(q: int) -> PermGroup:
    """``x -> a x + b`` on the elements of ``GF(q)`` (point = field code)."""
    F = GF(q)
    gens = _field_translations(F) + [_field_multiplication(F, F.primitive)]
    return _checked(PermGroup(gens, q, name=f"AGL1({q})"), q * (q - 1), f"agl1({q})")


@lru_cache(maxsize=None)
def agaml1(q: int) -> PermGroup:
    """``AGL(1,q)`` extended by the Frobenius ``x -> x^p``."""
    F = GF(q)
    gens = _field_translations(F) + [_field_multiplication(F, F.primitive), _field_power(F, F.p)]
    return _checked(PermGroup(gens, q, name=f"AGammaL1({q})"), q * (q - 1) * F.a, f"agaml1({q})")


# ---------------------------------------------------------------------------
# classical groups


def _gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def sl_order(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2) * math.prod(q**i - 1 for i in range(2, n + 1))


def psl_order(n: int, q: int) -> int:
    return sl_order(n, q) // _gcd(n, q - 1)


def pgl_order(n: int, q: int) -> int:
    return sl_order(n, q)


def su_order(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2) * math.prod(q**i - (-1) ** i for i in range(2, n + 1))


def psu_order(n: int, q: int) -> int:
    return su_order(n, q) // _gcd(n, q + 1)


def pgu_order(n: int, q: int) -> int:
    return su_order(n, q)


def _transvection(F: Field, n: int, i: int, j: int, lam: int) -> MatrixFq:
    m = np.eye(n, dtype=np.int64)
    m[i, j] = lam
    return MatrixFq(F, m)


def sl_generators(n: int, q: int) -> list[MatrixFq]:
    """Adjacent elementary transvections with entries running over a
    prime-field basis of ``GF(q)``."""
    F = GF(q)
    basis = [F.power(F.primitive, k) for k in range(F.a)] if q > 2 else [1]
    gens = []
    for i in range(n - 1):
        for lam in basis:
            gens.append(_transvection(F, n, i, i + 1, lam))
            gens.append(_transvection(F, n, i + 1, i, lam))
    return gens


def _check_q(q: int, limit: int = 81) -> None:
    prime_power(q)
    if q > limit:
        raise ConstructionError(f"q = {q} is above the supported bound {limit}")


@lru_cache(maxsize=None)
def psl(n: int, q: int) -> PermGroup:
    _check_q(q)
    geom = projective_points(n, q)
    gens = [matrix_perm(M, geom) for M in sl_generators(n, q)]
    G = PermGroup(gens, geom.size, name=f"PSL{n}({q})")
    return _checked(G, psl_order(n, q), f"psl({n},{q})")


@lru_cache(maxsize=None)
def pgl(n: int, q: int) -> PermGroup:
    _check_q(q)
    F = GF(q)
    geom = projective_points(n, q)
    d = MatrixFq.diagonal(F, [F.primitive] + [1] * (n - 1))
    gens = list(psl(n, q).generators) + [matrix_perm(d, geom)]
    return _checked(PermGroup(gens, geom.size, name=f"PGL{n}({q})"), pgl_order(n, q), f"pgl({n},{q})")


@lru_cache(maxsize=None)
def pgaml2(q: int) -> PermGroup:
    """``PGammaL(2,q)`` on the points of the projective line."""
    _check_q(q)
    F = GF(q)
    geom = projective_points(2, q)
    frob = Permutation(geom.indices(F.frob[geom.points]))
    gens = list(pgl(2, q).generators) + [frob]
    return _checked(PermGroup(gens, geom.size, name=f"PGammaL2({q})"), pgl_order(2, q) * F.a, f"pgaml2({q})")


def trace_zero_scalars(F: Field, q: int) -> list[int]:
    """Nonzero ``a`` in ``GF(q^2)`` with ``a + a^q = 0``."""
    codes = np.arange(1, F.q)
    ok = F.add[codes, F.conj(codes)] == 0
    return [int(c) for c in codes[ok]]


def unitary_transvection(F: Field, n: int, v: np.ndarray, a: int) -> MatrixFq:
    """``w -> w + a (w, v) v`` for isotropic ``v``; as a matrix ``I + a (J conj(v)^T) v``."""
    col = F.conj(v[::-1])
    m = F.mul[a, F.mul[col[:, None], v[None, :]]]
    m = F.add[m, np.eye(n, dtype=np.int64)]
    return MatrixFq(F, m)


def _unitary_candidates(n: int, q: int) -> Iterator[MatrixFq]:
    geom = hermitian_isotropic_points(n, q)
    F = geom.F
    scalars = trace_zero_scalars(F, q)
    for v in geom.points:
        for a in scalars:
            M = unitary_transvection(F, n, v, a)
            if not is_unitary(M) or M.det() != 1:
                raise ConstructionError("unitary transvection failed its own validation")
            yield M


@lru_cache(maxsize=None)
def _su_matrix_generators(n: int, q: int) -> tuple[MatrixFq, ...]:
    geom = hermitian_isotropic_points(n, q)
    target = psu_order(n, q)
    mats: dict[Permutation, MatrixFq] = {}

    def perms():
        for M in _unitary_candidates(n, q):
            p = matrix_perm(M, geom)
            mats.setdefault(p, M)
            yield p

    try:
        chosen = generate_until(perms(), geom.size, target)
    except ValueError as exc:
        raise ConstructionError(f"psu({n},{q}): {exc}") from None
    return tuple(mats[p] for p in chosen)


@lru_cache(maxsize=None)
def psu(n: int, q: int) -> PermGroup:
    """``PSU(n,q)`` on isotropic points, generated by unitary transvections
    added one at a time until the group is complete."""
    _check_q(q, 27)
    geom = hermitian_isotropic_points(n, q)
    gens = [matrix_perm(M, geom) for M in _su_matrix_generators(n, q)]
    return _checked(PermGroup(gens, geom.size, name=f"PSU{n}({q})"), psu_order(n, q), f"psu({n},{q})")


def gu_diagonal(n: int, q: int) -> MatrixFq:
    """``diag(1, b, 1)`` with ``b`` of order ``q+1``; its determinant generates
    the norm-1 group, so it completes ``SU3`` to ``GU3``."""
    if n != 3:
        raise ConstructionError("gu_diagonal is defined for n = 3")
    F = GF(q * q)
    M = MatrixFq.diagonal(F, [1, F.power(F.primitive, q - 1), 1])
    if not is_unitary(M):
        raise ConstructionError("diagonal GU element is not unitary")
    return M


@lru_cache(maxsize=None)
def pgu(n: int, q: int) -> PermGroup:
    _check_q(q, 27)
    geom = hermitian_isotropic_points(n, q)
    gens = list(psu(n, q).generators) + [matrix_perm(gu_diagonal(n, q), geom)]
    return _checked(PermGroup(gens, geom.size, name=f"PGU{n}({q})"), pgu_order(n, q), f"pgu({n},{q})")


def psl_family(name: str, q: int) -> PermGroup:
    table = {
        "psl2": lambda: psl(2, q),
        "psl3": lambda: psl(3, q),
        "pgl3": lambda: pgl(3, q),
        "psl4": lambda: psl(4, q),
        "psu3": lambda: psu(3, q),
        "pgu3": lambda: pgu(3, q),
        "psu4": lambda: psu(4, q),
        "pgaml2": lambda: pgaml2(q),
    }
    if name not in table:
        raise ValueError(f"unknown classical family {name!r}")
    return table[name]()


# ---------------------------------------------------------------------------
# Mathieu groups

M11_GENERATORS = (
    ((1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11),),
    ((3, 7, 11, 8), (4, 10, 5, 6)),
)

M22_GENERATORS = (
    (tuple(range(1, 12)), tuple(range(12, 23))),
    ((1, 4, 5, 9, 3), (2, 8, 10, 7, 6), (12, 15, 16, 20, 14), (13, 19, 21, 18, 17)),
    ((1, 21), (2, 10, 8, 6), (3, 13, 4, 17), (5, 19, 9, 18), (11, 22), (12, 14, 16, 20)),
)


def _literal_group(table, degree: int, order: int, label: str) -> PermGroup:
    G = PermGroup([cyc(c, degree) for c in table], degree, name=label)
    _checked(G, order, label)
    if not G.is_transitive():
        raise ConstructionError(f"{label}: generator table is not transitive")
    return G


@lru_cache(maxsize=None)
def mathieu11() -> PermGroup:
    return _literal_group(M11_GENERATORS, 11, 7920, "M11")


@lru_cache(maxsize=None)
def mathieu22() -> PermGroup:
    return _literal_group(M22_GENERATORS, 22, 443520, "M22")


# ---------------------------------------------------------------------------
# searches


def find_element_of_order(G: PermGroup, target: int, seed: int, budget: int = SEARCH_BUDGET) -> Permutation:
    """Seeded random search for an element whose order is a multiple of
    ``target``, powered down to order exactly ``target``."""
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        g = random_element(G, rng)
        o = g.order()
        if o % target == 0:
            return g ** (o // target)
    raise ConstructionError(f"no element of order {target} found in {budget} draws (seed {seed})")


def find_subgroup_of_order(G: PermGroup, k: int, seed: int, budget: int = SEARCH_BUDGET) -> Subgroup:
    """Seeded search for a pair of elements generating a subgroup of order ``k``."""
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        a = random_element(G, rng)
        b = random_element(G, rng)
        if k % a.order() or k % b.order():
            continue
        H = Subgroup(G, [a, b], check=False)
        if H.order() == k:
            return H
    raise ConstructionError(f"no subgroup of order {k} found in {budget} draws (seed {seed})")


def cyclic(G: PermGroup, g: Permutation) -> Subgroup:
    return Subgroup(G, [g], check=False)


def _natural_case(name, recipe, G, notes=()) -> ExampleCase:
    H = pointwise_stabilizer(G, [0])
    return ExampleCase(name, recipe, G, H, G.degree, H.order(), natural=True, notes=list(notes)).validate()


# ---------------------------------------------------------------------------
# alternating rows


def alt_cases() -> list[ExampleCase]:
    A5, A6, A7, A8 = alt(5), alt(6), alt(7), alt(8)
    cases = []
    H = sylow_subgroup(A5, 2)
    cases.append(ExampleCase("a5-syl2", GroupRecipe("alt", (5,)), A5, H, 15, 4).validate())
    cases.append(_natural_case("s5-natural", GroupRecipe("sym", (5,)), sym(5)))
    cases.append(_natural_case("a6-natural", GroupRecipe("alt", (6,)), A6))
    seed = recipe_seed("a6-15")
    H = find_subgroup_of_order(A6, 24, seed)
    cases.append(ExampleCase("a6-15", GroupRecipe("alt", (6,)), A6, H, 15, 24, seed=seed).validate())
    seed = recipe_seed("a7-15")
    H = find_subgroup_of_order(A7, 168, seed)
    cases.append(ExampleCase("a7-15", GroupRecipe("alt", (7,)), A7, H, 15, 168, seed=seed).validate())
    cases.append(ExampleCase("a7-360", GroupRecipe("alt", (7,)), A7, sylow_subgroup(A7, 7), 360, 7).validate())
    cases.append(ExampleCase("a8-2880", GroupRecipe("alt", (8,)), A8, sylow_subgroup(A8, 7), 2880, 7).validate())
    return cases


# ---------------------------------------------------------------------------
# Singer cycles and tori


def singer_matrix(q: int) -> MatrixFq:
    """Companion matrix of the least primitive cubic over ``GF(q)``: order ``q^3-1``."""
    return companion_matrix(GF(q), primitive_polynomial(q, 3))


def singer_psl3(q: int) -> ExampleCase:
    G = psl(3, q)
    d = _gcd(3, q - 1)
    x = matrix_perm(singer_matrix(q) ** d, projective_points(3, q))
    if not G.contains(x):
        raise ConstructionError("Singer power is not in PSL3")
    H = cyclic(G, x)
    k = (q * q + q + 1) // d
    case = ExampleCase(f"psl3-{q}-singer", GroupRecipe("psl3", (q,)), G, H, G.order() // k, k)
    case.notes.append("stabilizer order read as (q^2+q+1)/(3,q-1)")
    return case.validate()


def singer_pgl3(q: int) -> ExampleCase:
    G = pgl(3, q)
    x = matrix_perm(singer_matrix(q), projective_points(3, q))
    H = cyclic(G, x)
    k = q * q + q + 1
    return ExampleCase(f"pgl3-{q}-singer", GroupRecipe("pgl3", (q,)), G, H, G.order() // k, k).validate()


def torus_psu3(q: int) -> ExampleCase:
    if q < 3:
        raise ConstructionError("torus_psu3 needs q >= 3")
    G = psu(3, q)
    k = (q * q - q + 1) // _gcd(3, q + 1)
    seed = recipe_seed(f"psu3-{q}-torus")
    H = cyclic(G, find_element_of_order(G, k, seed))
    case = ExampleCase(f"psu3-{q}-torus", GroupRecipe("psu3", (q,)), G, H, G.order() // k, k, seed=seed)
    case.notes.append(f"degree taken as |G|/|H| = {G.order() // k}")
    return case.validate()


def torus_pgu3(q: int) -> ExampleCase:
    if q < 3:
        raise ConstructionError("torus_pgu3 needs q >= 3")
    G = pgu(3, q)
    k = (q**3 + 1) // (q + 1)
    seed = recipe_seed(f"pgu3-{q}-torus")
    H = cyclic(G, find_element_of_order(G, k, seed))
    case = ExampleCase(f"pgu3-{q}-torus", GroupRecipe("pgu3", (q,)), G, H, G.order() // k, k, seed=seed)
    case.notes.append(f"degree taken as |G|/|H| = {G.order() // k}")
    return case.validate()


def frobenius_matrix(q: int) -> MatrixFq:
    """``y -> y^q`` on ``GF(q^3)`` in the basis ``1, z, z^2`` of a Singer root ``z``.

    Row ``i`` holds the coordinates of ``z^(iq)``, read off row 0 of ``C^(iq)``
    where ``C`` is the Singer companion matrix (multiplication by ``z``).
    """
    C = singer_matrix(q)
    rows = [(C ** (i * q)).entries[0] for i in range(3)]
    return MatrixFq(GF(q), np.array(rows))


def psl4_case(q: int) -> ExampleCase:
    """``PSL4(q)`` on the cosets of ``<diag(C^(q-1), 1)>`` for ``q`` in {3, 5}.

    ``C^(q-1)`` has determinant 1 and order ``q^2+q+1``.  The element
    ``diag(F, det(F)^-1)``, with ``F`` the Frobenius of ``GF(q^3)``, conjugates
    it to its ``q``-th power, giving the normalizing element of order 3.
    """
    if q not in (3, 5):
        raise ConstructionError("psl4_case supports q in {3, 5}")
    F = GF(q)
    geom = projective_points(4, q)
    G = psl(4, q)
    C = singer_matrix(q)
    one = MatrixFq.identity(F, 1)
    X = MatrixFq.block_diagonal(F, [C ** (q - 1), one])
    Fr = frobenius_matrix(q)
    N = MatrixFq.block_diagonal(F, [Fr, MatrixFq(F, [[F.inv(Fr.det())]])])
    if X.det() != 1 or N.det() != 1:
        raise ConstructionError("psl4 torus matrices are not in SL4")
    if not (N.inverse() @ X @ N == X ** q):
        raise ConstructionError("Frobenius matrix does not conjugate x to x^q")
    x, n = matrix_perm(X, geom), matrix_perm(N, geom)
    k = q * q + q + 1
    if x.order() != k or n.order() != 3:
        raise ConstructionError("psl4 torus element orders are wrong")
    H = cyclic(G, x)
    case = ExampleCase(
        f"psl4-{q}-c{k}", GroupRecipe("psl4", (q,)), G, H, G.order() // k, k,
        normalizing_element=n,
        assumed_centralizer=(q**3 - 1) // _gcd(4, q - 1),
    )
    return case.validate()


def psu4_case(q: int = 3) -> ExampleCase:
    if q != 3:
        raise ConstructionError("psu4_case supports q = 3 only")
    G = psu(4, q)
    seed = recipe_seed("psu4-3-c7")
    H = cyclic(G, find_element_of_order(G, 7, seed))
    return ExampleCase("psu4-3-c7", GroupRecipe("psu4", (q,)), G, H, G.order() // 7, 7, seed=seed).validate()


# ---------------------------------------------------------------------------
# small linear and sporadic rows


def psl2_7_deg7() -> ExampleCase:
    return _natural_case("psl2-7-deg7", GroupRecipe("psl3", (2,)), psl(3, 2))


def psl2_11_deg11() -> ExampleCase:
    G = psl(2, 11)
    seed = recipe_seed("psl2-11-deg11")
    H = find_subgroup_of_order(G, 60, seed)
    return ExampleCase("psl2-11-deg11", GroupRecipe("psl2", (11,)), G, H, 11, 60, seed=seed).validate()


def m11_case() -> ExampleCase:
    return _natural_case("m11-11", GroupRecipe("m11"), mathieu11())


def m22_case() -> ExampleCase:
    G = mathieu22()
    seed = recipe_seed("m22-63360")
    H = cyclic(G, find_element_of_order(G, 7, seed))
    return ExampleCase("m22-63360", GroupRecipe("m22"), G, H, 63360, 7, seed=seed).validate()


def pgaml2_case(p: int) -> ExampleCase:
    q = 2**p
    return _natural_case(f"pgaml2-{q}", GroupRecipe("pgaml2", (q,)), pgaml2(q))


# ---------------------------------------------------------------------------
# the general example families


def _elements_with_keys(G: PermGroup):
    E = element_array(G)
    return E, _row_keys(E)


def heisenberg27() -> PermGroup:
    """Extraspecial group of order 27 and exponent 3 in its regular action.

    Elements are triples ``(a, b, c)`` mod 3 with
    ``(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')``; point index ``9a+3b+c``.
    """
    def right_mult(g):
        a2, b2, c2 = g
        img = []
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    img.append(9 * ((a + a2) % 3) + 3 * ((b + b2) % 3) + (c + c2 + a * b2) % 3)
        return Permutation(img)

    return _checked(PermGroup([right_mult((1, 0, 0)), right_mult((0, 1, 0))], 27, name="3^(1+2)"), 27, "heisenberg27")


def wreath33() -> PermGroup:
    gens = [cyc([(1, 2, 3)], 9), cyc([(1, 4, 7), (2, 5, 8), (3, 6, 9)], 9)]
    return _checked(PermGroup(gens, 9, name="Z3wrZ3"), 81, "wreath33")


def maxclass3(kind: str) -> ExampleCase:
    """A 3-group with an order-3 subgroup whose centralizer has order 9."""
    builders = {"wreath33": wreath33, "extraspecial27": heisenberg27}
    if kind not in builders:
        raise ValueError(f"unknown maxclass3 kind {kind!r}")
    P = builders[kind]()
    E = element_array(P)
    ident = np.arange(P.degree)
    for row in E:
        x = Permutation._wrap(row)
        if np.array_equal(row, ident) or x.order() != 3:
            continue
        if centralizer_rows(P, x).shape[0] == 9:
            H = cyclic(P, x)
            return ExampleCase(f"maxclass3-{kind}", GroupRecipe("maxclass3", (kind,)), P, H, P.order() // 3, 3).validate()
    raise ConstructionError(f"{kind}: no order-3 subgroup with centralizer of order 9")


def field3p(p: int) -> ExampleCase:
    """``AGammaL(1, 3^p)`` on the field; the point stabilizer of 0 is the
    multiplicative group extended by the Galois group."""
    q = 3**p
    if p not in (2, 3, 5):
        raise ConstructionError("field3p needs a prime p with 3^p <= 243")
    G = agaml1(q)
    H = pointwise_stabilizer(G, [0])
    case = ExampleCase(f"field3p-{p}", GroupRecipe("field3p", (p,)), G, H, q, (q - 1) * p, natural=True)
    return case.validate()


def agl1_frobenius(q: int) -> tuple[PermGroup, PermGroup]:
    """``AGL(1,q)`` with its complement, the stabilizer of 0."""
    F = agl1(q)
    return F, pointwise_stabilizer(F, [0])


def check_frobenius_complement(F: PermGroup, H: PermGroup) -> None:
    """``H`` is a Frobenius complement: ``H ∩ H^g = 1`` for every ``g`` outside ``H``."""
    EF = element_array(F)
    EH, kh = _elements_with_keys(H)
    in_h = np.isin(_row_keys(EF), kh)
    for g, inside in zip(EF, in_h):
        if inside:
            continue
        # rows of H^g
        conj = np.empty_like(EH)
        np.put_along_axis(conj, np.broadcast_to(g.astype(np.int64), EH.shape), g[EH], axis=1)
        if np.isin(_row_keys(conj), kh).sum() > 1:
            raise ConstructionError("not a Frobenius complement: H meets a conjugate nontrivially")
    if H.order() in (1, F.order()):
        raise ConstructionError("Frobenius complement must be proper and nontrivial")


def direct_product_z3(F: PermGroup, gens_sub) -> tuple[PermGroup, PermGroup]:
    """``Z3 x F`` on ``3 + deg(F)`` points and the image of a subgroup of ``F``."""
    n = F.degree + 3

    def shift(p: Permutation) -> Permutation:
        return Permutation(np.concatenate([np.arange(3), p.images.astype(np.int64) + 3]))

    z = Permutation(np.concatenate([[1, 2, 0], np.arange(3, n)]))
    G = PermGroup([z] + [shift(g) for g in F.generators], n, name=f"Z3x{F.name}")
    H = Subgroup(G, [shift(h) for h in gens_sub], check=False)
    return G, H


def z3xfrob(F: PermGroup, H: PermGroup, label: str) -> ExampleCase:
    check_frobenius_complement(F, H)
    G, H3 = direct_product_z3(F, H.generators)
    kernel = F.order() // H.order()
    case = ExampleCase(f"z3xfrob-{label}", GroupRecipe("z3xfrob", ()), G, H3, 3 * kernel, H.order())
    if G.order() != 3 * F.order():
        raise ConstructionError("direct product has the wrong order")
    return case.validate()


def z3xfrob_agl1(q: int) -> ExampleCase:
    F, H = agl1_frobenius(q)
    case = z3xfrob(F, H, str(q))
    case.recipe = GroupRecipe("z3xfrob", (q,))
    return case


def twisted(p: int, r: int) -> ExampleCase:
    """``(A:M):H`` inside ``AGammaL(1, p^(3r))`` acting on the cosets of ``M``,
    with ``H`` the Galois subgroup of order 3."""
    q = p ** (3 * r)
    if q > 3**6:
        raise ConstructionError("twisted needs p^(3r) <= 3^6")
    F = GF(q)
    m = _field_multiplication(F, F.primitive)
    h = _field_power(F, p**r)
    G = PermGroup(_field_translations(F) + [m, h], q, name=f"twisted({p},{r})")
    _checked(G, q * (q - 1) * 3, f"twisted({p},{r})")
    M = cyclic(G, m)
    case = ExampleCase(f"twisted-{p}-{r}", GroupRecipe("twisted", (p, r)), G, M, 3 * q, q - 1)
    return case.validate()


def fukushima(H: PermGroup, alpha: Permutation, label: str = "custom") -> ExampleCase:
    """``G = H <alpha>`` acting on the cosets of ``<alpha>``, after checking
    the preconditions on ``alpha``."""
    o = alpha.order()
    if o < 3 or o % 2 == 0 or any(o % d == 0 for d in range(2, int(o**0.5) + 1)):
        raise ConstructionError(f"alpha must have odd prime order (got {o})")
    if math.gcd(o, H.order()) != 1:
        raise ConstructionError("order of alpha is not coprime to |H|")
    ainv = alpha.inverse()
    for h in H.generators:
        if not H.contains(ainv * h * alpha):
            raise ConstructionError("alpha does not normalize H")
    c = _centralizer_count(H, alpha)
    if c != 3:
        raise ConstructionError(f"|C_H(alpha)| = {c}, not 3")
    G = PermGroup(list(H.generators) + [alpha], H.degree, name=f"fukushima-{label}")
    if G.order() != H.order() * o:
        raise ConstructionError("H <alpha> is not a semidirect product of the expected order")
    A = cyclic(G, alpha)
    return ExampleCase(f"fukushima-{label}", GroupRecipe("fukushima", ()), G, A, H.order(), o).validate()


def _centralizer_count(H: PermGroup, alpha: Permutation) -> int:
    a = alpha.images
    E = element_array(H)
    return int(np.count_nonzero(np.all(E[:, a] == a[E], axis=1)))


def fukushima_default() -> ExampleCase:
    """``H = Z3 x (Z2)^3`` with ``alpha`` of order 7 acting as multiplication
    by a primitive element of ``GF(8)`` on the ``(Z2)^3`` factor."""
    F = GF(8)
    n = 11

    def on_field(perm_codes) -> Permutation:
        return Permutation(np.concatenate([np.arange(3), np.asarray(perm_codes) + 3]))

    z = Permutation(np.concatenate([[1, 2, 0], np.arange(3, n)]))
    trans = [on_field(F.add[np.arange(8), F.p**i]) for i in range(F.a)]
    H = PermGroup([z] + trans, n, name="Z3x2^3")
    _checked(H, 24, "fukushima H")
    alpha = on_field(F.mul[np.arange(8), F.primitive])
    case = fukushima(H, alpha, "z3x2^3")
    case.recipe = GroupRecipe("fukushima", ())
    return case
