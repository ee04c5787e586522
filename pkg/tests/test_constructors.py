import pytest

from fix3 import constructors as C
from fix3.errors import ConstructionError
from fix3.gf import GF, MatrixFq, is_unitary
from fix3.perm import PermGroup


@pytest.mark.parametrize("n,q", [(2, 7), (2, 8), (2, 11), (3, 2), (3, 3), (3, 4), (4, 3)])
def test_psl_orders(n, q):
    assert C.psl(n, q).order() == C.psl_order(n, q)


@pytest.mark.parametrize("q", [3, 4, 5])
def test_psu3_orders(q):
    assert C.psu(3, q).order() == C.psu_order(3, q)
    assert C.pgu(3, q).order() == C.pgu_order(3, q)


def test_pgl_and_pgaml():
    assert C.pgl(3, 4).order() == 3 * C.psl_order(3, 4)
    assert C.pgaml2(8).order() == 1512
    assert C.pgaml2(4).order() == 120


def test_unitary_transvections_are_unitary():
    for M in C._su_matrix_generators(3, 3):
        assert is_unitary(M)
        assert M.det() == 1


def test_mathieu_degrees():
    assert C.mathieu11().degree == 11
    assert C.mathieu22().degree == 22


@pytest.mark.parametrize("q,stab", [(2, 7), (3, 13), (4, 7), (5, 31)])
def test_singer_psl3(q, stab):
    case = C.singer_psl3(q)
    assert case.subgroup.order() == stab == (q * q + q + 1) // C._gcd(3, q - 1)
    assert case.expected_degree * stab == case.group.order()


@pytest.mark.parametrize("q,stab", [(3, 7), (4, 13), (5, 7)])
def test_torus_psu3(q, stab):
    case = C.torus_psu3(q)
    assert case.subgroup.order() == stab == (q * q - q + 1) // C._gcd(3, q + 1)


def test_psl4_normalizing_element():
    case = C.psl4_case(3)
    n = case.normalizing_element
    x = case.subgroup.generators[0]
    assert n.order() == 3
    assert n.inverse() * x * n == x ** 3
    assert case.expected_degree == 466560


def test_frobenius_matrix_has_order_three():
    Fr = C.frobenius_matrix(3)
    assert Fr.order() == 3


def test_recipe_string_form():
    assert str(C.GroupRecipe("twisted", (2, 2))) == "twisted:2,2"
    assert str(C.GroupRecipe("m11")) == "m11"


def test_seeded_search_is_deterministic():
    G = C.alt(6)
    a = C.find_subgroup_of_order(G, 24, 12345)
    b = C.find_subgroup_of_order(G, 24, 12345)
    assert [g.images.tolist() for g in a.generators] == [g.images.tolist() for g in b.generators]


def test_search_refuses_impossible_order():
    with pytest.raises(ConstructionError):
        C.find_element_of_order(C.alt(5), 7, 1, budget=200)


def test_validate_rejects_wrong_expectation():
    case = C.psl2_7_deg7()
    case.expected_degree = 8
    with pytest.raises(ConstructionError):
        case.validate()


def test_family_preconditions():
    F, H = C.agl1_frobenius(5)
    C.check_frobenius_complement(F, H)
    with pytest.raises(ConstructionError):
        C.check_frobenius_complement(C.sym(4), PermGroup([C.cyc([(1, 2)], 4)]))
    with pytest.raises(ConstructionError):
        C.fukushima(PermGroup([C.cyc([(1, 2)], 4)]), C.cyc([(1, 2, 3, 4)], 4))


def test_family_shapes():
    assert C.maxclass3("wreath33").group.order() == 81
    assert C.maxclass3("extraspecial27").group.order() == 27
    assert C.field3p(3).group.order() == 27 * 26 * 3
    assert C.twisted(2, 2).group.order() == 64 * 63 * 3
    assert C.fukushima_default().group.order() == 168


def test_field_codes_are_consistent_with_gf():
    F = GF(4)
    M = MatrixFq.diagonal(F, [F.primitive, 1])
    assert M.order() == 3
