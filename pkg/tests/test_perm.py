import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SPerm
from sympy.combinatorics import PermutationGroup as SGroup

from conftest import as_tuples, brute_closure, permutations
from fix3.constructors import alt, cyc, mathieu11, mathieu22, sym
from fix3.errors import EnumerationBoundError
from fix3.perm import (
    Permutation,
    PermGroup,
    centralizer_bruteforce,
    compose,
    element_array,
    element_blocks,
    is_transitive,
    normalizer_bruteforce,
    orbits,
    pointwise_stabilizer,
    schreier_sims,
    sylow_subgroup,
)


def test_compose_three_cycle_squares_to_inverse():
    p = Permutation.from_cycles([[0, 1, 2]], 3)
    assert compose(p, p) == Permutation.from_cycles([[0, 2, 1]], 3)


def test_product_applies_left_factor_first():
    a = Permutation.from_cycles([[0, 1]], 3)
    b = Permutation.from_cycles([[1, 2]], 3)
    # 0 -a-> 1 -b-> 2
    assert (a * b)(0) == 2


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(ValueError):
        Permutation.from_cycles([[0, 1], [1, 2]], 3)


def test_cycle_string_is_one_indexed():
    assert Permutation.from_cycles([[0, 2]], 4).cycle_string() == "(1 3)"
    assert Permutation.identity(4).cycle_string() == "()"


@given(permutations(), st.data())
def test_group_axioms(p, data):
    q = data.draw(permutations(degree=p.degree))
    r = data.draw(permutations(degree=p.degree))
    e = Permutation.identity(p.degree)
    assert (p * q) * r == p * (q * r)
    assert p * e == p == e * p
    assert p * p.inverse() == e
    assert p ** p.order() == e
    assert p ** -1 == p.inverse()


@given(permutations(), st.data())
def test_conjugate_relabels_points(x, data):
    g = data.draw(permutations(degree=x.degree))
    c = x.conjugate(g)
    for w in range(x.degree):
        assert c(g(w)) == g(x(w))
    assert c.num_fixed() == x.num_fixed()


@given(permutations(max_degree=9))
def test_cycles_agree_with_sympy(p):
    sp = SPerm(p.images.tolist())
    assert p.order() == sp.order()
    assert sorted(len(c) for c in p.cycles()) == sorted(len(c) for c in sp.cyclic_form)


def test_seven_cycle_chain():
    G = PermGroup([Permutation.from_cycles([list(range(7))], 7)])
    assert G.order() == 7
    assert len(G.chain.base) == 1


@pytest.mark.parametrize("G,order", [(sym(5), 120), (alt(6), 360), (mathieu11(), 7920), (mathieu22(), 443520)])
def test_known_orders(G, order):
    assert G.order() == order
    assert G.chain.verify()


@settings(max_examples=40, deadline=None)
@given(st.lists(permutations(degree=7), min_size=1, max_size=3))
def test_order_matches_sympy(gens):
    G = PermGroup(gens, 7)
    S = SGroup([SPerm(g.images.tolist()) for g in gens])
    assert G.order() == S.order()


@settings(max_examples=30, deadline=None)
@given(st.lists(permutations(degree=6), min_size=1, max_size=3))
def test_elements_match_brute_closure(gens):
    G = PermGroup(gens, 6)
    E = element_array(G)
    assert E.shape[0] == G.order()
    assert as_tuples(E) == brute_closure(gens, 6)


@settings(max_examples=30, deadline=None)
@given(st.lists(permutations(degree=7), min_size=1, max_size=3), st.data())
def test_membership(gens, data):
    G = PermGroup(gens, 7)
    members = brute_closure(gens, 7)
    for g in gens:
        assert G.contains(g)
    p = data.draw(permutations(degree=7))
    assert G.contains(p) == (tuple(p.images.tolist()) in members)


def test_membership_rejects_point_outside_level_orbit():
    G = PermGroup([Permutation.from_cycles([[0, 1, 2]], 5)])
    assert not G.contains(Permutation.from_cycles([[0, 3]], 5))


def test_base_prefix_respected():
    G = schreier_sims([g.images for g in sym(5).generators], 5, base=[3, 1])
    assert G.base[:2] == (3, 1)
    assert G.order() == 120


def test_blocks_visit_every_element_once():
    G = mathieu11()
    rows = np.concatenate(list(element_blocks(G, max_entries=5000)))
    assert rows.shape[0] == 7920
    assert len(as_tuples(rows)) == 7920


def test_enumeration_bound(monkeypatch):
    monkeypatch.setenv("FIX3_MAX_ENUM", "100")
    with pytest.raises(EnumerationBoundError):
        element_array(sym(5))


def test_orbits_and_transitivity():
    G = PermGroup([cyc([(1, 2), (3, 4, 5)], 6)])
    assert sorted(len(o) for o in orbits(G)) == [1, 2, 3]
    assert not is_transitive(G)
    assert is_transitive(sym(6))


def test_pointwise_stabilizers_of_m11():
    M = mathieu11()
    assert pointwise_stabilizer(M, [0]).order() == 720
    assert pointwise_stabilizer(M, [0, 1, 2]).order() == 8
    assert pointwise_stabilizer(M, [0, 1, 2, 3]).order() == 1


def test_centralizer_and_normalizer_of_11_cycle():
    M = mathieu11()
    x = next(g for g in M.elements() if g.order() == 11)
    C = centralizer_bruteforce(M, x)
    assert C.order() == 11
    N = normalizer_bruteforce(M, PermGroup([x], 11))
    assert N.order() == 55


def test_sylow_orders():
    assert sylow_subgroup(sym(5), 2).order() == 8
    assert sylow_subgroup(alt(7), 7).order() == 7
    assert sylow_subgroup(mathieu11(), 3).order() == 9
