import math

import pytest

from fix3.small import TRANSITIVE_COUNTS, CayleyGroup, classify_small, transitive_classes
from fix3.constructors import alt, sym


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_transitive_class_counts(n):
    assert len(transitive_classes(n)) == TRANSITIVE_COUNTS[n]


def test_no_examples_below_degree_five():
    for n in range(1, 5):
        assert classify_small(n) == []


def test_degree_five_is_sym5():
    out = classify_small(5)
    assert [r.order for r in out] == [120]


def test_degree_six_survivors():
    out = classify_small(6)
    orders = sorted(r.order for r in out)
    # Alt6 and imprimitive groups of orders 18 and 36 (two classes of order 36)
    assert orders == [18, 36, 36, 360]
    for r in out:
        assert r.verdict.satisfied and r.verdict.max_fix_nontrivial == 3


def test_cayley_tables():
    C = CayleyGroup(alt(4))
    assert C.order == 12
    e = C.identity
    for i in range(C.order):
        assert C.mul[i, C.inv[i]] == e
    assert len(C.conjugacy_class_reps()) == 4
    assert len(C.subgroup_classes()) == 5


def test_subgroup_classes_of_s4():
    C = CayleyGroup(sym(4))
    assert len(C.subgroup_classes()) == 11
    assert math.factorial(4) == C.order
