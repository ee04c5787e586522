import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import permutations
from fix3 import constructors as C
from fix3.cosets import coset_action
from fix3.errors import AuditFailure, CertificateRefused
from fix3.hypothesis import (
    FixedPointSpectrum,
    burnside_audit,
    center_audit,
    check_exhaustive,
    check_tree,
    fixed_point_formula,
    normalizer_fixed_point_audit,
    require,
    structural_certificate,
    sylow_audit,
    verdict_from_certificate,
)
from fix3.perm import PermGroup, element_array, sylow_subgroup


def test_a5_on_15_points():
    case = C.alt_cases()[0]
    A = coset_action(case.group, case.subgroup)
    verdict, spectrum = check_exhaustive(A.group, parent_order=60)
    assert verdict.satisfied and verdict.tier == "exhaustive"
    assert spectrum.as_dict() == {15: 1, 3: 15, 0: 44}
    assert verdict.witness3.num_fixed() == 3


def test_violations_are_described():
    v, _ = check_exhaustive(C.sym(4))
    assert not v.satisfied and "3-point" in v.violation
    v, _ = check_exhaustive(C.sym(6))
    assert not v.satisfied and v.max_fix_nontrivial == 4
    v, _ = check_exhaustive(PermGroup([C.cyc([(1, 2, 3)], 6)]))
    assert v.violation == "not transitive"
    v, _ = check_exhaustive(PermGroup([C.cyc([(1, 2, 3, 4, 5)], 5)]))
    assert "regular" in v.violation


def test_unfaithful_action_is_rejected():
    # S4 on the cosets of the dihedral Sylow 2-subgroup has kernel V4
    G = C.sym(4)
    A = coset_action(G, sylow_subgroup(G, 2))
    v, _ = check_exhaustive(A.group, parent_order=24)
    assert "faithful" in v.violation


@settings(max_examples=40, deadline=None)
@given(st.lists(permutations(degree=7), min_size=1, max_size=2))
def test_tiers_agree(gens):
    G = PermGroup(gens, 7)
    ve, spectrum = check_exhaustive(G)
    vt = check_tree(G)
    assert ve.satisfied == vt.satisfied
    if ve.violation != "not transitive":
        assert ve.max_fix_nontrivial == vt.max_fix_nontrivial
    assert burnside_audit(spectrum, G.order()).passed == G.is_transitive()


@given(st.dictionaries(st.integers(0, 9), st.integers(1, 50), max_size=5),
       st.dictionaries(st.integers(0, 9), st.integers(1, 50), max_size=5),
       st.dictionaries(st.integers(0, 9), st.integers(1, 50), max_size=5))
def test_spectrum_merge_is_associative_and_commutative(a, b, c):
    A, B, Cc = (FixedPointSpectrum(dict(x)) for x in (a, b, c))
    left = FixedPointSpectrum(dict(a)).merge(B).merge(Cc)
    right = FixedPointSpectrum(dict(a)).merge(FixedPointSpectrum(dict(b)).merge(Cc))
    assert left.as_dict() == right.as_dict()
    assert FixedPointSpectrum(dict(a)).merge(B).as_dict() == FixedPointSpectrum(dict(b)).merge(A).as_dict()


def test_certificate_psl3_3():
    case = C.singer_psl3(3)
    cert = structural_certificate(case.group, case.subgroup)
    assert not cert.conditional and cert.normalizer_index == 3
    assert cert.implied_degree == 432
    assert cert.checked_powers == [13]
    v = verdict_from_certificate(cert, case.group.order())
    assert v.satisfied and v.tier == "structural"


@pytest.mark.parametrize("build", [C.singer_psl3, C.torus_psu3])
@pytest.mark.parametrize("q", [3, 4])
def test_certificate_agrees_with_exhaustive(build, q):
    case = build(q)
    cert = structural_certificate(case.group, case.subgroup)
    A = coset_action(case.group, case.subgroup)
    v, spectrum = check_exhaustive(A.group, parent_order=case.group.order())
    assert cert.implies_hypothesis() == v.satisfied
    assert spectrum.nonzero_nontrivial(A.degree) == {3}


def test_certificate_refuses_non_self_centralizing():
    G = C.alt(5)
    H = PermGroup([C.cyc([(1, 2, 3)], 5)])
    with pytest.raises(CertificateRefused):
        structural_certificate(G, H)


def test_assumed_certificate_is_conditional():
    case = C.psl4_case(5)
    cert = structural_certificate(case.group, case.subgroup, "assumed",
                                  assumed_centralizer=case.assumed_centralizer,
                                  normalizing_element=case.normalizing_element)
    assert cert.conditional
    v = verdict_from_certificate(cert, case.group.order())
    assert v.tier == "conditional" and v.conditional
    with pytest.raises(CertificateRefused):
        structural_certificate(case.group, case.subgroup, "assumed", assumed_centralizer=62,
                               normalizing_element=case.normalizing_element)


def test_normalizer_audit_on_a5():
    case = C.alt_cases()[0]
    A = coset_action(case.group, case.subgroup)
    res = normalizer_fixed_point_audit(case.group, case.subgroup, lambda x: A.image(x).fixed_points())
    assert res.passed
    # the Klein four-group itself has index 3 in its normalizer's orbit
    assert res.detail["max_index_by_fixed_count"][3] == 3


def test_center_and_sylow_audits():
    assert center_audit(C.alt(5)).passed
    assert not center_audit(PermGroup([C.cyc([(1, 2, 3, 4)], 4)])).passed
    assert sylow_audit(60, 4).passed
    assert not sylow_audit(120, 5).detail["failing"]
    assert sylow_audit(600, 5).detail["failing"] == [5]
    with pytest.raises(AuditFailure):
        require(sylow_audit(600, 5))


def test_fixed_point_formula_a7():
    case = C.alt_cases()[5]
    x = case.subgroup.generators[0]
    f = fixed_point_formula(case.group, case.subgroup, x)
    A = coset_action(case.group, case.subgroup)
    assert f["fixed"] == A.image(x).num_fixed() == 3
