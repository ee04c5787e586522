"""PSL3(q) acting on the cosets of a Singer cycle.

For q = 3 the action has degree 432.  The full element scan and the
structural certificate reach the same conclusion by different routes.
"""

from fix3.constructors import singer_psl3
from fix3.cosets import coset_action
from fix3.hypothesis import check_exhaustive, structural_certificate

for q in (2, 3, 4):
    case = singer_psl3(q)
    action = coset_action(case.group, case.subgroup)
    verdict, spectrum = check_exhaustive(action.group, parent_order=case.group.order())
    print(f"PSL3({q}): |G| = {case.group.order()}, |H| = {case.subgroup.order()}, degree {action.degree}")
    print(f"    spectrum {spectrum.as_dict()}")
    print(f"    satisfied: {verdict.satisfied}; witness {verdict.witness3.cycle_string()[:60]}...")

    cert = structural_certificate(case.group, case.subgroup)
    print(f"    certificate: C_G(y) = H for y of orders {cert.checked_powers}, "
          f"|N:H| = {cert.normalizer_index}, implied degree {cert.implied_degree}")
