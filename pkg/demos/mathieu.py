"""M11 on 11 points and M22 on the cosets of a subgroup of order 7."""

import time

from fix3.constructors import m22_case, mathieu11
from fix3.cosets import coset_action, stab_tree
from fix3.hypothesis import check_tree, fixed_point_formula

M11 = mathieu11()
tree = stab_tree(M11)
for k in range(1, 5):
    print(f"M11: pointwise stabilizers of {k} points have orders {sorted(set(tree.stabilizer_orders(k)))}")

t0 = time.perf_counter()
case = m22_case()
action = coset_action(case.group, case.subgroup)
verdict = check_tree(action.group, parent_order=case.group.order())
print(f"M22 on {action.degree} cosets: satisfied={verdict.satisfied} ({time.perf_counter() - t0:.1f} s)")

x = case.subgroup.generators[0]
f = fixed_point_formula(case.group, case.subgroup, x)
print(f"    |C(x)| = {f['centralizer']}, |x^G cap H| = {f['class_in_H']}, "
      f"formula {f['fixed']}, direct count {action.image(x).num_fixed()}")
