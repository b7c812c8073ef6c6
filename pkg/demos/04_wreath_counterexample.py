"""The constructive wreath-product counterexample to Hall pronormality.

Take a base X having pi-Hall subgroups in more than one conjugacy class
(psl2:7 with pi = {2,3}: two classes of order 24), a prime p outside pi,
and form the regular wreath product G = X wr Z_p.  Placing one class in the
first copy and the other elsewhere gives Hall subgroups H and K of G that
the shift conjugates into each other, yet no element of <H, K> does: H is
not pronormal in G.
"""

from hallperm import hall_subgroups, is_conjugate, pi_part
from hallperm.constructions import psl2, wreath_hall_pair
from hallperm.group import PermGroup, attach_block_structure
from hallperm.pronormal import pronormality_instance, pronormal_in_normal_closure

pi = {2, 3}
base = psl2(7)
print(f"base X = psl2:7, order {base.order()}")
u, v = hall_subgroups(base, pi)
print(f"two Hall classes for pi = {{2,3}}: orders {u.order()}, {v.order()}")
print(f"non-conjugate in X: {is_conjugate(base, u, v) is None}")

pair = wreath_hall_pair(base, u, v, pi, 5)
g = pair.wreath.group
h = pair.hall_first.group
k = pair.hall_second.group
tau = pair.tau
print(f"\nG = X wr Z_5 on {g.degree} points, exact order {g.order()} = 168^5 * 5")
print(f"H = V x U x U x U x U and K = U x U x U x U x V have order {h.order()}"
      f" = pi_part(|G|) = {pi_part(g.order(), pi)}")

print(f"\nthe shift tau = {tau.cycle_string()[:40]}... conjugates H onto K:"
      f" {all(k.contains(x.conj(tau)) for x in h.generators)}")

joint = attach_block_structure(PermGroup(g.degree, h.generators + k.generators),
                               pair.wreath.blocks)
print(f"the joint <H, K> has order {joint.order()} and splits over the 5 blocks")
print(f"H conjugate to K inside <H, K>: {is_conjugate(joint, h, k) is not None}")
print("  (decided blockwise: in block 0 the components are the two non-conjugate")
print("   classes of X, and an exhaustive scan of X finds no conjugator)")

report = pronormality_instance(g, h, tau)
print(f"\nhence H is not pronormal in G: verdict {report.verdict},"
      f" witness g = tau, mode {report.failure.mode},"
      f" failing block {report.failure.failing_block}")

closure_report = pronormal_in_normal_closure(g, h)
print(f"\nyet H is pronormal in its normal closure"
      f" (order {closure_report.ambient.order()} = 168^5): {closure_report.verdict}")
