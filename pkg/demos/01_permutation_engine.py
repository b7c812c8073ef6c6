"""Tour of the exact permutation-group engine.

Permutations are image tuples on 0-based points, composed left to right;
groups carry deterministic stabilizer chains, so orders, membership tests
and element streams are exact and reproducible.
"""

from hallperm import PermGroup, Permutation, normal_closure, right_transversal, coset_action
from hallperm.constructions import psl2, symmetric, wreath_regular

print("== composing permutations ==")
p = Permutation.parse("(0 1)", 5)
q = Permutation.parse("(1 2)", 5)
print(f"p = {p.cycle_string()}, q = {q.cycle_string()}")
print(f"p * q = {(p * q).cycle_string()}   (apply p first, then q)")
print(f"p^q  = {p.conj(q).cycle_string()}   (conjugation q^-1 p q)")

print("\n== stabilizer chains and orders ==")
s5 = symmetric(5)
print(f"sym:5 has order {s5.order()} with base {s5.chain.base}")
g = psl2(7)
print(f"psl2:7 on {g.degree} points has order {g.order()}")
big = wreath_regular(psl2(7), 5).group
print(f"the wreath product psl2:7 wr Z_5 on {big.degree} points has exact order {big.order()}")
print(f"  (that is 168^5 * 5 = {168 ** 5 * 5}; the chain multiplies basic orbit lengths)")

print("\n== membership by sifting ==")
three_cycle = Permutation.parse("(0 1 2)", 5)
swap = Permutation.parse("(0 1)", 5)
from hallperm.constructions import alternating
a5 = alternating(5)
print(f"alt:5 contains {three_cycle.cycle_string()}: {a5.contains(three_cycle)}")
print(f"alt:5 contains {swap.cycle_string()}: {a5.contains(swap)}")

print("\n== elements, transversals, quotients ==")
s3 = symmetric(3)
print(f"sym:3 elements in canonical order: {[e.cycle_string() for e in s3.elements()]}")
stab = PermGroup(5, [Permutation.parse("(1 2)", 5), Permutation.parse("(1 2 3 4)", 5)])
reps = right_transversal(s5, stab)
print(f"right transversal of a point stabilizer in sym:5: {len(reps)} cosets,"
      f" identity first: {reps[0].is_identity}")

closure = normal_closure(s5, [three_cycle])
print(f"normal closure of a 3-cycle in sym:5 has order {closure.order()} (= alt:5)")

s4 = symmetric(4)
v4 = PermGroup(4, [Permutation.parse("(0 1)(2 3)", 4), Permutation.parse("(0 2)(1 3)", 4)])
hom, image = coset_action(s4, v4)
print(f"sym:4 / V4 realized on {image.degree} cosets, image order {image.order()}")
