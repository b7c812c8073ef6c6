"""Hall subgroups and the E / C / D verdicts.

A pi-Hall subgroup has pi-number order and pi-free index.  classify()
reports whether one exists (E), whether all of them are conjugate (C), and
whether every pi-subgroup lies inside one (D), with class representatives
as evidence.
"""

from hallperm import classify, pi_part, is_pi_separable, sylow_tower
from hallperm.constructions import alternating, cyclic, psl2, sl2, sl2_subfield_embedding, symmetric

print("== pi-part arithmetic ==")
print(f"pi_part(168, {{2,3}}) = {pi_part(168, {2, 3})}")
print(f"pi_part(4080, {{3,5}}) = {pi_part(4080, {3, 5})}")

print("\n== a group with the full covering property ==")
g16 = sl2(16)
v = classify(g16, {3, 5})
print(f"sl2(16), pi = {{3,5}}: {v.summary()}")
rep = v.hall_class_reps[0]
print(f"the single Hall class has order {rep.order()}"
      f" (a cyclic group: element orders {sorted({e.order() for e in rep.group.elements()})})")

print("\n== the property is not inherited by subgroups ==")
hom, image = sl2_subfield_embedding(4, 16)
sub = classify(image.group, {3, 5})
print(f"the embedded sl2(4) of order {image.order()}: {sub.summary()}")
print("it has no order-15 subgroup because it has no order-15 element")

print("\n== more than one class: E without C ==")
g7 = psl2(7)
v7 = classify(g7, {2, 3})
print(f"psl2(7), pi = {{2,3}}: {v7.summary()}")
for i, r in enumerate(v7.hall_class_reps, 1):
    print(f"  class {i}: order {r.order()}")

print("\n== separability forces the covering property ==")
s4 = symmetric(4)
series = is_pi_separable(s4, {2})
print(f"sym:4 is {{2}}-separable via orders {[s.order() for s in series]}")
print(f"and indeed classify(sym:4, {{2}}): {classify(s4, {2}).summary()}")
a5 = alternating(5)
print(f"alt:5 is {{2,3}}-separable: {is_pi_separable(a5, {2, 3}) is not None}")

print("\n== Sylow towers ==")
a4 = alternating(4)
tower = sylow_tower(a4, (3, 2))
print(f"alt:4 tower of complexion (3,2): orders {[s.order() for s in tower.series]}")
print(f"alt:4 tower of complexion (2,3): {sylow_tower(a4, (2, 3))}")
c15 = cyclic(15)
print(f"cyc:15 tower of complexion (3,5): orders {[s.order() for s in sylow_tower(c15, (3, 5)).series]}")
