"""Pronormality and strong pronormality, with witnesses you can replay.

H is pronormal in G when H and H^g are conjugate inside <H, H^g> for every
g; strongly pronormal when every K <= H and every g admit an element of
<H, K^g> conjugating K^g into H.  Negative verdicts carry the exact failing
data and an exhaustive-scan transcript.
"""

from hallperm import is_pronormal, is_strongly_pronormal, sylow
from hallperm.constructions import alternating, pointwise_stabilizer, symmetric
from hallperm.pronormal import replay_strong_pronormality_failure

print("== classical pronormal families ==")
s5 = symmetric(5)
a5 = alternating(5)
print(f"alt:5 normal in sym:5, pronormal: {is_pronormal(s5, a5).verdict}")
p2 = sylow(s5, 2).group
print(f"a Sylow 2-subgroup of sym:5, pronormal: {is_pronormal(s5, p2).verdict}")

print("\n== pronormal but not strongly pronormal ==")
handle = pointwise_stabilizer(5, 3)
print(f"subject: the pointwise stabilizer of {{3,4}} in sym:5, a copy of sym:3"
      f" (order {handle.order()})")
pron = is_pronormal(s5, handle.group)
print(f"pronormal: {pron.verdict} (checked {pron.checked_coset_count} normalizer cosets)")
strong = is_strongly_pronormal(s5, handle.group)
print(f"strongly pronormal: {strong.verdict}")
fail = strong.failure
print(f"failing pair: K = <{' '.join(g.cycle_string() for g in fail.k.generators)}>"
      f" of order {fail.k.order()}, g = {fail.g.cycle_string()}")
print(f"the joint <H, K^g> has order {fail.joint.order()};"
      f" all {fail.scanned} elements were scanned and none conjugates K^g into H")
print(f"replaying the failure from its own data: {replay_strong_pronormality_failure(strong)}")

print("\n== the same phenomenon one size up ==")
s7 = symmetric(7)
handle7 = pointwise_stabilizer(7, 4)
print(f"stabilizer of a 3-point set in sym:7 (order {handle7.order()}):"
      f" pronormal {is_pronormal(s7, handle7.group).verdict},"
      f" strongly pronormal {is_strongly_pronormal(s7, handle7.group).verdict}")
