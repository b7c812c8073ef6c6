"""Hall-subgroup classes, pi-separability and Sylow towers.

The Hall search rests on one fact: a Hall subgroup is generated by the
Sylow subgroups it contains (the subgroup generated by them has order
divisible by every relevant prime power, sits inside, hence is the whole
thing).  Fixing one Sylow subgroup of a reference prime and varying the
others over all their conjugates therefore meets every conjugacy class of
Hall subgroups, which makes the class enumeration complete without a full
subgroup lattice.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import CapExceeded, GroupError, Caps, DEFAULT_CAPS
from .group import PermGroup, coset_action, group_from_elements, normal_closure, trivial_group
from .numth import is_prime, p_part, prime_divisors
from .perm import Permutation
from .subgroup import (Subgroup, _as_group, _joined_closure, _set_sort_key, all_subgroups,
                       all_sylow_subgroups, conjugate_into, element_conjugacy_classes,
                       is_normal, subgroup_conjugacy_classes, sylow)


class PrimeSet(frozenset):
    """A finite set of primes; complements are always taken relative to a
    stated group's prime divisors, never materialized."""

    __slots__ = ()

    def __new__(cls, primes=()):
        primes = tuple(primes)
        for p in primes:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        return frozenset.__new__(cls, primes)

    def __repr__(self):
        return "{" + ",".join(str(p) for p in sorted(self)) + "}"


def pi_part(n: int, pi) -> int:
    """Largest divisor of n whose prime factors all lie in pi."""
    if n < 1:
        raise ValueError("pi_part needs a positive integer")
    part = 1
    for p in sorted(set(pi)):
        part *= p_part(n, p)
    return part


def is_pi_number(n: int, pi) -> bool:
    for p in set(pi):
        while n % p == 0:
            n //= p
    return n == 1


def is_pi_free(n: int, pi) -> bool:
    """True when no prime of pi divides n (n is a pi'-number)."""
    return all(n % p for p in set(pi))


def is_hall_subgroup(parent: PermGroup, sub, pi) -> bool:
    sub = _as_group(sub)
    n = sub.order()
    return n == pi_part(parent.order(), pi) and is_pi_number(n, pi)


def hall_subgroups(parent: PermGroup, pi, caps: Caps = DEFAULT_CAPS):
    """Conjugacy-class representatives of the pi-Hall subgroups.

    Empty list means no pi-Hall subgroup exists; that verdict is conclusive
    because the Sylow-tuple sweep described in the module docstring would
    have produced one.
    """
    pi = PrimeSet(pi)
    cache_key = ("hall", tuple(sorted(pi)))
    cached = parent._cache.get(cache_key)
    if cached is not None:
        return [Subgroup(parent, g) for g in cached]

    order = parent.order()
    target = pi_part(order, pi)
    if target == 1:
        result = [trivial_group(parent.degree)]
    elif target == order:
        result = [parent]
    else:
        relevant = [p for p in sorted(pi) if order % p == 0]
        sylow_lists = {p: all_sylow_subgroups(parent, p, caps) for p in relevant}
        fixed_p = max(relevant, key=lambda p: (len(sylow_lists[p]), p))
        others = [p for p in relevant if p != fixed_p]
        fixed = sylow(parent, fixed_p, caps).group
        fixed_elems = fixed.element_set(caps)
        candidates = {}
        for combo in itertools.product(*(sylow_lists[p] for p in others)):
            seed = set(fixed_elems)
            gens = fixed.generators
            for q in combo:
                seed |= q.element_set(caps)
                gens = gens + q.generators
            if len(seed) > target:
                continue
            closed = _joined_closure(seed, gens, parent.degree, target)
            if closed is None or len(closed) != target:
                continue
            key = frozenset(closed)
            if key not in candidates:
                candidates[key] = group_from_elements(parent.degree, key)
        groups = [candidates[k] for k in sorted(candidates, key=_set_sort_key)]
        result = [rep for rep, _ in subgroup_conjugacy_classes(parent, groups, caps)]
    parent._cache[cache_key] = result
    return [Subgroup(parent, g) for g in result]


@dataclass(frozen=True)
class ClassVerdict:
    """Outcome of the existence / single-class / covering test for one pi.

    satisfies_d is tested as: single class, plus every pi-subgroup lies in
    a conjugate of the Hall representative.
    """

    pi: PrimeSet
    hall_order: int
    satisfies_e: bool
    satisfies_c: bool
    satisfies_d: bool
    hall_class_reps: tuple
    class_count: int
    d_failure: Optional[Subgroup] = None

    def summary(self) -> str:
        return (f"E={'yes' if self.satisfies_e else 'no'} "
                f"C={'yes' if self.satisfies_c else 'no'} "
                f"D={'yes' if self.satisfies_d else 'no'} "
                f"classes={self.class_count} hall_order={self.hall_order}")


def classify(parent: PermGroup, pi, caps: Caps = DEFAULT_CAPS) -> ClassVerdict:
    """Existence, single-class and covering verdicts for pi in parent."""
    pi = PrimeSet(pi)
    cache_key = ("classify", tuple(sorted(pi)))
    cached = parent._cache.get(cache_key)
    if cached is not None:
        return cached

    target = pi_part(parent.order(), pi)
    reps = hall_subgroups(parent, pi, caps)
    satisfies_e = bool(reps)
    satisfies_c = len(reps) == 1
    satisfies_d = False
    d_failure = None
    if satisfies_c:
        satisfies_d = True
        hall_rep = reps[0]
        if 1 < target < parent.order():
            pi_subs = all_subgroups(parent, order_divides=target, caps=caps)
            classes = subgroup_conjugacy_classes(parent, [s.group for s in pi_subs], caps)
            for rep, _ in classes:
                if rep.order() == 1:
                    continue
                if conjugate_into(parent, rep, hall_rep.group, caps) is None:
                    satisfies_d = False
                    d_failure = Subgroup(parent, rep)
                    break
    verdict = ClassVerdict(pi=pi, hall_order=target, satisfies_e=satisfies_e,
                           satisfies_c=satisfies_c, satisfies_d=satisfies_d,
                           hall_class_reps=tuple(reps), class_count=len(reps),
                           d_failure=d_failure)
    parent._cache[cache_key] = verdict
    return verdict


# -- normal structure ------------------------------------------------------


def all_normal_subgroups(parent: PermGroup, caps: Caps = DEFAULT_CAPS):
    """Every normal subgroup: joins of normal closures of single classes.

    Each normal subgroup is generated by the conjugacy classes it contains,
    so it is a join of the seed closures one class at a time, and every
    partial join is itself normal.
    """
    cached = parent._cache.get("normal_subgroups")
    if cached is None:
        degree = parent.degree
        seeds = {}
        for cls in element_conjugacy_classes(parent, caps):
            rep = cls[0]
            if rep.is_identity:
                continue
            closure = normal_closure(parent, [rep], caps)
            key = closure.element_set(caps)
            if key not in seeds:
                seeds[key] = closure.generators
        seed_items = sorted(seeds.items(), key=lambda kv: _set_sort_key(kv[0]))
        normals = {frozenset([parent.identity]): ()}
        queue = deque()
        for key, gens in seed_items:
            if key not in normals:
                normals[key] = gens
                queue.append(key)
        while queue:
            key = queue.popleft()
            gens = normals[key]
            for skey, sgens in seed_items:
                if skey <= key:
                    continue
                joined = frozenset(_joined_closure(key | skey, gens + sgens, degree, None))
                if joined not in normals:
                    normals[joined] = gens + sgens
                    queue.append(joined)
        result = []
        for key in sorted(normals, key=_set_sort_key):
            g = PermGroup(degree, normals[key])
            g._cache["elements"] = sorted(key)
            g._cache["element_set"] = key
            result.append(g)
        parent._cache["normal_subgroups"] = result
        cached = result
    return [Subgroup(parent, g) for g in cached]


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return ~a * ~b * a * b


def derived_subgroup(parent: PermGroup, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    comms = [commutator(a, b) for a in parent.generators for b in parent.generators]
    return normal_closure(parent, comms, caps)


def is_solvable(parent: PermGroup, caps: Caps = DEFAULT_CAPS) -> bool:
    cached = parent._cache.get("solvable")
    if cached is None:
        current = parent
        while True:
            if current.order() == 1:
                cached = True
                break
            nxt = derived_subgroup(current, caps)
            if nxt.order() == current.order():
                cached = False
                break
            current = nxt
        parent._cache["solvable"] = cached
    return cached


def is_pi_separable(parent: PermGroup, pi, caps: Caps = DEFAULT_CAPS):
    """An ascending normal series with pi- or pi'-factors, or None.

    A separable group always has such a series with terms normal in the
    whole group (its upper pi'pi-series), so a dynamic program over the
    normal subgroup lattice decides separability exactly.
    """
    pi = PrimeSet(pi)
    normals = [s.group for s in all_normal_subgroups(parent, caps)]
    normals.sort(key=lambda g: (g.order(), _set_sort_key(g.element_set(caps))))
    keys = [g.element_set(caps) for g in normals]
    chains = {}
    for g, key in zip(normals, keys):
        if g.order() == 1:
            chains[key] = [g]
            continue
        for m, mkey in zip(normals, keys):
            if m.order() >= g.order() or mkey not in chains or not mkey <= key:
                continue
            ratio = g.order() // m.order()
            if is_pi_number(ratio, pi) or is_pi_free(ratio, pi):
                chains[key] = chains[mkey] + [g]
                break
    top = parent.element_set(caps) if parent.order() <= caps.enum_cap else None
    if top is None:
        raise CapExceeded("enum_cap", caps.enum_cap, parent.order())
    found = chains.get(top)
    if found is None:
        return None
    return [Subgroup(parent, g) for g in found]


# -- Sylow towers ----------------------------------------------------------


@dataclass(frozen=True)
class SylowTower:
    """A normal series of subject with prescribed Sylow factors top-down.

    series runs subject = H_0 > H_1 > ... > H_n = 1; the i-th factor order
    equals the complexion[i]-part of |subject|.
    """

    subject: PermGroup
    complexion: tuple
    series: tuple

    def check(self, caps: Caps = DEFAULT_CAPS):
        order = self.subject.order()
        groups = [s.group for s in self.series]
        if groups[0].order() != order or groups[-1].order() != 1:
            raise GroupError("tower endpoints are wrong")
        for i, p in enumerate(self.complexion):
            if groups[i].order() // groups[i + 1].order() != p_part(order, p):
                raise GroupError(f"tower factor {i} is not the {p}-part")
        for term in groups[1:]:
            if not is_normal(self.subject, term, caps):
                raise GroupError("tower term is not normal in the subject")


def sylow_tower(subject, complexion, caps: Caps = DEFAULT_CAPS) -> Optional[SylowTower]:
    """The Sylow tower of the given complexion, built bottom-up, or None.

    The last complexion prime must have a normal Sylow subgroup; quotient by
    it and recurse, then pull the quotient series back through preimages.
    """
    subject = _as_group(subject)
    complexion = tuple(complexion)
    if sorted(complexion) != prime_divisors(subject.order()) or len(set(complexion)) != len(complexion):
        raise ValueError("complexion must order the prime divisors of the subject")
    series = _tower_series(subject, complexion, caps)
    if series is None:
        return None
    tower = SylowTower(subject=subject, complexion=complexion,
                       series=tuple(Subgroup(subject, g) for g in series))
    tower.check(caps)
    return tower


def _tower_series(group: PermGroup, complexion, caps: Caps):
    if group.order() == 1:
        return [group]
    p = complexion[-1]
    syl = sylow(group, p, caps).group
    if not is_normal(group, syl, caps):
        return None
    hom, quotient = coset_action(group, syl, caps)
    upper = _tower_series(quotient, complexion[:-1], caps)
    if upper is None:
        return None
    elems = group.elements(caps)
    series = []
    for term in upper:
        term_set = term.element_set(caps)
        preimage = [e for e in elems if hom.image_of(e) in term_set]
        series.append(group_from_elements(group.degree, preimage))
    series.append(trivial_group(group.degree))
    return series


@dataclass(frozen=True)
class TowersReport:
    """Same-complexion conjugacy audit across Hall classes of one (G, pi)."""

    pi: PrimeSet
    class_count: int
    tower_complexions: dict
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def towers_conjugacy_check(parent: PermGroup, pi, caps: Caps = DEFAULT_CAPS) -> TowersReport:
    """Hall subgroups admitting a tower of the same complexion must be conjugate.

    Distinct class representatives are pairwise non-conjugate by
    construction, so two of them sharing a tower complexion is a violation.
    """
    pi = PrimeSet(pi)
    reps = hall_subgroups(parent, pi, caps)
    complexions = {}
    for idx, rep in enumerate(reps):
        if rep.order() == 1:
            complexions[idx] = ((),)
            continue
        admitted = []
        for ordering in itertools.permutations(prime_divisors(rep.order())):
            if sylow_tower(rep.group, ordering, caps) is not None:
                admitted.append(ordering)
        complexions[idx] = tuple(admitted)
    violations = []
    seen = {}
    for idx, admitted in complexions.items():
        for ordering in admitted:
            if ordering in seen:
                violations.append((ordering, seen[ordering], idx))
            else:
                seen[ordering] = idx
    return TowersReport(pi=pi, class_count=len(reps),
                        tower_complexions=complexions, violations=tuple(violations))
