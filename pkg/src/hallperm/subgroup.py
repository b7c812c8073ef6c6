"""Subgroup machinery: normality, normalizers, Sylow subgroups, subgroup
lattices, and conjugacy searches with replayable witnesses.

Every search here is exhaustive in the canonical element order (sorted image
tuples), so the first witness found is always the lexicographically least
one and reruns produce identical output.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .errors import CapExceeded, GroupError, Caps, DEFAULT_CAPS
from .group import (PermGroup, Permutation, combine_blockwise, decompose_blockwise,
                    group_from_elements, right_transversal, subgroup_check, trivial_group)
from .numth import is_p_power, is_prime, p_part


@dataclass(frozen=True)
class Subgroup:
    """A subgroup together with the group it was verified to live in."""

    parent: PermGroup
    group: PermGroup

    def __post_init__(self):
        subgroup_check(self.parent, self.group)

    def order(self) -> int:
        return self.group.order()

    def __repr__(self):
        return f"Subgroup(order={self.group.order()} of order={self.parent.order()})"


def _as_group(h) -> PermGroup:
    return h.group if isinstance(h, Subgroup) else h


@dataclass(frozen=True)
class ConjugacyWitness:
    """A conjugating element g with source^g = target (or <= for `into`).

    Replayed on construction: every source generator conjugated by the
    witness must land in the target, and for equality witnesses the orders
    must agree.
    """

    element: Permutation
    source: PermGroup
    target: PermGroup
    into: bool = False

    def __post_init__(self):
        for g in self.source.generators:
            if not self.target.contains(g.conj(self.element)):
                raise GroupError("conjugacy witness fails replay")
        if not self.into and self.source.order() != self.target.order():
            raise GroupError("conjugacy witness relates groups of unequal order")

    def inverse(self) -> "ConjugacyWitness":
        if self.into:
            raise GroupError("an into-witness cannot be inverted")
        return ConjugacyWitness(~self.element, self.target, self.source)


def conjugated_key(elems, g: Permutation):
    return frozenset(e.conj(g) for e in elems)


def is_normal(parent: PermGroup, sub, caps: Caps = DEFAULT_CAPS) -> bool:
    """True iff a^g stays in sub for all generators a of sub, g of parent."""
    sub = _as_group(sub)
    subgroup_check(parent, sub)
    return all(sub.contains(a.conj(g)) for a in sub.generators for g in parent.generators)


def normalizer(parent: PermGroup, sub, caps: Caps = DEFAULT_CAPS) -> Subgroup:
    """N_parent(sub) = {g : sub^g = sub}.

    Scans the parent's elements when it is enumerable; for a shiftless direct
    product with a blockwise-decomposable subgroup the normalizer is the
    product of the per-block normalizers instead.
    """
    sub = _as_group(sub)
    subgroup_check(parent, sub)
    cache_key = ("normalizer", sub.key(caps))
    cached = parent._cache.get(cache_key)
    if cached is not None:
        return Subgroup(parent, cached)

    result = None
    if parent.order() <= caps.enum_cap:
        sub_set = sub.element_set(caps)
        gens = sub.generators
        members = [g for g in parent.elements(caps)
                   if all(h.conj(g) in sub_set for h in gens)]
        result = group_from_elements(parent.degree, members)
    else:
        result = _normalizer_blockwise(parent, sub, caps)
        if result is None:
            raise CapExceeded("enum_cap", caps.enum_cap, parent.order())
    parent._cache[cache_key] = result
    return Subgroup(parent, result)


def _normalizer_blockwise(parent: PermGroup, sub: PermGroup, caps: Caps):
    structure = parent.factors
    if structure is None or structure.shift is not None:
        return None
    blocks = structure.blocks
    if math.prod(f.order() for f in structure.factor_groups) != parent.order():
        return None
    parts = decompose_blockwise(sub, blocks)
    if parts is None:
        return None
    gens = []
    from .group import inflate
    for block, factor, part in zip(blocks, structure.factor_groups, parts):
        n_block = normalizer(factor, part, caps).group
        gens.extend(inflate(g, block, parent.degree) for g in n_block.generators)
    return PermGroup(parent.degree, gens)


def sylow(parent: PermGroup, p: int, caps: Caps = DEFAULT_CAPS) -> Subgroup:
    """A Sylow p-subgroup, grown by ascending normalizers.

    Start from the p-power part of the first element of order divisible by
    p; while the subgroup is not yet full, its normalizer contains a
    p-element outside it (p-groups are proper in their Sylow normalizer),
    and the first such element in canonical order extends it.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    cached = parent._cache.get(("sylow", p))
    if cached is not None:
        return Subgroup(parent, cached)
    target = p_part(parent.order(), p)
    if target == 1:
        result = trivial_group(parent.degree)
        parent._cache[("sylow", p)] = result
        return Subgroup(parent, result)
    seed = None
    for e in parent.elements(caps):
        o = e.order()
        if o % p == 0:
            seed = e ** (o // p_part(o, p))
            break
    current = PermGroup(parent.degree, [seed])
    while current.order() < target:
        norm = normalizer(parent, current, caps).group
        extended = None
        for x in norm.elements(caps):
            if x.is_identity or not is_p_power(x.order(), p):
                continue
            if not current.contains(x):
                extended = PermGroup(parent.degree, current.generators + (x,))
                break
        if extended is None:
            raise GroupError("sylow ascent stalled (library bug)")
        current = extended
    if current.order() != target:
        raise GroupError("sylow construction produced a wrong order")
    parent._cache[("sylow", p)] = current
    return Subgroup(parent, current)


def all_sylow_subgroups(parent: PermGroup, p: int, caps: Caps = DEFAULT_CAPS):
    """Every Sylow p-subgroup: the conjugation orbit of one of them."""
    cached = parent._cache.get(("all_sylow", p))
    if cached is None:
        start = sylow(parent, p, caps).group
        start_elems = start.element_set(caps)
        orbit = {start_elems: start}
        frontier = deque([start_elems])
        while frontier:
            elems = frontier.popleft()
            for g in parent.generators:
                image = conjugated_key(elems, g)
                if image not in orbit:
                    orbit[image] = group_from_elements(parent.degree, image)
                    frontier.append(image)
        cached = [orbit[k] for k in sorted(orbit, key=_set_sort_key)]
        parent._cache[("all_sylow", p)] = cached
    return list(cached)


def _set_sort_key(elems):
    return (len(elems), tuple(sorted(elems)))


def _joined_closure(seed, gens, degree, limit):
    """Closure of a seed element set under right products; None past limit."""
    seen = set(seed)
    frontier = deque(seen)
    gens = [g for g in gens if not g.is_identity]
    while frontier:
        e = frontier.popleft()
        for g in gens:
            prod = e * g
            if prod not in seen:
                if limit is not None and len(seen) >= limit:
                    return None
                seen.add(prod)
                frontier.append(prod)
    return seen


def all_subgroups(parent: PermGroup, order_divides=None, caps: Caps = DEFAULT_CAPS):
    """Every subgroup, optionally only those whose order divides a target.

    Closure of the cyclic subgroups under pairwise joins: any subgroup is a
    join of its cyclic subgroups added one at a time, and each intermediate
    join is again a subgroup, so iterating joins with cyclic subgroups to a
    fixed point enumerates the whole lattice.  With a divisor filter the
    same argument runs inside any subgroup of admissible order, so pruning
    joins that leave the divisor set loses nothing.
    """
    n = parent.order()
    if n > caps.subgroup_cap:
        raise CapExceeded("subgroup_cap", caps.subgroup_cap, n)
    cache_key = ("all_subgroups", order_divides)
    cached = parent._cache.get(cache_key)
    if cached is not None:
        return [Subgroup(parent, g) for g in cached]

    degree = parent.degree
    identity = parent.identity
    limit = order_divides if order_divides is not None else n

    cyclics = {}
    for e in parent.elements(caps):
        if e.is_identity:
            continue
        if order_divides is not None and order_divides % e.order() != 0:
            continue
        powers = set()
        x = e
        while not x.is_identity:
            powers.add(x)
            x = x * e
        powers.add(identity)
        key = frozenset(powers)
        if key not in cyclics:
            cyclics[key] = e
    cyclic_items = sorted(cyclics.items(), key=lambda kv: _set_sort_key(kv[0]))

    subgroups = {frozenset([identity]): ()}
    queue = deque()
    for key, gen in cyclic_items:
        if key not in subgroups:
            subgroups[key] = (gen,)
            queue.append(key)
    while queue:
        key = queue.popleft()
        gens = subgroups[key]
        for ckey, cgen in cyclic_items:
            if cgen in key:
                continue
            joined = _joined_closure(key | ckey, gens + (cgen,), degree, limit)
            if joined is None:
                continue
            size = len(joined)
            if order_divides is not None and order_divides % size != 0:
                continue
            jkey = frozenset(joined)
            if jkey not in subgroups:
                subgroups[jkey] = gens + (cgen,)
                queue.append(jkey)

    result = []
    for key in sorted(subgroups, key=_set_sort_key):
        g = PermGroup(degree, subgroups[key])
        g._cache["elements"] = sorted(key)
        g._cache["element_set"] = key
        result.append(g)
    parent._cache[cache_key] = result
    return [Subgroup(parent, g) for g in result]


def subgroup_conjugacy_classes(parent: PermGroup, groups, caps: Caps = DEFAULT_CAPS):
    """Partition subgroups of parent into conjugacy classes.

    Returns (rep, class_size) pairs, one per class met among `groups`, the
    rep being the subgroup with the least element set in its full orbit.
    The orbit is closed under all parent generators, so class sizes are
    exact even when `groups` holds only part of a class.
    """
    pending = {}
    for g in groups:
        pending.setdefault(g.element_set(caps), g)
    classes = []
    visited = set()
    for key in sorted(pending, key=_set_sort_key):
        if key in visited:
            continue
        orbit = {key}
        frontier = deque([key])
        while frontier:
            elems = frontier.popleft()
            for g in parent.generators:
                image = conjugated_key(elems, g)
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        visited |= orbit
        rep_key = min(orbit, key=_set_sort_key)
        rep = pending.get(rep_key) or group_from_elements(parent.degree, rep_key)
        classes.append((rep, len(orbit)))
    return classes


def _blockwise_structure_usable(parent: PermGroup):
    structure = parent.factors
    if structure is None:
        return None
    expected = math.prod(f.order() for f in structure.factor_groups)
    if structure.shift is not None:
        expected *= structure.shift.order()
    if expected != parent.order():
        return None
    return structure


def _is_conjugate_blockwise(parent: PermGroup, h: PermGroup, k: PermGroup, caps: Caps):
    """Blockwise conjugacy for (shifted) direct products.

    Returns ("na", None) when the structure does not apply, otherwise
    ("ok", witness_or_None).  For a shifted product (regular wreath), a
    conjugator y*shift^j rotates the block components by j, so each rotation
    is tried with per-block searches in the factors.
    """
    structure = _blockwise_structure_usable(parent)
    if structure is None:
        return "na", None
    blocks = structure.blocks
    h_parts = decompose_blockwise(h, blocks)
    k_parts = decompose_blockwise(k, blocks)
    if h_parts is None or k_parts is None:
        return "na", None
    factors = structure.factor_groups
    p = len(blocks)
    if structure.shift is None:
        rotations = [list(range(p))]
    else:
        # sigma: where conjugation by the shift sends each block's content
        starts = {block[0]: idx for idx, block in enumerate(blocks)}
        sigma = [starts[structure.shift[block[0]]] for block in blocks]
        rotations = []
        current = list(range(p))
        for _ in range(p):
            rotations.append(current)
            current = [sigma[i] for i in current]
    for j, rotation in enumerate(rotations):
        parts = []
        for i in range(p):
            # h^(y * shift^j) has component h_i^(y_i) at block rotation[i]
            w = is_conjugate(factors[i], h_parts[i], k_parts[rotation[i]], caps)
            if w is None:
                parts = None
                break
            parts.append(w.element)
        if parts is None:
            continue
        # h^(y * shift^j) = (h^y)^(shift^j): y conjugates inside each block,
        # then the shift rotates the blocks
        element = combine_blockwise(parts, blocks, parent.degree)
        if j:
            element = element * structure.shift ** j
        return "ok", ConjugacyWitness(element, h, k)
    return "ok", None


def is_conjugate(parent: PermGroup, h, k, caps: Caps = DEFAULT_CAPS):
    """A witness g with h^g = k inside parent, or None for proven absence.

    Unequal orders are absence without search.  A usable block structure is
    solved per block and combined; otherwise g runs over the right
    transversal of N_parent(h), whose cosets exhaust all distinct h^g.
    """
    h = _as_group(h)
    k = _as_group(k)
    subgroup_check(parent, h)
    subgroup_check(parent, k)
    if h.order() != k.order():
        return None
    if all(k.contains(g) for g in h.generators):
        return ConjugacyWitness(parent.identity, h, k)
    status, witness = _is_conjugate_blockwise(parent, h, k, caps)
    if status == "ok":
        return witness
    return _is_conjugate_transversal(parent, h, k, caps)


def _is_conjugate_transversal(parent: PermGroup, h: PermGroup, k: PermGroup, caps: Caps):
    if parent.order() > caps.enum_cap:
        raise CapExceeded("enum_cap", caps.enum_cap, parent.order())
    k_key = k.element_set(caps)
    h_elems = h.element_set(caps)
    norm = normalizer(parent, h, caps).group
    for t in right_transversal(parent, norm, caps):
        if conjugated_key(h_elems, t) == k_key:
            return ConjugacyWitness(t, h, k)
    return None


def conjugate_into(parent: PermGroup, k, h, caps: Caps = DEFAULT_CAPS):
    """A witness x in parent with k^x <= h, or None for proven absence.

    Exhaustive scan over the parent's elements in canonical order, so the
    returned witness is the least one.
    """
    k = _as_group(k)
    h = _as_group(h)
    subgroup_check(parent, k)
    subgroup_check(parent, h)
    if h.order() % k.order() != 0:
        return None
    h_set = h.element_set(caps)
    if all(g in h_set for g in k.generators):
        return ConjugacyWitness(parent.identity, k, h, into=True)
    gens = k.generators
    for x in parent.elements(caps):
        if all(g.conj(x) in h_set for g in gens):
            return ConjugacyWitness(x, k, h, into=True)
    return None


def overgroups(parent: PermGroup, sub, caps: Caps = DEFAULT_CAPS):
    """Every subgroup M with sub <= M <= parent.

    BFS on joins <M, t> with t running over a right transversal of M: any
    overgroup arises by adjoining one element at a time, and adjoining any
    element of a coset Mt yields the same join as adjoining t.
    """
    sub = _as_group(sub)
    subgroup_check(parent, sub)
    cache_key = ("overgroups", sub.key(caps))
    cached = parent._cache.get(cache_key)
    if cached is None:
        found = {sub.element_set(caps): sub}
        queue = deque([sub])
        parent_order = parent.order()
        while queue:
            m = queue.popleft()
            if m.order() == parent_order:
                continue
            for t in right_transversal(parent, m, caps)[1:]:
                join = PermGroup(parent.degree, m.generators + (t,))
                key = join.element_set(caps)
                if key not in found:
                    found[key] = join
                    queue.append(join)
        cached = [found[k] for k in sorted(found, key=_set_sort_key)]
        parent._cache[cache_key] = cached
    return [Subgroup(parent, g) for g in cached]


def element_conjugacy_classes(parent: PermGroup, caps: Caps = DEFAULT_CAPS):
    """Conjugacy classes of elements, each a sorted list, reps first elements."""
    cached = parent._cache.get("element_classes")
    if cached is None:
        visited = set()
        classes = []
        for e in parent.elements(caps):
            if e in visited:
                continue
            orbit = {e}
            frontier = deque([e])
            while frontier:
                x = frontier.popleft()
                for g in parent.generators:
                    image = x.conj(g)
                    if image not in orbit:
                        orbit.add(image)
                        frontier.append(image)
            visited |= orbit
            classes.append(sorted(orbit))
        parent._cache["element_classes"] = classes
        cached = classes
    return cached


def centralizer(parent: PermGroup, element: Permutation, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    members = [g for g in parent.elements(caps) if g * element == element * g]
    return group_from_elements(parent.degree, members)
