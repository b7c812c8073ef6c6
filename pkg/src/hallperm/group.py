"""Permutation groups with deterministic stabilizer chains.

The chain is built by the deterministic Schreier-Sims algorithm: every
Schreier generator of every level is sifted exactly once, in a fixed order,
so orders, transversals, element streams and witnesses are reproducible bit
for bit.  No randomization is used anywhere.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import CapExceeded, DegreeMismatch, GroupError, NotASubgroup, Caps, DEFAULT_CAPS
from .perm import Permutation


class _Level:
    __slots__ = ("beta", "own_gens", "transversal")

    def __init__(self, beta, identity):
        self.beta = beta
        self.own_gens = []
        # point -> u with u[beta] = point; insertion order is the BFS order
        self.transversal = {beta: identity}


class StabilizerChain:
    """Base, strong generators and basic orbits with transversal elements.

    Strong generators are stored at the first level whose base point they
    move; the generating set of level i is the suffix union from i on, so a
    generator found deep in the chain automatically participates in every
    orbit above it.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.levels: list[_Level] = []
        self._identity = Permutation.identity(degree)
        self._queue: deque = deque()

    @classmethod
    def build(cls, degree: int, generators) -> "StabilizerChain":
        chain = cls(degree)
        for g in generators:
            chain.add_generator(g)
        return chain

    # -- queries ---------------------------------------------------------

    @property
    def base(self):
        return tuple(lvl.beta for lvl in self.levels)

    def order(self) -> int:
        return math.prod(len(lvl.transversal) for lvl in self.levels)

    def strong_generators(self):
        return [g for lvl in self.levels for g in lvl.own_gens]

    def sift(self, p: Permutation, start: int = 0) -> Permutation:
        """Strip p through the chain; identity result means membership."""
        for lvl in self.levels[start:]:
            delta = p[lvl.beta]
            if delta == lvl.beta:
                continue
            u = lvl.transversal.get(delta)
            if u is None:
                return p
            p = p * ~u
        return p

    def contains(self, p: Permutation) -> bool:
        return self.sift(p).is_identity

    def iter_elements(self):
        """Yield every element once (unsorted coset-product order)."""
        result = [self._identity]
        for lvl in reversed(self.levels):
            transversal = list(lvl.transversal.values())
            result = [h * u for h in result for u in transversal]
        return result

    # -- construction ----------------------------------------------------

    def add_generator(self, g: Permutation):
        if len(g) != self.degree:
            raise DegreeMismatch(f"degree {len(g)} generator in degree {self.degree} chain")
        residue = self.sift(g)
        if not residue.is_identity:
            self._install(residue)
            self._drain()

    def _suffix_gens(self, i):
        return [g for lvl in self.levels[i:] for g in lvl.own_gens]

    def _install(self, g: Permutation):
        i = 0
        while i < len(self.levels) and g[self.levels[i].beta] == self.levels[i].beta:
            i += 1
        if i == len(self.levels):
            self.levels.append(_Level(g.min_moved(), self._identity))
        lvl = self.levels[i]
        lvl.own_gens.append(g)
        # Schreier pairs of g at every level it now generates, then grow the
        # orbits it may have unlocked.
        for k in range(i + 1):
            for pt in list(self.levels[k].transversal):
                self._queue.append((k, pt, g))
        for k in range(i + 1):
            self._extend_orbit(k, g)

    def _extend_orbit(self, k, new_gen):
        lvl = self.levels[k]
        transversal = lvl.transversal
        gens = self._suffix_gens(k)
        frontier = deque()
        for pt in list(transversal):
            img = new_gen[pt]
            if img not in transversal:
                transversal[img] = transversal[pt] * new_gen
                frontier.append(img)
                for s in gens:
                    self._queue.append((k, img, s))
        while frontier:
            pt = frontier.popleft()
            for s in gens:
                img = s[pt]
                if img not in transversal:
                    transversal[img] = transversal[pt] * s
                    frontier.append(img)
                    for s2 in gens:
                        self._queue.append((k, img, s2))

    def _drain(self):
        while self._queue:
            k, pt, s = self._queue.popleft()
            lvl = self.levels[k]
            u = lvl.transversal[pt]
            u2 = lvl.transversal[s[pt]]
            schreier = u * s * ~u2
            if schreier.is_identity:
                continue
            residue = self.sift(schreier, start=k + 1)
            if not residue.is_identity:
                self._install(residue)

    def check_invariants(self):
        """Sift every strong generator and recompute every basic orbit."""
        for g in self.strong_generators():
            if not self.sift(g).is_identity:
                raise GroupError("strong generator fails to sift")
        for i, lvl in enumerate(self.levels):
            gens = self._suffix_gens(i)
            orbit = {lvl.beta}
            frontier = [lvl.beta]
            while frontier:
                pt = frontier.pop()
                for s in gens:
                    img = s[pt]
                    if img not in orbit:
                        orbit.add(img)
                        frontier.append(img)
            if orbit != set(lvl.transversal):
                raise GroupError(f"basic orbit mismatch at level {i}")
            for pt, u in lvl.transversal.items():
                if u[lvl.beta] != pt:
                    raise GroupError(f"transversal element mismatch at level {i}")


@dataclass(frozen=True)
class DirectFactorStructure:
    """Block decomposition metadata for direct products and wreath bases.

    blocks hold the point sets of the factors (sorted tuples); shift, when
    present, cyclically permutes the blocks (wreath products).
    """

    blocks: tuple
    factor_groups: tuple
    shift: Optional[Permutation] = None

    def block_index(self, point):
        for i, block in enumerate(self.blocks):
            if point in block:
                return i
        return None


class PermGroup:
    """Degree + generators with a lazily built stabilizer chain.

    Immutable once the chain is built; all queries afterwards are read-only.
    """

    def __init__(self, degree: int, generators=(), chain: Optional[StabilizerChain] = None,
                 factors: Optional[DirectFactorStructure] = None, provenance: Optional[str] = None):
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if len(g) != degree:
                raise DegreeMismatch(f"generator degree {len(g)} in degree-{degree} group")
            if g.is_identity or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.degree = degree
        self.generators = tuple(gens)
        self.factors = factors
        self.provenance = provenance
        self._chain = chain
        self._cache: dict = {}

    # -- basics ----------------------------------------------------------

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain.build(self.degree, self.generators)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    @property
    def is_trivial(self) -> bool:
        return not self.generators

    def contains(self, p: Permutation) -> bool:
        if len(p) != self.degree:
            raise DegreeMismatch(f"degree {len(p)} element against degree-{self.degree} group")
        return self.chain.contains(p)

    def contains_group(self, other: "PermGroup") -> bool:
        return all(self.contains(g) for g in other.generators)

    def elements(self, caps: Caps = DEFAULT_CAPS):
        """All elements, sorted lexicographically by image sequence."""
        cached = self._cache.get("elements")
        if cached is None:
            n = self.order()
            if n > caps.enum_cap:
                raise CapExceeded("enum_cap", caps.enum_cap, n)
            cached = sorted(self.chain.iter_elements())
            self._cache["elements"] = cached
        return cached

    def element_set(self, caps: Caps = DEFAULT_CAPS):
        cached = self._cache.get("element_set")
        if cached is None:
            cached = frozenset(self.elements(caps))
            self._cache["element_set"] = cached
        return cached

    def key(self, caps: Caps = DEFAULT_CAPS):
        """Canonical identity of the group as a set of elements."""
        return self.element_set(caps)

    def orbit(self, point: int):
        """Orbit of a point, as a sorted tuple."""
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} outside 0..{self.degree - 1}")
        seen = {point}
        frontier = deque([point])
        while frontier:
            pt = frontier.popleft()
            for g in self.generators:
                img = g[pt]
                if img not in seen:
                    seen.add(img)
                    frontier.append(img)
        return tuple(sorted(seen))

    def conjugate(self, g: Permutation) -> "PermGroup":
        return PermGroup(self.degree, [h.conj(g) for h in self.generators])

    def __repr__(self):
        label = self.provenance or f"{len(self.generators)} gens"
        return f"PermGroup(degree={self.degree}, {label})"


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, ())


def generated_subgroup(degree: int, gens) -> PermGroup:
    return PermGroup(degree, gens)


def group_from_elements(degree: int, elements) -> PermGroup:
    """Group whose element set is the given closed set, with few generators."""
    chain = StabilizerChain(degree)
    gens = []
    for e in sorted(elements):
        if e.is_identity:
            continue
        if not chain.contains(e):
            chain.add_generator(e)
            gens.append(e)
    return PermGroup(degree, gens, chain=chain)


def closure_elements(gens, degree, limit=None):
    """Element set generated by gens; None if it would exceed limit.

    Plain BFS closure over left-to-right products; deterministic order.
    """
    identity = Permutation.identity(degree)
    seen = {identity}
    frontier = deque([identity])
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


def subgroup_check(parent: PermGroup, sub: PermGroup):
    """Raise NotASubgroup unless every generator of sub sifts into parent."""
    if sub.degree != parent.degree:
        raise DegreeMismatch(f"degree {sub.degree} vs {parent.degree}")
    for g in sub.generators:
        if not parent.contains(g):
            raise NotASubgroup(f"generator {g.cycle_string()} is outside the parent group")


def right_cosets(parent: PermGroup, sub: PermGroup, caps: Caps = DEFAULT_CAPS):
    """Right-coset reps of sub in parent plus an element-key -> index map.

    Scanning the parent's sorted element list and claiming whole cosets makes
    each representative the lexicographically least element of its coset, so
    the identity comes first and the output is canonical.
    """
    subgroup_check(parent, sub)
    cache_key = ("cosets", sub.key(caps))
    cached = parent._cache.get(cache_key)
    if cached is not None:
        return cached
    sub_elems = sub.elements(caps)
    reps = []
    lookup = {}
    for e in parent.elements(caps):
        if e in lookup:
            continue
        idx = len(reps)
        reps.append(e)
        for h in sub_elems:
            lookup[h * e] = idx
    if len(reps) * len(sub_elems) != parent.order():
        raise GroupError("coset decomposition does not cover the group")
    parent._cache[cache_key] = (reps, lookup)
    return reps, lookup


def right_transversal(parent: PermGroup, sub: PermGroup, caps: Caps = DEFAULT_CAPS):
    """Right-coset representatives of sub in parent, identity first."""
    reps, _ = right_cosets(parent, sub, caps)
    return list(reps)


def normal_closure(parent: PermGroup, seeds, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """Smallest normal subgroup of parent containing the seed permutations."""
    seeds = [s if isinstance(s, Permutation) else Permutation(s) for s in seeds]
    for s in seeds:
        if not parent.contains(s):
            raise NotASubgroup(f"seed {s.cycle_string()} is outside the parent group")
    chain = StabilizerChain(parent.degree)
    gens = []
    worklist = deque(s for s in seeds if not s.is_identity)
    while worklist:
        s = worklist.popleft()
        if chain.contains(s):
            continue
        chain.add_generator(s)
        gens.append(s)
        for g in parent.generators:
            worklist.append(s.conj(g))
    result = PermGroup(parent.degree, gens, chain=chain)
    # Sanity: conjugating the result's generators by parent generators stays inside.
    for h in result.generators:
        for g in parent.generators:
            if not result.contains(h.conj(g)):
                raise GroupError("normal closure is not closed under conjugation")
    if parent.factors is not None:
        structured = attach_block_structure(result, parent.factors.blocks)
        if structured is not None:
            return structured
    return result


class GroupHom:
    """A homomorphism given by generator images plus a pointwise rule.

    The pointwise rule (when supplied by a constructor, e.g. a coset action)
    lets the map be evaluated on arbitrary elements without factorization.
    """

    def __init__(self, source: PermGroup, target_degree: int, gen_images,
                 apply: Optional[Callable[[Permutation], Permutation]] = None):
        if len(gen_images) != len(source.generators):
            raise GroupError("one image per source generator required")
        self.source = source
        self.target_degree = target_degree
        self.gen_images = tuple(gen_images)
        self._apply = apply
        self._image_group = None
        self._table = None

    def image_of(self, p: Permutation) -> Permutation:
        if self._apply is not None:
            return self._apply(p)
        table = self._word_table()
        try:
            return table[p]
        except KeyError:
            raise GroupError("element outside the source group") from None

    def _word_table(self):
        if self._table is None:
            identity = Permutation.identity(self.source.degree)
            target_id = Permutation.identity(self.target_degree)
            table = {identity: target_id}
            frontier = deque([identity])
            pairs = list(zip(self.source.generators, self.gen_images))
            while frontier:
                e = frontier.popleft()
                for g, img in pairs:
                    prod = e * g
                    if prod not in table:
                        table[prod] = table[e] * img
                        frontier.append(prod)
            self._table = table
        return self._table

    def image_group(self) -> PermGroup:
        if self._image_group is None:
            self._image_group = PermGroup(self.target_degree, self.gen_images)
        return self._image_group

    def image_subgroup(self, sub: PermGroup) -> PermGroup:
        return PermGroup(self.target_degree, [self.image_of(g) for g in sub.generators])

    def verify(self, caps: Caps = DEFAULT_CAPS) -> bool:
        """Exhaustively check multiplicativity on generator * element pairs.

        phi(g*x) = phi(g)*phi(x) for every generator g and every element x
        extends inductively to full multiplicativity, so this is a complete
        check whenever the source is enumerable.
        """
        n = self.source.order()
        if n > caps.hom_check_cap:
            raise CapExceeded("hom_check_cap", caps.hom_check_cap, n)
        for x in self.source.elements(caps):
            fx = self.image_of(x)
            for g, fg in zip(self.source.generators, self.gen_images):
                if self.image_of(g * x) != fg * fx:
                    return False
        return True


def coset_action(parent: PermGroup, normal_sub: PermGroup, caps: Caps = DEFAULT_CAPS):
    """Realize parent/normal_sub as a permutation group on the cosets.

    Returns (hom, image_group); the kernel of the action is normal_sub, which
    is verified by sifting each of its generators to the identity image.
    """
    subgroup_check(parent, normal_sub)
    cache_key = ("coset_action", normal_sub.key(caps))
    cached = parent._cache.get(cache_key)
    if cached is not None:
        return cached
    for a in normal_sub.generators:
        for g in parent.generators:
            if not normal_sub.contains(a.conj(g)):
                raise NotASubgroup("coset action requires a normal subgroup")
    index = parent.order() // normal_sub.order()
    if index > caps.degree_cap:
        raise CapExceeded("degree_cap", caps.degree_cap, index)
    reps, lookup = right_cosets(parent, normal_sub, caps)

    def act(p: Permutation) -> Permutation:
        return Permutation([lookup[rep * p] for rep in reps], check=False)

    gen_images = [act(g) for g in parent.generators]
    hom = GroupHom(parent, index, gen_images, apply=act)
    image = hom.image_group()
    for a in normal_sub.generators:
        if not act(a).is_identity:
            raise GroupError("kernel of coset action does not contain the subgroup")
    if image.order() * normal_sub.order() != parent.order():
        raise GroupError("coset action order mismatch")
    if parent.order() <= caps.hom_check_cap and not hom.verify(caps):
        raise GroupError("coset action failed the homomorphism check")
    parent._cache[cache_key] = (hom, image)
    return hom, image


def intersect_groups(a: PermGroup, b: PermGroup, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """Intersection of two groups of equal degree (the smaller is enumerated)."""
    if a.degree != b.degree:
        raise DegreeMismatch(f"degree {a.degree} vs {b.degree}")
    small, large = (a, b) if a.order() <= b.order() else (b, a)
    common = [e for e in small.elements(caps) if large.contains(e)]
    return group_from_elements(a.degree, common)


# -- block decomposition helpers ------------------------------------------


def deflate(p: Permutation, block) -> Permutation:
    """Restrict p to a block it maps to itself, reindexed to 0..len(block)-1."""
    pos = {pt: i for i, pt in enumerate(block)}
    return Permutation([pos[p[pt]] for pt in block], check=True)


def inflate(p: Permutation, block, degree: int) -> Permutation:
    """Embed a block-indexed permutation back into the full point set."""
    images = list(range(degree))
    for i, pt in enumerate(block):
        images[pt] = block[p[i]]
    return Permutation(images, check=False)


def preserves_blocks(p: Permutation, blocks) -> bool:
    return all(all(p[pt] in block_set for pt in block) for block, block_set in
               ((b, set(b)) for b in blocks))


def block_components(group: PermGroup, blocks):
    """Per-block projections of a block-preserving group, or None.

    Returns deflated PermGroups, one per block.  The group decomposes as the
    direct product of the projections exactly when the orders multiply up to
    the group order; callers that need that property must check it.
    """
    for g in group.generators:
        if not preserves_blocks(g, blocks):
            return None
    return [PermGroup(len(block), [deflate(g, block) for g in group.generators])
            for block in blocks]


def decompose_blockwise(group: PermGroup, blocks):
    """Per-block components when the group is their direct product, else None."""
    components = block_components(group, blocks)
    if components is None:
        return None
    if math.prod(c.order() for c in components) != group.order():
        return None
    return components


def attach_block_structure(group: PermGroup, blocks) -> Optional[PermGroup]:
    """Re-wrap group with DirectFactorStructure when it splits over blocks."""
    components = decompose_blockwise(group, blocks)
    if components is None:
        return None
    structure = DirectFactorStructure(blocks=tuple(tuple(b) for b in blocks),
                                      factor_groups=tuple(components), shift=None)
    return PermGroup(group.degree, group.generators, chain=group._chain,
                     factors=structure, provenance=group.provenance)


def combine_blockwise(parts, blocks, degree: int) -> Permutation:
    """Merge one block-indexed permutation per block into a single element."""
    images = list(range(degree))
    for part, block in zip(parts, blocks):
        for i, pt in enumerate(block):
            images[pt] = block[part[i]]
    return Permutation(images, check=False)


# -- generator-file ingestion ----------------------------------------------


def parse_generator_text(text: str) -> PermGroup:
    """Parse the plain-text generator format.

    Line 1 is ``degree n``; every following non-comment line is one
    permutation in 0-based disjoint-cycle notation; ``()`` is the identity;
    ``#`` starts a comment.
    """
    degree = None
    gens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree" or not parts[1].isdigit():
                raise ValueError(f"expected 'degree n' as the first line, got {raw!r}")
            degree = int(parts[1])
            if degree <= 0:
                raise ValueError("degree must be positive")
            continue
        gens.append(Permutation.parse(line, degree))
    if degree is None:
        raise ValueError("generator file has no 'degree n' line")
    return PermGroup(degree, gens)


def load_generator_file(path) -> PermGroup:
    import hashlib
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    group = parse_generator_text(text)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]
    group.provenance = f"file:{path}#sha256={digest}"
    return group
