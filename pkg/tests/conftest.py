import pytest

from hallperm.constructions import alternating, psl2, sl2, symmetric
from hallperm.perm import Permutation


def perm(text, degree):
    return Permutation.parse(text, degree)


@pytest.fixture(scope="session")
def sym5():
    return symmetric(5)


@pytest.fixture(scope="session")
def alt5():
    return alternating(5)


@pytest.fixture(scope="session")
def psl27():
    return psl2(7)


@pytest.fixture(scope="session")
def sl216():
    return sl2(16)


def closure_oracle(degree, gens):
    """Independent brute-force closure: BFS over products, counting elements."""
    from collections import deque
    identity = tuple(range(degree))
    seen = {identity}
    queue = deque([identity])
    raw = [tuple(g) for g in gens]
    while queue:
        e = queue.popleft()
        for g in raw:
            prod = tuple(g[x] for x in e)
            if prod not in seen:
                seen.add(prod)
                queue.append(prod)
    return seen


_POOL = None


def small_group_pool():
    """Groups of order <= 60 used for seeded direct-product instances."""
    global _POOL
    if _POOL is None:
        from hallperm.constructions import alternating, cyclic, dihedral, symmetric
        _POOL = ([cyclic(n) for n in (2, 3, 4, 5, 6, 8, 12)]
                 + [symmetric(3), symmetric(4), alternating(4),
                    dihedral(4), dihedral(5), alternating(5)])
        assert all(g.order() <= 60 for g in _POOL)
    return _POOL


def blockwise_equivalence_instance(seed):
    """One seeded comparison of blockwise vs transversal subgroup conjugacy.

    Returns True when both paths agree (witnesses replay on construction).
    """
    import random
    from hallperm.constructions import direct_product
    from hallperm.errors import DEFAULT_CAPS
    from hallperm.group import PermGroup, inflate
    from hallperm.subgroup import _is_conjugate_transversal, all_subgroups, is_conjugate

    rng = random.Random(seed)
    groups = small_group_pool()
    factors = [groups[rng.randrange(len(groups))] for _ in range(2)]
    prod = direct_product(factors)

    def random_blockwise_subgroup():
        gens = []
        for block, factor in zip(prod.factors.blocks, factors):
            subs = all_subgroups(factor)
            part = subs[rng.randrange(len(subs))].group
            gens.extend(inflate(g, block, prod.degree) for g in part.generators)
        return PermGroup(prod.degree, gens)

    h = random_blockwise_subgroup()
    if rng.random() < 0.5:
        elements = prod.elements()
        g = elements[rng.randrange(len(elements))]
        k = PermGroup(prod.degree, [x.conj(g) for x in h.generators])
    else:
        k = random_blockwise_subgroup()

    fast = is_conjugate(prod, h, k)
    plain = PermGroup(prod.degree, prod.generators)
    slow = (_is_conjugate_transversal(plain, h, k, DEFAULT_CAPS)
            if h.order() == k.order() else None)
    return (fast is None) == (slow is None)
