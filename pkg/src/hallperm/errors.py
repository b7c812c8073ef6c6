"""Shared error types and the desk-scale caps that gate every search."""

from dataclasses import dataclass


class GroupError(Exception):
    """Base class for errors raised by this library."""


class DegreeMismatch(GroupError):
    """Permutations (or a permutation and a group) act on different point sets."""


class NotASubgroup(GroupError):
    """A claimed subgroup has a generator outside the ambient group."""


class CapExceeded(GroupError):
    """A computation would exceed a configured cap.

    Operations never degrade silently: anything that would need more than
    the configured budget fails with the cap name and the size it needed.
    """

    def __init__(self, cap_name, cap_value, needed):
        super().__init__(f"{cap_name}={cap_value} exceeded (needed {needed})")
        self.cap_name = cap_name
        self.cap_value = cap_value
        self.needed = needed


@dataclass(frozen=True)
class Caps:
    """Limits keeping every search at desk scale.

    enum_cap       largest group order for full element enumeration
    subgroup_cap   largest group order for subgroup-lattice enumeration
    degree_cap     largest index realized as a coset-action degree
    hom_check_cap  largest source order for exhaustive homomorphism checks
    """

    enum_cap: int = 2_000_000
    subgroup_cap: int = 10_000
    degree_cap: int = 10_000
    hom_check_cap: int = 5_000


DEFAULT_CAPS = Caps()
