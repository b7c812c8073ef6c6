"""Finite-permutation-group computations around Hall subgroups:
existence / single-class / covering verdicts, pronormality and strong
pronormality testers with replayable witnesses, Sylow towers, and the
wreath-product construction of a non-pronormal Hall subgroup.
"""

from .errors import CapExceeded, Caps, DEFAULT_CAPS, DegreeMismatch, GroupError, NotASubgroup
from .perm import Permutation, compose
from .group import (DirectFactorStructure, GroupHom, PermGroup, StabilizerChain,
                    coset_action, load_generator_file, normal_closure,
                    parse_generator_text, right_transversal)
from .subgroup import (ConjugacyWitness, Subgroup, all_subgroups, conjugate_into,
                       is_conjugate, is_normal, normalizer, overgroups, sylow)
from .hall import (ClassVerdict, PrimeSet, SylowTower, classify, hall_subgroups,
                   is_pi_separable, is_solvable, pi_part, sylow_tower,
                   towers_conjugacy_check)
from .pronormal import (PronormalityReport, StrongPronormalityReport,
                        commuting_product_pronormality, hall_factorization_pronormality,
                        is_pronormal, is_strongly_pronormal, pronormal_in_normal_closure)
from .constructions import (FiniteField, WreathDatum, WreathHallPair, alternating,
                            cyclic, dihedral, direct_product, pointwise_stabilizer,
                            psl2, sl2, sl2_subfield_embedding, symmetric,
                            wreath_hall_pair, wreath_regular)
from .catalog import CatalogEntry, build_catalog, parse_group_spec
from .suites import SuiteResult, run_probe, run_suite

__version__ = "0.1.0"
