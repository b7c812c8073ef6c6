"""Pronormality and strong pronormality testers with replayable witnesses.

A subgroup H of G is pronormal when H and H^g are conjugate inside
<H, H^g> for every g; strongly pronormal when for every K <= H and every g
some element of <H, K^g> conjugates K^g into H.

Quantifier reduction used throughout: for g = n*t with n in N_G(H) (resp.
N_G(K)), H^(nt) = H^t and <H, H^(nt)> = <H, H^t>, so g only needs to run
over a right transversal of the normalizer.  Multiplying on the right
instead would change the joint subgroup, so only the left factor may be
dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CapExceeded, GroupError, Caps, DEFAULT_CAPS
from .group import (PermGroup, Permutation, attach_block_structure, decompose_blockwise,
                    inflate, intersect_groups, normal_closure, right_transversal,
                    subgroup_check)
from .hall import is_pi_free, is_pi_number, is_pi_separable, pi_part
from .subgroup import (_as_group, _blockwise_structure_usable, all_subgroups,
                       conjugate_into, is_normal, normalizer, subgroup_conjugacy_classes)


@dataclass(frozen=True)
class PronormalityFailure:
    """A g with no conjugator from H to H^g inside joint = <H, H^g>.

    mode 'exhaustive' means every element of the joint was scanned;
    'blockwise' means the joint is a direct product and the named block
    admits no per-block conjugator (scanned exhaustively there).
    """

    g: Permutation
    joint: PermGroup
    mode: str
    scanned: int
    failing_block: Optional[int] = None


@dataclass(frozen=True)
class PronormalityReport:
    subject: PermGroup
    ambient: PermGroup
    verdict: Optional[bool]            # None = indeterminate, never a guess
    failure: Optional[PronormalityFailure] = None
    checked_coset_count: int = 0
    indeterminate_reason: Optional[str] = None

    @property
    def is_pronormal(self) -> bool:
        return self.verdict is True


@dataclass(frozen=True)
class StrongPronormalityFailure:
    k: PermGroup
    g: Permutation
    joint: PermGroup
    scanned: int


@dataclass(frozen=True)
class StrongPronormalityReport:
    subject: PermGroup
    ambient: PermGroup
    verdict: Optional[bool]
    failure: Optional[StrongPronormalityFailure] = None
    checked_pair_count: int = 0
    indeterminate_reason: Optional[str] = None

    @property
    def is_strongly_pronormal(self) -> bool:
        return self.verdict is True


def find_conjugator_in(joint: PermGroup, source: PermGroup, target: PermGroup,
                       caps: Caps = DEFAULT_CAPS):
    """Least x in joint with source^x = target, or (None, scanned) if absent.

    Element-exhaustive in canonical order; the caller guarantees source and
    target lie in the joint and share their order, so generator containment
    decides equality.
    """
    target_set = target.element_set(caps)
    gens = source.generators
    scanned = 0
    for x in joint.elements(caps):
        scanned += 1
        if all(h.conj(x) in target_set for h in gens):
            return x, scanned
    return None, scanned


def _decide_in_joint(joint: PermGroup, h: PermGroup, hg: PermGroup, caps: Caps):
    """('found', x) / ('absent', failure-data) / ('capped', reason)."""
    if joint.order() <= caps.enum_cap:
        x, scanned = find_conjugator_in(joint, h, hg, caps)
        if x is not None:
            return "found", x
        return "absent", ("exhaustive", scanned, None)
    structure = _blockwise_structure_usable(joint)
    if structure is not None and structure.shift is None:
        h_parts = decompose_blockwise(h, structure.blocks)
        g_parts = decompose_blockwise(hg, structure.blocks)
        if h_parts is not None and g_parts is not None:
            scanned = 0
            for i, (factor, hp, gp) in enumerate(zip(structure.factor_groups, h_parts, g_parts)):
                if hp.order() != gp.order():
                    return "absent", ("blockwise", scanned, i)
                if factor.order() > caps.enum_cap:
                    return "capped", f"block {i} of the joint exceeds enum_cap"
                x, n = find_conjugator_in(factor, hp, gp, caps)
                scanned += n
                if x is None:
                    return "absent", ("blockwise", scanned, i)
            # all blocks conjugate: combine is possible, but callers only
            # need existence here
            return "found", None
    return "capped", f"joint of order {joint.order()} admits neither exhaustive nor blockwise search"


def _joint_of(g_parent: PermGroup, h: PermGroup, conj_gens) -> PermGroup:
    joint = PermGroup(h.degree, h.generators + tuple(conj_gens))
    structure = g_parent.factors
    if structure is not None and joint.order() > 0:
        structured = attach_block_structure(joint, structure.blocks)
        if structured is not None:
            return structured
    return joint


def pronormality_instance(parent: PermGroup, h, g: Permutation,
                          caps: Caps = DEFAULT_CAPS) -> PronormalityReport:
    """Decide the single pronormality instance for one g.

    Verdict False comes with the replayable failure (g, <H, H^g>); True
    means a conjugator exists for this g only.
    """
    h = _as_group(h)
    subgroup_check(parent, h)
    if not parent.contains(g):
        raise GroupError("witness candidate lies outside the ambient group")
    conj_gens = [x.conj(g) for x in h.generators]
    if all(h.contains(c) for c in conj_gens):
        return PronormalityReport(h, parent, True, checked_coset_count=1)
    joint = _joint_of(parent, h, conj_gens)
    hg = PermGroup(h.degree, conj_gens)
    status, data = _decide_in_joint(joint, h, hg, caps)
    if status == "found":
        return PronormalityReport(h, parent, True, checked_coset_count=1)
    if status == "absent":
        mode, scanned, block = data
        failure = PronormalityFailure(g=g, joint=joint, mode=mode,
                                      scanned=scanned, failing_block=block)
        return PronormalityReport(h, parent, False, failure=failure, checked_coset_count=1)
    return PronormalityReport(h, parent, None, indeterminate_reason=data, checked_coset_count=1)


def is_pronormal(parent: PermGroup, h, caps: Caps = DEFAULT_CAPS) -> PronormalityReport:
    """Full pronormality test of h in parent.

    Shiftless direct products reduce blockwise (conjugators, joints and the
    quantifier all decompose).  A wreath-type ambient beyond enumeration is
    probed on the shift powers: a failure there is definitive, success alone
    is not, and the report says so.
    """
    h = _as_group(h)
    subgroup_check(parent, h)

    structure = _blockwise_structure_usable(parent)
    if structure is not None and structure.shift is None and parent.order() > caps.enum_cap:
        parts = decompose_blockwise(h, structure.blocks)
        if parts is not None:
            checked = 0
            for i, (factor, part) in enumerate(zip(structure.factor_groups, parts)):
                sub_report = is_pronormal(factor, part, caps)
                checked += sub_report.checked_coset_count
                if sub_report.verdict is False:
                    lifted_g = inflate(sub_report.failure.g, structure.blocks[i], parent.degree)
                    return pronormality_instance(parent, h, lifted_g, caps)
                if sub_report.verdict is None:
                    return PronormalityReport(h, parent, None, checked_coset_count=checked,
                                              indeterminate_reason=sub_report.indeterminate_reason)
            return PronormalityReport(h, parent, True, checked_coset_count=checked)

    if parent.order() > caps.enum_cap:
        if structure is not None and structure.shift is not None:
            shift = structure.shift
            power = shift
            checked = 0
            while not power.is_identity:
                report = pronormality_instance(parent, h, power, caps)
                checked += 1
                if report.verdict is False:
                    return PronormalityReport(h, parent, False, failure=report.failure,
                                              checked_coset_count=checked)
                power = power * shift
            return PronormalityReport(h, parent, None, checked_coset_count=checked,
                                      indeterminate_reason="ambient beyond enum_cap; only shift powers probed")
        raise CapExceeded("enum_cap", caps.enum_cap, parent.order())

    norm = normalizer(parent, h, caps).group
    reps = right_transversal(parent, norm, caps)
    checked = 0
    capped_reason = None
    failure = None
    for t in reps:
        if t.is_identity:
            continue
        conj_gens = [x.conj(t) for x in h.generators]
        joint = _joint_of(parent, h, conj_gens)
        hg = PermGroup(h.degree, conj_gens)
        status, data = _decide_in_joint(joint, h, hg, caps)
        checked += 1
        if status == "absent":
            mode, scanned, block = data
            failure = PronormalityFailure(g=t, joint=joint, mode=mode,
                                          scanned=scanned, failing_block=block)
            break
        if status == "capped":
            capped_reason = data
    if failure is not None:
        return PronormalityReport(h, parent, False, failure=failure, checked_coset_count=checked)
    if capped_reason is not None:
        return PronormalityReport(h, parent, None, checked_coset_count=checked,
                                  indeterminate_reason=capped_reason)
    return PronormalityReport(h, parent, True, checked_coset_count=checked)


def replay_pronormality_failure(report: PronormalityReport, caps: Caps = DEFAULT_CAPS) -> bool:
    """Re-verify a negative report from its witness data alone."""
    if report.verdict is not False or report.failure is None:
        raise GroupError("only negative reports replay")
    fail = report.failure
    h = report.subject
    hg = PermGroup(h.degree, tuple(x.conj(fail.g) for x in h.generators))
    if not (fail.joint.contains_group(h) and fail.joint.contains_group(hg)):
        return False
    status, _ = _decide_in_joint(fail.joint, h, hg, caps)
    return status == "absent"


def is_strongly_pronormal(parent: PermGroup, h, caps: Caps = DEFAULT_CAPS) -> StrongPronormalityReport:
    """Strong pronormality of h in parent.

    K runs over conjugacy-class representatives of subgroups of h (the
    property is invariant under h-conjugacy of K), g over a right
    transversal of N_parent(K); the first failing pair in this canonical
    order is reported.
    """
    h = _as_group(h)
    subgroup_check(parent, h)
    h_set = h.element_set(caps)
    subs = all_subgroups(h, caps=caps)
    classes = subgroup_conjugacy_classes(h, [s.group for s in subs], caps)
    checked = 0
    capped_reason = None
    for k, _size in sorted(classes, key=lambda c: (c[0].order(), tuple(c[0].elements()))):
        if k.order() == 1:
            continue
        norm = normalizer(parent, k, caps).group
        for g in right_transversal(parent, norm, caps):
            kg_gens = tuple(x.conj(g) for x in k.generators)
            checked += 1
            if all(x in h_set for x in kg_gens):
                continue
            joint = PermGroup(h.degree, h.generators + kg_gens)
            kg = PermGroup(h.degree, kg_gens)
            if joint.order() > caps.enum_cap:
                capped_reason = f"joint of order {joint.order()} exceeds enum_cap"
                continue
            witness = conjugate_into(joint, kg, h, caps)
            if witness is None:
                failure = StrongPronormalityFailure(k=k, g=g, joint=joint,
                                                    scanned=joint.order())
                return StrongPronormalityReport(h, parent, False, failure=failure,
                                                checked_pair_count=checked)
    if capped_reason is not None:
        return StrongPronormalityReport(h, parent, None, checked_pair_count=checked,
                                        indeterminate_reason=capped_reason)
    return StrongPronormalityReport(h, parent, True, checked_pair_count=checked)


def replay_strong_pronormality_failure(report: StrongPronormalityReport,
                                       caps: Caps = DEFAULT_CAPS) -> bool:
    if report.verdict is not False or report.failure is None:
        raise GroupError("only negative reports replay")
    fail = report.failure
    h = report.subject
    kg = PermGroup(h.degree, tuple(x.conj(fail.g) for x in fail.k.generators))
    if not (fail.joint.contains_group(h) and fail.joint.contains_group(kg)):
        return False
    return conjugate_into(fail.joint, kg, h, caps) is None


def pronormal_in_normal_closure(parent: PermGroup, h, caps: Caps = DEFAULT_CAPS) -> PronormalityReport:
    """Pronormality of h inside its normal closure in parent."""
    h = _as_group(h)
    subgroup_check(parent, h)
    closure = normal_closure(parent, h.generators, caps)
    if closure.order() == 1:
        return PronormalityReport(h, closure, True)
    return is_pronormal(closure, h, caps)


# -- product and factorization checks ---------------------------------------


@dataclass(frozen=True)
class HypothesisReport:
    """Instance check split into hypothesis validation and conclusion.

    Hypothesis violations are reported here as precondition failures and
    leave the conclusion untested (holds = None); a failed conclusion under
    valid hypotheses is a genuine violation (holds = False).
    """

    hypotheses_ok: bool
    hypothesis_failures: tuple
    conclusion: Optional[PronormalityReport]
    extra: dict

    @property
    def holds(self) -> Optional[bool]:
        if not self.hypotheses_ok:
            return None
        return self.conclusion.verdict


def commuting_product_pronormality(parent: PermGroup, factor_groups, parts,
                                   caps: Caps = DEFAULT_CAPS) -> HypothesisReport:
    """Pronormal parts of commuting normal factors generate a pronormal subgroup.

    Hypotheses verified on generators: each factor normal in parent, factors
    pairwise commuting, factors covering parent, each part pronormal in its
    factor.  Conclusion: <parts> pronormal in parent.
    """
    factor_groups = [_as_group(f) for f in factor_groups]
    parts = [_as_group(p) for p in parts]
    failures = []
    if len(factor_groups) != len(parts):
        raise ValueError("one part per factor required")
    for i, f in enumerate(factor_groups):
        try:
            if not is_normal(parent, f, caps):
                failures.append(f"factor {i} is not normal in the ambient group")
        except GroupError as exc:
            failures.append(f"factor {i}: {exc}")
    for i in range(len(factor_groups)):
        for j in range(i + 1, len(factor_groups)):
            for a in factor_groups[i].generators:
                for b in factor_groups[j].generators:
                    if a * b != b * a:
                        failures.append(f"factors {i} and {j} do not commute")
                        break
    gens = tuple(g for f in factor_groups for g in f.generators)
    if PermGroup(parent.degree, gens).order() != parent.order():
        failures.append("factors do not generate the ambient group")
    part_reports = []
    for i, (f, p) in enumerate(zip(factor_groups, parts)):
        try:
            subgroup_check(f, p)
        except GroupError as exc:
            failures.append(f"part {i}: {exc}")
            continue
        rep = is_pronormal(f, p, caps)
        part_reports.append(rep)
        if rep.verdict is not True:
            failures.append(f"part {i} is not pronormal in factor {i}")
    if failures:
        return HypothesisReport(False, tuple(failures), None, {})
    h = PermGroup(parent.degree, tuple(g for p in parts for g in p.generators))
    conclusion = is_pronormal(parent, h, caps)
    return HypothesisReport(True, (), conclusion, {"part_reports": part_reports})


def hall_factorization_pronormality(parent: PermGroup, a, h, pi,
                                    caps: Caps = DEFAULT_CAPS) -> HypothesisReport:
    """H Hall for pi, A normal, G = HA, and H∩A pronormal in A force H pronormal.

    Also verifies the separability witness behind the statement: the series
    N_G(H∩A) >= N_A(H∩A) >= H∩A >= 1 is normal in N_G(H∩A) with factors
    alternating between pi'-free and pi-free orders, so N_G(H∩A) is
    pi-separable.
    """
    a = _as_group(a)
    h = _as_group(h)
    failures = []
    if h.order() != pi_part(parent.order(), pi) or not is_pi_number(h.order(), pi):
        failures.append("h is not a pi-Hall subgroup of the ambient group")
    if not is_normal(parent, a, caps):
        failures.append("a is not normal in the ambient group")
    h_cap_a = intersect_groups(h, a, caps)
    if h.order() * a.order() != parent.order() * h_cap_a.order():
        failures.append("the ambient group is not the product of h and a")
    if failures:
        return HypothesisReport(False, tuple(failures), None, {})
    base_report = is_pronormal(a, h_cap_a, caps)
    if base_report.verdict is not True:
        failures.append("h∩a is not pronormal in a (hypothesis not met)")
        return HypothesisReport(False, tuple(failures), None,
                                {"intersection_report": base_report})

    norm = normalizer(parent, h_cap_a, caps).group
    norm_a = intersect_groups(norm, a, caps)
    series_ok = (is_normal(norm, norm_a, caps)
                 and is_normal(norm, h_cap_a, caps)
                 and is_pi_number(norm.order() // norm_a.order(), pi)
                 and is_pi_free(norm_a.order() // h_cap_a.order(), pi)
                 and is_pi_number(h_cap_a.order(), pi)
                 and is_pi_separable(norm, pi, caps) is not None)
    conclusion = is_pronormal(parent, h, caps)
    return HypothesisReport(True, (), conclusion,
                            {"series_ok": series_ok, "intersection_report": base_report,
                             "normalizer_order": norm.order()})
