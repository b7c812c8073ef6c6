"""Self-contained JSON certificates and their replay.

A certificate embeds everything a fresh process needs: the ambient group's
generators (plus its constructor spec for provenance), subgroup generators,
witness permutations in cycle notation, and a transcript of what was
exhaustively scanned.  Replay redoes exactly the transcript's scans and
nothing more.  The content digest excludes only the timestamp, so identical
invocations produce byte-identical certificates up to that field.
"""

from __future__ import annotations

import datetime
import hashlib
import json
import os

from .errors import GroupError, Caps, DEFAULT_CAPS
from .group import PermGroup, Permutation, attach_block_structure
from .hall import pi_part, is_pi_number
from .subgroup import is_conjugate, is_normal
from .pronormal import _decide_in_joint

SCHEMA = "hall-pronormality-certificate/v1"


def perm_payload(p: Permutation) -> str:
    return p.cycle_string()


def perm_from_payload(text: str, degree: int) -> Permutation:
    return Permutation.parse(text, degree)


def group_payload(group: PermGroup) -> dict:
    return {
        "spec": group.provenance,
        "degree": group.degree,
        "order": group.order(),
        "generators": [perm_payload(g) for g in group.generators],
    }


def rebuild_group(payload: dict) -> PermGroup:
    degree = payload["degree"]
    gens = [perm_from_payload(s, degree) for s in payload["generators"]]
    group = PermGroup(degree, gens, provenance=payload.get("spec"))
    if group.order() != payload["order"]:
        raise GroupError(f"rebuilt group has order {group.order()}, certificate says {payload['order']}")
    return group


def subgroup_payload(group: PermGroup) -> dict:
    return {"degree": group.degree, "order": group.order(),
            "generators": [perm_payload(g) for g in group.generators]}


def canonical_body(cert: dict) -> str:
    body = {k: v for k, v in cert.items() if k not in ("digest", "timestamp")}
    return json.dumps(body, sort_keys=True, separators=(",", ":"))


def certificate_digest(cert: dict) -> str:
    return hashlib.sha256(canonical_body(cert).encode("utf-8")).hexdigest()


def make_certificate(kind: str, group: PermGroup, payload: dict, transcript: dict,
                     pi=None) -> dict:
    cert = {
        "schema": SCHEMA,
        "kind": kind,
        "group": group_payload(group),
        "payload": payload,
        "transcript": transcript,
    }
    if pi is not None:
        cert["pi"] = sorted(pi)
    cert["digest"] = certificate_digest(cert)
    cert["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return cert


def write_certificate(cert: dict, out_dir) -> str:
    os.makedirs(out_dir, exist_ok=True)
    name = f"{cert['kind']}-{cert['digest'][:12]}.json"
    path = os.path.join(out_dir, name)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cert, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def load_certificate(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


# -- builders ----------------------------------------------------------------


def conjugacy_witness_certificate(group, witness, transcript=None) -> dict:
    payload = {
        "source": subgroup_payload(witness.source),
        "target": subgroup_payload(witness.target),
        "witness": perm_payload(witness.element),
        "into": witness.into,
    }
    return make_certificate("conjugacy-witness", group, payload,
                            transcript or {"checked": "generator conjugates and orders"})


def non_pronormality_certificate(group, report, pi=None) -> dict:
    fail = report.failure
    joint_info = {
        "order": fail.joint.order(),
        "mode": fail.mode,
        "scanned": fail.scanned,
        "failing_block": fail.failing_block,
        "blocks": [list(b) for b in fail.joint.factors.blocks] if fail.joint.factors else None,
    }
    payload = {
        "subject": subgroup_payload(report.subject),
        "witness_g": perm_payload(fail.g),
        "joint": joint_info,
    }
    transcript = {
        "checked": ("every element of the joint" if fail.mode == "exhaustive"
                    else "every element of the failing block's joint component"),
        "scanned": fail.scanned,
        "coset_count": report.checked_coset_count,
    }
    return make_certificate("non-pronormality", group, payload, transcript, pi=pi)


def non_strong_pronormality_certificate(group, report, pi=None) -> dict:
    fail = report.failure
    payload = {
        "subject": subgroup_payload(report.subject),
        "k": subgroup_payload(fail.k),
        "witness_g": perm_payload(fail.g),
        "joint_order": fail.joint.order(),
    }
    transcript = {"checked": "every element of the joint", "scanned": fail.scanned,
                  "pair_count": report.checked_pair_count}
    return make_certificate("non-strong-pronormality", group, payload, transcript, pi=pi)


def hall_classes_certificate(group, pi, reps, transcript=None) -> dict:
    payload = {
        "hall_order": pi_part(group.order(), pi),
        "class_count": len(reps),
        "reps": [subgroup_payload(r.group) for r in reps],
    }
    return make_certificate("hall-classes", group, payload,
                            transcript or {"checked": "Sylow-tuple sweep with class partition"},
                            pi=pi)


def sylow_tower_certificate(group, tower) -> dict:
    payload = {
        "subject": subgroup_payload(tower.subject),
        "complexion": list(tower.complexion),
        "series": [subgroup_payload(s.group) for s in tower.series],
    }
    return make_certificate("sylow-tower", group, payload,
                            {"checked": "normality of terms and factor orders"})


def conjecture_finding_certificate(conjecture_id: str, inner: dict) -> dict:
    cert = {
        "schema": SCHEMA,
        "kind": "conjecture-finding",
        "conjecture": conjecture_id,
        "inner": {k: v for k, v in inner.items() if k != "timestamp"},
        "group": inner["group"],
        "transcript": {"checked": "inner certificate replay"},
    }
    cert["digest"] = certificate_digest(cert)
    cert["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return cert


# -- replay ------------------------------------------------------------------


def verify_certificate(cert: dict, caps: Caps = DEFAULT_CAPS):
    """Replay a certificate; returns (ok, detail)."""
    try:
        if cert.get("schema") != SCHEMA:
            return False, f"unknown schema {cert.get('schema')!r}"
        if certificate_digest(cert) != cert.get("digest"):
            return False, "digest mismatch"
        kind = cert.get("kind")
        handler = _VERIFIERS.get(kind)
        if handler is None:
            return False, f"unknown kind {kind!r}"
        return handler(cert, caps)
    except Exception as exc:  # replay must never crash the verifier
        return False, f"replay error: {exc}"


def _rebuild_subgroup(parent: PermGroup, payload: dict) -> PermGroup:
    sub = rebuild_group(payload)
    for g in sub.generators:
        if not parent.contains(g):
            raise GroupError("certificate subgroup is not inside the ambient group")
    return sub


def _verify_conjugacy_witness(cert, caps):
    group = rebuild_group(cert["group"])
    payload = cert["payload"]
    source = _rebuild_subgroup(group, payload["source"])
    target = _rebuild_subgroup(group, payload["target"])
    witness = perm_from_payload(payload["witness"], group.degree)
    if not group.contains(witness):
        return False, "witness is outside the ambient group"
    for g in source.generators:
        if not target.contains(g.conj(witness)):
            return False, "a conjugated generator escapes the target"
    if not payload["into"] and source.order() != target.order():
        return False, "orders differ for an equality witness"
    return True, "conjugacy witness replays"


def _verify_non_pronormality(cert, caps):
    group = rebuild_group(cert["group"])
    payload = cert["payload"]
    subject = _rebuild_subgroup(group, payload["subject"])
    g = perm_from_payload(payload["witness_g"], group.degree)
    if not group.contains(g):
        return False, "witness g is outside the ambient group"
    conj_gens = tuple(x.conj(g) for x in subject.generators)
    joint = PermGroup(group.degree, subject.generators + conj_gens)
    blocks = payload["joint"].get("blocks")
    if blocks:
        structured = attach_block_structure(joint, [tuple(b) for b in blocks])
        if structured is not None:
            joint = structured
    if joint.order() != payload["joint"]["order"]:
        return False, "joint order mismatch"
    hg = PermGroup(group.degree, conj_gens)
    status, data = _decide_in_joint(joint, subject, hg, caps)
    if status != "absent":
        return False, f"replay found status {status}"
    return True, "no conjugator exists in the joint (rescanned)"


def _verify_non_strong_pronormality(cert, caps):
    group = rebuild_group(cert["group"])
    payload = cert["payload"]
    subject = _rebuild_subgroup(group, payload["subject"])
    k = _rebuild_subgroup(group, payload["k"])
    for gen in k.generators:
        if not subject.contains(gen):
            return False, "k is not a subgroup of the subject"
    g = perm_from_payload(payload["witness_g"], group.degree)
    kg_gens = tuple(x.conj(g) for x in k.generators)
    joint = PermGroup(group.degree, subject.generators + kg_gens)
    if joint.order() != payload["joint_order"]:
        return False, "joint order mismatch"
    subject_set = subject.element_set(caps)
    for x in joint.elements(caps):
        if all(kg.conj(x) in subject_set for kg in kg_gens):
            return False, "replay found a conjugator into the subject"
    return True, "no element of the joint conjugates k^g into the subject"


def _verify_hall_classes(cert, caps):
    group = rebuild_group(cert["group"])
    payload = cert["payload"]
    pi = set(cert["pi"])
    target = pi_part(group.order(), pi)
    if payload["hall_order"] != target:
        return False, "hall order mismatch"
    reps = [_rebuild_subgroup(group, p) for p in payload["reps"]]
    if len(reps) != payload["class_count"]:
        return False, "class count mismatch"
    for rep in reps:
        if rep.order() != target or not is_pi_number(rep.order(), pi):
            return False, "a representative is not a pi-Hall subgroup"
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            if is_conjugate(group, reps[i], reps[j], caps) is not None:
                return False, "two representatives are conjugate"
    return True, "representatives are pi-Hall and pairwise non-conjugate"


def _verify_sylow_tower(cert, caps):
    group = rebuild_group(cert["group"])
    payload = cert["payload"]
    subject = _rebuild_subgroup(group, payload["subject"])
    series = [_rebuild_subgroup(group, p) for p in payload["series"]]
    complexion = payload["complexion"]
    if series[0].order() != subject.order() or series[-1].order() != 1:
        return False, "series endpoints are wrong"
    order = subject.order()
    from .numth import p_part as _p_part
    for i, p in enumerate(complexion):
        if series[i].order() // series[i + 1].order() != _p_part(order, p):
            return False, f"factor {i} is not the {p}-part"
    for term in series[1:]:
        if not is_normal(subject, term, caps):
            return False, "a series term is not normal in the subject"
    return True, "tower replays"


def _verify_conjecture_finding(cert, caps):
    inner = dict(cert["inner"])
    return verify_certificate(inner, caps)


_VERIFIERS = {
    "conjugacy-witness": _verify_conjugacy_witness,
    "non-pronormality": _verify_non_pronormality,
    "non-strong-pronormality": _verify_non_strong_pronormality,
    "hall-classes": _verify_hall_classes,
    "sylow-tower": _verify_sylow_tower,
    "conjecture-finding": _verify_conjecture_finding,
}
