"""Bounded search for non-left-orderability certificates.

If some finite set of non-identity elements has the property that, for every
choice of signs, the semigroup generated by the signed elements contains the
identity, the group has no left order. For a given subset this module tries
all sign vectors; a sign vector is *killed* when some semigroup
product is certified to be the identity. If every vector is killed the group is
certified non-left-orderable. Unknown word-problem verdicts never kill.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .errors import PreconditionError
from .textio import parse_presentation, seal, serialize_presentation
from .words import Presentation, Word
from .wordproblem import (
    Budget, IdentityStatus, Verdict, check_not_identity, identity_status, replay_trace,
)


@dataclass(frozen=True)
class Kill:
    epsilons: tuple
    factors: tuple  # indices into the subset, in product order
    word: Word
    trace: list


@dataclass
class NonLOCertificate:
    presentation: Presentation
    subset: List[Word]
    subset_status: List[IdentityStatus]
    kills: List[Kill]
    max_len: int
    budget: Budget

    verdict = "NotLeftOrderable"


@dataclass
class Undetermined:
    """Some sign vectors survived; this carries no claim about orderability."""

    presentation: Presentation
    subset: List[Word]
    subset_status: List[IdentityStatus]
    kills: List[Kill]
    survivors: List[tuple]
    max_len: int
    budget: Budget

    verdict = "Undetermined"


def sign_vectors(n: int):
    """All vectors in {-1, +1}^n, lexicographic with -1 first."""
    return list(itertools.product((-1, 1), repeat=n))


def _search_assignment(p, signed, eps, max_len, budget) -> Optional[Kill]:
    # breadth-first over product length, deduplicated on reduced forms
    seen = set()
    frontier = [((), Word())]
    for _ in range(max_len):
        nxt = []
        for factors, w in frontier:
            for i, y in enumerate(signed):
                prod = w * y
                if prod in seen:
                    continue
                seen.add(prod)
                f = factors + (i,)
                status = identity_status(p, prod, budget)
                if status.is_identity:
                    return Kill(eps, f, prod, status.certificate["trace"])
                nxt.append((f, prod))
        frontier = nxt
    return None


def semigroup_criterion(
    p: Presentation,
    subset: Sequence[Word],
    max_len: int,
    budget: Optional[Budget] = None,
    threads: int = 1,
):
    budget = budget or Budget()
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    statuses = []
    for x in subset:
        p.check_word(x)
        s = identity_status(p, x, budget)
        if not s.is_not_identity:
            raise PreconditionError(
                f"subset element {p.fmt(x)} is {s.verdict.value}; the criterion needs certified non-identity elements"
            )
        statuses.append(s)
    vectors = sign_vectors(len(subset))

    def run(eps):
        signed = [x if e > 0 else x.inverse() for x, e in zip(subset, eps)]
        return _search_assignment(p, signed, eps, max_len, budget)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, vectors))
    else:
        results = [run(eps) for eps in vectors]
    kills = [k for k in results if k is not None]
    survivors = [eps for eps, k in zip(vectors, results) if k is None]
    if not survivors:
        return NonLOCertificate(p, list(subset), statuses, kills, max_len, budget)
    return Undetermined(p, list(subset), statuses, kills, survivors, max_len, budget)


# --- serialization and replay --------------------------------------------------

def certificate_to_json(result) -> dict:
    p = result.presentation
    doc = {
        "kind": "semigroup_certificate",
        "verdict": result.verdict,
        "presentation": serialize_presentation(p),
        "subset": [
            {"word": p.fmt(x), "status": {"verdict": s.verdict.value, "certificate": s.certificate}}
            for x, s in zip(result.subset, result.subset_status)
        ],
        "assignments": [
            {
                "epsilons": list(k.epsilons),
                "factors": list(k.factors),
                "killer_word": p.fmt(k.word),
                "identity_trace": k.trace,
            }
            for k in result.kills
        ],
        "max_len": result.max_len,
        "oracle_budget": result.budget.to_json(),
    }
    if isinstance(result, Undetermined):
        doc["survivors"] = [list(e) for e in result.survivors]
    return seal(doc)


def verify_certificate(doc: dict) -> List[str]:
    """Replay a serialized criterion result; returns a list of problems (empty = valid)."""
    problems = []
    p = parse_presentation(doc["presentation"])
    subset = [p.word(item["word"]) for item in doc["subset"]]
    for x, item in zip(subset, doc["subset"]):
        st = item["status"]
        if st.get("verdict") != Verdict.NOT_IDENTITY.value or not check_not_identity(p, x, st.get("certificate", {})):
            problems.append(f"subset element {item['word']} lacks a valid NotIdentity certificate")
    killed = set()
    max_len = doc["max_len"]
    for a in doc["assignments"]:
        eps = tuple(a["epsilons"])
        factors = a["factors"]
        if len(eps) != len(subset) or any(e not in (-1, 1) for e in eps):
            problems.append(f"bad sign vector {eps}")
            continue
        if not factors or len(factors) > max_len or any(not (0 <= i < len(subset)) for i in factors):
            problems.append(f"bad factor list for {eps}")
            continue
        w = Word()
        for i in factors:
            w = w * (subset[i] if eps[i] > 0 else subset[i].inverse())
        if p.fmt(w) != a["killer_word"]:
            problems.append(f"killer word mismatch for {eps}")
        if not replay_trace(p, w, a["identity_trace"]):
            problems.append(f"identity trace for {eps} does not replay")
        killed.add(eps)
    survivors = {tuple(s) for s in doc.get("survivors", [])}
    everything = set(sign_vectors(len(subset)))
    if doc["verdict"] == "NotLeftOrderable":
        if killed != everything:
            problems.append("certificate does not cover all sign vectors")
    elif doc["verdict"] == "Undetermined":
        if killed | survivors != everything or killed & survivors:
            problems.append("killed and surviving sign vectors do not partition {-1,+1}^n")
    else:
        problems.append(f"unknown verdict {doc['verdict']!r}")
    return problems
