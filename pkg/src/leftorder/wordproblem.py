"""Bounded, three-valued word problem with replayable certificates.

``identity_status`` answers IDENTITY only with a rewrite trace that replays to
the empty word, NOT_IDENTITY only with a homomorphism whose image of the word is
checkably nontrivial, and UNKNOWN otherwise.
"""
from __future__ import annotations

import enum
import heapq
import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional

from .abelian import abelianization_matrix, smith_normal_form
from .words import Presentation, Word, invert_expanded, reduce_expanded
from . import _mat2


class Verdict(str, enum.Enum):
    IDENTITY = "Identity"
    NOT_IDENTITY = "NotIdentity"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Budget:
    """Caps for the identity search: expanded words and intermediate word length.

    The effective length cap is never below ``len(w) + longest relator``.
    """

    max_nodes: int = field(default_factory=lambda: int(os.environ.get("LEFTORDER_MAX_NODES", 64)))
    max_length: int = field(default_factory=lambda: int(os.environ.get("LEFTORDER_MAX_LENGTH", 16)))

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_length <= 0:
            raise ValueError("budget caps must be positive")

    def to_json(self):
        return {"max_nodes": self.max_nodes, "max_length": self.max_length}


@dataclass(frozen=True)
class IdentityStatus:
    verdict: Verdict
    certificate: dict = field(default_factory=dict)

    @property
    def is_identity(self):
        return self.verdict is Verdict.IDENTITY

    @property
    def is_not_identity(self):
        return self.verdict is Verdict.NOT_IDENTITY


@lru_cache(maxsize=256)
def _snf(p: Presentation):
    return smith_normal_form(abelianization_matrix(p))


def _informative_coords(p):
    snf = _snf(p)
    diag = list(snf.diagonal) + [0] * (p.ngens - len(snf.diagonal))
    return snf.left_inv, [(i, d) for i, d in enumerate(diag) if d != 1]


def abelian_key(p: Presentation, w: Word) -> tuple:
    """Image of ``w`` in the abelianization, in Smith coordinates."""
    U, coords = _informative_coords(p)
    v = w.exponent_sums(p.ngens)
    out = []
    for i, d in coords:
        y = sum(a * b for a, b in zip(U.entries[i], v))
        out.append(y % d if d else y)
    return tuple(out)


def _abelian_witness(p, w):
    U, coords = _informative_coords(p)
    v = w.exponent_sums(p.ngens)
    for i, d in coords:
        y = sum(a * b for a, b in zip(U.entries[i], v))
        if (d == 0 and y != 0) or (d > 1 and y % d):
            return {"method": "abelian", "functional": list(U.entries[i]), "modulus": d, "value": y}
    return None


def symmetrized_relators(p: Presentation):
    """Cyclic shifts of every relator and its inverse, first occurrence kept.

    Each entry is ``(relator_index, inverse, shift, letters)``.
    """
    seen = set()
    out = []
    for j, r in enumerate(p.relators):
        base = r.expanded()
        for inv in (False, True):
            letters = invert_expanded(base) if inv else base
            for k in range(len(letters)):
                s = letters[k:] + letters[:k]
                if s not in seen:
                    seen.add(s)
                    out.append((j, inv, k, s))
    return out


def _sym_letters(p, j, inv, k):
    letters = p.relators[j].expanded()
    if inv:
        letters = invert_expanded(letters)
    return letters[k:] + letters[:k]


def _length_cap(p, w, budget):
    longest = max((len(r) for r in p.relators), default=0)
    return max(budget.max_length, len(w) + longest)


def search_identity(p: Presentation, w: Word, budget: Budget) -> Optional[list]:
    """Shortest-first search over relator insertions; returns a trace or None.

    Words are expanded in order of length (first-come among equal lengths), and
    ``budget.max_nodes`` bounds the number of words expanded.
    """
    start = w.expanded()
    if not start:
        return []
    syms = symmetrized_relators(p)
    if not syms:
        return None
    cap = _length_cap(p, w, budget)
    parent = {start: None}
    tick = itertools.count()
    heap = [(len(start), next(tick), start)]
    expanded = 0
    while heap and expanded < budget.max_nodes:
        _, _, cur = heapq.heappop(heap)
        expanded += 1
        for pos in range(len(cur) + 1):
            head, tail = cur[:pos], cur[pos:]
            for j, inv, k, s in syms:
                nxt = reduce_expanded(head + s + tail)
                if len(nxt) > cap or nxt in parent:
                    continue
                parent[nxt] = (cur, {"at": pos, "relator": j, "inverse": inv, "shift": k})
                if not nxt:
                    trace = []
                    node = nxt
                    while parent[node] is not None:
                        node, step = parent[node]
                        trace.append(step)
                    return trace[::-1]
                heapq.heappush(heap, (len(nxt), next(tick), nxt))
    return None


def identity_status(p: Presentation, w: Word, budget: Optional[Budget] = None) -> IdentityStatus:
    budget = budget or Budget()
    p.check_word(w)
    if not w:
        return IdentityStatus(Verdict.IDENTITY, {"method": "rewrite", "trace": []})
    if p.is_free:
        return IdentityStatus(Verdict.NOT_IDENTITY, {"method": "free"})
    cert = _abelian_witness(p, w)
    if cert is not None:
        return IdentityStatus(Verdict.NOT_IDENTITY, cert)
    if p.reps:
        image = p.rep_image(w)
        if image != _mat2.IDENTITY:
            return IdentityStatus(Verdict.NOT_IDENTITY, {"method": "rep", "image": _mat2.to_json(image)})
    trace = search_identity(p, w, budget)
    if trace is not None:
        return IdentityStatus(Verdict.IDENTITY, {"method": "rewrite", "trace": trace})
    return IdentityStatus(
        Verdict.UNKNOWN, {"method": "budget", "max_nodes": budget.max_nodes, "max_length": _length_cap(p, w, budget)}
    )


# --- independent replay ------------------------------------------------------

def replay_trace(p: Presentation, w: Word, trace: list) -> bool:
    """True iff ``trace`` rewrites ``w`` to the empty word."""
    cur = w.expanded()
    try:
        for step in trace:
            j, inv, k, at = step["relator"], step["inverse"], step["shift"], step["at"]
            if not (0 <= j < len(p.relators)) or not isinstance(inv, bool):
                return False
            if not (0 <= k < len(p.relators[j])) or not (0 <= at <= len(cur)):
                return False
            cur = reduce_expanded(cur[:at] + _sym_letters(p, j, inv, k) + cur[at:])
    except (KeyError, TypeError):
        return False
    return cur == ()


def check_not_identity(p: Presentation, w: Word, cert: dict) -> bool:
    """Verify a NotIdentity certificate without searching."""
    method = cert.get("method")
    if method == "free":
        return p.is_free and bool(w)
    if method == "abelian":
        f, d = cert.get("functional"), cert.get("modulus")
        if not isinstance(f, list) or len(f) != p.ngens or not isinstance(d, int) or d < 0 or d == 1:
            return False

        def nonzero(y):
            return y != 0 if d == 0 else y % d != 0

        for r in p.relators:
            if nonzero(sum(a * b for a, b in zip(f, r.exponent_sums(p.ngens)))):
                return False
        return nonzero(sum(a * b for a, b in zip(f, w.exponent_sums(p.ngens))))
    if method == "rep":
        return bool(p.reps) and p.rep_image(w) != _mat2.IDENTITY
    return False


def check_status(p: Presentation, w: Word, status: dict) -> bool:
    verdict = status.get("verdict")
    cert = status.get("certificate", {})
    if verdict == Verdict.IDENTITY.value:
        return cert.get("method") == "rewrite" and replay_trace(p, w, cert.get("trace", []))
    if verdict == Verdict.NOT_IDENTITY.value:
        return check_not_identity(p, w, cert)
    return verdict == Verdict.UNKNOWN.value


def status_to_json(s: IdentityStatus) -> dict:
    return {"verdict": s.verdict.value, "certificate": s.certificate}


# --- ball enumeration ----------------------------------------------------------

@dataclass
class Ball:
    """Distinct group elements of word length <= radius, in shortlex order.

    ``flagged`` holds indices of words whose distinctness from some earlier
    word could not be decided within the budget (kept, not merged).
    """

    words: List[Word]
    flagged: set = field(default_factory=set)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


def _letter_order(n):
    out = []
    for g in range(n):
        out += [g + 1, -(g + 1)]
    return out


def reduced_words(ngens: int, radius: int):
    """All freely reduced expanded words of length <= radius, shortlex."""
    letters = _letter_order(ngens)
    level = [()]
    yield ()
    for _ in range(radius):
        nxt = []
        for w in level:
            for x in letters:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        yield from nxt
        level = nxt


def enumerate_ball(p: Presentation, radius: int, budget: Optional[Budget] = None) -> Ball:
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    budget = budget or Budget()
    kept: List[Word] = []
    buckets = {}
    flagged = set()
    for letters in reduced_words(p.ngens, radius):
        cand = Word.from_expanded(letters)
        key = abelian_key(p, cand) if not p.is_free else None
        bucket = buckets.setdefault(key, [])
        duplicate = unresolved = False
        for idx in bucket:
            if p.is_free:
                continue  # distinct reduced words are distinct elements
            s = identity_status(p, kept[idx].inverse() * cand, budget)
            if s.is_identity:
                duplicate = True
                break
            if s.verdict is Verdict.UNKNOWN:
                unresolved = True
        if duplicate:
            continue
        if unresolved:
            flagged.add(len(kept))
        bucket.append(len(kept))
        kept.append(cand)
    return Ball(kept, flagged)
