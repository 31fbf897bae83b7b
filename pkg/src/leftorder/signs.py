"""Sign selection for finite families of parametrized germs.

Each germ gets a sign so that the semigroup generated by the signed germs
avoids the identity. The procedure works through witness sequences shrinking
to (0, 0): germs that move the current sequence get decided (and the sequence
is thinned to points where they move up), germs that fix every sampled point
are deferred to a fresh tier seeded by their own witnesses. The tier rows are
interleaved diagonal by diagonal into one sequence.

Everything is decided on sampled data: equality of germs means "equal at every
witness point", and transcripts record the sampling depth.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .errors import DomainError, PreconditionError, UnsupportedInverse
from .germs import GermFamily, ParamGerm, eval_param_germ, germs_from_json, germs_to_json, grid_s, grid_x
from .orders import Cmp
from .textio import j2q, q2j, seal
from .words import Word

SAMPLING_NOTE = "germ equality and tier deferral are decided on the sampled witness points only"


@dataclass(frozen=True)
class WitnessPoint:
    p: Fraction
    q: Fraction
    tier: int = 0
    column: int = 0


def find_nontriviality_witness(f: ParamGerm, depth: int) -> Optional[List[WitnessPoint]]:
    """One moved point per shell m = 1..depth, or None if some shell has none."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    points = []
    for m in range(1, depth + 1):
        hit = None
        for x in grid_x(m):
            if abs(x) >= f.rho:
                continue
            for s in grid_s(m):
                try:
                    moved = eval_param_germ(f, x, s) != x
                except DomainError:
                    continue
                if moved:
                    hit = WitnessPoint(x, s, 0, m - 1)
                    break
            if hit:
                break
        if hit is None:
            return None
        points.append(hit)
    return points


@dataclass
class Tier:
    seed: int
    members: List[int]
    points: List[WitnessPoint]


@dataclass
class GermOrderTranscript:
    germs: List[ParamGerm]
    epsilons: List[int]
    tiers: List[Tier]
    witness: List[WitnessPoint]
    depth: int
    max_len: int
    words_checked: int = 0
    failure: Optional[str] = None
    family: GermFamily = field(default=None, repr=False)

    def __post_init__(self):
        if self.family is None:
            self.family = GermFamily(self.germs)

    @property
    def passed(self) -> bool:
        return self.failure is None

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAILED"


def _displacement(family, w, x, s):
    try:
        return family.eval_word(w, x, s) - x
    except DomainError:
        return None


def diagonal_merge(rows: Sequence[Sequence[WitnessPoint]]) -> List[WitnessPoint]:
    out = []
    longest = max((len(r) for r in rows), default=0)
    for d in range(longest + len(rows)):
        for r, row in enumerate(rows):
            c = d - r
            if 0 <= c < len(row):
                out.append(WitnessPoint(row[c].p, row[c].q, r, c))
    return out


def semigroup_words(k: int, epsilons: Sequence[int], max_len: int):
    letters = [(i + 1) * e for i, e in enumerate(epsilons)]
    for n in range(1, max_len + 1):
        for combo in itertools.product(letters, repeat=n):
            yield Word.from_expanded(combo)


def select_signs(germs: Sequence[ParamGerm], depth: int = 4, max_len: int = 4) -> GermOrderTranscript:
    family = GermFamily(germs)
    names = family.names
    witnesses = []
    for name, g in zip(names, germs):
        wit = find_nontriviality_witness(g, depth)
        if wit is None:
            raise PreconditionError(f"germ {name} has no nontriviality witness up to depth {depth}")
        witnesses.append(wit)

    eps: List[Optional[int]] = [None] * len(germs)
    tiers: List[Tier] = []
    pending = list(range(len(germs)))
    while pending:
        seed = pending[0]
        seq = [(w.p, w.q) for w in witnesses[seed]]
        members, deferred = [], []
        for i in pending:
            gi = Word.gen(i)
            disp = [(pt, _displacement(family, gi, *pt)) for pt in seq]
            up = [pt for pt, d in disp if d is not None and d > 0]
            down = [pt for pt, d in disp if d is not None and d < 0]
            if up:
                eps[i], seq = 1, up
            elif down:
                eps[i], seq = -1, down
            else:
                deferred.append(i)
                continue
            members.append(i)
        tier_no = len(tiers)
        tiers.append(Tier(seed, members, [WitnessPoint(p, q, tier_no, c) for c, (p, q) in enumerate(seq)]))
        pending = deferred

    witness = diagonal_merge([t.points for t in tiers])
    transcript = GermOrderTranscript(list(germs), eps, tiers, witness, depth, max_len, family=family)
    _verify_semigroup(transcript)
    return transcript


def _verify_semigroup(tr: GermOrderTranscript) -> None:
    """Every semigroup word must move some witness point up."""
    tr.words_checked = 0
    for w in semigroup_words(len(tr.germs), tr.epsilons, tr.max_len):
        tr.words_checked += 1
        try:
            ok = any(
                (d := _displacement(tr.family, w, pt.p, pt.q)) is not None and d > 0 for pt in tr.witness
            )
        except UnsupportedInverse as exc:
            tr.failure = f"{tr.family.fmt(w)}: {exc}"
            return
        if not ok:
            tr.failure = f"semigroup word {tr.family.fmt(w)} moves no witness point up"
            return


def germ_compare(tr: GermOrderTranscript, u: Word, v: Word) -> Cmp:
    """Order of ``u`` relative to ``v``: Less when ``u^-1 v`` moves the first
    decisive witness point up. Equal on non-reduced-equal words means sampled equality."""
    w = u.inverse() * v
    if not w:
        return Cmp.EQUAL
    try:
        for pt in tr.witness:
            d = _displacement(tr.family, w, pt.p, pt.q)
            if d:
                return Cmp.LESS if d > 0 else Cmp.GREATER
    except UnsupportedInverse:
        return Cmp.UNKNOWN
    return Cmp.EQUAL


# --- serialization -----------------------------------------------------------------

def _pt(w: WitnessPoint):
    return {"p": q2j(w.p), "q": q2j(w.q), "tier": w.tier, "column": w.column}


def transcript_to_json(tr: GermOrderTranscript) -> dict:
    return seal({
        "kind": "germ_transcript",
        "germs": germs_to_json(tr.germs)["germs"],
        "epsilons": tr.epsilons,
        "depth": tr.depth,
        "tiers": [{"seed": t.seed, "members": t.members, "points": [_pt(w) for w in t.points]} for t in tr.tiers],
        "witness": [_pt(w) for w in tr.witness],
        "verification": {"max_len": tr.max_len, "words_checked": tr.words_checked,
                         "status": tr.status, "failure": tr.failure},
        "sampling": SAMPLING_NOTE,
    })


def transcript_from_json(doc: dict) -> GermOrderTranscript:
    germs = germs_from_json(doc["germs"])

    def pt(d):
        return WitnessPoint(j2q(d["p"]), j2q(d["q"]), d["tier"], d["column"])

    tiers = [Tier(t["seed"], list(t["members"]), [pt(w) for w in t["points"]]) for t in doc["tiers"]]
    ver = doc["verification"]
    return GermOrderTranscript(
        germs, list(doc["epsilons"]), tiers, [pt(w) for w in doc["witness"]], doc["depth"], ver["max_len"],
        ver["words_checked"], ver["failure"],
    )


def verify_transcript(doc: dict) -> List[str]:
    """Re-check tiers, signs and every semigroup word on the recorded witness points."""
    tr = transcript_from_json(doc)
    problems = []
    k = len(tr.germs)
    members = sorted(i for t in tr.tiers for i in t.members)
    if members != list(range(k)):
        problems.append("tiers do not partition the germ indices")
    if any(e not in (-1, 1) for e in tr.epsilons) or len(tr.epsilons) != k:
        problems.append("sign vector malformed")
        return problems
    for t in tr.tiers:
        for i in t.members:
            w = Word.gen(i, tr.epsilons[i])
            for pt in t.points:
                d = _displacement(tr.family, w, pt.p, pt.q)
                if d is None or d <= 0:
                    problems.append(f"germ {tr.family.names[i]} with sign {tr.epsilons[i]} does not move "
                                    f"tier {pt.tier} point ({pt.p}, {pt.q}) up")
    expected = diagonal_merge([t.points for t in tr.tiers])
    if expected != tr.witness:
        problems.append("witness sequence is not the diagonal merge of the tier rows")
    recorded = doc["verification"]["status"]
    fresh = GermOrderTranscript(tr.germs, tr.epsilons, tr.tiers, tr.witness, tr.depth, tr.max_len)
    _verify_semigroup(fresh)
    if fresh.status != recorded:
        problems.append(f"recorded status {recorded} but replay gives {fresh.status}")
    if fresh.failure:
        problems.append(fresh.failure)
    return problems


class GermSignSelector(BaseEstimator):
    """Estimator-style wrapper around :func:`select_signs`.

    ``fit`` takes a list of germs (or germ-file JSON); ``predict`` maps words
    over the germs to +1 / -1 / 0 according to their position relative to the
    identity in the induced order.
    """

    def __init__(self, depth=4, max_len=4):
        self.depth = depth
        self.max_len = max_len

    def fit(self, X, y=None):
        germs = germs_from_json(X) if isinstance(X, dict) else list(X)
        if not germs or not all(isinstance(g, ParamGerm) for g in germs):
            raise TypeError("fit expects a nonempty list of ParamGerm")
        self.transcript_ = select_signs(germs, self.depth, self.max_len)
        self.signs_ = list(self.transcript_.epsilons)
        return self

    def predict(self, X):
        check_is_fitted(self, "transcript_")
        tr = self.transcript_
        out = []
        for w in X:
            if isinstance(w, str):
                w = tr.family.word(w)
            c = germ_compare(tr, Word(), w)
            out.append({Cmp.LESS: 1, Cmp.GREATER: -1, Cmp.EQUAL: 0}.get(c, 0))
        return out

    def compare(self, u, v) -> Cmp:
        check_is_fitted(self, "transcript_")
        return germ_compare(self.transcript_, u, v)
