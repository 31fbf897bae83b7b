"""Dynamic realization of a left order on a finite prefix of a group.

An order-preserving embedding ``t`` of an enumerated prefix into the rationals
is built inductively; each group element then acts on the placed points by
``t(g_i) -> t(g g_i)``, extended affinely in between and by slope-1 translations
outside. Conjugating by ``phi: R -> (-1, 0)`` moves the action to a ray where
every map fixes 0.

Homomorphism checks are restricted to placed points: a finite prefix only
yields a partial action.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .errors import InvariantViolation, PreconditionError
from .orders import Cmp, OrderOracle, make_oracle
from .pl import PLMap, compress_to_negative_ray, phi, strictly_increasing
from .textio import j2q, parse_presentation, q2j, seal, serialize_presentation
from .words import Presentation, Word
from .wordproblem import Budget, enumerate_ball
from ._validation import check_presentation

SCOPE_NOTE = "partial homomorphism checked only where all three points are placed"


@dataclass(frozen=True)
class Embedding:
    """Placed elements with their rational positions, in enumeration order.

    The first ``base_size`` entries come from the enumeration; later entries
    were added by extension.
    """

    entries: Tuple[Tuple[Word, Fraction], ...]
    base_size: int

    def __len__(self):
        return len(self.entries)

    @property
    def words(self):
        return [w for w, _ in self.entries]

    @property
    def values(self):
        return [t for _, t in self.entries]

    @property
    def domain(self):
        return self.entries[: self.base_size]

    def swapped(self, i, j) -> "Embedding":
        """Copy with the values of entries ``i`` and ``j`` exchanged (negative controls)."""
        e = list(self.entries)
        (wi, ti), (wj, tj) = e[i], e[j]
        e[i], e[j] = (wi, tj), (wj, ti)
        return Embedding(tuple(e), self.base_size)


class _Placer:
    """Incremental state of the inductive placement rule."""

    def __init__(self, oracle: OrderOracle, entries=()):
        self.oracle = oracle
        self.entries = list(entries)
        self.by_value = sorted(((t, w) for w, t in self.entries), key=lambda tw: tw[0])
        self.index = {}
        for w, t in self.entries:
            key = oracle.normal_form(w)
            if key is not None:
                self.index[key] = t

    def locate(self, w: Word):
        """Return ``("found", value)`` or ``("gap", insertion_position)``."""
        key = self.oracle.normal_form(w)
        if key is not None:
            if key in self.index:
                return "found", self.index[key]
        lo, hi = 0, len(self.by_value)
        while lo < hi:
            mid = (lo + hi) // 2
            t, other = self.by_value[mid]
            c = self.oracle.compare(w, other)
            if c is Cmp.UNKNOWN:
                raise PreconditionError(f"order undecided between {w} and {other}")
            if c is Cmp.EQUAL:
                return "found", t
            if c is Cmp.LESS:
                hi = mid
            else:
                lo = mid + 1
        return "gap", lo

    def place(self, w: Word) -> Fraction:
        vals = self.by_value
        kind, where = self.locate(w)
        if kind == "found":
            raise InvariantViolation(f"{w} is already placed")
        if not vals:
            t = Fraction(0)
        elif where == len(vals):
            t = vals[-1][0] + 1
        elif where == 0:
            # the max rule mirrored; "min + 1" would collide with placed values
            t = vals[0][0] - 1
        else:
            t = (vals[where - 1][0] + vals[where][0]) / 2
        vals.insert(where, (t, w))
        self.entries.append((w, t))
        key = self.oracle.normal_form(w)
        if key is not None:
            self.index[key] = t
        return t

    def value(self, w: Word) -> Optional[Fraction]:
        kind, where = self.locate(w)
        return where if kind == "found" else None


def build_embedding_t(enumeration: Sequence[Word], oracle: OrderOracle) -> Embedding:
    if not enumeration:
        raise PreconditionError("enumeration is empty")
    if oracle.compare(enumeration[0], Word()) is not Cmp.EQUAL:
        raise PreconditionError("enumeration must begin with the identity")
    placer = _Placer(oracle)
    for w in enumeration:
        if placer.locate(w)[0] == "found":
            raise PreconditionError(f"duplicate element {oracle.presentation.fmt(w)} in enumeration")
        placer.place(w)
    return Embedding(tuple(placer.entries), len(enumeration))


def extend_embedding(emb: Embedding, words: Sequence[Word], oracle: OrderOracle) -> Embedding:
    """Place every not-yet-placed word of ``words`` with the same inductive rule."""
    placer = _Placer(oracle, emb.entries)
    for w in words:
        if placer.locate(w)[0] != "found":
            placer.place(w)
    return Embedding(tuple(placer.entries), emb.base_size)


def build_pl_action(emb: Embedding, g: Word, oracle: OrderOracle) -> PLMap:
    """The PL map sending ``t(g_i) -> t(g g_i)`` for every enumerated ``g_i``.

    Products not yet placed are placed on a private extension of ``emb``.
    """
    placer = _Placer(oracle, emb.entries)
    pairs = []
    for gi, ti in emb.domain:
        prod = g * gi
        t = placer.value(prod)
        if t is None:
            t = placer.place(prod)
        pairs.append((ti, t))
    return PLMap.from_pairs(pairs)


# --- verification --------------------------------------------------------------

@dataclass
class RealizationReport:
    embedding: Embedding
    maps: List[Tuple[Word, PLMap]]
    checks: dict
    witnesses: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAILED"


def check_realization(
    emb: Embedding,
    maps: Sequence[Tuple[Word, PLMap]],
    iterates: int,
    oracle: OrderOracle,
) -> RealizationReport:
    fmt = oracle.presentation.fmt
    witnesses = []
    entries = list(emb.entries)

    order_ok = True
    if len(set(emb.values)) != len(entries):
        order_ok = False
        witnesses.append("order: embedding values are not pairwise distinct")
    for i in range(len(entries)):
        if not order_ok:
            break
        u, tu = entries[i]
        for j in range(i + 1, len(entries)):
            v, tv = entries[j]
            c = oracle.compare(u, v)
            if c is Cmp.UNKNOWN or c is Cmp.EQUAL or (c is Cmp.LESS) != (tu < tv):
                order_ok = False
                witnesses.append(f"order: compare({fmt(u)}, {fmt(v)}) = {c.value} but t = {tu}, {tv}")
                break

    placer = _Placer(oracle, entries)
    domain_keys = {}
    for w, t in emb.domain:
        domain_keys[oracle.normal_form(w)] = t

    monotone_ok = True
    for g, m in maps:
        if not (strictly_increasing(m.breakpoints) and strictly_increasing(m.values)):
            monotone_ok = False
            witnesses.append(f"monotone: map of {fmt(g)} is not increasing")
            continue
        for gi, ti in emb.domain:
            target = placer.value(g * gi)
            if target is None or m(ti) != target:
                monotone_ok = False
                witnesses.append(f"monotone: map of {fmt(g)} sends t({fmt(gi)}) to {m(ti)}, expected {target}")
                break

    faithful_ok = True
    for g, m in maps:
        tg = placer.value(g)
        is_e = oracle.compare(g, Word()) is Cmp.EQUAL
        if tg is None or m(0) != tg or (tg == 0) != is_e:
            faithful_ok = False
            witnesses.append(f"faithful: map of {fmt(g)} sends 0 to {m(0)}, t = {tg}")

    hom_ok, checked = True, 0
    for g, mg in maps:
        for h, mh in maps:
            for gi, ti in emb.domain:
                hgi = h * gi
                t_hgi = domain_keys.get(oracle.normal_form(hgi))
                if t_hgi is None:
                    continue
                t_ghgi = placer.value(g * hgi)
                if t_ghgi is None:
                    continue
                checked += 1
                if mg(mh(ti)) != t_ghgi:
                    hom_ok = False
                    witnesses.append(f"partial_hom: {fmt(g)} . {fmt(h)} at t({fmt(gi)})")

    orbits = []
    for g, m in maps:
        if oracle.compare(g, Word()) is not Cmp.GREATER:
            continue
        start = phi(0)
        vals = compress_to_negative_ray(m).orbit(start, iterates)
        inc = strictly_increasing([start] + vals) and all(v < 0 for v in vals)
        if not inc:
            witnesses.append(f"germ_orbit: orbit of {fmt(g)} is not strictly increasing toward 0")
        orbits.append({"word": fmt(g), "values": vals, "increasing": inc})

    checks = {
        "order_compatible": order_ok,
        "faithful": faithful_ok,
        "monotone": monotone_ok,
        "partial_hom": {"ok": hom_ok, "checked": checked, "scope": SCOPE_NOTE},
        "germ_orbit": orbits,
    }
    return RealizationReport(emb, list(maps), checks, witnesses)


# --- end to end ------------------------------------------------------------------

def realize(
    p: Presentation,
    order: str = "lex",
    radius: int = 3,
    iterates: int = 10,
    maps: str = "ball",
    budget: Optional[Budget] = None,
) -> RealizationReport:
    """Enumerate the radius ball, embed it, build one map per element (or per
    generator and inverse with ``maps="generators"``) and check everything."""
    oracle = make_oracle(order, p)
    ball = enumerate_ball(p, radius, budget)
    emb = build_embedding_t(ball.words, oracle)
    if maps == "ball":
        acting = list(ball.words)
    elif maps == "generators":
        acting = [Word()] + [Word.gen(i, s) for i in range(p.ngens) for s in (1, -1)]
    else:
        raise ValueError("maps must be 'ball' or 'generators'")
    emb = extend_embedding(emb, [g * gi for g in acting for gi, _ in emb.domain], oracle)
    built = [(g, build_pl_action(emb, g, oracle)) for g in acting]
    report = check_realization(emb, built, iterates, oracle)
    report.checks["order"] = order
    return report


def report_to_json(report: RealizationReport, p: Presentation, order: str, iterates: int) -> dict:
    fmt = p.fmt
    checks = dict(report.checks)
    checks["germ_orbit"] = [
        {"word": o["word"], "values": [q2j(v) for v in o["values"]], "increasing": o["increasing"]}
        for o in checks["germ_orbit"]
    ]
    checks.pop("order", None)
    return seal({
        "kind": "realization_report",
        "presentation": serialize_presentation(p),
        "order": order,
        "iterates": iterates,
        "domain_size": report.embedding.base_size,
        "embedding": [
            {"word": fmt(w), "value_num": t.numerator, "value_den": t.denominator}
            for w, t in report.embedding.entries
        ],
        "maps": [
            {"word": fmt(g), "breakpoints": [q2j(x) for x in m.breakpoints], "values": [q2j(y) for y in m.values]}
            for g, m in report.maps
        ],
        "checks": checks,
        "status": report.status,
        "witnesses": report.witnesses,
    })


def report_from_json(doc: dict):
    p = parse_presentation(doc["presentation"])
    oracle = make_oracle(doc["order"], p)
    entries = tuple(
        (p.word(e["word"]), Fraction(e["value_num"], e["value_den"])) for e in doc["embedding"]
    )
    emb = Embedding(entries, doc["domain_size"])
    maps = [
        (p.word(m["word"]), PLMap(tuple(j2q(x) for x in m["breakpoints"]), tuple(j2q(y) for y in m["values"])))
        for m in doc["maps"]
    ]
    return p, oracle, emb, maps


def verify_report(doc: dict) -> List[str]:
    """Re-run every check on the recorded embedding and maps (no enumeration)."""
    p, oracle, emb, maps = report_from_json(doc)
    fresh = check_realization(emb, maps, doc["iterates"], oracle)
    fresh_doc = report_to_json(fresh, p, doc["order"], doc["iterates"])
    problems = []
    if fresh.status != doc["status"]:
        problems.append(f"recorded status {doc['status']} but replay gives {fresh.status}")
    if fresh_doc["checks"] != doc["checks"]:
        problems.append("recorded checks differ from replay")
    if not fresh.passed:
        problems.extend(fresh.witnesses[:5])
    return problems


class DynamicRealization(BaseEstimator):
    """Estimator-style wrapper: ``fit`` a presentation, ``transform`` words to maps.

    >>> from leftorder.corpus import load
    >>> est = DynamicRealization(order="lex", radius=2).fit(load("z"))
    >>> est.report_.status
    'PASS'
    """

    def __init__(self, order="lex", radius=3, iterates=10, maps="ball", compress=True):
        self.order = order
        self.radius = radius
        self.iterates = iterates
        self.maps = maps
        self.compress = compress

    def fit(self, X, y=None):
        p = check_presentation(X)
        self.presentation_ = p
        self.oracle_ = make_oracle(self.order, p)
        self.report_ = realize(p, self.order, self.radius, self.iterates, self.maps)
        self.embedding_ = self.report_.embedding
        return self

    def transform(self, X):
        """Map each word (or word string) to its PL action, compressed if requested."""
        check_is_fitted(self, "report_")
        out = []
        for w in X:
            if isinstance(w, str):
                w = self.presentation_.word(w)
            m = build_pl_action(self.embedding_, self.presentation_.check_word(w), self.oracle_)
            out.append(compress_to_negative_ray(m) if self.compress else m)
        return out
