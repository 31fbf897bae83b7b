"""Presentation text format, word tokens and exact-rational JSON helpers.

Presentation grammar::

    gens: a b c
    rels: a^2 c^-1 b^-1 a^-1, b^3 c^-1 b^-1 a^-1   # comments start with '#'
    amenable: true
    rep: a = [[1,1],[0,1]] b = [[2,0],[0,1]]

``rels`` and ``rep`` may repeat; their contents accumulate.
"""
from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction

from . import _mat2
from .errors import ParseError, StructureError
from .words import ID_RE, Presentation, Word, free_reduce

FORMAT_VERSION = 1

TOKEN_RE = re.compile(r"([a-z][a-z0-9_]*)(?:\^([+-]?\d+))?\Z")
REP_RE = re.compile(r"([a-z][a-z0-9_]*)\s*=\s*(\[\[[^\]]*\]\s*,\s*\[[^\]]*\]\])")
RAT_RE = re.compile(r"\s*([+-]?\d+)(?:/(\d+))?\s*\Z")


def _word_tokens(text, gens, line=None, col0=0):
    letters = []
    pos = 0
    for tok in text.split():
        pos = text.index(tok, pos)
        m = TOKEN_RE.match(tok)
        col = col0 + pos + 1
        if not m:
            raise ParseError(f"bad token {tok!r}", line, col)
        name, exp = m.group(1), int(m.group(2)) if m.group(2) is not None else 1
        if name not in gens:
            raise ParseError(f"undeclared generator `{name}`", line, col)
        letters.append((gens.index(name), exp))
        pos += len(tok)
    return letters


def parse_word(text: str, p: Presentation) -> Word:
    """Parse a word over ``p``'s generators; ``e`` or ``1`` denote the identity."""
    t = text.strip()
    if t in ("1", "") or (t == "e" and "e" not in p.generators):
        return Word()
    return free_reduce(_word_tokens(t, p.generators))


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = RAT_RE.match(str(text))
    if not m:
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


def _parse_matrix(text, line, col):
    try:
        rows = json.loads(re.sub(r"([+-]?\d+/\d+)", r'"\1"', text))
        return _mat2.mat([[parse_rational(x) for x in row] for row in rows])
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad matrix {text!r}: {exc}", line, col) from None


def parse_presentation(text: str) -> Presentation:
    gens = None
    rel_specs = []
    rep_specs = []
    amenable = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError("expected `key: value`", lineno, 1)
        key = key.strip()
        off = len(key) + (len(line) - len(line.lstrip())) + 1
        if key == "gens":
            if gens is not None:
                raise ParseError("duplicate gens line", lineno, 1)
            gens = rest.split()
            for g in gens:
                if not ID_RE.match(g):
                    raise ParseError(f"invalid generator name {g!r}", lineno, off + rest.index(g) + 1)
            if len(set(gens)) != len(gens):
                raise ParseError("duplicate generator name", lineno, off + 1)
        elif key == "rels":
            start = 0
            for chunk in rest.split(","):
                rel_specs.append((chunk, lineno, off + start))
                start += len(chunk) + 1
        elif key == "amenable":
            val = rest.strip().lower()
            if val not in ("true", "false"):
                raise ParseError("amenable must be true or false", lineno, off + 1)
            amenable = val == "true"
        elif key == "rep":
            consumed = REP_RE.sub("", rest)
            if consumed.strip():
                raise ParseError(f"cannot parse rep entry near {consumed.strip()!r}", lineno, off + 1)
            for m in REP_RE.finditer(rest):
                rep_specs.append((m.group(1), m.group(2), lineno, off + m.start() + 1))
        else:
            raise ParseError(f"unknown key {key!r}", lineno, 1)
    if gens is None:
        raise ParseError("missing gens line")
    relators = []
    for chunk, lineno, col in rel_specs:
        if not chunk.strip():
            if len(rel_specs) == 1:
                continue  # bare `rels:` line: no relators
            raise ParseError("empty relator", lineno, col + 1)
        w = free_reduce(_word_tokens(chunk, gens, lineno, col))
        if not w:
            raise ParseError("relator is empty after free reduction", lineno, col + 1)
        relators.append(w)
    reps = {}
    for name, mtext, lineno, col in rep_specs:
        if name not in gens:
            raise ParseError(f"undeclared generator `{name}`", lineno, col)
        reps[gens.index(name)] = _parse_matrix(mtext, lineno, col)
    try:
        return Presentation(tuple(gens), tuple(relators), amenable, reps)
    except StructureError as exc:
        raise ParseError(str(exc)) from None


def _fmt_q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def serialize_presentation(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.generators)]
    if p.relators:
        lines.append("rels: " + ", ".join(p.fmt(r) for r in p.relators))
    if p.amenable is not None:
        lines.append(f"amenable: {'true' if p.amenable else 'false'}")
    if p.reps:
        parts = []
        for g in sorted(p.reps):
            m = p.reps[g]
            parts.append(
                f"{p.generators[g]} = [[{_fmt_q(m[0][0])},{_fmt_q(m[0][1])}],[{_fmt_q(m[1][0])},{_fmt_q(m[1][1])}]]"
            )
        lines.append("rep: " + " ".join(parts))
    return "\n".join(lines) + "\n"


def load_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


# --- exact rationals in JSON -------------------------------------------------

def q2j(x: Fraction) -> list:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def j2q(pair) -> Fraction:
    if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, int) for v in pair)):
        raise ValueError(f"expected [numerator, denominator], got {pair!r}")
    if pair[1] <= 0:
        raise ValueError("denominator must be positive")
    return Fraction(pair[0], pair[1])


def _canonical(doc) -> bytes:
    body = {k: v for k, v in doc.items() if k != "digest"}
    return json.dumps(body, sort_keys=True, separators=(",", ":")).encode()


def seal(doc: dict) -> dict:
    """Attach ``format_version`` and a sha256 digest of the canonical payload."""
    doc = dict(doc)
    doc.setdefault("format_version", FORMAT_VERSION)
    doc["digest"] = hashlib.sha256(_canonical(doc)).hexdigest()
    return doc


def digest_ok(doc: dict) -> bool:
    return doc.get("digest") == hashlib.sha256(_canonical(doc)).hexdigest()


def dump_json(doc: dict, fh) -> None:
    json.dump(doc, fh, indent=2)
    fh.write("\n")
