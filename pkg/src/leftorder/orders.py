"""Computable left orders: lexicographic on Z^n and the Magnus order on free groups."""
from __future__ import annotations

import enum
from functools import lru_cache
from math import comb
from typing import Optional, Sequence

from .errors import PreconditionError, StructureError
from .words import Presentation, Word, commutator
from .wordproblem import Budget, identity_status


class Cmp(str, enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    UNKNOWN = "Unknown"

    def flip(self) -> "Cmp":
        return {Cmp.LESS: Cmp.GREATER, Cmp.GREATER: Cmp.LESS}.get(self, self)

    @classmethod
    def of_sign(cls, x) -> "Cmp":
        return cls.LESS if x < 0 else cls.GREATER if x > 0 else cls.EQUAL


def lex_order_compare(u: Sequence[int], v: Sequence[int]) -> Cmp:
    if len(u) != len(v):
        raise ValueError("vectors must have equal length")
    for a, b in zip(u, v):
        if a != b:
            return Cmp.LESS if a < b else Cmp.GREATER
    return Cmp.EQUAL


# --- Magnus expansion ----------------------------------------------------------

def _syllable_series(g: int, k: int, degree: int) -> dict:
    """(1 + X_g)^k truncated at ``degree``; negative k uses the geometric series."""
    out = {}
    for j in range(degree + 1):
        if k > 0:
            if j > k:
                break
            c = comb(k, j)
        else:
            c = (-1) ** j * comb(-k + j - 1, j)
        out[(g,) * j] = c
    return out


def _mul(a: dict, b: dict, degree: int) -> dict:
    out = {}
    for m1, c1 in a.items():
        room = degree - len(m1)
        for m2, c2 in b.items():
            if len(m2) > room:
                continue
            m = m1 + m2
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


@lru_cache(maxsize=65536)
def magnus_series(letters: tuple, degree: int) -> dict:
    """Magnus expansion of a reduced word (syllable tuple) truncated at ``degree``.

    Keys are monomials as tuples of generator indices; the constant term is ``()``.
    """
    series = {(): 1}
    for g, e in letters:
        series = _mul(series, _syllable_series(g, e, degree), degree)
    return series


def _first_difference(su: dict, sv: dict, d: int) -> int:
    monos = sorted({m for m in su if len(m) == d} | {m for m in sv if len(m) == d})
    for m in monos:
        diff = su.get(m, 0) - sv.get(m, 0)
        if diff:
            return diff
    return 0


def magnus_compare(u: Word, v: Word, p: Optional[Presentation] = None) -> Cmp:
    """Compare two free-group elements by their Magnus expansions.

    Coefficients are compared degree by degree in graded-lexicographic order;
    the first difference decides. Truncating at ``len(u^-1 v)`` is exact since a
    nontrivial word has a nonzero term of degree at most its length.
    """
    if p is not None and not p.is_free:
        raise PreconditionError("the Magnus order is only defined here for free presentations")
    w = u.inverse() * v
    if not w:
        return Cmp.EQUAL
    for d in range(1, len(w) + 1):
        diff = _first_difference(magnus_series(u.letters, d), magnus_series(v.letters, d), d)
        if diff:
            return Cmp.of_sign(diff)
    raise AssertionError("Magnus expansion failed to separate distinct free-group elements")


# --- oracles -------------------------------------------------------------------

class OrderOracle:
    """A left order on the group of ``presentation``.

    ``normal_form`` returns a hashable key equal for equal group elements, or
    None when the oracle cannot produce one; the realization engine uses it to
    locate already-placed elements.
    """

    name = "abstract"

    def __init__(self, presentation: Presentation):
        self.presentation = presentation

    def compare(self, u: Word, v: Word) -> Cmp:
        raise NotImplementedError

    def normal_form(self, w: Word):
        return None

    def __repr__(self):
        return f"{type(self).__name__}({self.presentation.generators})"


class LexOracle(OrderOracle):
    """Lexicographic order on exponent vectors of a free abelian presentation.

    The presentation must certify that the group is Z^n: every relator has zero
    exponent sums and every pair of generators commutes (checked by the word
    problem oracle).
    """

    name = "lex"

    def __init__(self, presentation: Presentation, budget: Optional[Budget] = None):
        super().__init__(presentation)
        p = presentation
        for r in p.relators:
            if any(r.exponent_sums(p.ngens)):
                raise PreconditionError(f"relator {p.fmt(r)} has nonzero exponent sums; group is not Z^n")
        for i in range(p.ngens):
            for j in range(i + 1, p.ngens):
                c = commutator(Word.gen(i), Word.gen(j))
                if not identity_status(p, c, budget).is_identity:
                    raise PreconditionError(
                        f"could not certify that {p.generators[i]} and {p.generators[j]} commute"
                    )

    def normal_form(self, w: Word):
        return tuple(w.exponent_sums(self.presentation.ngens))

    def compare(self, u: Word, v: Word) -> Cmp:
        return lex_order_compare(self.normal_form(u), self.normal_form(v))


class MagnusOracle(OrderOracle):
    name = "magnus"

    def __init__(self, presentation: Presentation):
        if not presentation.is_free:
            raise PreconditionError("magnus order requires a presentation without relators")
        super().__init__(presentation)

    def normal_form(self, w: Word):
        return w

    def compare(self, u: Word, v: Word) -> Cmp:
        return magnus_compare(u, v)


ORACLES = {"lex": LexOracle, "magnus": MagnusOracle}


def make_oracle(name: str, p: Presentation) -> OrderOracle:
    try:
        cls = ORACLES[name]
    except KeyError:
        raise StructureError(f"unknown order {name!r}; choose from {sorted(ORACLES)}") from None
    return cls(p)
