"""Words in free groups and finite group presentations.

A :class:`Word` stores syllables ``(generator_index, exponent)``; internally most
algorithms work on the *expanded* form, a tuple of nonzero signed integers where
``+(i+1)`` is generator ``i`` and ``-(i+1)`` its inverse.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import _mat2
from .errors import StructureError

ID_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


def reduce_expanded(letters: Iterable[int]) -> tuple:
    """Free reduction of an expanded letter sequence (stack based)."""
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_expanded(letters: Sequence[int]) -> tuple:
    return tuple(-x for x in reversed(letters))


@dataclass(frozen=True, order=True)
class Word:
    letters: tuple = ()

    def __post_init__(self):
        prev = None
        for g, e in self.letters:
            if e == 0:
                raise StructureError("zero exponent in reduced word")
            if g == prev:
                raise StructureError("adjacent letters share a generator")
            prev = g

    @classmethod
    def from_expanded(cls, letters: Iterable[int]) -> "Word":
        syl = []
        for x in reduce_expanded(letters):
            g, e = abs(x) - 1, (1 if x > 0 else -1)
            if syl and syl[-1][0] == g:
                syl[-1][1] += e
            else:
                syl.append([g, e])
        return cls(tuple((g, e) for g, e in syl))

    @classmethod
    def gen(cls, i: int, exp: int = 1) -> "Word":
        return cls(((i, exp),)) if exp else cls()

    def expanded(self) -> tuple:
        out = []
        for g, e in self.letters:
            out.extend([(g + 1) if e > 0 else -(g + 1)] * abs(e))
        return tuple(out)

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word.from_expanded(self.expanded() + other.expanded())

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word.from_expanded(base.expanded() * abs(k))

    def exponent_sums(self, ngens: int) -> list:
        v = [0] * ngens
        for g, e in self.letters:
            v[g] += e
        return v

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def shortlex_key(self):
        # positive letter before its inverse
        return (len(self), tuple((abs(x) - 1, 0 if x > 0 else 1) for x in self.expanded()))

    def format(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "e"
        parts = []
        for g, e in self.letters:
            parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
        return " ".join(parts)


IDENTITY_WORD = Word()


def free_reduce(raw: Iterable, ngens: Optional[int] = None) -> Word:
    """Return the freely reduced word for a raw list of ``(generator, exponent)`` pairs.

    Zero exponents are dropped and adjacent powers of one generator merged.
    ``ngens`` bounds the generator indices when given.
    """
    expanded = []
    for g, e in raw:
        if not isinstance(g, int) or g < 0 or (ngens is not None and g >= ngens):
            raise StructureError(f"unknown generator index {g!r}")
        expanded.extend([(g + 1) if e > 0 else -(g + 1)] * abs(int(e)))
    return Word.from_expanded(expanded)


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return u * v * u.inverse() * v.inverse()


@dataclass(frozen=True)
class Presentation:
    """Generators, relators and optional metadata of a finitely presented group.

    ``reps`` maps a generator index to an exact 2x2 rational matrix; when given,
    every generator must be covered and every relator must map to the identity.
    """

    generators: tuple
    relators: tuple = ()
    amenable: Optional[bool] = None
    reps: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise StructureError("generator names must be distinct")
        for name in self.generators:
            if not ID_RE.match(name):
                raise StructureError(f"invalid generator name {name!r}")
        n = len(self.generators)
        for r in self.relators:
            if not isinstance(r, Word):
                raise StructureError("relators must be Word instances")
            if not r:
                raise StructureError("empty relator")
            if any(g >= n for g in r.generators()):
                raise StructureError("relator references an undeclared generator")
        if self.reps:
            self._check_reps()

    def _check_reps(self):
        n = len(self.generators)
        if set(self.reps) != set(range(n)):
            raise StructureError("a matrix representation must cover every generator")
        for g, m in self.reps.items():
            if _mat2.det(m) == 0:
                raise StructureError(f"representation of {self.generators[g]} is singular")
        for r in self.relators:
            if self.rep_image(r) != _mat2.IDENTITY:
                raise StructureError(
                    f"relator {r.format(self.generators)} is not the identity under the representation"
                )

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def is_free(self) -> bool:
        return not self.relators

    def rep_image(self, w: Word):
        out = _mat2.IDENTITY
        for g, e in w.letters:
            out = _mat2.mul(out, _mat2.power(self.reps[g], e))
        return out

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise StructureError(f"undeclared generator {name!r}") from None

    def word(self, text: str) -> Word:
        """Parse ``text`` (tokens ``a``, ``a^-2``; ``e`` or ``1`` for the identity)."""
        from .textio import parse_word

        return parse_word(text, self)

    def fmt(self, w: Word) -> str:
        return w.format(self.generators)

    def check_word(self, w: Word) -> Word:
        if any(g >= self.ngens for g in w.generators()):
            raise StructureError("word references an undeclared generator")
        return w
