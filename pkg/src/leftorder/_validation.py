"""Input coercion used by the estimator wrappers and the CLI."""
from __future__ import annotations

import os
from fractions import Fraction
from numbers import Integral, Rational

from .errors import DomainError
from .words import Presentation


def check_presentation(X) -> Presentation:
    """Accept a Presentation, presentation text, a path, or a corpus name."""
    if isinstance(X, Presentation):
        return X
    if isinstance(X, (str, os.PathLike)):
        from .corpus import resolve
        from .textio import parse_presentation

        text = str(X)
        if "gens:" in text:
            return parse_presentation(text)
        return resolve(text)
    raise TypeError(f"expected a Presentation, text or path, got {type(X).__name__}")


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if not isinstance(value, Integral) or isinstance(value, bool) or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def as_rational(x) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        from .textio import parse_rational

        return parse_rational(x)
    raise TypeError(f"exact rational required, got {type(x).__name__}")


def check_s_value(s) -> Fraction:
    """Parameter values must lie in S = {0} U {1/n : n >= 1}."""
    s = as_rational(s)
    if s != 0 and (s.numerator != 1 or s.denominator < 1):
        raise DomainError(f"parameter {s} is not in {{0}} U {{1/n}}")
    return s
