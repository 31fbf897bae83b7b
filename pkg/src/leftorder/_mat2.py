"""Exact 2x2 rational matrices as nested tuples of Fractions."""
from fractions import Fraction

IDENTITY = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def mat(rows):
    (a, b), (c, d) = rows
    return ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))


def mul(m, n):
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def det(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def inv(m):
    d = det(m)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    return ((m[1][1] / d, -m[0][1] / d), (-m[1][0] / d, m[0][0] / d))


def power(m, k):
    if k < 0:
        m, k = inv(m), -k
    out = IDENTITY
    for _ in range(k):
        out = mul(out, m)
    return out


def to_json(m):
    return [[[x.numerator, x.denominator] for x in row] for row in m]
