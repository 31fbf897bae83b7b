"""Bundled named group presentations."""
from __future__ import annotations

import os
from importlib import resources

from ..textio import load_presentation, parse_presentation

NOTES = {
    "z": "infinite cyclic group",
    "z2": "cyclic of order 2", "z3": "cyclic of order 3", "z4": "cyclic of order 4",
    "z5": "cyclic of order 5", "z6": "cyclic of order 6", "z7": "cyclic of order 7",
    "zxz": "free abelian of rank 2", "zxzxz": "free abelian of rank 3",
    "f2": "free group of rank 2",
    "klein": "Klein bottle group",
    "heisenberg": "integer Heisenberg group",
    "q8": "quaternion group of order 8",
    "thurston": "fundamental group of Thurston's homology 3-sphere, a^2 = b^3 = c^7 = abc",
    "tsuboi": "Tsuboi's one-relator group <a, b | [a, [a, b]]>",
}


def names():
    return sorted(NOTES)


def text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.grp").read_text(encoding="utf-8")


def load(name: str):
    if name not in NOTES:
        raise KeyError(f"no corpus entry named {name!r}")
    return parse_presentation(text(name))


def entries():
    return [(n, load(n), NOTES[n]) for n in names()]


def resolve(path):
    """Load ``path`` from disk, falling back to the bundled corpus (``corpus/<name>.grp``)."""
    path = str(path)
    if os.path.exists(path):
        return load_presentation(path)
    stem = os.path.basename(path)
    if stem.endswith(".grp"):
        stem = stem[:-4]
    if stem in NOTES:
        return load(stem)
    raise FileNotFoundError(path)
