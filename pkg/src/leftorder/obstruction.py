"""Finite-data harness for the holonomy obstruction.

Given a presentation of an amenable group with vanishing first Betti number and
an assignment of parametrized germs to its generators, any representation
into the (left-orderable) germ group must be trivial: an amenable
left-orderable group is locally indicable, so a nontrivial finitely generated
image would surject onto Z, forcing b1 > 0. The harness checks the
assignment on sampled points and reports which case the data falls into.
Amenability is taken from the presentation's metadata, never inferred.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Optional

from .abelian import first_betti
from .errors import DomainError, PreconditionError
from .germs import GermFamily, ParamGerm, full_grid, germs_from_json, germs_to_json
from .signs import find_nontriviality_witness
from .textio import j2q, parse_presentation, q2j, seal, serialize_presentation
from .words import Presentation


class ObstructionVerdict(str, enum.Enum):
    HYPOTHESES_NOT_MET = "HypothesesNotMet"
    NOT_A_REPRESENTATION = "NotARepresentation"
    NO_OBSTRUCTION = "NoObstruction"
    OBSTRUCTION_WITNESS = "ObstructionWitness"
    TRIVIAL_REPRESENTATION = "TrivialRepresentation"


@dataclass
class ObstructionReport:
    verdict: ObstructionVerdict
    betti: Optional[int]
    amenable: Optional[bool]
    points_checked: int = 0
    detail: dict = field(default_factory=dict)


def _family(p: Presentation, assignment: Dict[str, ParamGerm]) -> GermFamily:
    missing = [g for g in p.generators if g not in assignment]
    if missing:
        raise PreconditionError(f"assignment does not cover generators {missing}")
    return GermFamily([assignment[g] for g in p.generators])


def relator_failure(p: Presentation, family: GermFamily, depth: int):
    """First (relator, point, value) where a relator moves a grid point, and the point count."""
    rho = min(g.rho for g in family.germs)
    pts = full_grid(depth, rho)
    for j, r in enumerate(p.relators):
        for x, s in pts:
            try:
                val = family.eval_word(r, x, s)
            except DomainError:
                continue
            if val != x:
                return (j, (x, s), val), len(pts)
    return None, len(pts)


def stability_obstruction(
    p: Presentation,
    assignment: Dict[str, ParamGerm],
    depth: int = 4,
    budget=None,
) -> ObstructionReport:
    """Classify a germ assignment for ``p``.

    The amenability flag is examined first, so a group not asserted amenable
    yields HypothesesNotMet whatever the assignment. ``budget`` is accepted for
    interface symmetry; no word-problem search is needed here.
    """
    family = _family(p, assignment)
    if p.amenable is not True:
        return ObstructionReport(ObstructionVerdict.HYPOTHESES_NOT_MET, None, p.amenable,
                                 detail={"reason": "presentation is not flagged amenable"})
    failure, n = relator_failure(p, family, depth)
    if failure is not None:
        j, (x, s), val = failure
        return ObstructionReport(
            ObstructionVerdict.NOT_A_REPRESENTATION, None, True, n,
            {"relator": j, "relator_word": p.fmt(p.relators[j]), "point": [q2j(x), q2j(s)], "value": q2j(val)},
        )
    b1 = first_betti(p)
    if b1 > 0:
        return ObstructionReport(ObstructionVerdict.NO_OBSTRUCTION, b1, True, n, {"reason": "H^1 != 0"})
    for i, name in enumerate(p.generators):
        wit = find_nontriviality_witness(family.germs[i], depth)
        if wit is not None:
            return ObstructionReport(
                ObstructionVerdict.OBSTRUCTION_WITNESS, b1, True, n,
                {"generator": name, "points": [[q2j(w.p), q2j(w.q)] for w in wit]},
            )
    return ObstructionReport(ObstructionVerdict.TRIVIAL_REPRESENTATION, b1, True, n, {})


def report_to_json(rep: ObstructionReport, p: Presentation, assignment: Dict[str, ParamGerm], depth: int) -> dict:
    return seal({
        "kind": "obstruction_report",
        "presentation": serialize_presentation(p),
        "assignment": germs_to_json([assignment[g] for g in p.generators])["germs"],
        "depth": depth,
        "verdict": rep.verdict.value,
        "betti": rep.betti,
        "amenable": rep.amenable,
        "points_checked": rep.points_checked,
        "detail": rep.detail,
    })


def verify_report(doc: dict) -> list:
    """Check the recorded evidence: flags, Betti number and sampled evaluations."""
    p = parse_presentation(doc["presentation"])
    germs = germs_from_json(doc["assignment"])
    assignment = {g.name: g for g in germs}
    family = _family(p, assignment)
    verdict = ObstructionVerdict(doc["verdict"])
    depth = doc["depth"]
    problems = []
    if verdict is ObstructionVerdict.HYPOTHESES_NOT_MET:
        if p.amenable is True:
            problems.append("presentation is flagged amenable")
        return problems
    if p.amenable is not True:
        problems.append("presentation is not flagged amenable")
    if verdict is ObstructionVerdict.NOT_A_REPRESENTATION:
        d = doc["detail"]
        x, s = j2q(d["point"][0]), j2q(d["point"][1])
        val = family.eval_word(p.relators[d["relator"]], x, s)
        if val == x or val != j2q(d["value"]):
            problems.append("recorded relator failure does not reproduce")
        return problems
    failure, _ = relator_failure(p, family, depth)
    if failure is not None:
        problems.append("a relator moves a sample point")
    b1 = first_betti(p)
    if b1 != doc["betti"]:
        problems.append(f"recorded b1 = {doc['betti']} but recomputed {b1}")
    if verdict is ObstructionVerdict.NO_OBSTRUCTION and b1 == 0:
        problems.append("NoObstruction requires b1 > 0")
    if verdict is ObstructionVerdict.OBSTRUCTION_WITNESS:
        if b1 != 0:
            problems.append("ObstructionWitness requires b1 = 0")
        g = family.germs[p.index(doc["detail"]["generator"])]
        for x, s in doc["detail"]["points"]:
            x, s = j2q(x), j2q(s)
            if g(x, s) == x:
                problems.append(f"witness point ({x}, {s}) is fixed")
    if verdict is ObstructionVerdict.TRIVIAL_REPRESENTATION:
        if b1 != 0:
            problems.append("TrivialRepresentation requires b1 = 0")
        for g in family.germs:
            if find_nontriviality_witness(g, depth) is not None:
                problems.append(f"generator germ {g.name} is not trivial on the grid")
    return problems
