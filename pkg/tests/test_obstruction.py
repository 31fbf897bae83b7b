
import pytest

from leftorder import corpus
from leftorder.abelian import first_betti
from leftorder.errors import PreconditionError
from leftorder.germs import ParamGerm
from leftorder.obstruction import ObstructionVerdict as V, report_to_json, stability_obstruction, verify_report
from leftorder.textio import parse_presentation

IDENT = ParamGerm("x", name="id")
SHIFT = ParamGerm("x + s", name="f")
SCALE = ParamGerm("(1 + s) * x", name="g")


def assign(p, germ):
    return {g: ParamGerm(germ.expr, germ.rho, g) for g in p.generators}


def test_thurston_hypotheses_not_met():
    p = corpus.load("thurston")
    for germ in (IDENT, SHIFT):
        assert stability_obstruction(p, assign(p, germ)).verdict is V.HYPOTHESES_NOT_MET


def test_klein_no_obstruction():
    p = corpus.load("klein")
    rep = stability_obstruction(p, assign(p, IDENT))
    assert rep.verdict is V.NO_OBSTRUCTION and rep.betti == 1
    # a -> identity, b -> x + s satisfies a b a b^-1 and is nontrivial
    rep2 = stability_obstruction(p, {"a": ParamGerm("x", name="a"), "b": ParamGerm("x + s", name="b")})
    assert rep2.verdict is V.NO_OBSTRUCTION


def test_order_three_not_a_representation():
    p = parse_presentation("gens: a\nrels: a^3\namenable: true")
    rep = stability_obstruction(p, {"a": ParamGerm("x + s", name="a")})
    assert rep.verdict is V.NOT_A_REPRESENTATION
    assert rep.detail["point"] == [[0, 1], [1, 1]] and rep.detail["value"] == [3, 1]


@pytest.mark.parametrize("name", ["z2", "z3", "z4", "z5", "z6", "z7", "q8"])
def test_identity_assignment_trivial(name):
    p = corpus.load(name)
    rep = stability_obstruction(p, assign(p, IDENT))
    assert rep.verdict is V.TRIVIAL_REPRESENTATION


def test_missing_generator():
    p = corpus.load("klein")
    with pytest.raises(PreconditionError):
        stability_obstruction(p, {"a": IDENT})


def test_trivial_group_presentation():
    p = parse_presentation("gens: a b\nrels: a, b a^-1\namenable: true")
    rep = stability_obstruction(p, {"a": IDENT, "b": ParamGerm("x", name="b")})
    assert rep.verdict is V.TRIVIAL_REPRESENTATION
    rep = stability_obstruction(p, {"a": IDENT, "b": ParamGerm("x + s", name="b")})
    assert rep.verdict is V.NOT_A_REPRESENTATION


def test_obstruction_witness_branch(monkeypatch):
    # increasing germs cannot satisfy a^3 while moving points; stub the relator check to reach the branch
    from leftorder import obstruction

    monkeypatch.setattr(obstruction, "relator_failure", lambda p, fam, depth: (None, 0))
    p = corpus.load("z3")
    rep = stability_obstruction(p, {"a": ParamGerm("x + s", name="a")})
    assert rep.verdict is V.OBSTRUCTION_WITNESS and rep.detail["generator"] == "a"


def test_mutual_exclusivity_over_corpus():
    for name, p, _ in corpus.entries():
        b1 = first_betti(p)
        for germ in (IDENT, SHIFT, SCALE):
            rep = stability_obstruction(p, assign(p, germ), depth=3)
            if b1 > 0:
                assert rep.verdict is not V.OBSTRUCTION_WITNESS, name
            else:
                assert rep.verdict is not V.NO_OBSTRUCTION, name
            doc = report_to_json(rep, p, assign(p, germ), 3)
            assert verify_report(doc) == [], (name, germ.text)


def test_tampered_report():
    p = corpus.load("z3")
    doc = report_to_json(stability_obstruction(p, assign(p, IDENT)), p, assign(p, IDENT), 4)
    doc["betti"] = 1
    assert verify_report(doc)
    doc = report_to_json(stability_obstruction(p, assign(p, IDENT)), p, assign(p, IDENT), 4)
    doc["verdict"] = "ObstructionWitness"
    doc["detail"] = {"generator": "a", "points": [[[1, 2], [1, 2]]]}
    assert verify_report(doc)
