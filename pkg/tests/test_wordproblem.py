import pytest

from leftorder import corpus
from leftorder.errors import StructureError
from leftorder.textio import parse_presentation
from leftorder.words import Word, free_reduce
from leftorder.wordproblem import (
    Budget, Verdict, check_status, enumerate_ball, identity_status, replay_trace, status_to_json,
)


def test_free_group_commutator_is_not_identity():
    p = parse_presentation("gens: a b")
    s = identity_status(p, p.word("a b a^-1 b^-1"))
    assert s.verdict is Verdict.NOT_IDENTITY


def test_relator_is_identity_in_one_step():
    p = parse_presentation("gens: a\nrels: a^2")
    s = identity_status(p, p.word("a^2"))
    assert s.verdict is Verdict.IDENTITY
    assert len(s.certificate["trace"]) == 1
    assert replay_trace(p, p.word("a^2"), s.certificate["trace"])


def test_thurston_relator_instance():
    p = corpus.load("thurston")
    w = p.word("a^2 c^-1 b^-1 a^-1")
    s = identity_status(p, w)
    assert s.is_identity and replay_trace(p, w, s.certificate["trace"])


def test_q8_identities_and_unknown():
    p = corpus.load("q8")
    assert identity_status(p, p.word("a^-4")).is_identity
    assert identity_status(p, p.word("a^2 b^-2")).is_identity
    # a^2 is central of order 2: a genuine non-identity that no witness detects
    assert identity_status(p, p.word("a^2")).verdict is Verdict.UNKNOWN


def test_rep_witness():
    p = corpus.load("tsuboi")
    s = identity_status(p, p.word("a b a^-1 b^-1"))
    assert s.verdict is Verdict.NOT_IDENTITY and s.certificate["method"] == "rep"


def test_abelian_witness_with_modulus():
    p = corpus.load("z5")
    s = identity_status(p, p.word("a^2"))
    assert s.is_not_identity and s.certificate["method"] == "abelian" and s.certificate["modulus"] == 5
    assert check_status(p, p.word("a^2"), status_to_json(s))
    assert not check_status(p, p.word("a^5"), status_to_json(s))


def test_tampered_trace_rejected():
    p = corpus.load("z3")
    w = p.word("a^3")
    trace = identity_status(p, w).certificate["trace"]
    assert replay_trace(p, w, trace)
    bad = [dict(step, inverse=not step["inverse"]) for step in trace]
    assert not replay_trace(p, w, bad)
    assert not replay_trace(p, w, [])
    assert not replay_trace(p, w, [{"relator": 7, "inverse": False, "shift": 0, "at": 0}])


def test_budget_validation(monkeypatch):
    with pytest.raises(ValueError):
        Budget(max_nodes=0)
    monkeypatch.setenv("LEFTORDER_MAX_NODES", "17")
    assert Budget().max_nodes == 17


def test_word_outside_presentation_rejected():
    p = corpus.load("z")
    with pytest.raises(StructureError):
        identity_status(p, Word(((1, 1),)))


BUDGETS = [Budget(2, 4), Budget(20, 10), Budget(64, 16)]


@pytest.mark.parametrize("name", ["q8", "klein", "thurston", "z3", "heisenberg", "tsuboi", "zxz"])
def test_status_never_contradicts_itself(name, rng):
    p = corpus.load(name)
    for _ in range(25):
        raw = [(rng.randrange(p.ngens), rng.choice((-2, -1, 1, 2))) for _ in range(rng.randint(0, 5))]
        w = free_reduce(raw, p.ngens)
        verdicts = set()
        for b in BUDGETS:
            s = identity_status(p, w, b)
            assert check_status(p, w, status_to_json(s)), (name, w, b)
            verdicts.add(s.verdict)
        assert not {Verdict.IDENTITY, Verdict.NOT_IDENTITY} <= verdicts, (name, w)


@pytest.mark.parametrize("text, radius, size", [
    ("gens: a b\nrels: a b a^-1 b^-1", 1, 5),
    ("gens: a b", 2, 17),
    ("gens: a\nrels: a^3", 3, 3),
])
def test_ball_examples(text, radius, size):
    assert len(enumerate_ball(parse_presentation(text), radius)) == size


def test_ball_z2_radius_one_members():
    p = corpus.load("zxz")
    ball = enumerate_ball(p, 1)
    assert [p.fmt(w) for w in ball] == ["e", "a", "a^-1", "b", "b^-1"]
    assert not ball.flagged


@pytest.mark.parametrize("name", ["z", "zxz", "f2", "z4", "klein", "q8"])
def test_ball_sizes_monotone(name):
    p = corpus.load(name)
    sizes = [len(enumerate_ball(p, r, Budget(32, 10))) for r in range(4)]
    assert sizes == sorted(sizes) and sizes[0] == 1


def test_free_abelian_ball_sizes_match_lattice_count():
    p = corpus.load("zxz")
    for r in range(5):
        lattice = sum(1 for i in range(-r, r + 1) for j in range(-r, r + 1) if abs(i) + abs(j) <= r)
        assert len(enumerate_ball(p, r)) == lattice


def test_q8_ball_flags_undecided_duplicates():
    ball = enumerate_ball(corpus.load("q8"), 3)
    assert len(ball) >= 8 and ball.flagged
