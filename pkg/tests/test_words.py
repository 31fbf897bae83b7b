import pytest
from hypothesis import given, strategies as st

from leftorder import corpus
from leftorder.errors import ParseError, StructureError
from leftorder.textio import parse_presentation, serialize_presentation
from leftorder.words import Word, free_reduce

raw_words = st.lists(st.tuples(st.integers(0, 2), st.integers(-3, 3)), max_size=12)


def test_free_reduce_examples():
    assert free_reduce([(0, 1), (0, -1), (1, 1)]) == Word(((1, 1),))
    assert free_reduce([]) == Word()
    assert free_reduce([(0, 1), (1, 1), (1, -1), (0, 1)]) == Word(((0, 2),))


def test_free_reduce_rejects_unknown_generator():
    with pytest.raises(StructureError):
        free_reduce([(3, 1)], ngens=2)


@given(raw_words)
def test_free_reduce_idempotent_and_nonincreasing(raw):
    w = free_reduce(raw)
    assert free_reduce(list(w.letters)) == w
    assert len(w) <= sum(abs(e) for _, e in raw)


@given(raw_words, raw_words)
def test_group_laws(a, b):
    u, v = free_reduce(a), free_reduce(b)
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert u * u.inverse() == Word()


def test_word_invariants_enforced():
    with pytest.raises(StructureError):
        Word(((0, 1), (0, 2)))
    with pytest.raises(StructureError):
        Word(((0, 0),))


def test_parse_presentation_examples():
    p = parse_presentation("gens: a\nrels: a^2")
    assert p.generators == ("a",) and p.relators == (Word(((0, 2),)),)
    th = parse_presentation(
        "gens: a b c\nrels: a^2 c^-1 b^-1 a^-1, b^3 c^-1 b^-1 a^-1, c^7 c^-1 b^-1 a^-1"
    )
    abc_inv = th.word("a b c").inverse()
    assert th.relators == (th.word("a^2") * abc_inv, th.word("b^3") * abc_inv, th.word("c^7") * abc_inv)
    assert th.relators == corpus.load("thurston").relators


def test_parse_presentation_undeclared_generator():
    with pytest.raises(ParseError) as err:
        parse_presentation("gens: a b\nrels: a b^9 x")
    assert "undeclared generator `x`" in str(err.value)
    assert err.value.line == 2 and err.value.col == 13


@pytest.mark.parametrize("text", [
    "rels: a",                       # no gens
    "gens: a\nrels: a a^-1",         # empty after reduction
    "gens: a\nrels: a^",             # bad token
    "gens: A",                       # bad identifier
    "gens: a\namenable: maybe",
    "gens: a\nrep: a = [[1,0],[0,0]]",  # singular
    "gens: a\nrels: a^2\nrep: a = [[1,1],[0,1]]",  # relator not satisfied
])
def test_parse_presentation_errors(text):
    with pytest.raises(ParseError):
        parse_presentation(text)


def test_comments_and_metadata():
    p = parse_presentation("# cyclic\ngens: a  # one generator\nrels: a^3\namenable: true\n")
    assert p.amenable is True and len(p.relators) == 1


def test_corpus_round_trip(groups):
    for name, p in groups.items():
        assert parse_presentation(serialize_presentation(p)) == p, name
        assert parse_presentation(serialize_presentation(p)).reps == p.reps


def test_corpus_contents(groups):
    required = {"z", "zxz", "f2", "klein", "heisenberg", "q8", "thurston", "tsuboi"}
    required |= {f"z{n}" for n in range(2, 8)}
    assert required <= set(groups)
