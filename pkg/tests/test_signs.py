import itertools
import json
from fractions import Fraction as F

import pytest

from leftorder.errors import PreconditionError
from leftorder.germs import IDENTITY_GERM, ParamGerm
from leftorder.orders import Cmp
from leftorder.signs import (
    GermSignSelector, diagonal_merge, germ_compare, select_signs, semigroup_words, transcript_to_json,
    verify_transcript,
)
from leftorder.words import Word

SHIFT = ParamGerm("x + s", name="f")
DOWN = ParamGerm("x - s", name="h")
SCALE = ParamGerm("(1 + s) * x", name="g")


def test_single_positive():
    tr = select_signs([SHIFT], 4, 4)
    assert tr.epsilons == [1] and len(tr.tiers) == 1 and tr.passed and tr.words_checked == 4


def test_single_negative():
    tr = select_signs([DOWN], 4, 4)
    assert tr.epsilons == [-1] and tr.passed


def test_two_tiers():
    tr = select_signs([SHIFT, SCALE], 4, 4)
    assert tr.epsilons == [1, 1]
    assert [(t.seed, t.members) for t in tr.tiers] == [(0, [0]), (1, [1])]
    assert [(p.p, p.q) for p in tr.tiers[0].points] == [(0, F(1, 2 ** m)) for m in range(1, 5)]
    assert [(p.p, p.q) for p in tr.tiers[1].points] == [(F(1, 2 ** m), F(1, 2 ** m)) for m in range(1, 5)]
    assert tr.passed and tr.words_checked == 2 + 4 + 8 + 16


def test_witnessless_germ_rejected():
    with pytest.raises(PreconditionError, match="e"):
        select_signs([SHIFT, IDENTITY_GERM])


def test_refinement_to_matching_points():
    # moves (0, q) up only through s, and (p, q) with p > 0 down: decided on tier 0 with sign +1
    g = ParamGerm("x + s - s*s", name="k")
    tr = select_signs([SHIFT, g], 3, 3)
    assert tr.epsilons == [1, 1] and tr.passed


def test_diagonal_merge_order():
    rows = [[1, 2, 3], ["a", "b"]]
    from leftorder.signs import WitnessPoint
    wrows = [[WitnessPoint(F(0), F(0), 0, c) for c in range(3)], [WitnessPoint(F(1), F(0), 1, c) for c in range(2)]]
    merged = diagonal_merge(wrows)
    assert [(w.tier, w.column) for w in merged] == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1)]
    assert len(rows[0]) + len(rows[1]) == len(merged)


def test_compare_examples():
    tr = select_signs([SHIFT], 4, 4)
    f = Word.gen(0)
    assert germ_compare(tr, Word(), f) is Cmp.LESS
    assert germ_compare(tr, f, f) is Cmp.EQUAL
    assert germ_compare(tr, f, Word()) is Cmp.GREATER


def test_uninvertible_gives_unknown():
    sq = ParamGerm("x + x*x*x + s", name="q")
    tr = select_signs([sq], 2, 2)
    assert tr.passed
    assert germ_compare(tr, Word.gen(0), Word()) is Cmp.UNKNOWN


def word_ball(k, n):
    letters = [i + 1 for i in range(k)] + [-(i + 1) for i in range(k)]
    out = {Word()}
    for length in range(1, n + 1):
        for combo in itertools.product(letters, repeat=length):
            out.add(Word.from_expanded(combo))
    return sorted(out, key=Word.shortlex_key)


@pytest.mark.parametrize("germs", [[SHIFT], [DOWN], [SHIFT, SCALE]])
def test_induced_order_properties(germs):
    tr = select_signs(germs, 4, 4)
    assert tr.passed
    ball = word_ball(len(germs), 3 if len(germs) == 1 else 2)
    cmp = {(i, j): germ_compare(tr, u, v) for i, u in enumerate(ball) for j, v in enumerate(ball)}
    assert Cmp.UNKNOWN not in cmp.values()
    for (i, j), c in cmp.items():
        assert cmp[j, i] is c.flip()
    n = len(ball)
    for i, j, k in itertools.product(range(n), repeat=3):
        if cmp[i, j] is Cmp.LESS and cmp[j, k] is not Cmp.GREATER:
            assert cmp[i, k] is Cmp.LESS
    for g, u, v in itertools.product(ball, repeat=3):
        assert germ_compare(tr, g * u, g * v) is germ_compare(tr, u, v)


def test_semigroup_words_avoid_identity_on_witness():
    tr = select_signs([SHIFT, SCALE], 4, 4)
    for w in semigroup_words(2, tr.epsilons, 4):
        assert any(tr.family.eval_word(w, p.p, p.q) != p.p for p in tr.witness)


def test_determinism():
    a = json.dumps(transcript_to_json(select_signs([SHIFT, SCALE], 4, 4)), sort_keys=True)
    b = json.dumps(transcript_to_json(select_signs([SHIFT, SCALE], 4, 4)), sort_keys=True)
    assert a == b


def test_transcript_replay_and_tamper():
    doc = transcript_to_json(select_signs([SHIFT, SCALE], 4, 4))
    assert verify_transcript(doc) == []
    bad = json.loads(json.dumps(doc))
    bad["epsilons"] = [1, -1]
    assert verify_transcript(bad)
    bad = json.loads(json.dumps(doc))
    bad["witness"] = bad["witness"][:1]
    assert verify_transcript(bad)


def test_estimator():
    est = GermSignSelector(depth=3, max_len=3).fit([SHIFT, SCALE])
    assert est.signs_ == [1, 1]
    # at (0, 1/2): f g^-1 f^-1 sends 0 to 1/6, so this conjugate of a negative element is positive
    assert est.predict(["f", "f^-1", "g^-1", "f g^-1 f^-1", "e"]) == [1, -1, -1, 1, 0]
    assert est.compare(Word(), Word.gen(1)) is Cmp.LESS
