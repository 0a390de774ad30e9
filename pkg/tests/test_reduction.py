import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from tokensat import (
    CnfFormula,
    GameInstance,
    Shape,
    VariantMove,
    VariantState,
    apply_decision,
    decision_to_interpretation,
    decode,
    encode,
    evaluate,
    interpretation_to_decision,
    original_solution_to_variant_play,
    variant_apply_move,
    variant_final_to_decision,
    variant_is_won,
)
from tokensat.reduction import (
    verify_decision_to_variant,
    verify_model_to_decision,
    verify_variant_to_decision,
)
from conftest import TUTORIAL_MODEL, TUTORIAL_WIN, rd, sq
from helpers import random_board, random_formula, random_interpretation

SQ, RD = Shape.SQUARE, Shape.ROUND


class TestEncodeDecode:
    def test_positive_literals_become_squares(self):
        f = CnfFormula.from_ints(4, [[3, 4]])
        assert encode(f) == GameInstance(4, ((sq(3), sq(4)),))

    def test_negative_literal_becomes_round(self):
        f = CnfFormula.from_ints(1, [[-1]])
        assert encode(f) == GameInstance(1, ((rd(1),),))

    def test_empty_formula(self):
        assert encode(CnfFormula(0, ())) == GameInstance(0, ())

    def test_tutorial_board(self, tutorial, tutorial_board):
        assert encode(tutorial) == tutorial_board

    def test_decode_box(self):
        g = GameInstance(2, ((rd(1), sq(2)),))
        assert decode(g) == CnfFormula.from_ints(2, [[-1, 2]])

    def test_decode_tutorial(self, tutorial, tutorial_board):
        assert decode(tutorial_board) == tutorial

    def test_empty_box_becomes_empty_clause(self):
        assert decode(GameInstance(0, ((),))) == CnfFormula(0, ((),))

    def test_duplicates_survive_both_ways(self):
        f = CnfFormula.from_ints(2, [[1, 1, -1, 2]])
        assert decode(encode(f)) == f


@given(st.integers(min_value=0, max_value=2**32))
def test_decode_encode_round_trip(seed):
    f = random_formula(random.Random(seed))
    assert decode(encode(f)) == f


@given(st.integers(min_value=0, max_value=2**32))
def test_encode_decode_round_trip(seed):
    g = random_board(random.Random(seed))
    assert encode(decode(g)) == g


class TestDecisionCorrespondence:
    def test_tutorial_model_wins(self, tutorial, tutorial_board):
        decision = interpretation_to_decision(TUTORIAL_MODEL)
        assert decision == TUTORIAL_WIN
        assert apply_decision(tutorial_board, decision).won
        assert evaluate(tutorial, TUTORIAL_MODEL)

    def test_true_removes_round(self):
        assert interpretation_to_decision({1: True, 2: True}) == {1: RD, 2: RD}

    def test_all_square_removed_means_all_false(self):
        assert decision_to_interpretation({1: SQ, 2: SQ}) == {1: False, 2: False}

    @given(st.lists(st.booleans(), min_size=0, max_size=10))
    def test_round_trips_are_identity(self, values):
        interp = dict(enumerate(values, start=1))
        assert decision_to_interpretation(interpretation_to_decision(interp)) == interp
        decision = interpretation_to_decision(interp)
        assert interpretation_to_decision(decision_to_interpretation(decision)) == decision


@given(st.integers(min_value=0, max_value=2**32))
def test_satisfaction_equals_winning(seed):
    rng = random.Random(seed)
    f = random_formula(rng, max_vars=8, max_clauses=12)
    interp = random_interpretation(rng, f.num_vars)
    won = apply_decision(encode(f), interpretation_to_decision(interp)).won
    assert evaluate(f, interp) == won


class TestWinningPlayTransform:
    def test_tutorial_play(self, tutorial_board):
        moves = original_solution_to_variant_play(tutorial_board, TUTORIAL_WIN)
        assert len(moves) == tutorial_board.total_tokens() - len(tutorial_board.boxes)
        assert len(moves) == 11
        state = VariantState.initial(tutorial_board)
        for move in moves:
            state = variant_apply_move(state, move)
        assert variant_is_won(state)
        for box in state.remaining:
            token = box[0]
            assert token.shape is not TUTORIAL_WIN[token.color]

    def test_already_terminal_board_needs_no_moves(self):
        instance = GameInstance(1, ((sq(1),),))
        assert original_solution_to_variant_play(instance, {1: RD}) == []

    def test_keeps_first_survivor(self):
        instance = GameInstance(1, ((sq(1), sq(1)),))
        moves = original_solution_to_variant_play(instance, {1: RD})
        assert moves == [(0, sq(1))]

    def test_losing_decision_rejected(self):
        instance = GameInstance(1, ((sq(1),),))
        with pytest.raises(ValueError, match="does not win"):
            original_solution_to_variant_play(instance, {1: SQ})


class TestFinalStateTransform:
    def test_kept_squares_mean_remove_round(self):
        instance = GameInstance(2, ((sq(1), rd(1)), (sq(2), rd(2), sq(1))))
        final = VariantState(instance, ((sq(1),), (sq(2),)), ())
        decision = variant_final_to_decision(instance, final)
        assert decision == {1: RD, 2: RD}
        assert apply_decision(instance, decision).won

    def test_one_box_keep_square(self):
        instance = GameInstance(1, ((sq(1), rd(1)),))
        state = variant_apply_move(VariantState.initial(instance), VariantMove(0, rd(1)))
        decision = variant_final_to_decision(instance, state)
        assert decision == {1: RD}

    def test_absent_colors_default_to_removing_round(self):
        instance = GameInstance(3, ((sq(1),),))
        final = VariantState.initial(instance)
        assert variant_final_to_decision(instance, final) == {1: RD, 2: RD, 3: RD}

    def test_non_terminal_rejected(self):
        instance = GameInstance(1, ((sq(1), rd(1)),))
        with pytest.raises(ValueError, match="not terminal"):
            variant_final_to_decision(instance, VariantState.initial(instance))

    def test_unwon_final_rejected(self):
        instance = GameInstance(1, ((sq(1),), (rd(1),)))
        with pytest.raises(ValueError, match="not won"):
            variant_final_to_decision(instance, VariantState.initial(instance))

    def test_foreign_state_rejected(self):
        a = GameInstance(1, ((sq(1),),))
        b = GameInstance(1, ((rd(1),),))
        with pytest.raises(ValueError, match="does not belong"):
            variant_final_to_decision(a, VariantState.initial(b))

    def test_every_consistent_keep_set_yields_a_win(self, tutorial_board):
        """Scan all one-token-per-box keep-sets of the tutorial board: each
        shape-consistent one must convert into a winning decision."""
        sizes = [len(box) for box in tutorial_board.boxes]
        assert math.prod(sizes) == 648
        consistent = 0
        for keep in itertools.product(*(range(n) for n in sizes)):
            kept = [box[i] for box, i in zip(tutorial_board.boxes, keep)]
            shapes = {}
            if any(
                shapes.setdefault(t.color, t.shape) is not t.shape for t in kept
            ):
                continue
            consistent += 1
            final = VariantState(tutorial_board, tuple((t,) for t in kept), ())
            decision = variant_final_to_decision(tutorial_board, final)
            assert apply_decision(tutorial_board, decision).won
        assert consistent >= 1


class TestMappingReports:
    def test_model_report(self, tutorial):
        report = verify_model_to_decision(tutorial, TUTORIAL_MODEL)
        assert (report.source, report.target) == ("formula-model", "shape-decision")
        assert report.verified

    def test_non_model_fails_verification(self, tutorial):
        report = verify_model_to_decision(tutorial, {1: False, 2: False, 3: False, 4: False})
        assert not report.verified

    def test_decision_report(self, tutorial_board):
        report = verify_decision_to_variant(tutorial_board, TUTORIAL_WIN)
        assert report.target == "variant-final-state"
        assert report.verified

    def test_variant_report(self):
        instance = GameInstance(1, ((sq(1), rd(1)),))
        final = VariantState(instance, ((sq(1),),), ())
        report = verify_variant_to_decision(instance, final)
        assert report.source == "variant-final-state"
        assert report.verified
