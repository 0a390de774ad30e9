"""The formula/board correspondence and its constructive solution mappings.

A clause becomes a box and a variable becomes a color: positive literals
turn into square tokens, negative literals into round ones. Setting a
variable true corresponds to removing the round tokens of its color (the
squares, i.e. the positive literals, survive); false removes the squares.

The two play_* transforms convert winning plays between the rule sets:
a winning shape decision thins out to a winning one-token-per-box play,
and any won variant end state reads back into a winning shape decision.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cnf import CnfFormula, Interpretation, Literal
from .game import (
    GameInstance,
    Shape,
    ShapeDecision,
    Token,
    VariantMove,
    VariantState,
    apply_decision,
    variant_apply_move,
    variant_is_terminal,
    variant_is_won,
)


def encode(formula: CnfFormula) -> GameInstance:
    """Build the board of a formula: box i mirrors clause i token-for-token."""
    boxes = tuple(
        tuple(
            Token(lit.var, Shape.SQUARE if lit.positive else Shape.ROUND)
            for lit in clause
        )
        for clause in formula.clauses
    )
    return GameInstance(formula.num_vars, boxes)


def decode(instance: GameInstance) -> CnfFormula:
    """Read a board back into its formula; inverse of encode."""
    clauses = tuple(
        tuple(Literal(t.color, t.shape is Shape.SQUARE) for t in box)
        for box in instance.boxes
    )
    return CnfFormula(instance.num_colors, clauses)


def interpretation_to_decision(interp: Interpretation) -> dict[int, Shape]:
    """true -> remove round (squares survive), false -> remove square."""
    return {
        var: Shape.ROUND if value else Shape.SQUARE
        for var, value in sorted(interp.items())
    }


def decision_to_interpretation(decision: ShapeDecision) -> dict[int, bool]:
    """Inverse of interpretation_to_decision."""
    return {color: shape is Shape.ROUND for color, shape in sorted(decision.items())}


def original_solution_to_variant_play(
    instance: GameInstance, decision: ShapeDecision
) -> list[VariantMove]:
    """Thin a winning shape decision into a winning variant play.

    Keeps the first surviving token of each box and removes every other
    token one at a time, in box order. The decision must win; the
    returned sequence is legal and its end state is terminal and won.
    """
    outcome = apply_decision(instance, decision)
    if not outcome.won:
        raise ValueError("decision does not win the original game")
    moves: list[VariantMove] = []
    for i, box in enumerate(instance.boxes):
        keep = next(t for t in box if t.shape is not decision[t.color])
        kept = False
        for token in box:
            if token == keep and not kept:
                kept = True
                continue
            moves.append(VariantMove(i, token))
    return moves


def variant_final_to_decision(
    instance: GameInstance, final: VariantState
) -> dict[int, Shape]:
    """Read a won variant end state back into a winning shape decision.

    Each surviving color keeps its (single) surviving shape, so the
    opposite shape is removed. Colors absent from the end state default
    to removing round. The result is re-checked against the original
    rules before being returned.
    """
    if final.instance != instance:
        raise ValueError("final state does not belong to this instance")
    if not variant_is_terminal(final):
        raise ValueError("variant state is not terminal")
    if not variant_is_won(final):
        raise ValueError("variant state is not won")
    decision = {color: Shape.ROUND for color in range(1, instance.num_colors + 1)}
    for box in final.remaining:
        for token in box:
            decision[token.color] = token.shape.other()
    if not apply_decision(instance, decision).won:
        raise AssertionError("derived decision fails the original game; mapping bug")
    return decision


@dataclass(frozen=True)
class SolutionMappingReport:
    """Outcome of carrying a solution across domains and re-checking it
    with the target domain's own win/evaluate operation."""

    source: str
    target: str
    verified: bool


def verify_model_to_decision(
    formula: CnfFormula, interp: Interpretation
) -> SolutionMappingReport:
    decision = interpretation_to_decision(interp)
    won = apply_decision(encode(formula), decision).won
    return SolutionMappingReport("formula-model", "shape-decision", won)


def verify_decision_to_variant(
    instance: GameInstance, decision: ShapeDecision
) -> SolutionMappingReport:
    state = VariantState.initial(instance)
    for move in original_solution_to_variant_play(instance, decision):
        state = variant_apply_move(state, move)
    return SolutionMappingReport(
        "shape-decision", "variant-final-state", variant_is_won(state)
    )


def verify_variant_to_decision(
    instance: GameInstance, final: VariantState
) -> SolutionMappingReport:
    decision = variant_final_to_decision(instance, final)
    return SolutionMappingReport(
        "variant-final-state", "shape-decision", apply_decision(instance, decision).won
    )
