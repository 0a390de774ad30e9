"""tokensat: CNF satisfiability as a colored-tokens puzzle.

A formula maps to a board (clause = box, variable = color, positive
literal = square token, negative = round token) and back. The package
ships the board game under both rule sets, complete and local-search
solvers, reproducible instance generators, a CLI, and an HTTP session
service for interactive play.
"""

from .cnf import (
    Clause,
    CnfFormula,
    DimacsError,
    Interpretation,
    Literal,
    evaluate,
    parse_dimacs,
    serialize_dimacs,
)
from .game import (
    Box,
    DecisionOutcome,
    GameInstance,
    IllegalMove,
    Shape,
    ShapeDecision,
    Token,
    VariantMove,
    VariantState,
    apply_decision,
    instance_from_json,
    instance_to_json,
    legal_variant_moves,
    variant_apply_move,
    variant_is_terminal,
    variant_is_won,
)
from .generate import GenSpec, planted_sat, random_ksat, tutorial_formula
from .reduction import (
    SolutionMappingReport,
    decision_to_interpretation,
    decode,
    encode,
    interpretation_to_decision,
    original_solution_to_variant_play,
    variant_final_to_decision,
)
from .solvers import (
    ConflictLedger,
    Outcome,
    SearchConfig,
    Selection,
    SolveResult,
    brute_force_game_original,
    brute_force_game_variant,
    brute_force_sat,
    dpll,
    extract_interpretation,
    hint_original,
    hint_variant,
    local_search,
    residual_formula,
    selection_cost,
)

__all__ = [name for name in dir() if not name.startswith("_")]
