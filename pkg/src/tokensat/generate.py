"""Reproducible formula sources: the tutorial instance and random k-SAT.

All generation is driven by an explicit seed and produces byte-identical
output per seed across runs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cnf import CnfFormula, evaluate


def tutorial_formula() -> CnfFormula:
    """The built-in 7-clause tutorial formula over red=1, blue=2, purple=3,
    yellow=4. Its first four clauses force variable 3 false for every
    combination of 1 and 2; the remaining three then pin the unique model
    {1: T, 2: T, 3: F, 4: T}."""
    return CnfFormula.from_ints(
        4,
        [
            [1, 2, -3],
            [-1, 2, -3],
            [1, -2, -3],
            [-1, -2, -3],
            [3, 4],
            [1, -4],
            [2, -4],
        ],
    )


@dataclass(frozen=True)
class GenSpec:
    """Random-formula parameters: clause count, fixed clause width, seed."""

    num_vars: int
    num_clauses: int
    clause_width: int
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.clause_width <= self.num_vars:
            raise ValueError(
                f"clause width {self.clause_width} must be in 1..{self.num_vars}"
            )
        if self.num_clauses < 0:
            raise ValueError("num_clauses must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


def _random_clause(rng: random.Random, spec: GenSpec) -> list[int]:
    variables = rng.sample(range(1, spec.num_vars + 1), spec.clause_width)
    return [v if rng.getrandbits(1) else -v for v in variables]


def random_ksat(spec: GenSpec) -> CnfFormula:
    """Uniform k-SAT: each clause samples k distinct variables and uniform
    polarities. Duplicate clauses are allowed."""
    rng = random.Random(spec.seed)
    return CnfFormula.from_ints(
        spec.num_vars, [_random_clause(rng, spec) for _ in range(spec.num_clauses)]
    )


def planted_sat(spec: GenSpec) -> tuple[CnfFormula, dict[int, bool]]:
    """Guaranteed-satisfiable k-SAT with its hidden model.

    Draws a hidden assignment, then rejection-samples clauses until each
    has at least one literal the hidden assignment satisfies (clause
    rejection avoids the polarity bias of literal-flipping planting).
    """
    rng = random.Random(spec.seed)
    hidden = {v: bool(rng.getrandbits(1)) for v in range(1, spec.num_vars + 1)}
    clauses: list[list[int]] = []
    while len(clauses) < spec.num_clauses:
        clause = _random_clause(rng, spec)
        if any(hidden[abs(lit)] == (lit > 0) for lit in clause):
            clauses.append(clause)
    formula = CnfFormula.from_ints(spec.num_vars, clauses)
    assert evaluate(formula, hidden)
    return formula, hidden
