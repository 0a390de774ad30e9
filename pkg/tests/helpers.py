"""Seeded random generators for bulk test suites.

Unlike generate.random_ksat these produce mixed clause widths, duplicate
literals, and complementary pairs, which the round-trip and equivalence
suites need to exercise.
"""

from __future__ import annotations

import random
from itertools import product

from tokensat import CnfFormula, GameInstance, Shape, Token


def random_formula(
    rng: random.Random,
    max_vars: int = 12,
    max_clauses: int = 30,
    max_width: int = 4,
    min_vars: int = 1,
) -> CnfFormula:
    num_vars = rng.randint(min_vars, max_vars)
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        width = rng.randint(1, max_width)
        clause = [
            rng.randint(1, num_vars) * rng.choice((1, -1)) for _ in range(width)
        ]
        clauses.append(clause)
    return CnfFormula.from_ints(num_vars, clauses)


def random_interpretation(rng: random.Random, num_vars: int) -> dict[int, bool]:
    return {v: rng.random() < 0.5 for v in range(1, num_vars + 1)}


def random_board(
    rng: random.Random,
    max_colors: int = 6,
    max_boxes: int = 8,
    max_tokens: int = 5,
) -> GameInstance:
    num_colors = rng.randint(1, max_colors)
    boxes = tuple(
        tuple(
            Token(rng.randint(1, num_colors), rng.choice((Shape.SQUARE, Shape.ROUND)))
            for _ in range(rng.randint(0, max_tokens))
        )
        for _ in range(rng.randint(0, max_boxes))
    )
    return GameInstance(num_colors, boxes)


def all_interpretations(num_vars: int):
    """Every total assignment over 1..num_vars, for small exhaustive scans."""
    for values in product((False, True), repeat=num_vars):
        yield dict(zip(range(1, num_vars + 1), values))
