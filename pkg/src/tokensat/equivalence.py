"""Cross-checking the two rule sets against each other.

The battery asserts, over an exhaustive tier of small boards plus a
random tier, that the original game and the variant agree on
feasibility (decided by their two independent brute-force oracles) and
that the constructive play transforms really produce verified wins
whenever a board is feasible.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .game import (
    GameInstance,
    Shape,
    Token,
    VariantState,
    apply_decision,
    instance_to_json,
    variant_apply_move,
    variant_is_won,
)
from .reduction import original_solution_to_variant_play, variant_final_to_decision
from .solvers import brute_force_game_original, brute_force_game_variant


@dataclass
class BatteryReport:
    exhaustive_checked: int = 0
    random_checked: int = 0
    feasible: int = 0
    discrepancies: list[str] = field(default_factory=list)
    seconds_original_oracle: float = 0.0
    seconds_variant_oracle: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def enumerate_small_instances(
    max_colors: int, max_boxes: int, max_tokens_per_box: int
):
    """Every board with up to the given colors, boxes, and per-box tokens.

    Token order within a box and box order both vary, so the enumeration
    covers duplicates and complementary pairs in every arrangement.
    """
    for num_colors in range(max_colors + 1):
        tokens = [
            Token(color, shape)
            for color in range(1, num_colors + 1)
            for shape in (Shape.SQUARE, Shape.ROUND)
        ]
        box_shapes: list[tuple[Token, ...]] = [()]
        for size in range(1, max_tokens_per_box + 1):
            box_shapes.extend(itertools.product(tokens, repeat=size))
        for num_boxes in range(max_boxes + 1):
            for boxes in itertools.product(box_shapes, repeat=num_boxes):
                yield GameInstance(num_colors, boxes)


def random_instance(
    rng: random.Random, max_colors: int, max_boxes: int, max_tokens_per_box: int
) -> GameInstance:
    num_colors = rng.randint(1, max_colors)
    boxes = []
    for _ in range(rng.randint(0, max_boxes)):
        box = tuple(
            Token(rng.randint(1, num_colors), rng.choice((Shape.SQUARE, Shape.ROUND)))
            for _ in range(rng.randint(0, max_tokens_per_box))
        )
        boxes.append(box)
    return GameInstance(num_colors, tuple(boxes))


def _check_instance(instance: GameInstance, report: BatteryReport) -> None:
    t0 = time.perf_counter()
    decision = brute_force_game_original(instance)
    t1 = time.perf_counter()
    final = brute_force_game_variant(instance)
    t2 = time.perf_counter()
    report.seconds_original_oracle += t1 - t0
    report.seconds_variant_oracle += t2 - t1

    if (decision is None) != (final is None):
        report.discrepancies.append(
            f"feasibility mismatch (original={decision is not None}, "
            f"variant={final is not None}) on {instance_to_json(instance)}"
        )
        return
    if decision is None or final is None:
        return
    report.feasible += 1

    # Constructive direction 1: winning decision -> legal won variant play.
    try:
        state = VariantState.initial(instance)
        for move in original_solution_to_variant_play(instance, decision):
            state = variant_apply_move(state, move)
        won = variant_is_won(state)
    except Exception as exc:
        report.discrepancies.append(
            f"decision->variant play failed ({exc}) on {instance_to_json(instance)}"
        )
        won = True  # already reported; don't double-count below
    if not won:
        report.discrepancies.append(
            f"decision->variant play not won on {instance_to_json(instance)}"
        )
    # Constructive direction 2: won variant final -> winning decision.
    try:
        derived = variant_final_to_decision(instance, final)
        if not apply_decision(instance, derived).won:
            report.discrepancies.append(
                f"variant->decision does not win on {instance_to_json(instance)}"
            )
    except Exception as exc:
        report.discrepancies.append(
            f"variant->decision failed ({exc}) on {instance_to_json(instance)}"
        )


def run_battery(
    max_colors: int = 3,
    max_boxes: int = 3,
    max_tokens_per_box: int = 2,
    samples: int = 500,
    sample_max_colors: int = 8,
    seed: int = 0,
) -> BatteryReport:
    """Exhaustive small tier plus `samples` random boards. Any discrepancy
    is recorded with the offending board serialized for reproduction."""
    report = BatteryReport()
    for instance in enumerate_small_instances(max_colors, max_boxes, max_tokens_per_box):
        report.exhaustive_checked += 1
        _check_instance(instance, report)
    rng = random.Random(seed)
    for _ in range(samples):
        instance = random_instance(rng, sample_max_colors, max_boxes=5, max_tokens_per_box=4)
        report.random_checked += 1
        _check_instance(instance, report)
    return report
