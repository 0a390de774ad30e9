"""The colored-tokens board and both rule sets.

Original rules: for every color the player removes all square tokens or
all round ones; the game is won when every box still holds a token.

Variant rules: tokens are removed one at a time, play ends when every
box is down to a single token, and the player wins iff the surviving
tokens of each color all share one shape. A move that would empty a box
is illegal, since an empty box makes the end condition unreachable.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, NamedTuple


class Shape(enum.Enum):
    SQUARE = "square"
    ROUND = "round"

    def other(self) -> "Shape":
        return Shape.ROUND if self is Shape.SQUARE else Shape.SQUARE


class Token(NamedTuple):
    color: int
    shape: Shape


Box = tuple[Token, ...]

# Shape REMOVED per color; a complete play of the original game.
ShapeDecision = Mapping[int, Shape]


@dataclass(frozen=True)
class GameInstance:
    """An initial board: boxes of tokens over colors 1..num_colors.

    Box order is significant, and boxes are multisets kept in input
    order (duplicate tokens stay duplicated).
    """

    num_colors: int
    boxes: tuple[Box, ...]

    def __post_init__(self) -> None:
        if self.num_colors < 0:
            raise ValueError("num_colors must be nonnegative")
        for box in self.boxes:
            for token in box:
                if not 1 <= token.color <= self.num_colors:
                    raise ValueError(
                        f"token color {token.color} outside declared range 1..{self.num_colors}"
                    )

    def total_tokens(self) -> int:
        return sum(len(box) for box in self.boxes)


class IllegalMove(Exception):
    """A rejected move; reason is a stable machine-readable code."""

    def __init__(self, reason: str, message: str):
        self.reason = reason
        super().__init__(message)


def _check_decision_total(instance: GameInstance, decision: ShapeDecision) -> None:
    missing = [c for c in range(1, instance.num_colors + 1) if c not in decision]
    if missing:
        raise ValueError(f"decision missing colors {missing}")


class DecisionOutcome(NamedTuple):
    boxes: tuple[Box, ...]
    won: bool


def apply_decision(instance: GameInstance, decision: ShapeDecision) -> DecisionOutcome:
    """Apply a complete original-game play as one set operation.

    Every token whose shape equals the removed shape of its color is
    deleted; the result therefore does not depend on any removal order.
    Won iff every box keeps at least one token (vacuously true with no
    boxes).
    """
    _check_decision_total(instance, decision)
    survivors = tuple(
        tuple(t for t in box if t.shape is not decision[t.color]) for box in instance.boxes
    )
    return DecisionOutcome(survivors, all(survivors))


class VariantMove(NamedTuple):
    box: int
    token: Token


@dataclass(frozen=True)
class VariantState:
    """A position in the variant game; moves produce new states."""

    instance: GameInstance
    remaining: tuple[Box, ...]
    history: tuple[VariantMove, ...] = field(default_factory=tuple)

    @classmethod
    def initial(cls, instance: GameInstance) -> "VariantState":
        return cls(instance, instance.boxes, ())


def variant_apply_move(state: VariantState, move: VariantMove) -> VariantState:
    """Remove one matching token; illegal moves raise IllegalMove.

    Reasons: "token-not-present" (no such token in that box, or no such
    box) and "box-at-one-token" (removal would empty the box).
    """
    if not 0 <= move.box < len(state.remaining):
        raise IllegalMove("token-not-present", f"no box with index {move.box}")
    box = state.remaining[move.box]
    if move.token not in box:
        raise IllegalMove(
            "token-not-present",
            f"box {move.box} holds no {move.token.shape.value} token of color {move.token.color}",
        )
    if len(box) < 2:
        raise IllegalMove(
            "box-at-one-token", f"box {move.box} is down to its last token"
        )
    pos = box.index(move.token)
    new_box = box[:pos] + box[pos + 1 :]
    remaining = state.remaining[: move.box] + (new_box,) + state.remaining[move.box + 1 :]
    return VariantState(state.instance, remaining, state.history + (move,))


def variant_is_terminal(state: VariantState) -> bool:
    """True iff every box holds exactly one token (vacuously with no boxes)."""
    return all(len(box) == 1 for box in state.remaining)


def variant_is_won(state: VariantState) -> bool:
    """Terminal, and each color's surviving tokens share a single shape."""
    if not variant_is_terminal(state):
        return False
    shapes_by_color: dict[int, set[Shape]] = {}
    for box in state.remaining:
        for token in box:
            shapes_by_color.setdefault(token.color, set()).add(token.shape)
    return all(len(shapes) == 1 for shapes in shapes_by_color.values())


def legal_variant_moves(state: VariantState) -> list[VariantMove]:
    """Every move variant_apply_move would accept, one per (box, color, shape)."""
    moves: list[VariantMove] = []
    for i, box in enumerate(state.remaining):
        if len(box) < 2:
            continue
        seen: set[Token] = set()
        for token in box:
            if token not in seen:
                seen.add(token)
                moves.append(VariantMove(i, token))
    return moves


# --- game instance JSON wire format -------------------------------------
#
# {"numColors": N, "boxes": [[{"color": 1, "shape": "square"}, ...], ...]}
#
# Canonical emission keeps the key order shown and no extra whitespace.

_SHAPES_BY_NAME = {shape.value: shape for shape in Shape}


def instance_to_json(instance: GameInstance) -> str:
    payload = {
        "numColors": instance.num_colors,
        "boxes": [
            [{"color": t.color, "shape": t.shape.value} for t in box]
            for box in instance.boxes
        ],
    }
    return json.dumps(payload, separators=(",", ":"))


def _token_from_json(obj: Any) -> Token:
    if not isinstance(obj, dict):
        raise ValueError(f"token must be an object, got {type(obj).__name__}")
    color = obj.get("color")
    shape_name = obj.get("shape")
    if not isinstance(color, int) or isinstance(color, bool):
        raise ValueError(f"token color must be an integer, got {color!r}")
    if shape_name not in _SHAPES_BY_NAME:
        raise ValueError(f"unknown shape {shape_name!r} (expected 'square' or 'round')")
    return Token(color, _SHAPES_BY_NAME[shape_name])


def instance_from_json(text: str) -> GameInstance:
    """Parse the game instance wire format, validating structure strictly."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from None
    return instance_from_payload(payload)


def instance_from_payload(payload: Any) -> GameInstance:
    if not isinstance(payload, dict):
        raise ValueError("game instance must be a JSON object")
    num_colors = payload.get("numColors")
    boxes = payload.get("boxes")
    if not isinstance(num_colors, int) or isinstance(num_colors, bool):
        raise ValueError("numColors must be an integer")
    if not isinstance(boxes, list) or any(not isinstance(b, list) for b in boxes):
        raise ValueError("boxes must be a list of lists")
    parsed: Iterable[Box] = (tuple(_token_from_json(t) for t in box) for box in boxes)
    return GameInstance(num_colors, tuple(parsed))
