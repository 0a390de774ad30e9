import pytest

from tokensat import CnfFormula, GameInstance, Shape, Token, tutorial_formula

SQ, RD = Shape.SQUARE, Shape.ROUND


def sq(color: int) -> Token:
    return Token(color, SQ)


def rd(color: int) -> Token:
    return Token(color, RD)


@pytest.fixture
def tutorial() -> CnfFormula:
    return tutorial_formula()


@pytest.fixture
def tutorial_board() -> GameInstance:
    """The tutorial board transcribed by hand, token for token, so tests of
    the encoder have an independent expectation to compare against."""
    return GameInstance(
        4,
        (
            (sq(1), sq(2), rd(3)),
            (rd(1), sq(2), rd(3)),
            (sq(1), rd(2), rd(3)),
            (rd(1), rd(2), rd(3)),
            (sq(3), sq(4)),
            (sq(1), rd(4)),
            (sq(2), rd(4)),
        ),
    )


# Computed by scanning all 16 interpretations of the tutorial formula
# (see test_cnf.py::test_tutorial_model_is_unique).
TUTORIAL_MODEL = {1: True, 2: True, 3: False, 4: True}
TUTORIAL_WIN = {1: RD, 2: RD, 3: SQ, 4: RD}
