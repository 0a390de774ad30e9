"""CNF formulas: construction, DIMACS I/O, and truth-value evaluation.

Formulas are immutable once built and safe to share between threads.
Clauses keep their literals in input order; duplicate literals and
tautological clauses are preserved as-is, because downstream consumers
(the game board in particular) must see one token per literal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple


class Literal(NamedTuple):
    """A propositional variable (1-based id) with a polarity."""

    var: int
    positive: bool

    def negated(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def to_int(self) -> int:
        """Signed-integer form: +var when positive, -var when negated."""
        return self.var if self.positive else -self.var

    @classmethod
    def from_int(cls, value: int) -> "Literal":
        if value == 0:
            raise ValueError("literal integer must be nonzero")
        return cls(abs(value), value > 0)


Clause = tuple[Literal, ...]

# A total truth assignment, keyed by variable id.
Interpretation = Mapping[int, bool]


@dataclass(frozen=True)
class CnfFormula:
    """A conjunction of clauses over variables 1..num_vars.

    num_vars may exceed the largest variable actually used; unused
    variables are legal and ignored by evaluation.
    """

    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        for clause in self.clauses:
            for lit in clause:
                if not 1 <= lit.var <= self.num_vars:
                    raise ValueError(
                        f"literal {lit.to_int()} outside declared range 1..{self.num_vars}"
                    )

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> "CnfFormula":
        """Build from signed-integer clauses, e.g. from_ints(2, [[1, -2]])."""
        return cls(
            num_vars,
            tuple(tuple(Literal.from_int(n) for n in clause) for clause in clauses),
        )

    def to_ints(self) -> list[list[int]]:
        return [[lit.to_int() for lit in clause] for clause in self.clauses]


class DimacsError(ValueError):
    """A DIMACS parse failure, carrying the 1-based line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF text into a formula.

    Comment lines (starting with 'c') may appear anywhere. The 'p cnf'
    header must precede all clauses. Tokens may be split across lines;
    each clause ends at a '0'. Literal order inside clauses is kept.
    """
    num_vars: int | None = None
    num_clauses_declared = 0
    header_line = 0
    clauses: list[list[Literal]] = []
    current: list[Literal] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError(lineno, "duplicate 'p cnf' header")
            fields = line.split()
            if len(fields) != 4 or fields[0] != "p" or fields[1] != "cnf":
                raise DimacsError(lineno, f"malformed header: {line!r}")
            try:
                num_vars = int(fields[2])
                num_clauses_declared = int(fields[3])
            except ValueError:
                raise DimacsError(lineno, f"non-integer header counts: {line!r}") from None
            if num_vars < 0 or num_clauses_declared < 0:
                raise DimacsError(lineno, "header counts must be nonnegative")
            header_line = lineno
            continue
        if num_vars is None:
            raise DimacsError(lineno, "clause data before 'p cnf' header")
        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise DimacsError(lineno, f"non-integer token {token!r}") from None
            if value == 0:
                clauses.append(current)
                current = []
                continue
            if abs(value) > num_vars:
                raise DimacsError(
                    lineno, f"literal {value} exceeds declared variable count {num_vars}"
                )
            current.append(Literal.from_int(value))

    last_line = text.count("\n") + 1
    if num_vars is None:
        raise DimacsError(last_line, "missing 'p cnf' header")
    if current:
        raise DimacsError(last_line, "unterminated clause (missing trailing 0)")
    if len(clauses) != num_clauses_declared:
        raise DimacsError(
            header_line,
            f"header declares {num_clauses_declared} clauses but {len(clauses)} found",
        )
    return CnfFormula(num_vars, tuple(tuple(c) for c in clauses))


def serialize_dimacs(formula: CnfFormula) -> str:
    """Canonical DIMACS text: header, then one zero-terminated clause per line."""
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    for clause in formula.clauses:
        lines.append(" ".join([str(lit.to_int()) for lit in clause] + ["0"]))
    return "\n".join(lines) + "\n"


def check_total(formula: CnfFormula, interp: Interpretation) -> None:
    """Raise ValueError unless interp assigns every variable 1..num_vars."""
    missing = [v for v in range(1, formula.num_vars + 1) if v not in interp]
    if missing:
        raise ValueError(f"interpretation missing variables {missing}")


def evaluate(formula: CnfFormula, interp: Interpretation) -> bool:
    """True iff every clause has at least one literal satisfied by interp.

    The empty formula evaluates to true; any empty clause forces false.
    interp must be total over the formula's declared variables.
    """
    check_total(formula, interp)
    return all(
        any(interp[lit.var] == lit.positive for lit in clause)
        for clause in formula.clauses
    )
