"""Deciders: brute-force oracles, a DPLL solver, and selection local search.

The three brute-force routines are deliberately independent of each
other. brute_force_sat enumerates truth assignments, while the two game
oracles enumerate game objects directly (shape decisions, and keep-one-
token-per-box choices) without ever touching formulas, so agreement
between them is meaningful evidence rather than a tautology.

The local search explores selections (one chosen literal per clause)
instead of assignments. Its cost is the number of variables selected in
both polarities somewhere; a zero-cost selection is mutually consistent
and induces a model directly. The search is incomplete by design: it
reports Unknown when the budget runs out, never Unsatisfiable (except
for formulas containing an empty clause, which cannot be selected from).
"""

from __future__ import annotations

import enum
import itertools
import math
import random
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .cnf import CnfFormula, Literal, evaluate
from .game import (
    GameInstance,
    Shape,
    ShapeDecision,
    VariantMove,
    VariantState,
    apply_decision,
    variant_apply_move,
)
from .reduction import decode


class Outcome(enum.Enum):
    SATISFIABLE = "SATISFIABLE"
    UNSATISFIABLE = "UNSATISFIABLE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class SolveResult:
    outcome: Outcome
    model: dict[int, bool] | None = None
    flips: int = 0
    restarts: int = 0
    seconds: float = 0.0

    def __post_init__(self) -> None:
        if self.outcome is Outcome.SATISFIABLE and self.model is None:
            raise ValueError("satisfiable result must carry a model")


BRUTE_FORCE_VAR_LIMIT = 24


def brute_force_sat(formula: CnfFormula) -> SolveResult:
    """Scan all 2^n interpretations in lexicographic order (false < true).

    Ground-truth oracle; guarded to 24 variables. Every returned model is
    re-checked with evaluate before being handed out.
    """
    n = formula.num_vars
    if n > BRUTE_FORCE_VAR_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_VAR_LIMIT} variables, got {n}")
    start = time.perf_counter()
    # Bit i-1 of the mask holds variable i; a clause is satisfied when it
    # has a positive literal on a set bit or a negative literal on a clear one.
    pos_masks = []
    neg_masks = []
    for clause in formula.clauses:
        pos = neg = 0
        for lit in clause:
            bit = 1 << (lit.var - 1)
            if lit.positive:
                pos |= bit
            else:
                neg |= bit
        pos_masks.append(pos)
        neg_masks.append(neg)
    full = (1 << n) - 1
    for i in range(1 << n):
        # Lexicographic order over (v1, ..., vn): v1 is the most significant bit.
        mask = 0
        for v in range(1, n + 1):
            if (i >> (n - v)) & 1:
                mask |= 1 << (v - 1)
        if all(p & mask or nmask & (~mask & full) for p, nmask in zip(pos_masks, neg_masks)):
            model = {v: bool(mask >> (v - 1) & 1) for v in range(1, n + 1)}
            assert evaluate(formula, model)
            return SolveResult(Outcome.SATISFIABLE, model, seconds=time.perf_counter() - start)
    return SolveResult(Outcome.UNSATISFIABLE, seconds=time.perf_counter() - start)


def brute_force_game_original(instance: GameInstance) -> dict[int, Shape] | None:
    """Try all 2^num_colors shape decisions on the board itself.

    Works purely on game structures (no formula detour) so it can serve
    as an oracle independent of the reduction.
    """
    n = instance.num_colors
    if n > BRUTE_FORCE_VAR_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_VAR_LIMIT} colors, got {n}")
    colors = range(1, n + 1)
    for shapes in itertools.product((Shape.SQUARE, Shape.ROUND), repeat=n):
        decision = dict(zip(colors, shapes))
        if apply_decision(instance, decision).won:
            return decision
    return None


VARIANT_KEEP_SET_LIMIT = 10**6


def brute_force_game_variant(instance: GameInstance) -> VariantState | None:
    """Search every way of keeping exactly one token per box.

    Returns the first per-color shape-consistent keep-set, realized as a
    terminal VariantState by playing out the removals, or None. This
    explores the variant's own search space (keep-sets), independent of
    both the assignment scan and the decision scan.
    """
    sizes = [len(box) for box in instance.boxes]
    if math.prod(sizes) > VARIANT_KEEP_SET_LIMIT:
        raise ValueError(f"keep-set space exceeds {VARIANT_KEEP_SET_LIMIT}")
    if any(size == 0 for size in sizes):
        return None
    for keep in itertools.product(*(range(size) for size in sizes)):
        shape_of: dict[int, Shape] = {}
        consistent = True
        for box, kept_pos in zip(instance.boxes, keep):
            token = box[kept_pos]
            seen = shape_of.setdefault(token.color, token.shape)
            if seen is not token.shape:
                consistent = False
                break
        if not consistent:
            continue
        state = VariantState.initial(instance)
        for i, (box, kept_pos) in enumerate(zip(instance.boxes, keep)):
            for pos, token in enumerate(box):
                if pos != kept_pos:
                    state = variant_apply_move(state, VariantMove(i, token))
        return state
    return None


def dpll(formula: CnfFormula) -> SolveResult:
    """Complete solver: unit propagation plus two-way branching.

    Branches on the lowest-numbered variable still occurring in an
    unresolved clause, true branch first. Variables the search never
    constrains default to true in the returned model, which is always
    re-checked with evaluate.
    """
    start = time.perf_counter()
    clauses = formula.to_ints()

    def search(clauses: list[list[int]], assignment: dict[int, bool]) -> dict[int, bool] | None:
        while True:
            unit = next((c[0] for c in clauses if len(c) == 1), None)
            if unit is None:
                break
            assignment[abs(unit)] = unit > 0
            clauses = _assign(clauses, unit)
        if any(len(c) == 0 for c in clauses):
            return None
        if not clauses:
            return assignment
        var = min(abs(lit) for clause in clauses for lit in clause)
        for lit in (var, -var):
            result = search(_assign(clauses, lit), {**assignment, var: lit > 0})
            if result is not None:
                return result
        return None

    assignment = search(clauses, {})
    elapsed = time.perf_counter() - start
    if assignment is None:
        return SolveResult(Outcome.UNSATISFIABLE, seconds=elapsed)
    model = {v: assignment.get(v, True) for v in range(1, formula.num_vars + 1)}
    assert evaluate(formula, model)
    return SolveResult(Outcome.SATISFIABLE, model, seconds=elapsed)


def _assign(clauses: list[list[int]], lit: int) -> list[list[int]]:
    """Simplify under lit=true: drop satisfied clauses, strip falsified literals."""
    out = []
    for clause in clauses:
        if lit in clause:
            continue
        out.append([x for x in clause if x != -lit])
    return out


# --- selection local search ----------------------------------------------

# A selection picks one literal per clause, stored as a literal index per
# clause (duplicated literals count as distinct positions).
Selection = Sequence[int]


def _check_selection(formula: CnfFormula, selection: Selection) -> None:
    if len(selection) != len(formula.clauses):
        raise ValueError(
            f"selection covers {len(selection)} clauses, formula has {len(formula.clauses)}"
        )
    for i, (clause, idx) in enumerate(zip(formula.clauses, selection)):
        if not 0 <= idx < len(clause):
            raise ValueError(f"clause {i}: selected index {idx} out of bounds")


def selection_cost(formula: CnfFormula, selection: Selection) -> int:
    """Number of variables selected positively by one clause and negatively
    by another. Zero iff the selected literals are mutually consistent."""
    _check_selection(formula, selection)
    pos: set[int] = set()
    neg: set[int] = set()
    for clause, idx in zip(formula.clauses, selection):
        lit = clause[idx]
        (pos if lit.positive else neg).add(lit.var)
    return len(pos & neg)


def extract_interpretation(formula: CnfFormula, selection: Selection) -> dict[int, bool]:
    """Turn a zero-cost selection into a model: selected variables take
    their selected polarity, unselected variables default to true."""
    cost = selection_cost(formula, selection)
    if cost != 0:
        raise ValueError(f"selection has cost {cost}, expected 0")
    interp = {v: True for v in range(1, formula.num_vars + 1)}
    for clause, idx in zip(formula.clauses, selection):
        lit = clause[idx]
        interp[lit.var] = lit.positive
    return interp


class ConflictLedger:
    """Incremental bookkeeping for a selection's conflict cost.

    Tracks, per variable, how many clauses select it in each polarity and
    which clause indices those are. Cost is the number of variables with
    selections in both polarities; reselect updates everything in O(1)
    per changed variable. The counts stay re-derivable from the
    selection, which tests exploit by recomputing from scratch.

    The conflicted variables and the per-variable selecting-clause lists
    use swap-remove lists so the search can draw uniformly in O(1); list
    order is an artifact of the update history, hence deterministic for
    a fixed run. Counts are arrays indexed by variable id.
    """

    def __init__(self, formula: CnfFormula, selection: Selection):
        _check_selection(formula, selection)
        self.formula = formula
        self.selection = list(selection)
        self._lits = [[lit.to_int() for lit in clause] for clause in formula.clauses]
        n = formula.num_vars
        self._pos = [0] * (n + 1)
        self._neg = [0] * (n + 1)
        self._sel_list: list[list[int]] = [[] for _ in range(n + 1)]
        self._sel_where: list[dict[int, int]] = [{} for _ in range(n + 1)]
        self._conflict_list: list[int] = []
        self._conflict_where = [-1] * (n + 1)
        pos, neg = self._pos, self._neg
        for ci, idx in enumerate(self.selection):
            lit = self._lits[ci][idx]
            var = abs(lit)
            if lit > 0:
                pos[var] += 1
            else:
                neg[var] += 1
            self._sel_where[var][ci] = len(self._sel_list[var])
            self._sel_list[var].append(ci)
        for var in range(1, n + 1):
            if pos[var] and neg[var]:
                self._conflict_where[var] = len(self._conflict_list)
                self._conflict_list.append(var)

    @property
    def cost(self) -> int:
        return len(self._conflict_list)

    def conflicting_variables(self) -> list[int]:
        return sorted(self._conflict_list)

    def clauses_selecting(self, var: int) -> list[int]:
        return sorted(self._sel_list[var])

    def selected_literal(self, clause_index: int) -> int:
        return self._lits[clause_index][self.selection[clause_index]]

    def _mark(self, var: int, conflicted: bool) -> None:
        where = self._conflict_where
        if conflicted:
            if where[var] < 0:
                where[var] = len(self._conflict_list)
                self._conflict_list.append(var)
        elif where[var] >= 0:
            i = where[var]
            where[var] = -1
            last = self._conflict_list.pop()
            if last != var:
                self._conflict_list[i] = last
                where[last] = i

    def reselect(self, clause_index: int, new_index: int) -> None:
        lits = self._lits[clause_index]
        old = lits[self.selection[clause_index]]
        new = lits[new_index]
        self.selection[clause_index] = new_index
        if old == new:
            return
        pos, neg = self._pos, self._neg
        vo = old if old > 0 else -old
        vn = new if new > 0 else -new
        if old > 0:
            pos[vo] -= 1
        else:
            neg[vo] -= 1
        if new > 0:
            pos[vn] += 1
        else:
            neg[vn] += 1
        if vo != vn:
            where = self._sel_where[vo]
            lst = self._sel_list[vo]
            i = where.pop(clause_index)
            last = lst.pop()
            if last != clause_index:
                lst[i] = last
                where[last] = i
            self._sel_where[vn][clause_index] = len(self._sel_list[vn])
            self._sel_list[vn].append(clause_index)
            self._mark(vn, pos[vn] > 0 and neg[vn] > 0)
        self._mark(vo, pos[vo] > 0 and neg[vo] > 0)

    def cost_after_reselect(self, clause_index: int, new_index: int) -> int:
        """Cost the ledger would report after reselect, without mutating."""
        lits = self._lits[clause_index]
        old = lits[self.selection[clause_index]]
        new = lits[new_index]
        cost = len(self._conflict_list)
        if old == new:
            return cost
        pos, neg = self._pos, self._neg
        vo = old if old > 0 else -old
        vn = new if new > 0 else -new
        po, no = pos[vo], neg[vo]
        if vo == vn:
            # Polarity flip on one variable (old == -new).
            cost -= po > 0 and no > 0
            if old > 0:
                po -= 1
                no += 1
            else:
                po += 1
                no -= 1
            return cost + (po > 0 and no > 0)
        cost -= po > 0 and no > 0
        if old > 0:
            po -= 1
        else:
            no -= 1
        cost += po > 0 and no > 0
        pn, nn = pos[vn], neg[vn]
        cost -= pn > 0 and nn > 0
        if new > 0:
            pn += 1
        else:
            nn += 1
        return cost + (pn > 0 and nn > 0)


@dataclass(frozen=True)
class SearchConfig:
    """Local-search knobs; seed makes runs replayable."""

    seed: int = 0
    max_flips: int = 100_000
    max_restarts: int = 10
    noise: float = 0.5

    def __post_init__(self) -> None:
        if not 0 <= self.noise <= 1:
            raise ValueError(f"noise must be in [0, 1], got {self.noise}")
        if self.max_flips < 1 or self.max_restarts < 1:
            raise ValueError("max_flips and max_restarts must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


def local_search(
    formula: CnfFormula,
    config: SearchConfig = SearchConfig(),
    on_flip: Callable[[ConflictLedger], None] | None = None,
) -> SolveResult:
    """Stochastic search over one-literal-per-clause selections.

    Per restart: start from a uniformly random selection, then while the
    cost is positive and flips remain, pick a conflicting variable at
    random, pick one of the clauses currently selecting it, and reselect
    that clause's literal: a random other literal with probability
    `noise`, otherwise a cost-minimizing one (ties broken at random).
    Width-1 clauses offer no alternative, so the flip falls back to
    another clause of the variable, then to another conflicting variable,
    and finally burns the flip doing nothing (budgets are honest).

    Restart r draws from its own stream seeded seed+r, so restarts could
    run in parallel and still agree with the serial result. Returns
    Unknown after the last restart; only an empty clause yields
    Unsatisfiable, since no literal of it can be selected.

    on_flip, when given, is invoked with the ledger after every flip that
    changes the selection (a diagnostics hook; tests use it to audit the
    incremental cost).
    """
    start = time.perf_counter()
    if any(len(clause) == 0 for clause in formula.clauses):
        return SolveResult(Outcome.UNSATISFIABLE, seconds=time.perf_counter() - start)

    widths = [len(clause) for clause in formula.clauses]
    # alternatives[w][i]: the literal indices of a width-w clause other than i.
    alternatives_by_width = [
        [[i for i in range(w) if i != cur] for cur in range(w)]
        for w in range(max(widths, default=0) + 1)
    ]
    total_flips = 0
    for restart in range(config.max_restarts):
        rng = random.Random(config.seed + restart)
        uniform = rng.random
        selection = [int(uniform() * w) for w in widths]
        ledger = ConflictLedger(formula, selection)
        selection = ledger.selection
        conflict_list = ledger._conflict_list
        selecting = ledger._sel_list
        cost_after = ledger.cost_after_reselect
        reselect = ledger.reselect
        noise = config.noise
        max_flips = config.max_flips
        flips = 0
        while conflict_list and flips < max_flips:
            flips += 1
            var = conflict_list[int(uniform() * len(conflict_list))]
            clauses = selecting[var]
            ci = clauses[int(uniform() * len(clauses))]
            if widths[ci] == 1:
                wide = [c for c in clauses if widths[c] > 1]
                if not wide:
                    others = [
                        v
                        for v in conflict_list
                        if v != var
                        and any(widths[c] > 1 for c in selecting[v])
                    ]
                    if not others:
                        continue  # fully deadlocked: flip consumed, nothing to move
                    var = others[int(uniform() * len(others))]
                    wide = [c for c in selecting[var] if widths[c] > 1]
                ci = wide[int(uniform() * len(wide))]
            alternatives = alternatives_by_width[widths[ci]][selection[ci]]
            if uniform() < noise:
                new_index = alternatives[int(uniform() * len(alternatives))]
            else:
                costs = [cost_after(ci, i) for i in alternatives]
                best = min(costs)
                ties = [i for i, c in zip(alternatives, costs) if c == best]
                new_index = ties[int(uniform() * len(ties))]
            reselect(ci, new_index)
            if on_flip is not None:
                on_flip(ledger)
        total_flips += flips
        if not conflict_list:
            model = extract_interpretation(formula, ledger.selection)
            assert evaluate(formula, model)
            return SolveResult(
                Outcome.SATISFIABLE,
                model,
                flips=total_flips,
                restarts=restart + 1,
                seconds=time.perf_counter() - start,
            )
    return SolveResult(
        Outcome.UNKNOWN,
        flips=total_flips,
        restarts=config.max_restarts,
        seconds=time.perf_counter() - start,
    )


# --- hints ----------------------------------------------------------------


def residual_formula(instance: GameInstance, partial: ShapeDecision) -> CnfFormula:
    """The formula a partially decided original game still has to satisfy.

    Boxes already holding a surviving token of a decided color are
    satisfied and drop out; other boxes keep only their undecided-color
    tokens as literals. A box left with nothing becomes an empty clause,
    making the residual unsatisfiable.
    """
    clauses = []
    for box in instance.boxes:
        satisfied = any(
            t.color in partial and t.shape is not partial[t.color] for t in box
        )
        if satisfied:
            continue
        clauses.append(tuple(
            Literal(t.color, t.shape is Shape.SQUARE)
            for t in box
            if t.color not in partial
        ))
    return CnfFormula(instance.num_colors, tuple(clauses))


def hint_original(
    instance: GameInstance, partial: ShapeDecision
) -> tuple[int, Shape] | None:
    """One (color, shape-to-remove) extension that keeps the game winnable,
    or None when no extension does."""
    for color in range(1, instance.num_colors + 1):
        if color in partial:
            continue
        for shape in (Shape.SQUARE, Shape.ROUND):
            trial = dict(partial)
            trial[color] = shape
            if dpll(residual_formula(instance, trial)).outcome is Outcome.SATISFIABLE:
                return color, shape
    return None


def hint_variant(state: VariantState) -> VariantMove | None:
    """A removal that keeps the variant position winnable, or None.

    Solves the decoded residual board; any surviving token inconsistent
    with the found model can go. When every token already agrees with the
    model, any duplicate in an oversized box is expendable.
    """
    board = GameInstance(state.instance.num_colors, state.remaining)
    result = dpll(decode(board))
    if result.outcome is not Outcome.SATISFIABLE:
        return None
    assert result.model is not None
    keep = {
        color: Shape.SQUARE if value else Shape.ROUND
        for color, value in result.model.items()
    }
    for i, box in enumerate(state.remaining):
        for token in box:
            if token.shape is not keep[token.color]:
                return VariantMove(i, token)
    for i, box in enumerate(state.remaining):
        if len(box) > 1:
            return VariantMove(i, box[0])
    return None
