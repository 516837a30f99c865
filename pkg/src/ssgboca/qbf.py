"""Quantified 3-CNF formulas and their reduction to subset-sum games.

The reduction is the classic subset-sum digit table lifted to games: each
variable gets two rows ``v_i`` / ``v'_i`` (true / false), each clause gets two
slack rows ``s_i`` (digit 1) and ``s'_i`` (digit 2), and the target has a 1 in
every variable column and a 4 in every clause column.  Column sums never
exceed 6, so decimal addition never carries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import BudgetExceeded, ValidationError
from .ssg import SsgInstance

FORALL = "forall"
EXISTS = "exists"

DEFAULT_MAX_VARIABLES = 20


class Literal(NamedTuple):
    var: str
    positive: bool = True

    def __str__(self):
        return self.var if self.positive else f"~{self.var}"


@dataclass(frozen=True)
class Qbf3Cnf:
    """``Q_1 x_1 ... Q_m x_m . C_1 & ... & C_r`` with 3-literal clauses."""

    prefix: tuple[tuple[str, str], ...]
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        prefix = tuple((str(v), q) for v, q in self.prefix)
        clauses = tuple(tuple(Literal(*lit) for lit in c) for c in self.clauses)
        seen = set()
        for var, quant in prefix:
            if quant not in (FORALL, EXISTS):
                raise ValidationError(f"unknown quantifier {quant!r} for {var}")
            if var in seen:
                raise ValidationError(f"variable {var} quantified twice")
            seen.add(var)
        for idx, clause in enumerate(clauses, 1):
            if len(clause) != 3:
                raise ValidationError(f"clause {idx} has {len(clause)} literals, expected 3")
            signs = {}
            for lit in clause:
                if lit.var not in seen:
                    raise ValidationError(f"clause {idx} uses unquantified variable {lit.var}")
                if signs.setdefault(lit.var, lit.positive) != lit.positive:
                    raise ValidationError(
                        f"clause {idx} contains both {lit.var} and its negation"
                    )
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "clauses", clauses)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.prefix)

    def with_prefix(self, quantifiers: Sequence[str]) -> "Qbf3Cnf":
        """Same matrix, same variable order, new quantifiers."""
        return Qbf3Cnf(tuple(zip(self.variables, quantifiers)), self.clauses)

    def __str__(self):
        head = " ".join(("A" if q == FORALL else "E") + v for v, q in self.prefix)
        body = " & ".join("(" + " | ".join(map(str, c)) + ")" for c in self.clauses)
        return f"{head} . {body}"


def eval_qbf(q: Qbf3Cnf, max_variables: int = DEFAULT_MAX_VARIABLES) -> bool:
    """Truth value by brute force over the quantifier prefix."""
    if len(q.prefix) > max_variables:
        raise BudgetExceeded(
            f"eval_qbf: {len(q.prefix)} variables exceeds the cap of {max_variables}"
        )
    clauses = q.clauses

    def satisfied(assignment: dict[str, bool]) -> bool:
        return all(any(assignment[l.var] == l.positive for l in c) for c in clauses)

    def value(pos: int, assignment: dict[str, bool]) -> bool:
        if pos == len(q.prefix):
            return satisfied(assignment)
        var, quant = q.prefix[pos]
        for b in (True, False):
            assignment[var] = b
            r = value(pos + 1, assignment)
            if quant == EXISTS and r:
                return True
            if quant == FORALL and not r:
                return False
        return quant == FORALL

    return value(0, {})


@dataclass(frozen=True)
class DigitTable:
    """Decimal rows of the subset-sum table.

    Columns (most significant first) are the variables in prefix order, then
    the clauses in input order.
    """

    variables: tuple[str, ...]
    num_clauses: int
    v: tuple[int, ...]
    v_neg: tuple[int, ...]
    s: tuple[int, ...]
    s2: tuple[int, ...]
    t: int

    @property
    def width(self) -> int:
        return len(self.variables) + self.num_clauses

    def digits(self, value: int) -> str:
        return str(value).rjust(self.width, "0")

    def rows(self) -> dict[str, int]:
        out = {}
        for i, (a, b) in enumerate(zip(self.v, self.v_neg), 1):
            out[f"v{i}"] = a
            out[f"v'{i}"] = b
        for i, (a, b) in enumerate(zip(self.s, self.s2), 1):
            out[f"s{i}"] = a
            out[f"s'{i}"] = b
        out["t"] = self.t
        return out


def build_digit_table(q: Qbf3Cnf) -> DigitTable:
    m = len(q.prefix)
    r = len(q.clauses)
    width = m + r

    def column(pos: int) -> int:
        return 10 ** (width - 1 - pos)

    v, v_neg = [], []
    for i, var in enumerate(q.variables):
        pos_row = neg_row = column(i)
        for j, clause in enumerate(q.clauses):
            if Literal(var, True) in clause:
                pos_row += column(m + j)
            if Literal(var, False) in clause:
                neg_row += column(m + j)
        v.append(pos_row)
        v_neg.append(neg_row)
    s = [column(m + j) for j in range(r)]
    s2 = [2 * column(m + j) for j in range(r)]
    t = sum(column(i) for i in range(m)) + sum(4 * column(m + j) for j in range(r))
    table = DigitTable(q.variables, r, tuple(v), tuple(v_neg), tuple(s), tuple(s2), t)
    _assert_no_carry(table)
    return table


def _assert_no_carry(table: DigitTable) -> None:
    """Every column, summed over all non-target rows, stays below 10."""
    rows = list(table.v) + list(table.v_neg) + list(table.s) + list(table.s2)
    for pos in range(table.width):
        col = sum(int(table.digits(row)[pos]) for row in rows)
        if pos < len(table.variables):
            assert col == 2, f"variable column {pos} sums to {col}"
        else:
            # at most 3 literal rows plus both slacks
            assert col <= 6, f"clause column {pos} sums to {col}"


class QuantifiedPair(NamedTuple):
    quantifier: str
    first: int
    second: int


def quantified_pairs(q: Qbf3Cnf) -> list[QuantifiedPair]:
    """The quantified list before alternation is enforced.

    One pair per variable under its own quantifier, then for every clause the
    two existential slack pairs ``{s_i, 0}`` and ``{s'_i, 0}``.
    """
    table = build_digit_table(q)
    pairs = [
        QuantifiedPair(quant, a, b)
        for (_, quant), a, b in zip(q.prefix, table.v, table.v_neg)
    ]
    for a, b in zip(table.s, table.s2):
        pairs.append(QuantifiedPair(EXISTS, a, 0))
        pairs.append(QuantifiedPair(EXISTS, b, 0))
    return pairs


def alternate(pairs: Sequence[QuantifiedPair]) -> list[QuantifiedPair]:
    """Insert ``{0, 0}`` dummies until the list reads forall, exists, ..., exists."""
    out: list[QuantifiedPair] = []
    for pair in pairs:
        if out and out[-1].quantifier == pair.quantifier:
            other = EXISTS if pair.quantifier == FORALL else FORALL
            out.append(QuantifiedPair(other, 0, 0))
        out.append(pair)
    if not out or out[0].quantifier == EXISTS:
        out.insert(0, QuantifiedPair(FORALL, 0, 0))
    if out[-1].quantifier == FORALL:
        out.append(QuantifiedPair(EXISTS, 0, 0))
    return out


def pairs_to_ssg(pairs: Sequence[QuantifiedPair], target: int) -> SsgInstance:
    """Group a strictly alternating pair list into game rounds."""
    if len(pairs) % 2:
        raise ValidationError("alternating pair list must have even length")
    rounds = []
    for u, e in zip(pairs[0::2], pairs[1::2]):
        if u.quantifier != FORALL or e.quantifier != EXISTS:
            raise ValidationError("pair list does not alternate forall/exists")
        rounds.append((u.first, u.second, e.first, e.second))
    return SsgInstance(tuple(rounds), target)


def qbf_to_ssg(q: Qbf3Cnf) -> SsgInstance:
    return pairs_to_ssg(alternate(quantified_pairs(q)), build_digit_table(q).t)
