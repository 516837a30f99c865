import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import four_clause_formula
from ssgboca.errors import BudgetExceeded, ValidationError
from ssgboca.qbf import (EXISTS, FORALL, Literal, QuantifiedPair, Qbf3Cnf, alternate,
                         build_digit_table, eval_qbf, pairs_to_ssg, qbf_to_ssg,
                         quantified_pairs)
from ssgboca.ssg import Play, SsgInstance, play_sum, solve_ssg

L = Literal

TABLE = {
    "v1": "1001001", "v'1": "1000110",
    "v2": "0100001", "v'2": "0101110",
    "v3": "0010011", "v'3": "0011100",
    "s1": "0001000", "s'1": "0002000",
    "s2": "0000100", "s'2": "0000200",
    "s3": "0000010", "s'3": "0000020",
    "s4": "0000001", "s'4": "0000002",
    "t": "1114444",
}

# brute-force truth table folding over x1, x2, x3 (computed before the build)
FOUR_CLAUSE_VALUES = {
    (FORALL, FORALL, FORALL): False,
    (FORALL, FORALL, EXISTS): False,
    (FORALL, EXISTS, FORALL): False,
    (FORALL, EXISTS, EXISTS): True,
    (EXISTS, FORALL, FORALL): False,
    (EXISTS, FORALL, EXISTS): True,
    (EXISTS, EXISTS, FORALL): True,
    (EXISTS, EXISTS, EXISTS): True,
}


def test_digit_table_rows(phi):
    table = build_digit_table(phi)
    assert {k: table.digits(v) for k, v in table.rows().items()} == TABLE
    assert table.v[0] == 1001001
    assert table.v_neg[1] == 101110
    assert table.t == 1114444
    assert table.width == 7


def test_eval_singleton():
    q = Qbf3Cnf((("x1", EXISTS),), ((L("x1"), L("x1"), L("x1")),))
    assert eval_qbf(q) is True
    q = Qbf3Cnf((("x1", FORALL),), ((L("x1"), L("x1"), L("x1")),))
    assert eval_qbf(q) is False


@pytest.mark.parametrize("prefix,value", sorted(FOUR_CLAUSE_VALUES.items()))
def test_eval_four_clause(prefix, value):
    assert eval_qbf(four_clause_formula(prefix)) is value


def test_eval_budget():
    q = Qbf3Cnf(tuple((f"x{i}", EXISTS) for i in range(5)), ())
    with pytest.raises(BudgetExceeded):
        eval_qbf(q, max_variables=4)


def test_validation():
    with pytest.raises(ValidationError):
        Qbf3Cnf((("x1", EXISTS),), ((L("x1"), L("x1", False), L("x1")),))
    with pytest.raises(ValidationError):
        Qbf3Cnf((("x1", EXISTS),), ((L("x1"), L("x2"), L("x1")),))
    with pytest.raises(ValidationError):
        Qbf3Cnf((("x1", EXISTS), ("x1", FORALL)), ())
    with pytest.raises(ValidationError):
        Qbf3Cnf((("x1", EXISTS),), ((L("x1"), L("x1")),))
    with pytest.raises(ValidationError):
        Qbf3Cnf((("x1", "sometimes"),), ())


def test_pairs_all_exists():
    q = four_clause_formula((EXISTS, EXISTS, EXISTS))
    pairs = quantified_pairs(q)
    table = build_digit_table(q)
    assert pairs[:3] == [QuantifiedPair(EXISTS, table.v[i], table.v_neg[i]) for i in range(3)]
    slack = [p for j in range(4) for p in (QuantifiedPair(EXISTS, table.s[j], 0),
                                           QuantifiedPair(EXISTS, table.s2[j], 0))]
    assert pairs[3:] == slack


def test_pairs_mixed_prefix(phi):
    pairs = quantified_pairs(phi)
    assert [p.quantifier for p in pairs[:3]] == [FORALL, EXISTS, FORALL]
    assert pairs[0][1:] == (1001001, 1000110)
    assert all(p.quantifier == EXISTS and p.second == 0 for p in pairs[3:])
    assert len(pairs) == 11


def test_alternation_round_count(phi):
    # forall exists forall, then 8 existential slack pairs: 7 forall dummies
    # go between the slacks, giving 18 pairs
    inst = qbf_to_ssg(phi)
    assert inst.n == 9
    assert inst.target == 1114444
    assert solve_ssg(inst).existential_wins is eval_qbf(phi)


def test_alternation_all_exists_count():
    inst = qbf_to_ssg(four_clause_formula((EXISTS, EXISTS, EXISTS)))
    assert inst.n == 11
    assert inst.rounds[0][:2] == (0, 0)


def test_alternate_shapes():
    f, e = FORALL, EXISTS
    out = alternate([QuantifiedPair(f, 1, 2), QuantifiedPair(f, 3, 4)])
    assert [p.quantifier for p in out] == [f, e, f, e]
    assert out[1] == QuantifiedPair(e, 0, 0) and out[3] == QuantifiedPair(e, 0, 0)
    out = alternate([QuantifiedPair(e, 1, 2)])
    assert out == [QuantifiedPair(f, 0, 0), QuantifiedPair(e, 1, 2)]
    with pytest.raises(ValidationError):
        pairs_to_ssg([QuantifiedPair(e, 1, 2), QuantifiedPair(f, 0, 0)], 0)


def test_satisfying_play_sums_to_target():
    # x1 = T, x2 = F, x3 = T picks v1, v'2, v3; column sums 2 1 2 2 padded
    # to 4 with s'1, s2 + s'2, s'3, s'4
    q = four_clause_formula((EXISTS, EXISTS, EXISTS))
    inst = qbf_to_ssg(q)
    # each round is a forall dummy then one existential pair; E takes the
    # first number, F the second (0 for slacks)
    slack_choice = {"s1": "F", "s'1": "E", "s2": "E", "s'2": "E",
                    "s3": "F", "s'3": "E", "s4": "F", "s'4": "E"}
    existential = ["E", "F", "E"] + [slack_choice[k] for k in
                                      ("s1", "s'1", "s2", "s'2", "s3", "s'3", "s4", "s'4")]
    play = Play.from_moves(inst, "A" * inst.n, "".join(existential))
    assert play_sum(inst, play) == 1114444


def tautology_free_clauses(variables):
    lits = [L(v, s) for v in variables for s in (True, False)]
    out = set()
    for combo in itertools.combinations_with_replacement(lits, 3):
        signs = {}
        if all(signs.setdefault(l.var, l.positive) == l.positive for l in combo):
            out.add(combo)
    return sorted(out)


def test_clause_enumeration_count():
    # distinct multisets of 3 literals over 3 variables with no x / ~x pair
    assert len(tautology_free_clauses(["x1", "x2", "x3"])) == 38


qbfs = st.integers(1, 3).flatmap(lambda m: st.tuples(
    st.lists(st.sampled_from([FORALL, EXISTS]), min_size=m, max_size=m),
    st.lists(st.sampled_from(tautology_free_clauses([f"x{i}" for i in range(1, m + 1)])),
             min_size=0, max_size=4),
)).map(lambda pc: Qbf3Cnf(tuple((f"x{i}", q) for i, q in enumerate(pc[0], 1)), tuple(pc[1])))


@settings(max_examples=200, deadline=None)
@given(qbfs)
def test_soundness_random(q):
    assert solve_ssg(qbf_to_ssg(q)).existential_wins is eval_qbf(q)


@settings(max_examples=100, deadline=None)
@given(qbfs, st.data())
def test_dummy_rounds_do_not_change_winner(q, data):
    inst = qbf_to_ssg(q)
    pos = data.draw(st.integers(0, inst.n))
    rounds = list(inst.rounds)
    rounds.insert(pos, (0, 0, 0, 0))
    padded = SsgInstance(tuple(rounds), inst.target)
    assert solve_ssg(padded).winner == solve_ssg(inst).winner


@settings(max_examples=100, deadline=None)
@given(qbfs)
def test_column_sums_never_carry(q):
    table = build_digit_table(q)
    rows = list(table.v) + list(table.v_neg) + list(table.s) + list(table.s2)
    for pos in range(table.width):
        assert sum(int(table.digits(r)[pos]) for r in rows) < 10


def test_empty_matrix_is_true():
    q = Qbf3Cnf((("x1", FORALL),), ())
    assert eval_qbf(q) is True
    assert solve_ssg(qbf_to_ssg(q)).existential_wins
