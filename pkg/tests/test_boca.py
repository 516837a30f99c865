import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ssgboca.boca import (BocaAutomaton, BocaRun, BocaState, BocaTransition, boca_step,
                          desugar_guards, reach_boca, replay_boca_run)
from ssgboca.errors import BudgetExceeded, StructuralError, ValidationError
from ssgboca.generate import random_boca

T = BocaTransition


@pytest.fixture
def ladder():
    # climb by 3 below 6, then jump to q only from exactly 6
    return BocaAutomaton(("p", "q"), 8, (T("p", "p", 3, 0, 5), T("p", "q", -6, 6, 6)), "p")


def test_step_examples(ladder):
    assert boca_step(ladder, BocaState("p", 0)) == [(BocaState("p", 3), 0)]
    assert boca_step(ladder, BocaState("p", 6)) == [(BocaState("q", 0), 1)]
    assert boca_step(ladder, BocaState("q", 0)) == []
    with pytest.raises(StructuralError):
        boca_step(ladder, BocaState("p", 9))


def test_step_respects_bound():
    aut = BocaAutomaton(("p",), 4, (T("p", "p", 3, 0, 4), T("p", "p", -2, 0, 4)), "p")
    assert boca_step(aut, BocaState("p", 2)) == [(BocaState("p", 0), 1)]
    assert boca_step(aut, BocaState("p", 1)) == [(BocaState("p", 4), 0)]


def test_reach_examples(ladder):
    res = reach_boca(ladder, BocaState("q", 0))
    assert res.reachable
    assert [s.value for s in res.witness.states] == [0, 3, 6, 0]
    assert replay_boca_run(ladder, res.witness) is None
    assert not reach_boca(ladder, BocaState("p", 4)).reachable


def test_budget(ladder):
    with pytest.raises(BudgetExceeded):
        reach_boca(ladder, BocaState("q", 0), state_budget=2)


def test_replay_mutations(ladder):
    run = reach_boca(ladder, BocaState("q", 0)).witness
    assert replay_boca_run(ladder, BocaRun(run.states, (0, 0, 0))) == 3
    bad = list(run.states)
    bad[1] = BocaState("p", 2)
    assert replay_boca_run(ladder, BocaRun(tuple(bad), run.transitions)) == 1
    assert replay_boca_run(ladder, BocaRun(run.states[1:], run.transitions[1:])) == 0
    assert replay_boca_run(ladder, BocaRun(run.states[1:], run.transitions[1:]), from_initial=False) is None


def test_validation():
    with pytest.raises(ValidationError):
        BocaAutomaton(("p",), 4, (T("p", "p", 5, 0, 4),), "p")
    with pytest.raises(ValidationError):
        BocaAutomaton(("p",), 4, (T("p", "p", 1, 0, 5),), "p")
    with pytest.raises(ValidationError):
        BocaAutomaton(("p",), 4, (T("p", "p", 1, 3, 2),), "p")
    with pytest.raises(ValidationError):
        BocaAutomaton(("p",), -1, (), "p")
    with pytest.raises(ValidationError):
        BocaAutomaton(("p",), 4, (T("p", "x", 1, 0, 4),), "p")


def test_desugar_shape(ladder):
    d = desugar_guards(ladder)
    assert all((t.g1, t.g2) == (0, 8) for t in d.transitions)
    assert set(ladder.locations) <= set(d.locations)
    # p -> p: +3 guarded [0, 5] becomes +3 -3 +3
    chain = [t.p for t in d.transitions if t.source == "p" or t.source.startswith("p~0.")]
    assert chain[:3] == [3, -3, 3]
    assert all("~" in l for l in set(d.locations) - set(ladder.locations))


def test_desugar_keeps_unguarded():
    aut = BocaAutomaton(("p", "q"), 4, (T("p", "q", 2, 0, 4),), "p")
    assert desugar_guards(aut).transitions == aut.transitions


def test_desugar_zero_effect_guarded():
    aut = BocaAutomaton(("p", "q"), 4, (T("p", "q", 0, 2, 2),), "p")
    d = desugar_guards(aut)
    assert [t.p for t in d.transitions] == [-2, 2, 2, -2]
    assert d.transitions[-1].target == "q"


def fixpoint_reachable(aut):
    seen = {aut.initial_state()}
    while True:
        new = {
            BocaState(t.target, s.value + t.p)
            for s in seen for t in aut.transitions
            if t.source == s.location and t.g1 <= s.value <= t.g2 and 0 <= s.value + t.p <= aut.bound
        }
        if new <= seen:
            return seen
        seen |= new


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 12))
def test_reach_agrees_with_fixpoint(seed, bound):
    aut = random_boca(seed, locations=3, bound=bound, transitions=6)
    reach = fixpoint_reachable(aut)
    for loc in aut.locations:
        for v in range(bound + 1):
            res = reach_boca(aut, BocaState(loc, v))
            assert res.reachable == (BocaState(loc, v) in reach)
            if res.reachable:
                assert replay_boca_run(aut, res.witness) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 12))
def test_desugar_preserves_reachability(seed, bound):
    aut = random_boca(seed, locations=3, bound=bound, transitions=6)
    d = desugar_guards(aut)
    before = fixpoint_reachable(aut)
    after = {s for s in fixpoint_reachable(d) if s.location in aut.locations}
    assert before == after
