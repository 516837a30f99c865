import pytest

from conftest import four_clause_formula
from ssgboca.csa import CsaAutomaton, CsaState, CsaTransition
from ssgboca.pipeline import run_pipeline, run_pipelines
from ssgboca.qbf import EXISTS, Literal, Qbf3Cnf, eval_qbf, qbf_to_ssg
from ssgboca.ssg import SsgInstance, solve_ssg


def test_ssg_pipeline_agrees(small_game):
    report = run_pipeline(small_game)
    assert [s.stage for s in report.stages] == ["ssg", "csa", "boca"]
    assert report.answers == {"ssg": True, "csa": True, "boca": True}
    assert report.ok and report.disagreement is None
    csa = report.stages[1].witness
    assert csa["replay_ok"] and csa["sequential_ok"]
    assert report.stages[2].witness["lift_ok"]


def test_losing_game_pipeline():
    report = run_pipeline(SsgInstance(((1, 2, 2, 1),), 5))
    assert report.answers == {"ssg": False, "csa": False, "boca": False}
    assert report.ok


def test_qbf_pipeline_small():
    q = Qbf3Cnf((("x1", EXISTS),), ((Literal("x1"), Literal("x1"), Literal("x1")),))
    report = run_pipeline(q)
    assert [s.stage for s in report.stages] == ["qbf", "ssg", "csa", "boca"]
    assert report.ok and report.answers["qbf"] is True


def test_csa_pipeline_reports_monitor():
    # counts to 2 and stops: 2-bounded but not 1-bounded
    aut = CsaAutomaton(("p", "m", "q"), 1, (
        CsaTransition("p", "m", {1: 0}, (1,)),
        CsaTransition("m", "m", {1: 1}, (1,)),
        CsaTransition("m", "q", {1: 2}, (0,)),
    ), "p")
    good = run_pipeline(aut, target=CsaState("q", (2,)), bound=2)
    assert good.ok and good.answers == {"csa": True, "boca": True}
    bad = run_pipeline(aut, target=CsaState("q", (0,)), bound=1)
    assert bad.answers["csa"] is None
    assert not bad.ok and "bound monitor" in bad.violations[0]
    assert bad.disagreement == ("csa", "boca")


def test_csa_pipeline_needs_target():
    aut = CsaAutomaton(("p",), 1, (), "p")
    with pytest.raises(ValueError):
        run_pipeline(aut)
    with pytest.raises(TypeError):
        run_pipeline("not an instance")


def test_report_serialises(small_game):
    report = run_pipeline(small_game)
    data = report.to_json()
    assert data["agreement"] and data["answers"]["boca"] is True
    text = report.to_text()
    assert text.splitlines()[-1] == "verdict: agree"


def test_parallel_matches_serial():
    sources = [SsgInstance(((1, 2, 2, 1),), t) for t in range(2, 6)]
    serial = run_pipelines(sources)
    parallel = run_pipelines(sources, workers=2)
    assert [r.answers for r in serial] == [r.answers for r in parallel]


def test_four_clause_chain_down_to_game():
    # the QBF and SSG stages only: the 9-round automaton is far beyond search
    phi = four_clause_formula()
    assert solve_ssg(qbf_to_ssg(phi)).existential_wins is eval_qbf(phi)
