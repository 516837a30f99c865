"""Run an instance down the reduction chain and cross-check every stage.

Stages, top to bottom: ``qbf`` (brute force), ``ssg`` (minimax), ``csa``
(search on the game automaton) and ``boca`` (search on the packed automaton).
A pipeline may start at any of the first three.  Besides comparing the
answers, every witness is replayed: the SSG strategy must win, the CSA
witness must decode to a winning sequential strategy and the BOCA witness
must lift to a valid CSA run.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

from .boca import reach_boca
from .csa import DEFAULT_STATE_BUDGET, CsaAutomaton, CsaState, reach_csa, replay_run
from .csa2boca import csa_to_boca, lift_run, translate_state
from .formats import digest, to_json
from .qbf import Qbf3Cnf, eval_qbf, qbf_to_ssg
from .ssg import SsgInstance, is_sequential_strategy, is_winning_strategy, solve_ssg
from .ssg2csa import build_full_automaton, counter_bounds, run_to_sequential

BUDGET_ENV = "SSGBOCA_STATE_BUDGET"
STAGES = ("qbf", "ssg", "csa", "boca")


def default_budget() -> int:
    return int(os.environ.get(BUDGET_ENV, DEFAULT_STATE_BUDGET))


@dataclass
class StageResult:
    stage: str
    answer: bool | None
    digest: str
    seconds: float
    witness: dict[str, Any] = field(default_factory=dict)


@dataclass
class PipelineReport:
    stages: list[StageResult] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def answers(self) -> dict[str, bool | None]:
        return {s.stage: s.answer for s in self.stages}

    @property
    def agreement(self) -> bool:
        return len({s.answer for s in self.stages}) == 1 and None not in self.answers.values()

    @property
    def disagreement(self) -> tuple[str, str] | None:
        """The first adjacent pair of stages whose answers differ."""
        for a, b in zip(self.stages, self.stages[1:]):
            if a.answer != b.answer:
                return a.stage, b.stage
        return None

    @property
    def ok(self) -> bool:
        return self.agreement and not self.violations

    def to_json(self) -> dict:
        return {
            "stages": [asdict(s) for s in self.stages],
            "answers": self.answers,
            "agreement": self.agreement,
            "disagreement": list(self.disagreement) if self.disagreement else None,
            "violations": list(self.violations),
        }

    def to_text(self) -> str:
        lines = []
        for s in self.stages:
            extra = ", ".join(f"{k}={v}" for k, v in s.witness.items())
            lines.append(f"{s.stage:5} {str(s.answer):5} {s.seconds:8.3f}s  {s.digest}  {extra}".rstrip())
        verdict = "agree" if self.agreement else f"DISAGREE at {self.disagreement}"
        lines.append(f"verdict: {verdict}")
        lines.extend(f"violation: {v}" for v in self.violations)
        return "\n".join(lines)


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def run_pipeline(
    source: Qbf3Cnf | SsgInstance | CsaAutomaton,
    *,
    target: CsaState | None = None,
    bound: int | Sequence[int] | None = None,
    state_budget: int | None = None,
) -> PipelineReport:
    """Chain ``source`` down to a bounded one-counter automaton.

    ``target`` and ``bound`` are required (and only used) when starting from
    a counter-stack automaton; for games they come from the construction.
    """
    budget = default_budget() if state_budget is None else state_budget
    report = PipelineReport()
    instance = None

    if isinstance(source, Qbf3Cnf):
        truth, secs = _timed(eval_qbf, source)
        report.stages.append(StageResult("qbf", truth, digest(to_json(source)), secs))
        instance = qbf_to_ssg(source)
    elif isinstance(source, SsgInstance):
        instance = source

    if instance is not None:
        sol, secs = _timed(solve_ssg, instance)
        witness = {}
        if sol.strategy is not None:
            witness["strategy_wins"] = is_winning_strategy(instance, sol.strategy)
            if not witness["strategy_wins"]:
                report.violations.append("ssg: returned strategy is not winning")
        report.stages.append(StageResult("ssg", sol.existential_wins, digest(to_json(instance)), secs, witness))
        aut, target, analytic = build_full_automaton(instance)
        monitor = counter_bounds(instance)
        bound = analytic
    elif isinstance(source, CsaAutomaton):
        if target is None or bound is None:
            raise ValueError("starting from a counter-stack automaton needs target and bound")
        aut = source
        monitor = bound
        bound = bound if isinstance(bound, int) else max(bound)
    else:
        raise TypeError(f"cannot start a pipeline from {type(source).__name__}")

    res, secs = _timed(reach_csa, aut, target, monitor, budget)
    witness = {"visited": res.visited}
    answer: bool | None = res.reachable
    if res.bound_violation is not None:
        answer = None
        report.violations.append(f"csa: bound monitor fired at {res.bound_violation}")
    if res.witness is not None:
        witness["length"] = len(res.witness)
        bad = replay_run(aut, res.witness)
        witness["replay_ok"] = bad is None
        if bad is not None:
            report.violations.append(f"csa: witness fails replay at state {bad}")
        if instance is not None:
            seq = run_to_sequential(instance, res.witness)
            witness["sequential_ok"] = bool(is_sequential_strategy(instance, seq.plays)) and seq.is_winning()
            if not witness["sequential_ok"]:
                report.violations.append("csa: witness does not decode to a winning sequential strategy")
    report.stages.append(StageResult("csa", answer, digest(to_json(aut)), secs, witness))

    (boca, scheme), _ = _timed(csa_to_boca, aut, bound)
    res_b, secs = _timed(reach_boca, boca, translate_state(target, scheme), budget)
    witness = {"visited": res_b.visited, "packed_bits": scheme.width}
    if res_b.witness is not None:
        witness["length"] = len(res_b.witness)
        bad = replay_run(aut, lift_run(res_b.witness, scheme))
        witness["lift_ok"] = bad is None
        if bad is not None:
            report.violations.append(f"boca: lifted witness fails replay at state {bad}")
    report.stages.append(StageResult("boca", res_b.reachable, digest(to_json(boca)), secs, witness))
    return report


def run_pipelines(sources: Sequence, workers: int | None = None, **kwargs) -> list[PipelineReport]:
    """Independent pipelines, optionally in worker processes; reports come
    back in input order."""
    if not workers or workers <= 1:
        return [run_pipeline(s, **kwargs) for s in sources]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_pipeline, s, **kwargs) for s in sources]
        return [f.result() for f in futures]
