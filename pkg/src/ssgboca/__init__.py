"""Exact solvers and reductions: quantified 3-CNF -> subset-sum games ->
counter-stack automata -> bounded one-counter automata."""

from .boca import (BocaAutomaton, BocaRun, BocaState, BocaTransition, boca_step,
                   desugar_guards, reach_boca, replay_boca_run)
from .csa import (CsaAutomaton, CsaRun, CsaState, CsaTransition, csa_step, reach_csa,
                  replay_run, validate_csa)
from .csa2boca import PackingScheme, csa_to_boca, enc, lift_run, translate_state, unpack
from .errors import (BudgetExceeded, PreconditionError, SsgBocaError, StructuralError,
                     ValidationError)
from .pipeline import PipelineReport, run_pipeline
from .qbf import Literal, Qbf3Cnf, build_digit_table, eval_qbf, qbf_to_ssg
from .ssg import (Play, SequentialStrategy, SsgInstance, Strategy, blocks, enumerate_plays,
                  is_sequential_strategy, play_sum, sequential_to_strategy, solve_ssg,
                  strategy_to_sequential)
from .ssg2csa import (CounterLayout, build_base_automaton, build_full_automaton,
                      decompose_segments, reset_visit_oracle, run_to_sequential,
                      sequential_to_run, ssruns_predicate)

__version__ = "0.1.0"

__all__ = [
    "blocks", "boca_step", "BocaAutomaton", "BocaRun", "BocaState", "BocaTransition",
    "BudgetExceeded", "build_base_automaton", "build_digit_table", "build_full_automaton",
    "CounterLayout", "csa_step", "csa_to_boca", "CsaAutomaton", "CsaRun", "CsaState",
    "CsaTransition", "decompose_segments", "desugar_guards", "enc", "enumerate_plays",
    "eval_qbf", "is_sequential_strategy", "lift_run", "Literal", "PackingScheme",
    "PipelineReport", "Play", "play_sum", "PreconditionError", "Qbf3Cnf", "qbf_to_ssg",
    "reach_boca", "reach_csa", "replay_boca_run", "replay_run", "reset_visit_oracle",
    "run_pipeline", "run_to_sequential", "sequential_to_run", "sequential_to_strategy",
    "SequentialStrategy", "solve_ssg", "SsgBocaError", "SsgInstance", "ssruns_predicate",
    "Strategy", "strategy_to_sequential", "StructuralError", "translate_state", "unpack",
    "validate_csa", "ValidationError",
]
