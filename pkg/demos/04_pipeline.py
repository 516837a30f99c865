"""
==================
The whole pipeline
==================

``run_pipeline`` takes a formula, a game or a counter-stack automaton down
the chain to a one-counter automaton, answers the reachability question at
every stage and replays every witness.  Any disagreement is a bug in one of
the reductions.

Run from the repository root::

    python3 demos/04_pipeline.py
"""

from ssgboca.generate import random_qbf, random_ssg
from ssgboca.pipeline import run_pipeline, run_pipelines

#####################################################
#
# One game
# --------
#

report = run_pipeline(random_ssg(seed=0, n=2, max=3))
print(report.to_text())

#####################################################
#
# A formula
# ---------
#
# One variable and one clause already give a three-round game; the
# automaton search stays small.
#

report = run_pipeline(random_qbf(seed=0, vars=1, clauses=1))
print(report.to_text())

#####################################################
#
# A batch in worker processes
# ---------------------------
#

games = [random_ssg(seed, n=1 + seed % 2, max=3) for seed in range(20)]
reports = run_pipelines(games, workers=4)
agree = sum(r.ok for r in reports)
wins = sum(bool(r.answers["ssg"]) for r in reports)
print(f"{agree}/{len(reports)} pipelines agree, {wins} won by the existential player")
