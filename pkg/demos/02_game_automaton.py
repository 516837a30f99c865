"""
=====================================
A game as a counter-stack automaton
=====================================

The automaton walks the play gadget once per play of a sequential
strategy.  Four counters per round remember how often each choice was
taken; the reset gadget's equality tests force the universal choices into
the block order and stop the existential player from changing an answer
inside a block.  The top counter sums the play and must hit the target.

Run from the repository root::

    python3 demos/02_game_automaton.py
"""

from ssgboca.csa import reach_csa, validate_csa
from ssgboca.dot import csa_label
from ssgboca.ssg import SsgInstance, solve_ssg, strategy_to_sequential
from ssgboca.ssg2csa import (CounterLayout, build_full_automaton, counter_bounds,
                             decompose_segments, run_to_sequential, sequential_to_run)

#####################################################
#
# A two-round game
# ----------------
#
# Round 1: forall {1, 2}, exists {2, 1}.  Round 2: forall {0, 0},
# exists {3, 3}.  Target 6, so the existential player answers A1 with E1,
# B1 with F1 and anything in round 2.
#

game = SsgInstance(((1, 2, 2, 1), (0, 0, 3, 3)), 6)
solution = solve_ssg(game)
print("winner:", solution.winner)
for i, m in enumerate(solution.strategy.maps, 1):
    print(f"  round {i}:", dict(m))

#####################################################
#
# Counter layout and transitions
# ------------------------------
#

layout = CounterLayout(game.n)
print("counters:", layout.names())

aut, goal, bound = build_full_automaton(game)
assert validate_csa(aut) == []
for t in aut.transitions:
    label = csa_label(t, omit_zero_tests=True).replace("\n", "; ")
    print(f"  {t.source:>3} -> {t.target:<3} {label}".rstrip())

#####################################################
#
# The sequential strategy as a run
# --------------------------------
#
# The strategy's plays in block order, then the run they drive.  Each
# segment (u1 to the next u1) is one play.
#

seq = strategy_to_sequential(game, solution.strategy)
for j, play in enumerate(seq.plays, 1):
    print(f"  play {j}: universal {play.universal}  existential {play.existential}")

run = sequential_to_run(game, seq)
for j, seg in enumerate(decompose_segments(run), 1):
    print(f"  segment {j}: " + " ".join(seg.locations))

#####################################################
#
# Searching instead of driving
# ----------------------------
#
# Breadth-first search finds a shortest run to (t, 0...0).  The
# per-counter monitor checks the bound the construction promises.
#

res = reach_csa(aut, goal, counter_bounds(game))
print("reachable:", res.reachable, "visited:", res.visited, "monitor fired:", res.bound_violation)
decoded = run_to_sequential(game, res.witness)
print("decoded plays win:", decoded.is_winning())
