"""
========================
From a formula to a game
========================

A quantified 3-CNF formula becomes a subset-sum game.  Every variable and
every clause gets a decimal column; choosing ``x`` or ``not x`` picks a
number with a 1 in that variable's column and in the columns of the clauses
the literal satisfies.  Slack numbers top every clause column up to 4.

Run from the repository root::

    python3 demos/01_formula_to_game.py
"""

import itertools
import json
from pathlib import Path

from ssgboca import formats
from ssgboca.qbf import EXISTS, FORALL, build_digit_table, eval_qbf, qbf_to_ssg
from ssgboca.ssg import solve_ssg

phi = formats.qbf_from_json(json.loads((Path(__file__).parent / "data" / "four_clause.json").read_text()))

#####################################################
#
# The formula
# -----------
#
# forall x1 exists x2 forall x3, four clauses over three variables.
#

for var, quant in phi.prefix:
    print(f"{quant:7} {var}")
for clause in phi.clauses:
    print("  (" + " | ".join(("" if l.positive else "~") + l.var for l in clause) + ")")

#####################################################
#
# The digit table
# ---------------
#
# Columns: x1 x2 x3 then clauses C1..C4.  Column sums never exceed 9, so
# adding rows never carries and each column can be read off on its own.
#

table = build_digit_table(phi)
for name, value in table.rows().items():
    print(f"{name:>4}  {table.digits(value)}")

#####################################################
#
# Alternation
# -----------
#
# Game rounds alternate a universal pair and an existential pair.  Same-
# quantifier neighbours get a {0, 0} dummy of the other kind in between,
# which is why three variables and eight slack pairs end up as 9 rounds.
#

game = qbf_to_ssg(phi)
print(f"rounds: {game.n}, target: {game.target}")
for i, (a, b, e, f) in enumerate(game.rounds, 1):
    print(f"  round {i}: forall {{{a}, {b}}}  exists {{{e}, {f}}}")

#####################################################
#
# Both sides agree
# ----------------
#
# Brute-force evaluation of the formula against minimax on the game, for
# every quantifier prefix.
#

for quants in itertools.product((FORALL, EXISTS), repeat=3):
    q = phi.with_prefix(quants)
    truth = eval_qbf(q)
    winner = solve_ssg(qbf_to_ssg(q)).winner
    label = "".join("A" if x == FORALL else "E" for x in quants)
    print(f"  {label}: formula {str(truth):5}  game won by {winner}")
