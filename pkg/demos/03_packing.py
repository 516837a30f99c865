"""
===============================
Packing counters into one value
===============================

A ``b``-bounded counter-stack automaton with ``k`` counters fits in one
counter of ``k * n_bits`` bits, where ``n_bits`` is just wide enough for
``b``.  Counter ``c_i`` sits in slot ``i``; the top counter is the most
significant slot.  Since a test always covers a top run of slots, it
becomes a single interval guard on the packed value.

Run from the repository root::

    python3 demos/03_packing.py
"""

from ssgboca.boca import reach_boca
from ssgboca.csa import replay_run
from ssgboca.csa2boca import PackingScheme, csa_to_boca, enc, guard_window, lift_run, translate_state, unpack
from ssgboca.ssg import SsgInstance
from ssgboca.ssg2csa import build_full_automaton

#####################################################
#
# Slots
# -----
#
# Two counters of two bits each: c1 in bits 0-1, c2 in bits 2-3.
#

scheme = PackingScheme(k=2, n_bits=2)
print("enc(1, 1) + enc(2, 2) =", enc(1, 1, scheme) + enc(2, 2, scheme))
print("unpack(9) =", unpack(9, scheme))

#####################################################
#
# Guard windows
# -------------
#
# Testing only c2 leaves c1 free, so the window is one slot-2 unit wide.
#

for eq in ({}, {2: 1}, {1: 2, 2: 1}):
    g1, g2 = guard_window(eq, scheme)
    hits = [v for v in range(16) if g1 <= v <= g2]
    print(f"  tests {eq!s:16} -> [{g1}, {g2}]  values {[unpack(v, scheme) for v in hits]}")

#####################################################
#
# A whole game automaton
# ----------------------
#
# One round, forall {1, 2} exists {2, 1}, target 3.  Five counters, bound 6,
# three bits per slot: a 15-bit packed counter.
#

game = SsgInstance(((1, 2, 2, 1),), 3)
aut, goal, bound = build_full_automaton(game)
boca, packing = csa_to_boca(aut, bound)
print("bits per slot:", packing.n_bits, " packed bound:", boca.bound)
for t in boca.transitions:
    print(f"  {t.source:>3} -> {t.target:<3} {t.p:+6d}  [{t.g1}, {t.g2}]")

#####################################################
#
# Lifting a witness
# -----------------
#
# Every state of the one-counter run unpacks into a counter-stack state,
# and the lifted run replays in the original automaton.
#

res = reach_boca(boca, translate_state(goal, packing))
lifted = lift_run(res.witness, packing)
for s in lifted.states:
    print(f"  {s.location:>3} {s.counters}")
print("lifted run replays:", replay_run(aut, lifted) is None)
