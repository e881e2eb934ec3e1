"""Relativistic Toda Hamiltonians from Darboux coordinates.

Builds the image of the dual-vector character for SL(n), specializes it at
q = 1, then kills every translation to recover the plain character.
"""
from __future__ import annotations

from kdarboux.heisenberg import HeisElt
from kdarboux.toda import classical_limit, toda_ch_v, toda_restrict

h = toda_ch_v(2)
print("SL2 words:", h.describe())
print("SL2 value:", h.value)
print("at q = 1:", h.value.q_specialize(1))

rd = h.datum
w = HeisElt.e(rd, rd.varpi(1))
by_hand = w * (HeisElt.t(rd, (0,)) - HeisElt.t(rd, rd.alpha_check(1))) + HeisElt.e(rd, (-1,))
print("matches the hand computation:", h.value.q_specialize(1) == by_hand.q_specialize(1))

h3 = toda_ch_v(3)
print("\nSL3 words:", h3.describe())
print("SL3 value:", h3.value)
# dropping node 2 forgets the translations along the second simple coroot
print("restricted to node 1:", toda_restrict(3, (1,)))

for n in range(2, 7):
    print(f"n={n} classical limit:", classical_limit(n))
