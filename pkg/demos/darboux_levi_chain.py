"""Darboux coordinates, membership and Levi chains for SL3.

The generators xi_i, phi_i land in the Heisenberg algebra.  Products of
generators at one Levi level decompose over the generators of every smaller
level; the leading-term specialization goes the other way.
"""
from __future__ import annotations

from kdarboux.darboux import image, levi_chain_check, levi_specialize, membership_decompose, recombine
from kdarboux.rootdata import build_root_datum

rd = build_root_datum("A2")
print("xi1 phi1 =", image(rd, "xi1 phi1"))
print("phi1 xi1 =", image(rd, "phi1 xi1"))

word = "xi1 phi2 xi2"
target = image(rd, word)
print("\nproduct:", word, "=", target)
dec = membership_decompose(target, level=(1,), box=6)
print("decomposes at level {1}:", dec.feasible, "with", len(dec.coefficients), "coefficients")
print("recombines exactly:", recombine(rd, dec) == target)

for J, J_sub in [((1, 2), (1,)), ((1, 2), ()), ((2,), ())]:
    rep = levi_chain_check(rd, J, J_sub, samples=5, seed=1)
    print(f"chain {J} -> {J_sub}: ok={rep['ok']}")

x = image(rd, "xi1 xi2")
print("\nxi1 xi2 =", x)
print("specialized to level {2}:", levi_specialize(x, {2}))
