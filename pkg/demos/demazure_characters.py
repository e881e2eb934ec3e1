"""Weyl characters from Demazure operators, and the flag-variety side.

The character of the irreducible module of highest weight lam is
D_{w_0} applied to the lowest weight monomial.  The same operators act on
Schubert classes of the flag variety, and line bundle sections give the
characters back.
"""
from __future__ import annotations

from kdarboux.coeffs import GroupAlgElt
from kdarboux.nildaha import demazure, weyl_character, weyl_character_closed
from kdarboux.rootdata import build_root_datum
from kdarboux.schubert import FlagKElt, demazure_act, line_bundle_global

for fam, lam in [("A2", (1, 1)), ("B2", (0, 1)), ("G2", (1, 0))]:
    rd = build_root_datum(fam)
    chi = weyl_character(rd, lam)
    print(f"{fam} {lam}: dimension {chi.dimension()}, agrees with the alternating sum: "
          f"{chi == weyl_character_closed(rd, lam)}")

rd = build_root_datum("A2")
f = GroupAlgElt.monomial((-1, 0))
print("\nD_1 e^(-1,0) =", demazure(rd, 1, f))
print("D_1 twice is D_1:", demazure(rd, 1, demazure(rd, 1, f)) == demazure(rd, 1, f))

pt = FlagKElt.point(rd, {1, 2})
print("\npoint class:", pt)
print("D_2 [pt] =", demazure_act(2, pt))
x = line_bundle_global(rd, (1, 0), {1, 2})
print("sections of O(1,0):", x.character())
