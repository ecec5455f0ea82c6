"""
Integral points off the dual sextic
===================================

Lines [a:b:c] with small integer coordinates on which the dual of the Fermat
cubic is a unit, or an S-unit for S = {2, 3}.
"""
from dualscope import SearchSpec, s_unit_search

D = "U^6+V^6+W^6-2*U^3*V^3-2*U^3*W^3-2*V^3*W^3"
for S in ((), (2, 3)):
    rep = s_unit_search(SearchSpec(D, S, 30))
    print(f"S = {list(S)}: {len(rep.points)} points of height <= 30"
          f" out of {rep.candidates} candidates")
    print("  by height:", {h + 1: n for h, n in enumerate(rep.shell_counts) if n})
    print("  first few:", rep.points[:6])
