"""
The dual of the Fermat cubic
============================

Compute the dual sextic, then look at a few lines: a generic one, a flex
tangent, and the line at infinity.
"""
from dualscope import ImplicitCurve, LineCoords
from dualscope.binaryform import git_classify, multiplicity_partition
from dualscope.dualgeom import dual_form, dual_membership, line_section

C = ImplicitCurve("X^3+Y^3+Z^3")
G = dual_form(C)
print("dual curve:", G)
print("degree:", G.degree, " charts:", [c["chart"] for c in G.info["chart_checks"]])

# A line is tangent exactly when its section has a repeated root, and then
# the dual form vanishes on it.
for L in ([0, 0, 1], [1, 1, 0], [1, 2, 3]):
    L = LineCoords(L)
    f = line_section(C, L)
    print(f"{str(L):>9}  section {str(f):<28} partition {multiplicity_partition(f)}"
          f"  tangent={dual_membership(C, L)}  G(L)={G.evaluate(L.to_list())}")

# The flex tangent [1:1:0] meets the cubic in a single point of contact 3.
print("GIT class of the flex section:", git_classify(line_section(C, LineCoords(1, 1, 0))))
