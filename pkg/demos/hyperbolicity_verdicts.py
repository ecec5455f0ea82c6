"""
Which criterion applies
=======================

Run the verdict engine over the bundled curves and print the conclusion,
the criterion that produced it, and the hypotheses it checked.
"""
from dualscope.catalog import CURVES, curve
from dualscope.hypcheck import check_hyperbolicity

for name in CURVES:
    v = check_hyperbolicity(curve(name))
    checks = ", ".join(f"{h.name}={'ok' if h.passed else 'no'}" for h in v.hypotheses)
    print(f"{name:>14}: {v.conclusion:<9} via {v.criterion:<24} [{checks}]")
    if "not_ah" in v.artifacts:
        print(" " * 16, "obstruction:", v.artifacts["not_ah"])
