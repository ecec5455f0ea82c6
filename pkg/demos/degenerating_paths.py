"""
Degenerating paths and the proximity of the marked roots
========================================================

On the rational quartic (t^4, t^3 - 3 t^2 + 2 t, 1) we move a line towards
two different tangent lines and follow the four intersection points.

Into a simple tangent (fibre {2,1,1}) two roots collide and the proximity
goes to zero. Into the full-contact line x = 0 (fibre {4}) all four roots
shrink together as a square, so every cross ratio stays fixed.
"""
import numpy as np

from dualscope.catalog import load_path
from dualscope.proxlift import prox_limit_experiment, verify_lift

for name in ("quartic-211", "full-contact-4-line"):
    C, path = load_path(name)
    series = prox_limit_experiment(C, path)
    print(f"\n{name}: L0 = {path.L0}, L1 = {path.L1}, fibre {list(series.boundary_partition)}")
    print(f"  lift stopped at t = {series.times[0]:.2e} ({series.path.stop_reason}),"
          f" recheck error {verify_lift(series.path):.1e}")
    for t, p in list(zip(series.times, series.prox))[::12]:
        print(f"  t = {t:9.2e}   prox = {p:.6e}")
    print("  verdict:", series.verdict)

# prox ~ c sqrt(t) on the first path: fit the exponent on the small-t tail
C, path = load_path("quartic-211")
s = prox_limit_experiment(C, path)
k = len(s.times) // 3
slope = np.polyfit(np.log(s.times[:k]), np.log(s.prox[:k]), 1)[0]
print(f"\nfitted exponent of prox in t near 0: {slope:.3f}")
