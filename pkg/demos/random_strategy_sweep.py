"""Monte-Carlo sweep over random quantum strategies.

Draws a few thousand random states and dichotomic observables, checks that
every resulting correlation vector passes the quantum membership test, and
reports how close the sweep gets to the Tsirelson bound.
"""

import numpy as np

from corrset import (
    TSIRELSON_BOUND,
    chsh_combinations,
    quantum_margins,
    sample_correlations,
)

COUNT = 5000

for dims in ((2, 2), (3, 3), (4, 4)):
    rows = sample_correlations(COUNT, dims[0], dims[1], seed=2024)
    margins = quantum_margins(rows)
    peaks = chsh_combinations(rows).max(axis=1)
    picked = rows[peaks.argmax()]
    print(f"dims {dims}: {COUNT} strategies")
    print(f"  worst quantum margin {margins.min():+.3e} (negative = outside)")
    print(f"  best CHSH value {peaks.max():.6f} of at most {TSIRELSON_BOUND:.6f}")
    print(f"  achieved by x = {tuple(round(float(v), 4) for v in picked)}")
    assert margins.min() >= -1e-7, "a sampled strategy left the quantum set"

print()
print("No sample ever lands outside the quantum set, and random sampling")
print("gets close to, but never beyond, the 2*sqrt(2) ceiling.")
