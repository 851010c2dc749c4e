"""
Diagrams of two small modules
=============================

Two modules over the same three critical values with different maps.
Their rank functions differ, and so do their diagrams.
"""

from pathlib import Path

import grodiag as gd
from grodiag import io

here = Path(__file__).parent / "data"
M1 = io.module_from_json(io.load_json(here / "M1.json"))
M2 = io.module_from_json(io.load_json(here / "M2.json"))

# the rank function on a few pairs p <= q
for iv in [gd.Interval(1, 2), gd.Interval(1, 3), gd.Interval(2, 3), gd.Interval(2)]:
    print(f"rk {iv}:  M1 {gd.rank_function(M1, iv)}   M2 {gd.rank_function(M2, iv)}")

# Moebius inversion on the critical grid
for name, M in [("M1", M1), ("M2", M2)]:
    Y = gd.mobius_inversion(M)
    print(name, Y)
    assert gd.is_positive(Y)

# the diagram determines the rank function back
Y1 = gd.mobius_inversion(M1)
for iv in [gd.Interval(1, 3), gd.Interval(2)]:
    assert gd.rank_from_diagram(Y1, iv) == gd.rank_function(M1, iv)
