"""
Interpolating between interleaved modules
=========================================

F = [0, 2) and G = [1, 3) are 1-interleaved.  The path K_t in between
moves one interval across, and each K_t sits within t and 1 - t of the ends.
"""

from pathlib import Path

import grodiag as gd
from grodiag import io

here = Path(__file__).parent / "data"
F = io.module_from_json(io.load_json(here / "shift_F.json"))
G = io.module_from_json(io.load_json(here / "shift_G.json"))
data = io.interleaving_from_json(io.load_json(here / "shift_data.json"), F, G)
assert not gd.verify_interleaving(F, G, data)

YF, YG = gd.mobius_inversion(F), gd.mobius_inversion(G)
for t in (0, 0.25, 0.5, 0.75, 1):
    Y = gd.mobius_inversion(gd.interpolate(F, G, data, t))
    dF, _ = gd.bottleneck_distance(YF, Y)
    dG, _ = gd.bottleneck_distance(Y, YG)
    print(t, [str(iv) for iv in Y], dF, dG)
