"""
Stability under a perturbed filtration
======================================

Filter one random complex two ways and compare the degree-1 diagrams.
The distance never exceeds the sup-norm gap between the filtrations.
"""

import numpy as np

import grodiag as gd
from grodiag import generators as gen

rng = np.random.default_rng(3)
K = gen.simplicial_complex(rng, max_simplices=60)
L = gen.perturb(rng, K, max_shift=0.5)

for degree in (0, 1):
    F, G, data = gd.interleaving_from_functions(K, L, degree, 2)
    d, _ = gd.bottleneck_distance(gd.mobius_inversion(F), gd.mobius_inversion(G))
    print(f"H{degree}: bottleneck {d}  <=  {float(data.epsilon)}")
    assert d <= data.epsilon
    assert not gd.verify_interleaving(F, G, data)

# at p = 2 the diagram agrees with the usual barcode
Y = gd.mobius_inversion(gd.homology_module(K, 1, 2))
print(Y == gd.classical_diagram(K, 1, 2))
