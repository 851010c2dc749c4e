"""
Bottleneck distance between group-valued diagrams
=================================================

Random finite abelian diagrams, compared to a jittered copy.
"""

import numpy as np

import grodiag as gd
from grodiag import generators as gen

rng = np.random.default_rng(7)
Y = gen.positive_diagram(rng, gd.FINAB)
Z = gen.nearby_diagram(rng, Y)
print("Y:", Y)
print("Z:", Z)

d, gamma = gd.bottleneck_distance(Y, Z)
print("distance", d)

# the witness is a valid matching attaining the distance
assert not gd.validate_matching(Y, Z, gamma)
print("norm of witness", gd.matching_norm(gamma))

# brute-force enumeration agrees on small inputs
print("oracle", gd.bottleneck_oracle(Y, Z))
