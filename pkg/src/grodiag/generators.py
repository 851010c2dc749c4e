"""Seeded random instances: modules, complexes, perturbations, diagrams.

All parameter values are multiples of 1/8 (dyadic), so sums and differences
like p - eps or s + 2 eps are exact in floating point and boundary cases of
the half-open conventions are hit exactly rather than by rounding accident.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from . import backends as bk
from .diagram import Interval, PersistenceDiagram
from .grocat import VECT, GroupElement, dim, primes
from .pipeline import FilteredComplex, Simplex
from .pmodule import ConstructibleModule

STEP = 0.125


def criticals(rng: np.random.Generator, k: int, span: int = 48) -> list[float]:
    ticks = rng.choice(span, size=k, replace=False)
    return sorted(float(t) * 2 * STEP for t in ticks)


def field_module(rng: np.random.Generator, p: int = 2, max_k: int = 6, max_dim: int = 3) -> ConstructibleModule:
    k = int(rng.integers(1, max_k + 1))
    objs = [bk.FieldObject(p, int(rng.integers(0, max_dim + 1))) for _ in range(k)]
    maps = []
    for a, b in zip(objs, objs[1:]):
        mat = rng.integers(0, p, size=(b.dim, a.dim))
        if rng.random() < 0.3 and min(a.dim, b.dim) > 0:
            # low-rank maps make more interesting diagrams than generic ones
            mat = np.outer(rng.integers(0, p, size=b.dim), rng.integers(0, p, size=a.dim))
        maps.append(bk.FieldMorphism(a, b, mat))
    return ConstructibleModule(tuple(criticals(rng, k)), tuple(objs), tuple(maps))


def finab_object(rng: np.random.Generator, primes_=(2, 3), max_exp: int = 2, max_factors: int = 3):
    n = int(rng.integers(0, max_factors + 1))
    return bk.FinAbObject(tuple((int(rng.choice(primes_)), int(rng.integers(1, max_exp + 1))) for _ in range(n)))


def finab_morphism(rng: np.random.Generator, src: bk.FinAbObject, tgt: bk.FinAbObject) -> bk.FinAbMorphism:
    """Uniformly random homomorphism: column j may only take multiples of n_i / gcd(n_i, m_j)."""
    mat = np.zeros((tgt.size, src.size), dtype=object)
    for i, ni in enumerate(tgt.orders()):
        for j, mj in enumerate(src.orders()):
            step = ni // math.gcd(ni, mj)
            mat[i, j] = step * int(rng.integers(0, ni // step))
    return bk.FinAbMorphism(src, tgt, mat)


def finab_module(rng: np.random.Generator, max_k: int = 5, primes_=(2, 3), max_exp: int = 2,
                 max_factors: int = 3) -> ConstructibleModule:
    k = int(rng.integers(1, max_k + 1))
    objs = [finab_object(rng, primes_, max_exp, max_factors) for _ in range(k)]
    maps = [finab_morphism(rng, a, b) for a, b in zip(objs, objs[1:])]
    return ConstructibleModule(tuple(criticals(rng, k)), tuple(objs), tuple(maps))


def module(rng: np.random.Generator, backend: str = VECT, **kw) -> ConstructibleModule:
    return field_module(rng, **kw) if backend == VECT else finab_module(rng, **kw)


def grid_value(rng: np.random.Generator, F: ConstructibleModule, spread: float = 1.0) -> float:
    """A parameter near the critical values (on them about half the time)."""
    s = F.criticals
    if rng.random() < 0.5:
        return float(rng.choice(s))
    lo, hi = s[0] - spread, s[-1] + spread
    ticks = int((hi - lo) / STEP)
    return lo + STEP * int(rng.integers(0, ticks + 1))


def nested_intervals(rng: np.random.Generator, F: ConstructibleModule) -> tuple[Interval, Interval]:
    """Random off-diagonal intervals I2 inside I1."""
    while True:
        a, b, c, d = sorted(grid_value(rng, F) for _ in range(4))
        if a < d and b < c:
            break
    outer_inf = rng.random() < 0.25
    inner_inf = outer_inf and rng.random() < 0.5
    return Interval(a, math.inf if outer_inf else d), Interval(b, math.inf if inner_inf else c)


def simplicial_complex(rng: np.random.Generator, max_simplices: int = 200, n_values: int = 20,
                       max_vertices: int = 12, max_dim: int = 3) -> FilteredComplex:
    """Random flag-like complex with a monotone filtration on a grid of at most ``n_values`` values."""
    nv = int(rng.integers(1, max_vertices + 1))
    p_edge = rng.uniform(0.2, 0.9)
    cells: list[tuple[int, ...]] = [(v,) for v in range(nv)]
    edges = [e for e in combinations(range(nv), 2) if rng.random() < p_edge]
    cells += edges
    present = set(cells)
    current = edges
    for d in range(2, max_dim + 1):
        nxt = []
        for c in combinations(range(nv), d + 1):
            if all(f in present for f in combinations(c, d)) and rng.random() < 0.6:
                nxt.append(c)
        present.update(nxt)
        cells += nxt
        current = nxt
        if not current:
            break
    cells = cells[:max_simplices]
    levels = rng.choice(np.arange(40), size=min(n_values, 40), replace=False)
    values: dict[tuple[int, ...], float] = {}
    for c in cells:
        v = float(rng.choice(levels)) * STEP * 2
        if len(c) > 1:
            v = max([v] + [values[f] for f in combinations(c, len(c) - 1)])
        values[c] = v
    order = list(rng.permutation(len(cells)))
    return FilteredComplex(Simplex(int(order[i]), c, values[c]) for i, c in enumerate(cells))


def perturb(rng: np.random.Generator, K: FilteredComplex, max_shift: float = 1.0,
            step: float = STEP) -> FilteredComplex:
    """Second monotone filtration of the same complex, within about ``max_shift`` of the first.

    Shifts are multiples of ``step``; pass a power of two below the grid
    spacing to stay under the injectivity radius.
    """
    ticks = max(int(max_shift / step), 0)
    vals: dict[tuple[int, ...], float] = {}
    for s in sorted(K.simplices, key=lambda s: s.dim):
        v = s.value + step * int(rng.integers(-ticks, ticks + 1))
        if s.dim:
            v = max([v] + [vals[f] for f in combinations(s.vertices, s.dim)])
        vals[s.vertices] = v
    return K.with_values({s.id: vals[s.vertices] for s in K.simplices})


def positive_diagram(rng: np.random.Generator, backend: str = VECT, max_mass: int = 6,
                     keys=(2, 3), n_ticks: int = 24) -> PersistenceDiagram:
    """Random positive diagram whose per-generator mass is at most ``max_mass``."""
    gens = [None] if backend == VECT else list(keys)
    points: dict[Interval, GroupElement] = {}
    for g in gens:
        mass = int(rng.integers(0, max_mass + 1))
        while mass:
            m = int(rng.integers(1, mass + 1))
            b = STEP * int(rng.integers(0, n_ticks))
            if rng.random() < 0.2:
                iv = Interval(b)
            else:
                iv = Interval(b, b + STEP * int(rng.integers(1, n_ticks // 2)))
            v = dim(m) if g is None else primes({g: m})
            points[iv] = points[iv] + v if iv in points else v
            mass -= m
    return PersistenceDiagram(backend, points)


def nearby_diagram(rng: np.random.Generator, Y: PersistenceDiagram, max_shift: int = 4,
                   max_mass: int = 6) -> PersistenceDiagram:
    """Jitter the points of Y, keeping essential classes, and add a little noise mass.

    Keeps the essential counts of Y, so the distance to Y is usually finite.
    """
    points: dict[Interval, GroupElement] = {}

    def put(iv, v):
        points[iv] = points[iv] + v if iv in points else v

    def shift():
        return STEP * int(rng.integers(-max_shift, max_shift + 1))

    for iv, v in Y.items():
        b = max(0.0, iv.birth + shift())
        d = iv.death if iv.is_essential else max(b + STEP, iv.death + shift())
        put(Interval(b, d), v)
    out = PersistenceDiagram(Y.backend, points)
    for key in out.generator_keys():
        room = max_mass - sum(v[key] for v in out.values())
        if room > 0 and rng.random() < 0.5:
            b = STEP * int(rng.integers(0, 24))
            put(Interval(b, b + STEP * int(rng.integers(1, 4))), GroupElement.make(Y.backend, {key: 1}))
    return PersistenceDiagram(Y.backend, points)
