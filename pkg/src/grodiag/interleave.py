"""Interleavings of constructible modules: data, verification, construction, interpolation.

An eps-interleaving is stored through its component maps
``phi_t: F(t) -> G(t + eps)`` and ``psi_t: G(t) -> F(t + eps)`` at the points
of the merged grid ``S_F, S_G, S_F - eps, S_G - eps``.  Between grid points
both source and target of each component are constant, so the component at
an arbitrary t is the one at the largest grid point <= t, and finitely many
commuting squares and triangles decide whether the data is an interleaving.

Grid arithmetic uses exact rationals: ``(s - eps) + eps`` must land on s
itself, otherwise a target would be evaluated one cell too low.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import backends as bk
from . import gf
from .errors import (CompositionError, DomainError, IngestionError, PreconditionError,
                     UnsupportedBackendError, ValidationError)
from .pmodule import ConstructibleModule, evaluate, evaluate_map
from .pipeline import FilteredComplex, SublevelHomology

# grid labels read from files are matched to exact grid points within this tolerance
MATCH_TOL = 1e-9


@dataclass(frozen=True)
class InterleavingData:
    """Component maps of an interleaving; ``phi``/``psi`` are ``(at, morphism)`` pairs."""

    epsilon: float
    phi: tuple
    psi: tuple

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise DomainError(f"epsilon must be nonnegative, got {self.epsilon}")
        object.__setattr__(self, "phi", tuple(sorted(self.phi, key=lambda e: e[0])))
        object.__setattr__(self, "psi", tuple(sorted(self.psi, key=lambda e: e[0])))


def interleaving_grid(F: ConstructibleModule, G: ConstructibleModule, eps) -> list[Fraction]:
    e = Fraction(eps)
    pts = set()
    for s in F.criticals + G.criticals:
        pts.add(Fraction(s))
        pts.add(Fraction(s) - e)
    return sorted(pts)


def _resolve(entries, grid: list[Fraction], name: str, problems: list[str]) -> list:
    """Attach each grid point to the stored map whose label matches it."""
    labels = [Fraction(at) for at, _ in entries]
    out = []
    for g in grid:
        best = _nearest(labels, g)
        if best is None:
            problems.append(f"{name}: no map at grid point {float(g)!r}")
            out.append(None)
        else:
            out.append(entries[best][1])
    return out


def _nearest(labels: list[Fraction], g: Fraction):
    """Index of the sorted label matching grid point g, or None.

    A label equal to float(g), the value writers emit, wins outright; grid
    points one ulp apart can otherwise tie.  Failing that, the closest label
    within MATCH_TOL is used.
    """
    exact = Fraction(float(g))
    i = bisect.bisect_left(labels, exact)
    if i < len(labels) and labels[i] == exact:
        return i
    i = bisect.bisect_left(labels, g)
    best = None
    for j in (i - 1, i):
        if 0 <= j < len(labels) and abs(labels[j] - g) <= MATCH_TOL * max(1, abs(g)):
            if best is None or abs(labels[j] - g) < abs(labels[best] - g):
                best = j
    return best


class _Components:
    """Piecewise-constant lookup of one family of component maps."""

    def __init__(self, grid, maps, src: ConstructibleModule, tgt: ConstructibleModule, eps: Fraction):
        self.grid, self.maps, self.src, self.tgt, self.eps = grid, maps, src, tgt, eps

    def __call__(self, x):
        i = bisect.bisect_right(self.grid, x) - 1
        if i < 0:
            return bk.zero_morphism(evaluate(self.src, x), evaluate(self.tgt, x + self.eps))
        return self.maps[i]


def _components(F, G, data: InterleavingData, problems: list[str]):
    eps = Fraction(data.epsilon)
    grid = interleaving_grid(F, G, eps)
    phi = _resolve(data.phi, grid, "phi", problems)
    psi = _resolve(data.psi, grid, "psi", problems)
    for name, maps, src, tgt in (("phi", phi, F, G), ("psi", psi, G, F)):
        for t, m in zip(grid, maps):
            if m is None:
                continue
            want_s, want_t = evaluate(src, t), evaluate(tgt, t + eps)
            if m.source != want_s or m.target != want_t:
                problems.append(
                    f"{name} at {float(t)!r}: expected {want_s} -> {want_t}, got {m.source} -> {m.target}")
    return grid, _Components(grid, phi, F, G, eps), _Components(grid, psi, G, F, eps)


def verify_interleaving(F: ConstructibleModule, G: ConstructibleModule,
                        data: InterleavingData) -> list[str]:
    """Every failed commutation condition, as a readable message; empty means valid."""
    if F.backend != G.backend:
        return [f"modules live in different backends ({F.backend}, {G.backend})"]
    problems: list[str] = []
    grid, phi, psi = _components(F, G, data, problems)
    if problems:
        return problems
    eps = Fraction(data.epsilon)

    def check(label, lhs, rhs):
        try:
            ok = lhs() == rhs()
        except (CompositionError, ValidationError) as exc:
            problems.append(f"{label}: {exc}")
            return
        if not ok:
            problems.append(f"{label} does not commute")

    for t, u in zip(grid, grid[1:]):
        check(f"phi naturality on [{float(t)!r}, {float(u)!r}]",
              lambda: bk.compose(phi(u), evaluate_map(F, t, u)),
              lambda: bk.compose(evaluate_map(G, t + eps, u + eps), phi(t)))
        check(f"psi naturality on [{float(t)!r}, {float(u)!r}]",
              lambda: bk.compose(psi(u), evaluate_map(G, t, u)),
              lambda: bk.compose(evaluate_map(F, t + eps, u + eps), psi(t)))
    for t in grid:
        check(f"triangle psi.phi at {float(t)!r}",
              lambda: bk.compose(psi(t + eps), phi(t)),
              lambda: evaluate_map(F, t, t + 2 * eps))
        check(f"triangle phi.psi at {float(t)!r}",
              lambda: bk.compose(phi(t + eps), psi(t)),
              lambda: evaluate_map(G, t, t + 2 * eps))
    return problems


def interleaving_from_functions(Kf: FilteredComplex, Kg: FilteredComplex, degree: int = 0, p: int = 2):
    """Interleave the sublevel homology of two filtrations of one complex.

    eps is the sup-distance between the filtrations; every simplex of the
    f-sublevel set at t lies in the g-sublevel set at t + eps and vice versa,
    so the identity on chains induces both families of component maps.
    Returns ``(F, G, data)``.
    """
    if [(s.id, s.vertices) for s in Kf.simplices] != [(s.id, s.vertices) for s in Kg.simplices]:
        raise IngestionError("the two filtrations are not on the same complex")
    fv = {s.id: s.value for s in Kf.simplices}
    eps = max((abs(fv[s.id] - s.value) for s in Kg.simplices), default=0.0)
    hf, hg = SublevelHomology(Kf, degree, p), SublevelHomology(Kg, degree, p)
    F, G = hf.module(), hg.module()
    e = Fraction(eps)
    grid = interleaving_grid(F, G, e)

    def induced(h_src, h_tgt, t):
        i, j = h_src.level(t), h_tgt.level(t + e)
        src, tgt = h_src.obj(i), h_tgt.obj(j)
        if src.dim == 0 or tgt.dim == 0:
            return bk.FieldMorphism(src, tgt)
        return bk.FieldMorphism(src, tgt, h_tgt.coordinates(j, h_src.bases[i]))

    phi = tuple((float(t), induced(hf, hg, t)) for t in grid)
    psi = tuple((float(t), induced(hg, hf, t)) for t in grid)
    return F, G, InterleavingData(float(eps), phi, psi)


def interpolate(F: ConstructibleModule, G: ConstructibleModule, data: InterleavingData,
                t: float) -> ConstructibleModule:
    """The module K_t of the interpolating family between eps-interleaved F and G.

    K_t(x) is the limit of the interleaving restricted to everything above
    (x, t): it has the two minimal elements F(x + eps t) and
    G(x + eps (1 - t)), whose two minimal common upper bounds are
    F(x + eps (2 - t)) and G(x + eps (1 + t)).  The limit is one kernel
    computation per cell; structure maps are the induced maps of limits.
    """
    if F.backend != "vect" or G.backend != "vect":
        raise UnsupportedBackendError("interpolation is implemented for vector spaces only")
    if not 0 <= t <= 1:
        raise DomainError(f"t = {t} is outside [0, 1]")
    problems: list[str] = []
    grid, phi, psi = _components(F, G, data, problems)
    if problems or verify_interleaving(F, G, data):
        raise PreconditionError("interpolate needs a verified interleaving")
    eps, tt = Fraction(data.epsilon), Fraction(t)

    shifts_T = (eps * tt, eps * (1 - tt))
    cuts = set()
    for g in grid:
        cuts.update(g - d for d in shifts_T)
    for s in F.criticals:
        cuts.update((Fraction(s) - eps * tt, Fraction(s) - eps * (2 - tt)))
    for s in G.criticals:
        cuts.update((Fraction(s) - eps * (1 - tt), Fraction(s) - eps * (1 + tt)))
    cuts = sorted(cuts)

    limits = []
    for x in cuts:
        a, b = x + eps * tt, x + eps * (1 - tt)
        c0, c1 = x + eps * (2 - tt), x + eps * (1 + tt)
        lim = bk.limit_pair(evaluate_map(F, a, c0), psi(b), phi(a), evaluate_map(G, b, c1))
        limits.append((a, b) + lim)

    maps = []
    for (a, b, _, pa, pb), (a2, b2, lim2, pa2, pb2) in zip(limits, limits[1:]):
        pushed = np.concatenate([
            gf.matmul(evaluate_map(F, a, a2).matrix, pa.matrix, F.objects[0].p),
            gf.matmul(evaluate_map(G, b, b2).matrix, pb.matrix, F.objects[0].p),
        ], axis=0)
        basis = np.concatenate([pa2.matrix, pb2.matrix], axis=0)
        if lim2.dim == 0 or pushed.shape[1] == 0:
            coords = np.zeros((lim2.dim, pushed.shape[1]), dtype=np.int64)
        else:
            coords = gf.solve(basis, pushed, F.objects[0].p)
            if coords is None:
                raise ArithmeticError("induced map between limits does not factor")
        maps.append(bk.FieldMorphism(pa.source, lim2, coords))

    first = next((i for i, lim in enumerate(limits) if lim[2].dim > 0), None)
    if first is None:
        zero = bk.FieldObject(F.objects[0].p, 0)
        return ConstructibleModule((float(cuts[0]),), (zero,), ())
    crit = [float(x) for x in cuts[first:]]
    if len(set(crit)) != len(crit):
        raise ArithmeticError("critical values of the interpolant collide in floating point")
    return ConstructibleModule(tuple(crit), tuple(lim[2] for lim in limits[first:]), tuple(maps[first:]))


def data_from_matrices(F: ConstructibleModule, G: ConstructibleModule, epsilon: float,
                       phi: Sequence[tuple[float, object]], psi: Sequence[tuple[float, object]]):
    """Build InterleavingData from raw matrices, reading endpoints off the modules."""
    e = Fraction(epsilon)
    grid = interleaving_grid(F, G, e)

    by_float = {float(g): g for g in grid}

    def snap(at):
        if float(at) in by_float:
            return by_float[float(at)]
        x = Fraction(at)
        near = min(grid, key=lambda g: abs(g - x), default=None)
        if near is not None and abs(near - x) <= MATCH_TOL * max(1, abs(near)):
            return near
        return x

    def build(entries, src, tgt, name):
        out = []
        for idx, (at, mat) in enumerate(entries):
            x = snap(at)
            s_obj, t_obj = evaluate(src, x), evaluate(tgt, x + e)
            try:
                out.append((float(at), bk.make_morphism(s_obj, t_obj, mat)))
            except ValidationError as exc:
                raise ValidationError([f"{name}[{idx}]: {m}" for m in exc.problems]) from None
        return tuple(out)

    return InterleavingData(float(epsilon), build(phi, F, G, "phi"), build(psi, G, F, "psi"))
