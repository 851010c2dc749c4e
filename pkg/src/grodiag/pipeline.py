"""Filtered simplicial complexes and their homology persistence modules.

Two independent routes from a complex to a diagram live here:

* :func:`homology_module` computes, at every critical value, a basis of the
  degree-k homology of the sublevel complex over GF(p) together with the
  inclusion-induced maps.  Möbius inversion of that module gives a diagram.
* :func:`classical_diagram` runs the standard column reduction of the whole
  filtered boundary matrix and reads births and deaths off the pivots.

The two must agree exactly; that equality is the main end-to-end check.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import gf
from .backends import FieldMorphism, FieldObject
from .diagram import Interval, PersistenceDiagram
from .errors import IngestionError
from .grocat import VECT, dim, is_prime
from .pmodule import ConstructibleModule


@dataclass(frozen=True)
class Simplex:
    id: int
    vertices: tuple[int, ...]
    value: float
    extra: Mapping[str, float] = field(default_factory=dict, compare=False)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


class FilteredComplex:
    """Simplices with filtration values, validated on construction.

    Every codimension-one face of a simplex must be present with a value no
    larger than the simplex's; ids must be unique.
    """

    def __init__(self, simplices: Iterable[Simplex]):
        simplices = list(simplices)
        by_vertices: dict[tuple[int, ...], Simplex] = {}
        ids = set()
        for s in simplices:
            verts = tuple(s.vertices)
            if not verts:
                raise IngestionError(f"simplex {s.id}: empty vertex list")
            if len(set(verts)) != len(verts):
                raise IngestionError(f"simplex {s.id}: repeated vertex in {list(verts)}")
            if not math.isfinite(s.value):
                raise IngestionError(f"simplex {s.id}: value {s.value} is not finite")
            if s.id in ids:
                raise IngestionError(f"simplex {s.id}: duplicate id")
            ids.add(s.id)
            key = tuple(sorted(verts))
            if key in by_vertices:
                raise IngestionError(f"simplex {s.id}: same vertices as simplex {by_vertices[key].id}")
            by_vertices[key] = s
        for key, s in by_vertices.items():
            if len(key) == 1:
                continue
            for face in combinations(key, len(key) - 1):
                f = by_vertices.get(face)
                if f is None:
                    raise IngestionError(f"simplex {s.id}: face {list(face)} is missing")
                if f.value > s.value:
                    raise IngestionError(
                        f"simplex {s.id}: face {f.id} enters at {f.value} after the simplex ({s.value})")
        self.simplices = tuple(
            sorted((Simplex(s.id, tuple(sorted(s.vertices)), float(s.value), dict(s.extra))
                    for s in simplices), key=lambda s: s.id))
        self._index = {s.vertices: s for s in self.simplices}

    def __len__(self):
        return len(self.simplices)

    def of_dim(self, k: int) -> list[Simplex]:
        return [s for s in self.simplices if s.dim == k]

    def values(self) -> list[float]:
        return sorted({s.value for s in self.simplices})

    def column(self, name: str) -> "FilteredComplex":
        """Same simplices filtered by another value column (``"value"`` or an extra one)."""
        if name == "value":
            return self
        out = []
        for s in self.simplices:
            if name not in s.extra:
                raise IngestionError(f"simplex {s.id}: no column {name!r}")
            out.append(Simplex(s.id, s.vertices, float(s.extra[name]), s.extra))
        return FilteredComplex(out)

    def with_values(self, values: Mapping[int, float]) -> "FilteredComplex":
        return FilteredComplex(Simplex(s.id, s.vertices, values[s.id], s.extra) for s in self.simplices)

    @classmethod
    def lower_star(cls, faces: Iterable[Sequence[int]], vertex_values: Mapping[int, float]):
        """Complex generated by ``faces``; each simplex enters at the max of its vertex values."""
        closure = set()
        for f in faces:
            f = tuple(sorted(f))
            for r in range(1, len(f) + 1):
                closure.update(combinations(f, r))
        ordered = sorted(closure, key=lambda v: (len(v), v))
        return cls(Simplex(i, v, max(vertex_values[x] for x in v)) for i, v in enumerate(ordered))


def boundary_matrix(rows: Sequence[Simplex], cols: Sequence[Simplex], p: int) -> np.ndarray:
    """Oriented boundary of ``cols`` in terms of ``rows`` (faces), mod p."""
    where = {s.vertices: r for r, s in enumerate(rows)}
    d = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for c, s in enumerate(cols):
        if s.dim == 0:
            continue
        for i in range(len(s.vertices)):
            face = s.vertices[:i] + s.vertices[i + 1:]
            d[where[face], c] = (-1) ** i % p
    return d


class SublevelHomology:
    """Degree-k homology of every sublevel complex, with chosen cycle bases.

    Chains are vectors over all k-simplices of the complex in id order, so
    cycles from different levels live in one coordinate space and inclusion
    maps are plain identities on chains.
    """

    def __init__(self, K: FilteredComplex, degree: int, p: int = 2):
        if degree < 0:
            raise ValueError(f"negative homology degree {degree}")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if not len(K):
            raise IngestionError("empty complex has no critical values")
        self.complex, self.degree, self.p = K, degree, p
        self.criticals = K.values()
        lower, cells, upper = K.of_dim(degree - 1), K.of_dim(degree), K.of_dim(degree + 1)
        self.cells = cells
        d_k = boundary_matrix(lower, cells, p)
        d_up = boundary_matrix(cells, upper, p)
        vals_k = np.array([s.value for s in cells])
        vals_up = np.array([s.value for s in upper])
        n = len(cells)
        self._boundaries: list[np.ndarray] = []
        self.bases: list[np.ndarray] = []
        for v in self.criticals:
            here = np.nonzero(vals_k <= v)[0]
            bcols = d_up[:, vals_up <= v] if len(upper) else np.zeros((n, 0), dtype=np.int64)
            bnd = bcols[:, gf.independent_columns(bcols, p)] if bcols.size else np.zeros((n, 0), dtype=np.int64)
            z_local = gf.nullspace(d_k[:, here], p)
            cycles = np.zeros((n, z_local.shape[1]), dtype=np.int64)
            cycles[here] = z_local
            both = np.concatenate([bnd, cycles], axis=1)
            picked = [c - bnd.shape[1] for c in gf.independent_columns(both, p) if c >= bnd.shape[1]]
            self._boundaries.append(bnd)
            self.bases.append(cycles[:, picked])

    def level(self, value) -> int:
        return bisect.bisect_right(self.criticals, value) - 1

    def coordinates(self, level: int, chains: np.ndarray) -> np.ndarray:
        """Coordinates of cycles (columns) in the homology basis at ``level``."""
        bnd, basis = self._boundaries[level], self.bases[level]
        if chains.shape[1] == 0 or basis.shape[1] == 0:
            return np.zeros((basis.shape[1], chains.shape[1]), dtype=np.int64)
        sol = gf.solve(np.concatenate([bnd, basis], axis=1), chains, self.p)
        if sol is None:
            raise ValueError(f"chains are not cycles of the level-{level} complex")
        return sol[bnd.shape[1]:]

    def obj(self, level: int) -> FieldObject:
        return FieldObject(self.p, 0 if level < 0 else self.bases[level].shape[1])

    def induced(self, i: int, j: int) -> FieldMorphism:
        """Inclusion-induced map from level i to level j (i <= j), computed directly."""
        src, tgt = self.obj(i), self.obj(j)
        if i < 0 or src.dim == 0 or tgt.dim == 0:
            return FieldMorphism(src, tgt)
        return FieldMorphism(src, tgt, self.coordinates(j, self.bases[i]))

    def module(self) -> ConstructibleModule:
        objs = [self.obj(i) for i in range(len(self.criticals))]
        maps = [self.induced(i, i + 1) for i in range(len(objs) - 1)]
        return ConstructibleModule(tuple(self.criticals), tuple(objs), tuple(maps))


def homology_module(K: FilteredComplex, degree: int, p: int = 2) -> ConstructibleModule:
    """Degree-k sublevel-set homology of K over GF(p) as a constructible module."""
    return SublevelHomology(K, degree, p).module()


def classical_diagram(K: FilteredComplex, degree: int, p: int = 2) -> PersistenceDiagram:
    """Diagram by the standard reduction of the filtered boundary matrix over GF(p)."""
    order = sorted(K.simplices, key=lambda s: (s.value, s.dim, s.id))
    n = len(order)
    red = boundary_matrix(order, order, p)
    pivot_of: dict[int, int] = {}
    low = [-1] * n
    for j in range(n):
        col = red[:, j]
        while True:
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                break
            lo = int(nz[-1])
            other = pivot_of.get(lo)
            if other is None:
                pivot_of[lo] = j
                low[j] = lo
                break
            factor = col[lo] * pow(int(red[lo, other]), -1, p) % p
            col = (col - factor * red[:, other]) % p
        red[:, j] = col
    counts: dict[Interval, int] = {}
    for j in range(n):
        i = low[j]
        if i >= 0 and order[i].dim == degree:
            b, d = order[i].value, order[j].value
            if b < d:
                counts[Interval(b, d)] = counts.get(Interval(b, d), 0) + 1
    for i in range(n):
        if order[i].dim == degree and low[i] < 0 and i not in pivot_of:
            key = Interval(order[i].value)
            counts[key] = counts.get(key, 0) + 1
    return PersistenceDiagram(VECT, {iv: dim(m) for iv, m in counts.items()})
