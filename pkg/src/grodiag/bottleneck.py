"""Matchings between group-valued diagrams and the bottleneck distance.

Since G(Vect) = Z and G(FinAb) = sum_p Z are free on their generators, the
marginal constraints of a matching split into one independent transport
problem per generator.  Each is solved as a threshold search: the optimum
is one of finitely many candidate costs, and feasibility at a threshold is a
capacitated bipartite flow problem where either diagonal may absorb or
supply any amount.

Conventions: the distance between two infinite deaths is 0 (only a finite
death against an infinite one costs infinity); a finite point [p, q) is
matched to the diagonal point at its midpoint, at cost (q - p) / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .diagram import Interval, PersistenceDiagram, is_positive
from .errors import BackendMismatchError, PreconditionError
from .grocat import GroupElement, total

INF = math.inf


def _gap(a: float, b: float) -> float:
    if a == INF and b == INF:
        return 0.0
    if a == INF or b == INF:
        return INF
    return abs(a - b)


def pair_cost(i: Interval, j: Interval) -> float:
    """max(|p1 - p2|, |q1 - q2|) with |inf - inf| = 0."""
    return max(abs(i.birth - j.birth), _gap(i.death, j.death))


def diagonal_partner(i: Interval) -> Interval:
    m = (i.birth + i.death) / 2
    return Interval(m, m)


def diagonal_cost(i: Interval) -> float:
    if i.is_essential:
        return INF
    return pair_cost(i, diagonal_partner(i))


@dataclass(frozen=True)
class Matching:
    """Finitely supported map (Interval, Interval) -> GroupElement."""

    backend: str
    entries: Mapping[tuple[Interval, Interval], GroupElement] = field(default_factory=dict)

    def __post_init__(self):
        acc: dict = {}
        for pair, v in dict(self.entries).items():
            if v.backend != self.backend:
                raise BackendMismatchError(f"{v.backend} value in a {self.backend} matching")
            acc.setdefault(pair, []).append(v)
        clean = {}
        for pair in sorted(acc):
            v = total(acc[pair], self.backend)
            if v:
                clean[pair] = v
        object.__setattr__(self, "entries", clean)

    def __len__(self):
        return len(self.entries)

    def items(self):
        return self.entries.items()


def matching_norm(gamma: Matching) -> float:
    return max((pair_cost(i, j) for i, j in gamma.entries), default=0.0)


def validate_matching(Y1: PersistenceDiagram, Y2: PersistenceDiagram, gamma: Matching) -> list[str]:
    """Marginal violations; diagonal rows and columns are unconstrained."""
    if not (Y1.backend == Y2.backend == gamma.backend):
        raise BackendMismatchError("diagrams and matching must share a backend")
    rows: dict[Interval, list] = {}
    cols: dict[Interval, list] = {}
    for (i, j), v in gamma.items():
        rows.setdefault(i, []).append(v)
        cols.setdefault(j, []).append(v)
    out = []
    for side, Y, sums in (("row", Y1, rows), ("column", Y2, cols)):
        for interval in sorted(set(Y) | set(sums)):
            if interval.is_diagonal:
                continue
            got = total(sums.get(interval, ()), Y.backend)
            if got != Y[interval]:
                out.append(f"{side} {interval!r}: matching sums to {got!r}, diagram has {Y[interval]!r}")
    return out


# ---------------------------------------------------------------------------
# per-generator transport problem


def _component(Y: PersistenceDiagram, key) -> list[tuple[Interval, int]]:
    return [(i, v[key]) for i, v in Y.items() if v[key] > 0]


def candidate_thresholds(left, right) -> list[float]:
    cands = {0.0}
    for i, _ in left:
        for j, _ in right:
            for c in (abs(i.birth - j.birth), _gap(i.death, j.death)):
                if c != INF:
                    cands.add(c)
    for i, _ in list(left) + list(right):
        c = diagonal_cost(i)
        if c != INF:
            cands.add(c)
    return sorted(cands)


def _flow(left, right, eps: float):
    """Max flow of the transport network at threshold eps.

    Returns (feasible, flow matrix, node layout).  Nodes: source, left
    points, right points, left-side diagonal (feeds right points), right-side
    diagonal (absorbs left points), sink.
    """
    nl, nr = len(left), len(right)
    a_tot = sum(m for _, m in left)
    b_tot = sum(m for _, m in right)
    src, d1, d2, snk = 0, nl + nr + 1, nl + nr + 2, nl + nr + 3
    big = a_tot + b_tot
    edges: dict[tuple[int, int], int] = {}
    for x, (i, m) in enumerate(left, start=1):
        edges[src, x] = m
        for y, (j, _) in enumerate(right, start=nl + 1):
            if pair_cost(i, j) <= eps:
                edges[x, y] = m
        if diagonal_cost(i) <= eps:
            edges[x, d2] = m
    for y, (j, m) in enumerate(right, start=nl + 1):
        edges[y, snk] = m
        if diagonal_cost(j) <= eps:
            edges[d1, y] = m
    if b_tot:
        edges[src, d1] = b_tot
    if a_tot:
        edges[d2, snk] = a_tot
    if big:
        edges[d1, d2] = big
    n = snk + 1
    rows, cols = zip(*edges) if edges else ((), ())
    graph = csr_matrix((np.fromiter(edges.values(), dtype=np.int32, count=len(edges)),
                        (np.array(rows, dtype=np.int32), np.array(cols, dtype=np.int32))),
                       shape=(n, n))
    res = maximum_flow(graph, src, snk)
    return res.flow_value == a_tot + b_tot, res.flow, (d1, d2)


def feasible(left, right, eps: float) -> bool:
    return _flow(left, right, eps)[0]


def _component_distance(left, right, key, backend):
    cands = candidate_thresholds(left, right)
    if not feasible(left, right, cands[-1]):
        return INF, {}
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(left, right, cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    eps = cands[lo]
    ok, flow, (d1, d2) = _flow(left, right, eps)
    assert ok
    flow = flow.tocoo()
    nl = len(left)
    unit = GroupElement.make(backend, {key: 1})
    entries = {}
    for u, v, f in zip(flow.row, flow.col, flow.data):
        if f <= 0:
            continue
        if 1 <= u <= nl and nl < v <= nl + len(right):
            pair = (left[u - 1][0], right[v - nl - 1][0])
        elif 1 <= u <= nl and v == d2:
            i = left[u - 1][0]
            pair = (i, diagonal_partner(i))
        elif u == d1 and nl < v <= nl + len(right):
            j = right[v - nl - 1][0]
            pair = (diagonal_partner(j), j)
        else:
            continue
        entries[pair] = unit * int(f)
    return eps, entries


def bottleneck_distance(Y1: PersistenceDiagram, Y2: PersistenceDiagram) -> tuple[float, Matching]:
    """Least norm of a nonnegative matching between two positive diagrams, plus a witness.

    The witness is only meaningful when the distance is finite; for an
    infinite distance an empty matching is returned.
    """
    if Y1.backend != Y2.backend:
        raise BackendMismatchError("diagrams come from different backends")
    if not (is_positive(Y1) and is_positive(Y2)):
        raise PreconditionError("bottleneck_distance needs positive diagrams")
    dist = 0.0
    entries: list = []
    for key in sorted(set(Y1.generator_keys()) | set(Y2.generator_keys())):
        d, e = _component_distance(_component(Y1, key), _component(Y2, key), key, Y1.backend)
        if d == INF:
            return INF, Matching(Y1.backend)
        dist = max(dist, d)
        entries.extend(e.items())
    merged: dict = {}
    for pair, v in entries:
        merged[pair] = merged[pair] + v if pair in merged else v
    return dist, Matching(Y1.backend, merged)


def component_distances(Y1: PersistenceDiagram, Y2: PersistenceDiagram) -> dict:
    """Distance of each single-generator component, keyed by generator."""
    out = {}
    for key in sorted(set(Y1.generator_keys()) | set(Y2.generator_keys())):
        out[key] = _component_distance(_component(Y1, key), _component(Y2, key), key, Y1.backend)[0]
    return out


# ---------------------------------------------------------------------------
# exhaustive oracle


def _oracle_component(left, right) -> float:
    best = INF
    rem = [m for _, m in right]

    def finish(cur):
        nonlocal best
        for j, (iv, _) in enumerate(right):
            if rem[j]:
                cur = max(cur, diagonal_cost(iv))
        if cur < best:
            best = cur

    def place(i, units, j, cur):
        # distribute the remaining units of left point i over right points j, j+1, ...
        if cur >= best:
            return
        iv = left[i][0]
        if j == len(right):
            if units:
                cur = max(cur, diagonal_cost(iv))
            visit(i + 1, cur)
            return
        for x in range(min(units, rem[j]), -1, -1):
            c = cur if x == 0 else max(cur, pair_cost(iv, right[j][0]))
            rem[j] -= x
            place(i, units - x, j + 1, c)
            rem[j] += x

    def visit(i, cur):
        if i == len(left):
            finish(cur)
        else:
            place(i, left[i][1], 0, cur)

    visit(0, 0.0)
    return best


def bottleneck_oracle(Y1: PersistenceDiagram, Y2: PersistenceDiagram, max_mass: int = 6) -> float:
    """Bottleneck distance by enumerating every integer transport plan per generator.

    Independent of the flow solver; only for small inputs (each diagram's
    mass per generator at most ``max_mass``).
    """
    if Y1.backend != Y2.backend:
        raise BackendMismatchError("diagrams come from different backends")
    if not (is_positive(Y1) and is_positive(Y2)):
        raise PreconditionError("oracle needs positive diagrams")
    dist = 0.0
    for key in sorted(set(Y1.generator_keys()) | set(Y2.generator_keys())):
        left, right = _component(Y1, key), _component(Y2, key)
        for side in (left, right):
            if sum(m for _, m in side) > max_mass:
                raise PreconditionError(f"component {key!r} exceeds the oracle size bound {max_mass}")
        dist = max(dist, _oracle_component(left, right))
    return dist
