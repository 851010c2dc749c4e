"""Intervals, persistence diagrams and Möbius inversion of rank functions.

A diagram is a finitely supported map from half-open intervals [p, q) to a
Grothendieck group.  The diagram of a module is recovered from its rank
function by inclusion-exclusion over the grid of critical values::

    F~[s_i, s_j) = dF[s_i, s_j) - dF[s_i, s_j+1) + dF[s_i-1, s_j+1) - dF[s_i-1, s_j)
    F~[s_i, inf) = dF[s_i, inf) - dF[s_i-1, inf)

with s_j+1 = inf past the last critical value and every term involving
s_i-1 equal to zero when i = 1.  Conversely, the rank of any interval I is
the sum of the diagram over all intervals containing I.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Callable, Iterable, Iterator, Mapping

from .errors import BackendMismatchError, DomainError
from .grocat import GroupElement, partial_leq, total
from .pmodule import ConstructibleModule, grid_rank, rank_function

INF = math.inf


@total_ordering
@dataclass(frozen=True)
class Interval:
    """Half-open interval [birth, death); death may be ``math.inf``."""

    birth: float
    death: float = INF

    def __post_init__(self):
        if not math.isfinite(self.birth):
            raise DomainError(f"birth must be finite, got {self.birth}")
        if math.isnan(self.death) or self.death < self.birth:
            raise DomainError(f"death {self.death} is below birth {self.birth}")

    @property
    def is_diagonal(self) -> bool:
        return self.birth == self.death

    @property
    def is_essential(self) -> bool:
        return self.death == INF

    def contains(self, other: "Interval") -> bool:
        return self.birth <= other.birth and other.death <= self.death

    def __lt__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return (self.birth, self.death) < (other.birth, other.death)

    def __repr__(self):
        d = "inf" if self.death == INF else f"{self.death:g}"
        return f"[{self.birth:g}, {d})"


class PersistenceDiagram(Mapping):
    """Immutable finitely supported map Interval -> GroupElement.

    Diagonal intervals and zero values are dropped on construction; missing
    intervals read as zero.  Iteration is in (birth, death) order.
    """

    __slots__ = ("backend", "_points")

    def __init__(self, backend: str, points: Mapping | Iterable = ()):
        items = points.items() if isinstance(points, Mapping) else points
        acc: dict[Interval, list[GroupElement]] = {}
        for interval, value in items:
            if value.backend != backend:
                raise BackendMismatchError(f"{value.backend} value in a {backend} diagram")
            if interval.is_diagonal:
                continue
            acc.setdefault(interval, []).append(value)
        pts = {}
        for interval in sorted(acc):
            v = total(acc[interval], backend)
            if v:
                pts[interval] = v
        self.backend = backend
        self._points = pts

    def __getitem__(self, interval: Interval) -> GroupElement:
        return self._points.get(interval, GroupElement.zero(self.backend))

    def __contains__(self, interval):
        return interval in self._points

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._points)

    def __len__(self):
        return len(self._points)

    def __eq__(self, other):
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        return self.backend == other.backend and self._points == other._points

    def __hash__(self):
        return hash((self.backend, tuple(self._points.items())))

    def __repr__(self):
        body = ", ".join(f"{i!r}: {v!r}" for i, v in self._points.items())
        return f"PersistenceDiagram({self.backend}, {{{body}}})"

    def restrict(self, key) -> "PersistenceDiagram":
        """Single-generator component as a diagram with only that coefficient."""
        return PersistenceDiagram(
            self.backend,
            ((i, GroupElement.make(self.backend, {key: v[key]})) for i, v in self._points.items()),
        )

    def generator_keys(self) -> list:
        return sorted({k for v in self._points.values() for k in v.keys()})


def mobius_inversion(F: ConstructibleModule) -> PersistenceDiagram:
    """Persistence diagram of a constructible module."""
    k, s = F.k, F.criticals
    zero = GroupElement.zero(F.backend)

    def d(i, j):  # dF on [s_i, s_j); j == k is infinity, i == -1 is below s_1
        return grid_rank(F, i, j) if i >= 0 else zero

    points = {}
    for i in range(k):
        for j in range(i + 1, k):
            v = d(i, j) - d(i, j + 1) + d(i - 1, j + 1) - d(i - 1, j)
            if v:
                points[Interval(s[i], s[j])] = v
        v = d(i, k) - d(i - 1, k)
        if v:
            points[Interval(s[i], INF)] = v
    return PersistenceDiagram(F.backend, points)


def rank_from_diagram(Y: PersistenceDiagram, interval: Interval) -> GroupElement:
    """Sum of Y over all intervals containing ``interval``."""
    if interval.is_diagonal:
        raise DomainError("rank is not evaluated on the diagonal")
    return total((v for j, v in Y.items() if j.contains(interval)), Y.backend)


def _box_bounds(interval: Interval, eps: float):
    """(left, right, bottom, top) of the eps-box, or None when it is empty."""
    if eps < 0:
        raise DomainError(f"negative radius {eps}")
    p, q = interval.birth, interval.death
    if q != INF and q - eps <= p + eps:
        return None
    if q == INF:
        return p - eps, p + eps, INF, INF
    return p - eps, p + eps, q - eps, q + eps


def box_members(interval: Interval, eps: float) -> Callable[[Interval], bool]:
    """Membership predicate of the eps-box around ``interval``.

    The box is open on the left and top, closed on the right and bottom:
    p - eps < r <= p + eps and q - eps <= s < q + eps.  For an essential
    interval it is the set of [r, inf) with p - eps < r <= p + eps.
    """
    bounds = _box_bounds(interval, eps)
    if bounds is None:
        return lambda J: False
    left, right, bottom, top = bounds
    if interval.death == INF:
        return lambda J: J.death == INF and left < J.birth <= right
    return lambda J: left < J.birth <= right and bottom <= J.death < top


def box_sum(Y: PersistenceDiagram, interval: Interval, eps: float) -> GroupElement:
    inside = box_members(interval, eps)
    return total((v for j, v in Y.items() if inside(j)), Y.backend)


def corner_sum(F: ConstructibleModule, interval: Interval, eps: float) -> GroupElement:
    """The box sum of F's diagram computed from four (or two) rank values only."""
    bounds = _box_bounds(interval, eps)
    if bounds is None:
        raise DomainError(f"the {eps}-box around {interval!r} is empty")
    left, right, bottom, top = bounds

    def d(a, b):
        return rank_function(F, Interval(a, b))

    if interval.death == INF:
        return d(right, INF) - d(left, INF)
    return d(right, bottom) - d(right, top) + d(left, top) - d(left, bottom)


def injectivity_radius(criticals) -> float:
    """Half the smallest gap between consecutive critical values; inf for a single value."""
    s = list(criticals)
    if len(s) < 2:
        return INF
    return min((b - a) / 2 for a, b in zip(s, s[1:]))


def is_positive(Y: PersistenceDiagram) -> bool:
    zero = GroupElement.zero(Y.backend)
    return all(partial_leq(zero, v) for v in Y.values())
