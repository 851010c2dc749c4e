"""Constructible persistence modules.

A module is stored as its critical values s_1 < ... < s_k, one object per
critical value and the structure maps between consecutive levels.  It is
zero below s_1 and constant from s_k on, including at infinity, so that
``F(p)`` for any extended real p is one of the stored objects (or zero).

Parameters may be floats or :class:`fractions.Fraction`; all comparisons
against the critical values are exact.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Sequence

from . import backends as bk
from .errors import BackendMismatchError, DomainError, OrderError, ValidationError
from .grocat import FINAB, VECT, GroupElement


@dataclass(frozen=True, eq=False)
class ConstructibleModule:
    criticals: tuple[float, ...]
    objects: tuple
    maps: tuple
    _ranks: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "criticals", tuple(float(s) for s in self.criticals))
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "maps", tuple(self.maps))
        problems = check_constructible(self)
        if problems:
            raise ValidationError(problems)

    @property
    def backend(self) -> str:
        return self.objects[0].backend

    @property
    def k(self) -> int:
        return len(self.criticals)

    def zero_object(self):
        return bk.zero_object_like(self.objects[0])

    def level(self, p) -> int:
        """Index i with s_i <= p < s_{i+1} (0-based), -1 below s_1, k-1 at infinity."""
        if p == math.inf:
            return self.k - 1
        return bisect.bisect_right(self.criticals, p) - 1

    def object_at_level(self, i: int):
        return self.zero_object() if i < 0 else self.objects[i]

    def map_between_levels(self, i: int, j: int):
        if i > j:
            raise OrderError(f"level {i} is above level {j}")
        if i < 0:
            return bk.zero_morphism(self.zero_object(), self.object_at_level(j))
        out = bk.identity(self.objects[i])
        for m in self.maps[i:j]:
            out = bk.compose(m, out)
        return out

    def __eq__(self, other):
        if not isinstance(other, ConstructibleModule):
            return NotImplemented
        return (self.criticals == other.criticals and self.objects == other.objects
                and all(a == b for a, b in zip(self.maps, other.maps)))

    __hash__ = None


def check_constructible(F: ConstructibleModule) -> list[str]:
    """Positional validation messages; empty when F is a well-formed module."""
    problems = []
    s = F.criticals
    if not s:
        return ["criticals: must be nonempty"]
    for i, v in enumerate(s):
        if not math.isfinite(v):
            problems.append(f"criticals[{i}]: {v} is not finite")
    for i in range(len(s) - 1):
        if not s[i] < s[i + 1]:
            problems.append(f"criticals[{i + 1}]: {s[i + 1]} does not exceed {s[i]}")
    if len(F.objects) != len(s):
        problems.append(f"objects: expected {len(s)} objects, got {len(F.objects)}")
        return problems
    if len(F.maps) != len(s) - 1:
        problems.append(f"maps: expected {len(s) - 1} maps, got {len(F.maps)}")
        return problems
    kinds = {type(o) for o in F.objects}
    if len(kinds) != 1 or not kinds <= {bk.FieldObject, bk.FinAbObject}:
        problems.append("objects: all objects must come from one backend")
        return problems
    if kinds == {bk.FieldObject} and len({o.p for o in F.objects}) != 1:
        problems.append("objects: mixed field characteristics")
    for i, m in enumerate(F.maps):
        if m.source != F.objects[i]:
            problems.append(f"maps[{i}]: source {m.source} does not match objects[{i}] {F.objects[i]}")
        if m.target != F.objects[i + 1]:
            problems.append(f"maps[{i}]: target {m.target} does not match objects[{i + 1}] {F.objects[i + 1]}")
    return problems


def module(criticals: Sequence[float], objects: Sequence, matrices: Sequence) -> ConstructibleModule:
    """Build a module from objects and raw matrices for the structure maps."""
    objects = list(objects)
    if len(matrices) != len(objects) - 1:
        raise ValidationError(f"maps: expected {len(objects) - 1} maps, got {len(matrices)}")
    maps = []
    for i, mat in enumerate(matrices):
        try:
            maps.append(bk.make_morphism(objects[i], objects[i + 1], mat))
        except ValidationError as exc:
            raise ValidationError([f"maps[{i}]: {msg}" for msg in exc.problems]) from None
    return ConstructibleModule(tuple(criticals), tuple(objects), tuple(maps))


def evaluate(F: ConstructibleModule, p):
    return F.object_at_level(F.level(p))


def evaluate_map(F: ConstructibleModule, p, q):
    """``F(p <= q)`` as a composite of structure maps."""
    if p > q:
        raise OrderError(f"{p} > {q}")
    return F.map_between_levels(F.level(p), F.level(q))


def _death_level(F: ConstructibleModule, q) -> int:
    # level of q minus an infinitesimal: F(s_j - delta) = F(s_{j-1})
    if q == math.inf:
        return F.k - 1
    j = bisect.bisect_left(F.criticals, q)
    return F.k - 1 if j == F.k else j - 1


def grid_rank(F: ConstructibleModule, i: int, j: int) -> GroupElement:
    """Rank value on the grid interval [s_i, s_j), 0-based, with j == k meaning infinity.

    i == -1 stands for any value below s_1 and gives zero.
    """
    if i < 0:
        return GroupElement.zero(F.backend)
    key = (i, j)
    hit = F._ranks.get(key)
    if hit is None:
        hit = bk.image_class(F.map_between_levels(i, j - 1 if j < F.k else F.k - 1))
        F._ranks[key] = hit
    return hit


def rank_function(F: ConstructibleModule, interval) -> GroupElement:
    """Grothendieck class of the image of F(p <= q-) for the interval [p, q)."""
    p, q = interval.birth, interval.death
    if not p < q:
        raise DomainError(f"rank function is not evaluated on the diagonal [{p}, {q})")
    i = F.level(p)
    if i < 0:
        return GroupElement.zero(F.backend)
    return grid_rank(F, i, _death_level(F, q) + 1)


def zero_module(backend: str = VECT, p: int = 2, criticals=(0.0,)) -> ConstructibleModule:
    if backend not in (VECT, FINAB):
        raise BackendMismatchError(f"unknown backend {backend}")
    obj = bk.FieldObject(p, 0) if backend == VECT else bk.FinAbObject(())
    objs = [obj] * len(criticals)
    return ConstructibleModule(tuple(criticals), tuple(objs),
                               tuple(bk.identity(obj) for _ in objs[1:]))


def interval_module(birth: float, death: float = math.inf, p: int = 2) -> ConstructibleModule:
    """GF(p) on [birth, death), zero elsewhere."""
    one, nil = bk.FieldObject(p, 1), bk.FieldObject(p, 0)
    if death == math.inf:
        return ConstructibleModule((birth,), (one,), ())
    return ConstructibleModule((birth, death), (one, nil), (bk.zero_morphism(one, nil),))
