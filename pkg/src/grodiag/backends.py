"""Concrete abelian categories: vector spaces over GF(p) and finite abelian groups.

Objects are small immutable descriptions (a dimension, or a sorted list of
prime-power cyclic factors); morphisms carry an explicit matrix with respect
to the standard generators.  Besides composition the module provides what
the rest of the library needs from a backend: the Grothendieck class of an
image, the classification of an object, and (vector spaces only) the limit
of a two-by-two diagram used for interpolating interleaved modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Union

import numpy as np

from . import gf
from .errors import BackendMismatchError, CompositionError, UnsupportedBackendError, ValidationError
from .grocat import FINAB, VECT, GroupElement, dim, factorize, is_prime, primes


# ---------------------------------------------------------------------------
# objects


@dataclass(frozen=True)
class FieldObject:
    """The vector space GF(p)^dim."""

    p: int
    dim: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValidationError(f"field characteristic {self.p} is not prime")
        if self.dim < 0:
            raise ValidationError(f"negative dimension {self.dim}")

    backend = VECT

    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def size(self) -> int:
        return self.dim


@dataclass(frozen=True)
class FinAbObject:
    """Finite abelian group in primary decomposition, ``(p, k)`` meaning Z/p^k."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        fs = tuple(sorted((int(p), int(k)) for p, k in self.factors))
        for p, k in fs:
            if not is_prime(p) or k < 1:
                raise ValidationError(f"factor ({p}, {k}) is not a prime power p^k with k >= 1")
        object.__setattr__(self, "factors", fs)

    backend = FINAB

    @classmethod
    def cyclic(cls, n: int) -> "FinAbObject":
        """Z/n split into its primary parts."""
        return cls(tuple(factorize(n).items()) if n > 1 else ())

    def orders(self) -> list[int]:
        return [p**k for p, k in self.factors]

    def order(self) -> int:
        return prod(self.orders())

    def is_zero(self) -> bool:
        return not self.factors

    @property
    def size(self) -> int:
        return len(self.factors)


Object = Union[FieldObject, FinAbObject]


# ---------------------------------------------------------------------------
# morphisms


class FieldMorphism:
    """Linear map between GF(p)-spaces; ``matrix`` has shape (target.dim, source.dim)."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FieldObject, target: FieldObject, matrix=None):
        if source.p != target.p:
            raise BackendMismatchError(f"GF({source.p}) and GF({target.p}) do not mix")
        shape = (target.dim, source.dim)
        if matrix is None:
            m = np.zeros(shape, dtype=np.int64)
        else:
            m = np.array(matrix, dtype=np.int64)
            if m.size == 0:
                m = m.reshape(shape)
            if m.shape != shape:
                raise ValidationError(f"matrix shape {m.shape} does not match {shape}")
            m = np.mod(m, source.p)
        m.setflags(write=False)
        self.source, self.target, self.matrix = source, target, m

    @property
    def p(self) -> int:
        return self.source.p

    def __eq__(self, other):
        if not isinstance(other, FieldMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and np.array_equal(self.matrix, other.matrix))

    def __repr__(self):
        return f"FieldMorphism({self.source.dim}->{self.target.dim} over GF({self.p}), {self.matrix.tolist()})"

    def is_zero(self) -> bool:
        return not self.matrix.any()


class FinAbMorphism:
    """Homomorphism of finite abelian groups.

    Entry (i, j) is the coefficient of target generator i in the image of
    source generator j, reduced modulo the order of target generator i.
    Well-definedness (each source generator's order kills its column) is
    checked on construction.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FinAbObject, target: FinAbObject, matrix=None):
        shape = (target.size, source.size)
        tord = target.orders()
        if matrix is None:
            m = np.zeros(shape, dtype=object)
        else:
            m = np.array(matrix, dtype=object)
            if m.size == 0:
                m = np.zeros(shape, dtype=object)
            if m.shape != shape:
                raise ValidationError(f"matrix shape {m.shape} does not match {shape}")
            m = np.array([[int(m[i, j]) % tord[i] for j in range(shape[1])]
                          for i in range(shape[0])], dtype=object).reshape(shape)
        problems = []
        for j, mj in enumerate(source.orders()):
            for i, ni in enumerate(tord):
                if (mj * m[i, j]) % ni:
                    problems.append(
                        f"column {j}: generator of order {mj} sent to {m[i, j]} in Z/{ni} (row {i})"
                    )
        if problems:
            raise ValidationError(problems)
        m.setflags(write=False)
        self.source, self.target, self.matrix = source, target, m

    def __eq__(self, other):
        if not isinstance(other, FinAbMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and np.array_equal(self.matrix, other.matrix))

    def __repr__(self):
        return f"FinAbMorphism({self.source.factors}->{self.target.factors}, {self.matrix.tolist()})"

    def is_zero(self) -> bool:
        return not any(x for x in self.matrix.flat)


Morphism = Union[FieldMorphism, FinAbMorphism]


def zero_object_like(obj: Object) -> Object:
    if isinstance(obj, FieldObject):
        return FieldObject(obj.p, 0)
    return FinAbObject(())


def identity(obj: Object) -> Morphism:
    if isinstance(obj, FieldObject):
        return FieldMorphism(obj, obj, np.eye(obj.dim, dtype=np.int64))
    return FinAbMorphism(obj, obj, np.eye(obj.size, dtype=object))


def zero_morphism(source: Object, target: Object) -> Morphism:
    if isinstance(source, FieldObject) and isinstance(target, FieldObject):
        return FieldMorphism(source, target)
    if isinstance(source, FinAbObject) and isinstance(target, FinAbObject):
        return FinAbMorphism(source, target)
    raise BackendMismatchError("source and target live in different backends")


def make_morphism(source: Object, target: Object, matrix) -> Morphism:
    if isinstance(source, FieldObject) and isinstance(target, FieldObject):
        return FieldMorphism(source, target, matrix)
    if isinstance(source, FinAbObject) and isinstance(target, FinAbObject):
        return FinAbMorphism(source, target, matrix)
    raise BackendMismatchError("source and target live in different backends")


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g`` after ``f``."""
    if type(g) is not type(f):
        raise BackendMismatchError("cannot compose morphisms from different backends")
    if f.target != g.source:
        raise CompositionError(f"target of f ({f.target}) differs from source of g ({g.source})")
    if isinstance(f, FieldMorphism):
        return FieldMorphism(f.source, g.target, gf.matmul(g.matrix, f.matrix, f.p))
    if f.source.size == 0 or g.target.size == 0:
        return FinAbMorphism(f.source, g.target)
    return FinAbMorphism(f.source, g.target, g.matrix.dot(f.matrix))


# ---------------------------------------------------------------------------
# Grothendieck classes


def classify(obj: Object) -> GroupElement:
    """Class of an object: ``dim`` for spaces, sum of k*e_p over factors Z/p^k for groups."""
    if isinstance(obj, FieldObject):
        return dim(obj.dim)
    acc: dict[int, int] = {}
    for p, k in obj.factors:
        acc[p] = acc.get(p, 0) + k
    return primes(acc)


def image_class(f: Morphism) -> GroupElement:
    """Grothendieck class of the image of ``f``.

    For groups the image subgroup H of the target T = sum Z/n_i is read off
    the Smith form of the lattice spanned by the image columns together with
    the relations n_i e_i: its invariant factors give |T/H|, and the class of
    any finite group is the factorisation of its order.
    """
    if isinstance(f, FieldMorphism):
        return dim(gf.rank(f.matrix, f.p))
    orders = f.target.orders()
    if not orders or f.source.size == 0:
        return primes({})
    rel = np.diag(np.array(orders, dtype=object))
    lattice = np.concatenate([np.asarray(f.matrix, dtype=object), rel], axis=1)
    _, d, _ = smith_normal_form(lattice.tolist())
    quotient = prod(d[i][i] for i in range(len(orders)))
    return primes(factorize(prod(orders) // quotient))


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(m) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D`` over the integers.

    U and V are unimodular, D is diagonal with nonnegative entries and each
    diagonal entry divides the next.  Exact Python integers throughout.
    """
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row dst += c * row src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):  # col dst += c * col src
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return u, a, v
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = a[t][t]
            done = True
            for i in range(t + 1, rows):
                q = a[i][t] // piv
                if q:
                    add_row(i, t, -q)
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // piv
                if q:
                    add_col(j, t, -q)
                if a[t][j]:
                    done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


# ---------------------------------------------------------------------------
# limits (vector spaces only)


def limit_pair(f0: Morphism, g0: Morphism, f1: Morphism, g1: Morphism):
    """Limit of the diagram A -> C0 <- B, A -> C1 <- B.

    ``f0: A -> C0``, ``g0: B -> C0``, ``f1: A -> C1``, ``g1: B -> C1``.  Returns
    ``(L, proj_a, proj_b)`` where L is the subspace of A + B on which
    f0 x = g0 y and f1 x = g1 y, with the basis given by the nullspace of the
    stacked block matrix.
    """
    maps = (f0, g0, f1, g1)
    if not all(isinstance(m, FieldMorphism) for m in maps):
        raise UnsupportedBackendError("limits are only implemented for vector spaces")
    a, b = f0.source, g0.source
    if f1.source != a or g1.source != b or g0.target != f0.target or g1.target != f1.target:
        raise CompositionError("limit_pair: inconsistent sources/targets")
    p = a.p
    top = np.concatenate([f0.matrix, (-g0.matrix) % p], axis=1)
    bottom = np.concatenate([f1.matrix, (-g1.matrix) % p], axis=1)
    stacked = np.concatenate([top, bottom], axis=0).reshape(
        f0.target.dim + f1.target.dim, a.dim + b.dim)
    basis = gf.nullspace(stacked, p)
    lim = FieldObject(p, basis.shape[1])
    return lim, FieldMorphism(lim, a, basis[: a.dim]), FieldMorphism(lim, b, basis[a.dim:])
