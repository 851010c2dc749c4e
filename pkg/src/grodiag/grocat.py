"""Grothendieck-group elements for the two implemented backends.

G(Vect) is identified with Z (one generator, the class of a one-dimensional
space) and G(FinAb) with the direct sum of Z over the primes (the generator
for p is the class of Z/p).  Elements are kept in a canonical sparse form so
that equality and hashing are structural.

The partial order is componentwise: ``a <= b`` iff every coefficient of ``a``
is at most the matching coefficient of ``b``.  For finitely generated abelian
groups the torsion would vanish entirely in the Grothendieck group, so that
category is not offered as a backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Mapping

from .errors import BackendMismatchError

VECT = "vect"
FINAB = "finab"
BACKENDS = (VECT, FINAB)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation of a positive integer by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@total_ordering
@dataclass(frozen=True)
class GeneratorKey:
    """A generator of G(C): ``dim`` for vector spaces, ``prime(p)`` for Z/p."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None:
            if isinstance(self.prime, bool) or not isinstance(self.prime, int):
                raise TypeError(f"prime must be an int, got {self.prime!r}")
            if not is_prime(self.prime):
                raise ValueError(f"{self.prime} is not prime")

    @classmethod
    def dim(cls) -> "GeneratorKey":
        return cls(None)

    @classmethod
    def of_prime(cls, p: int) -> "GeneratorKey":
        return cls(p)

    @property
    def backend(self) -> str:
        return VECT if self.prime is None else FINAB

    def _sort_key(self):
        return (0, 0) if self.prime is None else (1, self.prime)

    def __lt__(self, other):
        if not isinstance(other, GeneratorKey):
            return NotImplemented
        return self._sort_key() < other._sort_key()

    def __repr__(self):
        return "dim" if self.prime is None else f"prime {self.prime}"


DIM = GeneratorKey.dim()


def _as_key(k) -> GeneratorKey:
    if isinstance(k, GeneratorKey):
        return k
    if k == "dim":
        return DIM
    return GeneratorKey(int(k))


@dataclass(frozen=True)
class GroupElement:
    """Finitely supported integer combination of generators.

    ``coeffs`` is a sorted tuple of ``(GeneratorKey, int)`` with no zero
    coefficients; build elements through :meth:`make`, :func:`dim` or
    :func:`primes` rather than by hand.
    """

    backend: str
    coeffs: tuple[tuple[GeneratorKey, int], ...] = ()

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")
        prev = None
        for key, c in self.coeffs:
            if key.backend != self.backend:
                raise BackendMismatchError(
                    f"generator {key!r} does not belong to backend {self.backend}"
                )
            if c == 0:
                raise ValueError("zero coefficients are not stored")
            if prev is not None and not prev < key:
                raise ValueError("coefficients must be sorted by key without repeats")
            prev = key

    @classmethod
    def make(cls, backend: str, coeffs: Mapping | Iterable = ()) -> "GroupElement":
        """Canonicalise an arbitrary mapping or pair list (zeros dropped, repeats summed)."""
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[GeneratorKey, int] = {}
        for k, c in items:
            key = _as_key(k)
            acc[key] = acc.get(key, 0) + int(c)
        return cls(backend, tuple(sorted((k, c) for k, c in acc.items() if c != 0)))

    @classmethod
    def zero(cls, backend: str) -> "GroupElement":
        return cls(backend)

    def as_dict(self) -> dict[GeneratorKey, int]:
        return dict(self.coeffs)

    def __getitem__(self, key) -> int:
        key = _as_key(key)
        for k, c in self.coeffs:
            if k == key:
                return c
        return 0

    def keys(self):
        return [k for k, _ in self.coeffs]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return add(self, other)

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return add(self, negate(other))

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return GroupElement(self.backend)
        return GroupElement(self.backend, tuple((k, c * n) for k, c in self.coeffs))

    __rmul__ = __mul__

    def __repr__(self):
        body = ", ".join(f"{k!r}: {c}" for k, c in self.coeffs)
        return "{" + body + "}"


def dim(n: int) -> GroupElement:
    """Class of an n-dimensional vector space."""
    return GroupElement.make(VECT, {DIM: n})


def primes(coeffs: Mapping[int, int] | None = None) -> GroupElement:
    """Element of G(FinAb) from a ``{prime: coefficient}`` mapping."""
    return GroupElement.make(FINAB, {GeneratorKey(p): c for p, c in (coeffs or {}).items()})


def zero(backend: str) -> GroupElement:
    return GroupElement(backend)


def _check_same(a: GroupElement, b: GroupElement):
    if a.backend != b.backend:
        raise BackendMismatchError(f"cannot combine {a.backend} and {b.backend} elements")


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    _check_same(a, b)
    if not b.coeffs:
        return a
    if not a.coeffs:
        return b
    acc = dict(a.coeffs)
    for k, c in b.coeffs:
        acc[k] = acc.get(k, 0) + c
    return GroupElement(a.backend, tuple(sorted((k, c) for k, c in acc.items() if c != 0)))


def negate(a: GroupElement) -> GroupElement:
    return GroupElement(a.backend, tuple((k, -c) for k, c in a.coeffs))


def partial_leq(a: GroupElement, b: GroupElement) -> bool:
    """Componentwise order; missing coefficients count as zero."""
    _check_same(a, b)
    da, db = dict(a.coeffs), dict(b.coeffs)
    return all(da.get(k, 0) <= db.get(k, 0) for k in set(da) | set(db))


def is_nonnegative(a: GroupElement) -> bool:
    return all(c > 0 for _, c in a.coeffs)


def total(elements: Iterable[GroupElement], backend: str) -> GroupElement:
    acc: dict[GeneratorKey, int] = {}
    for e in elements:
        if e.backend != backend:
            raise BackendMismatchError(f"cannot combine {backend} and {e.backend} elements")
        for k, c in e.coeffs:
            acc[k] = acc.get(k, 0) + c
    return GroupElement(backend, tuple(sorted((k, c) for k, c in acc.items() if c != 0)))
