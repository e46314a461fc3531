"""Hybrid sets: multisets whose multiplicities range over all of Z.

A :class:`HybridSet` is stored as a finite integer combination of *atoms*.
An atom is any hashable region that can report a (possibly signed)
multiplicity at a point through ``atom.indicator(x, env)``.  The hybrid set
itself never enumerates its points; multiplicities are only observable after
symbolic endpoints are bound, so representations with unknown extent can be
built and combined freely.

Equality between hybrid sets is semantic and always relative to a finite
enumeration domain (see :func:`equal_on`).
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np

__all__ = [
    "Region",
    "Point",
    "Meet",
    "HybridSet",
    "EMPTY",
    "hset",
    "as_hybrid",
    "mult_at",
    "oplus",
    "ominus",
    "otimes",
    "scale",
    "equal_on",
    "support",
    "is_disjoint",
    "is_reducible",
    "generalized_partition_check",
    "strict_partition_check",
    "index_domain",
]


class Region:
    """Mixin giving atoms the hybrid-set operators.

    ``a + b`` is the pointwise sum, ``a - b`` the pointwise difference and
    ``a * b`` the pointwise product; ``c * a`` with an int scales.
    """

    def __add__(self, other):
        return as_hybrid(self) + other

    def __radd__(self, other):
        return as_hybrid(other) + self

    def __sub__(self, other):
        return as_hybrid(self) - other

    def __rsub__(self, other):
        return as_hybrid(other) - self

    def __neg__(self):
        return -as_hybrid(self)

    def __mul__(self, other):
        return as_hybrid(self) * other

    def __rmul__(self, other):
        return other * as_hybrid(self)

    def grid(self, axes, env=None) -> np.ndarray:
        """Multiplicities over the Cartesian grid spanned by ``axes``.

        Generic fallback that probes every point; interval types override it
        with vectorised versions.
        """
        axes = [np.asarray(a) for a in axes]
        shape = tuple(len(a) for a in axes)
        out = np.zeros(shape, dtype=np.int64)
        for idx in itertools.product(*(range(s) for s in shape)):
            pt = tuple(int(a[i]) for a, i in zip(axes, idx))
            out[idx] = self.indicator(pt[0] if len(pt) == 1 else pt, env)
        return out


@dataclass(frozen=True)
class Point(Region):
    """The single element ``value`` with multiplicity one."""

    value: Any

    def indicator(self, x, env=None) -> int:
        return 1 if x == self.value else 0

    def restrict(self, axis: int, value, env=None):
        pt = tuple(self.value)
        if pt[axis] != value:
            return 0, self
        rest = pt[:axis] + pt[axis + 1 :]
        return 1, Point(rest[0] if len(rest) == 1 else rest)

    def __repr__(self) -> str:
        return f"Point({self.value!r})"


@dataclass(frozen=True)
class Meet(Region):
    """Atom whose multiplicity is the product of two atoms' multiplicities."""

    left: Any
    right: Any

    def indicator(self, x, env=None) -> int:
        a = self.left.indicator(x, env)
        return a and a * self.right.indicator(x, env)

    def grid(self, axes, env=None) -> np.ndarray:
        return self.left.grid(axes, env) * self.right.grid(axes, env)

    def restrict(self, axis: int, value, env=None):
        fa, a = self.left.restrict(axis, value, env)
        fb, b = self.right.restrict(axis, value, env)
        return fa * fb, Meet(a, b)


def _meet(a, b):
    """Return ``(coefficient, atom)`` for the pointwise product of two atoms."""
    if isinstance(a, Point) and isinstance(b, Point):
        return (1, a) if a.value == b.value else (0, None)
    return 1, Meet(a, b)


class HybridSet:
    """Finite formal Z-linear combination of atoms.

    >>> H = hset({"a": 2, "b": -1})
    >>> H.mult_at("a"), H.mult_at("b"), H.mult_at("c")
    (2, -1, 0)
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[Any, int]] = ()):
        merged: dict[Any, int] = {}
        for atom, coeff in terms:
            if not isinstance(coeff, (int, np.integer)) or isinstance(coeff, bool):
                raise TypeError(f"multiplicities are integers, got {coeff!r}")
            merged[atom] = merged.get(atom, 0) + int(coeff)
        self._terms = tuple((a, c) for a, c in merged.items() if c != 0)

    @property
    def terms(self) -> tuple[tuple[Any, int], ...]:
        return self._terms

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_trivially_empty(self) -> bool:
        """True when no terms remain; semantic emptiness needs :func:`equal_on`."""
        return not self._terms

    def mult_at(self, x, env: Mapping[str, int] | None = None) -> int:
        return sum(c * atom.indicator(x, env) for atom, c in self._terms)

    __call__ = mult_at

    def grid(self, axes, env=None) -> np.ndarray:
        shape = tuple(len(a) for a in axes)
        out = np.zeros(shape, dtype=np.int64)
        for atom, c in self._terms:
            out += c * atom.grid(axes, env)
        return out

    def restrict(self, axis: int, value, env=None) -> HybridSet:
        """Slice every atom at ``axis == value``, dropping that axis."""
        out = []
        for atom, c in self._terms:
            factor, rest = atom.restrict(axis, value, env)
            if factor:
                out.append((rest, c * factor))
        return HybridSet(out)

    def __add__(self, other) -> HybridSet:
        other = as_hybrid(other)
        return HybridSet(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> HybridSet:
        return HybridSet((a, -c) for a, c in self._terms)

    def __sub__(self, other) -> HybridSet:
        return self + (-as_hybrid(other))

    def __rsub__(self, other) -> HybridSet:
        return as_hybrid(other) - self

    def __mul__(self, other) -> HybridSet:
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return HybridSet((a, int(other) * c) for a, c in self._terms)
        other = as_hybrid(other)
        out = []
        for (a, c), (b, d) in itertools.product(self._terms, other._terms):
            k, atom = _meet(a, b)
            if k:
                out.append((atom, k * c * d))
        return HybridSet(out)

    def __rmul__(self, other) -> HybridSet:
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return self * other
        return as_hybrid(other) * self

    def __repr__(self) -> str:
        if not self._terms:
            return "HybridSet()"
        body = ", ".join(f"{a!r}^{c}" for a, c in self._terms)
        return f"HybridSet({{{body}}})"


EMPTY = HybridSet()


def hset(elements: Mapping[Any, int] | Iterable[Any] = ()) -> HybridSet:
    """Build a hybrid set of points, e.g. ``hset({"a": 2, "b": -1})``.

    An iterable of elements gives each occurrence multiplicity one.
    """
    if isinstance(elements, Mapping):
        return HybridSet((Point(k), v) for k, v in elements.items())
    return HybridSet((Point(k), 1) for k in elements)


def as_hybrid(value) -> HybridSet:
    if isinstance(value, HybridSet):
        return value
    if hasattr(value, "indicator"):
        return HybridSet([(value, 1)])
    raise TypeError(f"{value!r} is not a hybrid set or region")


def mult_at(H, x, env=None) -> int:
    return as_hybrid(H).mult_at(x, env)


def oplus(A, B) -> HybridSet:
    return as_hybrid(A) + as_hybrid(B)


def ominus(A, B=None) -> HybridSet:
    """``ominus(A, B)`` is A minus B; ``ominus(A)`` is the negation of A."""
    if B is None:
        return -as_hybrid(A)
    return as_hybrid(A) - as_hybrid(B)


def otimes(A, B) -> HybridSet:
    return as_hybrid(A) * as_hybrid(B)


def scale(c: int, A) -> HybridSet:
    return as_hybrid(A) * c


def index_domain(*extents: int):
    """All integer points of ``range(e0) x range(e1) x ...``.

    One extent yields plain ints, several yield tuples.
    """
    if len(extents) == 1:
        return list(range(extents[0]))
    return list(itertools.product(*(range(e) for e in extents)))


def equal_on(A, B, domain, env=None) -> bool:
    A, B = as_hybrid(A), as_hybrid(B)
    return all(A.mult_at(x, env) == B.mult_at(x, env) for x in domain)


def support(H, domain, env=None) -> list:
    """Points of ``domain`` with nonzero multiplicity, in domain order."""
    H = as_hybrid(H)
    return [x for x in domain if H.mult_at(x, env) != 0]


def is_disjoint(A, B, domain, env=None) -> bool:
    A, B = as_hybrid(A), as_hybrid(B)
    return all(A.mult_at(x, env) * B.mult_at(x, env) == 0 for x in domain)


def is_reducible(H, domain, env=None) -> bool:
    H = as_hybrid(H)
    return all(H.mult_at(x, env) in (0, 1) for x in domain)


def generalized_partition_check(parts, H, domain, env=None, strict: bool = False) -> bool:
    """Whether ``parts`` sum to ``H`` at every point of ``domain``.

    With ``strict=True`` the parts must also be pairwise disjoint.
    """
    parts = [as_hybrid(p) for p in parts]
    domain = list(domain)
    if not equal_on(sum(parts, EMPTY), H, domain, env):
        return False
    if strict:
        return all(is_disjoint(p, q, domain, env) for p, q in itertools.combinations(parts, 2))
    return True


def strict_partition_check(parts, H, domain, env=None) -> bool:
    return generalized_partition_check(parts, H, domain, env, strict=True)
