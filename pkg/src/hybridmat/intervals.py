"""Hybrid intervals and their Cartesian products.

A hybrid interval with endpoints ``a`` and ``b`` is the forward traditional
interval minus the reversed one, so when ``b < a`` its points carry
multiplicity -1 instead of vanishing::

    [[a,b)) = [a,b) - [b,a)        ((a,b]] = (a,b] - (b,a]
    [[a,b]] = [a,b] - (b,a)        ((a,b)) = (a,b) - [b,a]

With this convention ``[[a,b)) + [[b,c)) == [[a,c))`` for every ordering of
``a``, ``b`` and ``c``, which is what lets block structures be combined
without case analysis.

Endpoints are :class:`~hybridmat.sizes.SizeExpr` values (ints and strings
are coerced) resolved against a parameter environment.  Any other totally
ordered endpoint type is used as-is.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .errors import ArityMismatch, EndpointMismatch, FlavorMismatch
from .hybridset import HybridSet, Region, as_hybrid
from .sizes import SizeExpr

__all__ = [
    "Flavor",
    "HybridInterval",
    "Box",
    "co",
    "oc",
    "cc",
    "oo",
    "interval_mult_at",
    "interval_negate",
    "interval_concat",
    "rect_product",
    "tuple_interval",
    "cartesian",
    "parse_interval",
    "parse_region",
]


class Flavor(enum.Enum):
    CLOSED_CLOSED = (True, True)
    CLOSED_OPEN = (True, False)
    OPEN_CLOSED = (False, True)
    OPEN_OPEN = (False, False)

    @property
    def left_closed(self) -> bool:
        return self.value[0]

    @property
    def right_closed(self) -> bool:
        return self.value[1]

    @classmethod
    def of(cls, left_closed: bool, right_closed: bool) -> Flavor:
        return cls((left_closed, right_closed))

    @property
    def brackets(self) -> tuple[str, str]:
        return ("[[" if self.left_closed else "((", "]]" if self.right_closed else "))")


def _endpoint(value):
    if isinstance(value, (SizeExpr, int, str)) and not isinstance(value, bool):
        return SizeExpr.coerce(value)
    return value


def _resolve(value, env):
    if isinstance(value, SizeExpr):
        return value.eval(env or {})
    return value


def _traditional(lo, hi, lc: bool, rc: bool, x) -> bool:
    above = lo <= x if lc else lo < x
    below = x <= hi if rc else x < hi
    return above and below


def _traditional_mask(lo, hi, lc: bool, rc: bool, xs: np.ndarray) -> np.ndarray:
    above = xs >= lo if lc else xs > lo
    below = xs <= hi if rc else xs < hi
    return above & below


@dataclass(frozen=True)
class HybridInterval(Region):
    """One of the four hybrid interval flavors between two endpoints."""

    lower: Any
    upper: Any
    flavor: Flavor = Flavor.CLOSED_OPEN

    def __post_init__(self):
        object.__setattr__(self, "lower", _endpoint(self.lower))
        object.__setattr__(self, "upper", _endpoint(self.upper))

    def bounds(self, env=None) -> tuple:
        return _resolve(self.lower, env), _resolve(self.upper, env)

    def indicator(self, x, env=None) -> int:
        a, b = self.bounds(env)
        lc, rc = self.flavor.value
        # the reversed part has the complementary closedness of the swapped ends
        fwd = _traditional(a, b, lc, rc, x)
        rev = _traditional(b, a, not rc, not lc, x)
        return int(fwd) - int(rev)

    def grid(self, axes, env=None) -> np.ndarray:
        (xs,) = axes
        xs = np.asarray(xs)
        a, b = self.bounds(env)
        lc, rc = self.flavor.value
        fwd = _traditional_mask(a, b, lc, rc, xs)
        rev = _traditional_mask(b, a, not rc, not lc, xs)
        return fwd.astype(np.int64) - rev.astype(np.int64)

    def sign(self, env=None) -> int:
        """+1 for forward, -1 for backwards, 0 when both ends coincide.

        Coinciding ends still give a point for the closed-closed and
        open-open flavors; use :meth:`indicator` for multiplicities.
        """
        a, b = self.bounds(env)
        return (a < b) - (b < a)

    def negate(self) -> HybridInterval:
        return interval_negate(self)

    def concat(self, other: HybridInterval) -> HybridInterval:
        return interval_concat(self, other)

    def restrict(self, axis: int, value, env=None):
        raise ValueError("cannot slice a one-dimensional interval")

    def __str__(self) -> str:
        lb, rb = self.flavor.brackets
        return f"{lb}{self.lower},{self.upper}{rb}"

    def __repr__(self) -> str:
        return f"HybridInterval({self})"


def co(a, b) -> HybridInterval:
    """``[[a,b))``"""
    return HybridInterval(a, b, Flavor.CLOSED_OPEN)


def oc(a, b) -> HybridInterval:
    """``((a,b]]``"""
    return HybridInterval(a, b, Flavor.OPEN_CLOSED)


def cc(a, b) -> HybridInterval:
    """``[[a,b]]``"""
    return HybridInterval(a, b, Flavor.CLOSED_CLOSED)


def oo(a, b) -> HybridInterval:
    """``((a,b))``"""
    return HybridInterval(a, b, Flavor.OPEN_OPEN)


def interval_mult_at(interval: HybridInterval, env, x) -> int:
    return interval.indicator(x, env)


def interval_negate(interval: HybridInterval) -> HybridInterval:
    """Swap the endpoints and flip each end's closedness across the swap.

    ``[[a,b))`` becomes ``[[b,a))`` and ``[[a,b]]`` becomes ``((b,a))``;
    the result has pointwise negated multiplicity.
    """
    f = interval.flavor
    return HybridInterval(interval.upper, interval.lower, Flavor.of(not f.right_closed, not f.left_closed))


def interval_concat(first: HybridInterval, second: HybridInterval) -> HybridInterval:
    """Join two intervals sharing an endpoint into one, for any endpoint order.

    The junction must be covered exactly once: one side closed and the other
    open there, as in ``[[a,b)) + [[b,c))`` or ``[[a,b]] + ((b,c))``.
    """
    if first.upper != second.lower:
        raise EndpointMismatch(f"{first} ends at {first.upper} but {second} starts at {second.lower}")
    if first.flavor.right_closed == second.flavor.left_closed:
        raise FlavorMismatch(f"{first} and {second} do not meet at {first.upper} exactly once")
    return HybridInterval(
        first.lower, second.upper, Flavor.of(first.flavor.left_closed, second.flavor.right_closed)
    )


@dataclass(frozen=True)
class Box(Region):
    """Cartesian product of one-dimensional regions (a hybrid k-rectangle).

    A point is a tuple with one coordinate per axis; its multiplicity is the
    product of the per-axis multiplicities, so two reversed axes give a
    positive point.
    """

    axes: tuple

    def __post_init__(self):
        flat = []
        for ax in self.axes:
            flat.extend(ax.axes if isinstance(ax, Box) else (ax,))
        object.__setattr__(self, "axes", tuple(flat))

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def rows(self):
        return self.axes[0]

    @property
    def cols(self):
        if self.dim != 2:
            raise AttributeError("cols is only defined for two-dimensional boxes")
        return self.axes[1]

    @property
    def lowers(self) -> tuple:
        return tuple(ax.lower for ax in self.axes)

    @property
    def uppers(self) -> tuple:
        return tuple(ax.upper for ax in self.axes)

    def indicator(self, x, env=None) -> int:
        if len(x) != self.dim:
            raise ArityMismatch(f"point {x!r} has {len(x)} coordinates, box has {self.dim}")
        out = 1
        for ax, xi in zip(self.axes, x):
            out *= ax.indicator(xi, env)
            if not out:
                return 0
        return out

    def grid(self, axes, env=None) -> np.ndarray:
        if len(axes) != self.dim:
            raise ArityMismatch(f"{len(axes)} grid axes for a {self.dim}-dimensional box")
        out = np.ones((), dtype=np.int64)
        for ax, xs in zip(self.axes, axes):
            out = np.multiply.outer(out, ax.grid([xs], env))
        return out

    def restrict(self, axis: int, value, env=None):
        factor = self.axes[axis].indicator(value, env)
        rest = self.axes[:axis] + self.axes[axis + 1 :]
        return factor, (rest[0] if len(rest) == 1 else Box(rest))

    def __str__(self) -> str:
        return " x ".join(str(ax) for ax in self.axes)

    def __repr__(self) -> str:
        return f"Box({self})"


def rect_product(rows, cols) -> Box:
    """The rectangle ``rows x cols``."""
    return Box((rows, cols))


def tuple_interval(lowers: Sequence, uppers: Sequence, flavor=Flavor.CLOSED_CLOSED) -> Box:
    """Product of per-axis intervals between the tuples ``lowers`` and ``uppers``.

    ``flavor`` is either a single :class:`Flavor` for every axis or one per axis.
    """
    if len(lowers) != len(uppers):
        raise ArityMismatch(f"{len(lowers)} lower endpoints but {len(uppers)} upper endpoints")
    flavors = [flavor] * len(lowers) if isinstance(flavor, Flavor) else list(flavor)
    if len(flavors) != len(lowers):
        raise ArityMismatch(f"{len(flavors)} flavors for {len(lowers)} axes")
    return Box(tuple(HybridInterval(a, b, f) for a, b, f in zip(lowers, uppers, flavors)))


def cartesian(X, Y) -> HybridSet:
    """Cartesian product of two hybrid sets; multiplicities multiply."""
    X, Y = as_hybrid(X), as_hybrid(Y)
    return HybridSet((Box((a, b)), c * d) for a, c in X for b, d in Y)


_INTERVAL = re.compile(r"^\s*(\[\[|\(\()(.*?),(.*?)(\]\]|\)\))\s*$")


def parse_interval(text: str) -> HybridInterval:
    """Parse ``"[[0,q))"``, ``"((k,n]]"`` and the like."""
    m = _INTERVAL.match(text)
    if not m:
        raise ValueError(f"not a hybrid interval: {text!r}")
    left, lo, hi, right = m.groups()
    return HybridInterval(SizeExpr.parse(lo), SizeExpr.parse(hi), Flavor.of(left == "[[", right == "]]"))


def parse_region(text: str):
    """Parse an interval or a product such as ``"[[q,n)) x [[0,r))"``."""
    parts = re.split(r"\s+x\s+", text.strip())
    intervals = [parse_interval(p) for p in parts]
    return intervals[0] if len(intervals) == 1 else Box(tuple(intervals))
