"""Hybrid functions as layered, lazily evaluated terms.

A :class:`TermLayer` pairs an unevaluated term with a region hybrid set and
stands for the term attached to every point of the region with the region's
multiplicity.  Reductions first add up multiplicities per distinct term and
only then evaluate the survivors, so a term that is undefined somewhere is
harmless wherever its contributions cancel to zero.

Terms implement a small protocol:

``key``
    hashable identity used for cancellation (never the payload itself)
``atoms()``
    ``((atomic_term, coefficient), ...)``; a composite sum flattens into its
    summands so cancellation also happens inside sums
``evaluate(point, env)``
    the scalar at a global point; raises :class:`UndefinedTermForced`
``sliced(axis, value)``
    the term with one coordinate fixed (currying)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .errors import DivisionByZero, UndefinedTermForced
from .hybridset import EMPTY, HybridSet, as_hybrid
from .sizes import SizeExpr

__all__ = [
    "BlockTerm",
    "SliceTerm",
    "SumTerm",
    "TermLayer",
    "HybridFunctionExpr",
    "layer",
    "fn_oplus",
    "net_terms_at",
    "net_atoms_at",
    "reduce_plus",
    "reduce_times",
    "reduce_times_at",
    "restrict_row",
    "restrict_col",
]


def _zero_offsets():
    return (SizeExpr(0), SizeExpr(0))


def _as_point(point) -> tuple:
    return tuple(point) if isinstance(point, tuple) else (point,)


@dataclass(frozen=True)
class BlockTerm:
    """A named block function placed at a symbolic offset.

    At global point ``p`` the term reads ``payload(*(p - offsets))``.  When
    ``extent`` is given the payload is only defined on
    ``range(extent[0]) x range(extent[1]) x ...`` under the bound
    parameters; a payload may narrow that further with a ``defined`` method.
    Only ``symbol`` and ``offsets`` take part in equality.
    """

    symbol: str
    offsets: tuple = field(default_factory=_zero_offsets)
    extent: tuple | None = field(default=None, compare=False)
    payload: Callable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "offsets", tuple(SizeExpr.coerce(o) for o in self.offsets))
        if self.extent is not None:
            object.__setattr__(self, "extent", tuple(SizeExpr.coerce(e) for e in self.extent))

    @property
    def row_offset(self) -> SizeExpr:
        return self.offsets[0]

    @property
    def col_offset(self) -> SizeExpr:
        return self.offsets[1]

    @property
    def key(self):
        return (self.symbol, self.offsets)

    def atoms(self):
        return ((self, 1),)

    def local(self, point, env) -> tuple:
        pt = _as_point(point)
        return tuple(p - o.eval(env) for p, o in zip(pt, self.offsets))

    def is_defined(self, point, env) -> bool:
        if self.payload is None:
            return False
        loc = self.local(point, env)
        if self.extent is not None:
            for li, e in zip(loc, self.extent):
                if not 0 <= li < e.eval(env):
                    return False
        probe = getattr(self.payload, "defined", None)
        return probe is None or bool(probe(*loc))

    def evaluate(self, point, env):
        if not self.is_defined(point, env):
            raise UndefinedTermForced(self.symbol, point)
        return self.payload(*self.local(point, env))

    def sliced(self, axis: int, value) -> SliceTerm:
        return SliceTerm(self, axis, value)

    def bind(self, env) -> Callable:
        """A function of the global point with offsets and extent resolved once."""
        offsets = tuple(o.eval(env) for o in self.offsets)
        extent = None if self.extent is None else tuple(e.eval(env) for e in self.extent)
        payload, symbol = self.payload, self.symbol
        probe = getattr(payload, "defined", None)

        def value(point):
            loc = tuple(p - o for p, o in zip(point, offsets))
            if (
                payload is None
                or (extent is not None and not all(0 <= li < e for li, e in zip(loc, extent)))
                or (probe is not None and not probe(*loc))
            ):
                raise UndefinedTermForced(symbol, point)
            return payload(*loc)

        return value

    def __str__(self) -> str:
        return self.symbol


@dataclass(frozen=True)
class SliceTerm:
    """``base`` with coordinate ``axis`` fixed to ``value``.

    Evaluating at a point of the remaining axes re-inserts the fixed
    coordinate, which is how row and column slices of a block are read.
    """

    base: Any
    axis: int
    value: int

    @property
    def key(self):
        return ("slice", self.base.key, self.axis, self.value)

    @property
    def symbol(self) -> str:
        return f"{self.base.symbol}|{'XY'[self.axis] if self.axis < 2 else self.axis}={self.value}"

    def atoms(self):
        return ((self, 1),)

    def full_point(self, point) -> tuple:
        pt = list(_as_point(point))
        pt.insert(self.axis, self.value)
        return tuple(pt)

    def is_defined(self, point, env) -> bool:
        return self.base.is_defined(self.full_point(point), env)

    def evaluate(self, point, env):
        full = self.full_point(point)
        if not self.base.is_defined(full, env):
            raise UndefinedTermForced(self.base.symbol, full)
        return self.base.evaluate(full, env)

    def sliced(self, axis: int, value) -> SliceTerm:
        return SliceTerm(self, axis, value)

    def __str__(self) -> str:
        return self.symbol


@dataclass(frozen=True)
class SumTerm:
    """Formal sum of terms, such as ``A11 + B22`` in a refined addition.

    The sum keeps its own identity for layer bookkeeping, but reductions
    flatten it so that e.g. ``(A11+B22) + (A22+B12) - (A22+B22)`` cancels
    down to ``A11 + B12`` before anything is evaluated.
    """

    parts: tuple

    @property
    def key(self):
        return ("sum", tuple(p.key for p in self.parts))

    @property
    def symbol(self) -> str:
        return "+".join(str(p) for p in self.parts)

    def atoms(self):
        out = []
        for p in self.parts:
            out.extend(p.atoms())
        return tuple(out)

    def evaluate(self, point, env):
        total = 0
        for p in self.parts:
            total = total + p.evaluate(point, env)
        return total

    def sliced(self, axis: int, value) -> SumTerm:
        return SumTerm(tuple(p.sliced(axis, value) for p in self.parts))

    def __str__(self) -> str:
        return f"({self.symbol})"


@dataclass(frozen=True)
class TermLayer:
    term: Any
    region: HybridSet

    def __post_init__(self):
        object.__setattr__(self, "region", as_hybrid(self.region))

    def mult_at(self, x, env=None) -> int:
        return self.region.mult_at(x, env)


def layer(term, region) -> TermLayer:
    return TermLayer(term, as_hybrid(region))


class HybridFunctionExpr:
    """Pointwise sum of term layers.

    ``shape`` optionally records the symbolic extent of the index space the
    expression is meant to be evaluated over.
    """

    def __init__(self, layers: Iterable[TermLayer] = (), shape: tuple | None = None):
        self.layers = tuple(layers)
        self.shape = None if shape is None else tuple(SizeExpr.coerce(s) for s in shape)

    def __len__(self) -> int:
        return len(self.layers)

    def __iter__(self):
        return iter(self.layers)

    def __add__(self, other: HybridFunctionExpr) -> HybridFunctionExpr:
        return fn_oplus(self, other)

    def merged(self) -> HybridFunctionExpr:
        """Combine layers with identical terms into one layer each."""
        regions: dict[Any, HybridSet] = {}
        terms: dict[Any, Any] = {}
        for lay in self.layers:
            k = lay.term.key
            terms.setdefault(k, lay.term)
            regions[k] = regions.get(k, EMPTY) + lay.region
        return HybridFunctionExpr((TermLayer(terms[k], regions[k]) for k in terms), self.shape)

    def __repr__(self) -> str:
        body = " (+) ".join(f"{lay.term}^{{{lay.region}}}" for lay in self.layers)
        return f"HybridFunctionExpr({body or 'empty'})"


def fn_oplus(F: HybridFunctionExpr, G: HybridFunctionExpr, merge: bool = True) -> HybridFunctionExpr:
    """Pointwise sum; layers sharing a term have their regions added."""
    shape = F.shape if F.shape is not None else G.shape
    out = HybridFunctionExpr(F.layers + G.layers, shape)
    return out.merged() if merge else out


def net_terms_at(F: HybridFunctionExpr, env, x) -> list[tuple[Any, int]]:
    """Nonzero net multiplicity per distinct layer term at ``x``.

    Terms are never evaluated here.
    """
    order: dict[Any, Any] = {}
    nets: dict[Any, int] = {}
    for lay in F.layers:
        m = lay.region.mult_at(x, env)
        if m:
            k = lay.term.key
            order.setdefault(k, lay.term)
            nets[k] = nets.get(k, 0) + m
    return [(order[k], n) for k, n in nets.items() if n]


def net_atoms_at(F: HybridFunctionExpr, env, x) -> list[tuple[Any, int]]:
    """Like :func:`net_terms_at` but with composite sums flattened."""
    order: dict[Any, Any] = {}
    nets: dict[Any, int] = {}
    for term, m in net_terms_at(F, env, x):
        for atom, c in term.atoms():
            k = atom.key
            order.setdefault(k, atom)
            nets[k] = nets.get(k, 0) + c * m
    return [(order[k], n) for k, n in nets.items() if n]


def reduce_plus(F: HybridFunctionExpr, env, x):
    """Additive reduction at ``x``: sum of ``net * value`` over surviving atoms."""
    total = 0
    for atom, n in net_atoms_at(F, env, x):
        total = total + n * atom.evaluate(x, env)
    return total


def _exact_div(num, den):
    if isinstance(num, (int, Fraction)) and isinstance(den, (int, Fraction)):
        return Fraction(num) / den
    return num / den


def _power_product(values: Sequence[tuple[Any, int]]):
    num, den = 1, 1
    for value, e in values:
        if e > 0:
            num = num * value**e
        else:
            if value == 0:
                raise DivisionByZero(f"inverse of a zero factor (exponent {e})")
            den = den * value ** (-e)
    return num if den == 1 else _exact_div(num, den)


def reduce_times(factors: Iterable[tuple[Any, int]], point=None, env=None):
    """Multiplicative reduction of ``(term, exponent)`` factors.

    Exponents of identical terms are summed first and zero-exponent terms are
    dropped unevaluated.  A term is anything with ``key`` and ``evaluate``;
    plain scalars are taken as already evaluated and keyed by value.  The
    empty product is 1.
    """
    order: dict[Any, Any] = {}
    exps: dict[Any, int] = {}
    for term, e in factors:
        k = term.key if hasattr(term, "evaluate") else ("value", term)
        order.setdefault(k, term)
        exps[k] = exps.get(k, 0) + e
    survivors = []
    for k, e in exps.items():
        if e:
            term = order[k]
            value = term.evaluate(point, env) if hasattr(term, "evaluate") else term
            survivors.append((value, e))
    return _power_product(survivors)


def reduce_times_at(F: HybridFunctionExpr, env, x):
    """:func:`reduce_times` over every layer's multiplicity at ``x``."""
    factors = []
    for lay in F.layers:
        m = lay.region.mult_at(x, env)
        if m:
            factors.extend((atom, c * m) for atom, c in lay.term.atoms())
    return reduce_times(factors, x, env)


def _restrict(F: HybridFunctionExpr, env, axis: int, value) -> HybridFunctionExpr:
    layers = [TermLayer(lay.term.sliced(axis, value), lay.region.restrict(axis, value, env)) for lay in F.layers]
    shape = None
    if F.shape is not None:
        shape = F.shape[:axis] + F.shape[axis + 1 :]
    return HybridFunctionExpr(layers, shape)


def restrict_row(F: HybridFunctionExpr, env, i) -> HybridFunctionExpr:
    """Fix the row coordinate; regions become column regions, terms row slices."""
    return _restrict(F, env, 0, i)


def restrict_col(F: HybridFunctionExpr, env, j) -> HybridFunctionExpr:
    """Fix the column coordinate; regions become row regions, terms column slices."""
    return _restrict(F, env, 1, j)
