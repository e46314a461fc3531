"""Affine integer size expressions over named parameters.

Block boundaries such as ``q``, ``n - q`` or ``2*r + 1`` are kept symbolic
until a :class:`ParamEnv` binds every parameter to an integer.  Expressions
are held in canonical form (sorted parameters, no zero coefficients), so
structural equality coincides with equality as affine functions.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import NonAffineExpression, UnboundParameter

__all__ = ["SizeExpr", "ParamEnv", "size", "sym", "size_add", "size_eval"]

SizeLike = Union["SizeExpr", int, str]


@dataclass(frozen=True)
class SizeExpr:
    """``constant + sum(coeff * param)`` with integer coefficients."""

    constant: int = 0
    terms: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        merged: dict[str, int] = {}
        for name, coeff in self.terms:
            merged[name] = merged.get(name, 0) + int(coeff)
        canon = tuple(sorted((k, v) for k, v in merged.items() if v != 0))
        object.__setattr__(self, "terms", canon)
        object.__setattr__(self, "constant", int(self.constant))

    @classmethod
    def param(cls, name: str, coeff: int = 1) -> SizeExpr:
        return cls(0, ((name, coeff),))

    @classmethod
    def parse(cls, text: str) -> SizeExpr:
        return _parse(text)

    @classmethod
    def coerce(cls, value: SizeLike) -> SizeExpr:
        if isinstance(value, SizeExpr):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a size")
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, str):
            return _parse(value)
        raise TypeError(f"cannot interpret {value!r} as a size expression")

    @property
    def coefficients(self) -> dict[str, int]:
        return dict(self.terms)

    @property
    def parameters(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.terms)

    def is_constant(self) -> bool:
        return not self.terms

    def eval(self, env: Mapping[str, int]) -> int:
        total = self.constant
        for name, coeff in self.terms:
            try:
                total += coeff * env[name]
            except KeyError:
                raise UnboundParameter(name) from None
        return total

    def __add__(self, other: SizeLike) -> SizeExpr:
        try:
            other = SizeExpr.coerce(other)
        except TypeError:
            return NotImplemented
        return SizeExpr(self.constant + other.constant, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> SizeExpr:
        return SizeExpr(-self.constant, tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other: SizeLike) -> SizeExpr:
        try:
            other = SizeExpr.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: SizeLike) -> SizeExpr:
        return SizeExpr.coerce(other) - self

    def __mul__(self, other) -> SizeExpr:
        if isinstance(other, SizeExpr):
            if other.is_constant():
                other = other.constant
            elif self.is_constant():
                return other * self.constant
            else:
                raise NonAffineExpression(f"({self}) * ({other}) is not affine")
        if isinstance(other, bool) or not isinstance(other, int):
            return NotImplemented
        return SizeExpr(self.constant * other, tuple((k, v * other) for k, v in self.terms))

    __rmul__ = __mul__

    def __str__(self) -> str:
        parts = []
        for name, coeff in self.terms:
            mag = abs(coeff)
            body = name if mag == 1 else f"{mag}*{name}"
            parts.append(("-" if coeff < 0 else "+", body))
        if self.constant or not parts:
            parts.append(("-" if self.constant < 0 else "+", str(abs(self.constant))))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"SizeExpr({str(self)!r})"


def size(value: SizeLike) -> SizeExpr:
    """Coerce an int, a string like ``"n - q"`` or a SizeExpr."""
    return SizeExpr.coerce(value)


def sym(*names: str):
    """``q, n = sym("q", "n")``; a single name returns a single expression."""
    exprs = tuple(SizeExpr.param(name) for name in names)
    return exprs[0] if len(exprs) == 1 else exprs


def size_add(a: SizeLike, b: SizeLike) -> SizeExpr:
    return size(a) + size(b)


def size_eval(e: SizeLike, env: Mapping[str, int]) -> int:
    return size(e).eval(env)


class ParamEnv(Mapping):
    """Read-only binding of parameter names to integers."""

    def __init__(self, bindings: Mapping[str, int] | None = None, **kwargs: int):
        data = dict(bindings or {})
        data.update(kwargs)
        for name, value in data.items():
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"parameter {name!r} must be bound to an int, got {value!r}")
        self._bindings = data

    def __getitem__(self, name: str) -> int:
        try:
            return self._bindings[name]
        except KeyError:
            raise UnboundParameter(name) from None

    def __iter__(self) -> Iterator[str]:
        return iter(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def updated(self, **kwargs: int) -> ParamEnv:
        return ParamEnv({**self._bindings, **kwargs})

    def __repr__(self) -> str:
        return f"ParamEnv({self._bindings!r})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(.))")


def _parse(text: str) -> SizeExpr:
    tokens = []
    for number, name, other in _TOKEN.findall(text):
        if number:
            tokens.append(("num", int(number)))
        elif name:
            tokens.append(("name", name))
        elif other.strip():
            if other not in "+-*":
                raise ValueError(f"unexpected character {other!r} in {text!r}")
            tokens.append(("op", other))
    if not tokens:
        raise ValueError("empty size expression")

    result = SizeExpr()
    pos = 0
    first = True
    while pos < len(tokens):
        sign = 1
        if tokens[pos][0] == "op" and tokens[pos][1] in "+-":
            sign = -1 if tokens[pos][1] == "-" else 1
            pos += 1
        elif not first:
            raise ValueError(f"expected '+' or '-' in {text!r}")
        first = False
        # term := factor ('*' factor)*
        coeff, name = sign, None
        while True:
            if pos >= len(tokens):
                raise ValueError(f"dangling operator in {text!r}")
            kind, value = tokens[pos]
            pos += 1
            if kind == "num":
                coeff *= value
            elif kind == "name":
                if name is not None:
                    raise NonAffineExpression(f"product of parameters in {text!r}")
                name = value
            else:
                raise ValueError(f"unexpected {value!r} in {text!r}")
            if pos < len(tokens) and tokens[pos] == ("op", "*"):
                pos += 1
                continue
            break
        result = result + (SizeExpr.param(name, coeff) if name else SizeExpr(coeff))
    return result
