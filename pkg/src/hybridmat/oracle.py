"""Dense reference arithmetic used to cross-check the hybrid constructions.

Nothing here touches hybrid sets or term layers: operands are materialized
by locating each entry's block from the bound cuts, then added or multiplied
with plain loops over exact scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import UndefinedTermForced

__all__ = ["dense_operand", "dense_add", "dense_mul", "DiffReport", "diff"]


def _block_of(cuts: list[int], x: int) -> int:
    for b in range(len(cuts) - 1):
        if cuts[b] <= x < cuts[b + 1]:
            return b
    raise ValueError(f"index {x} not covered by cuts {cuts}")


def dense_operand(spec, env) -> np.ndarray:
    """Read every entry of ``spec`` from its owning block's payload.

    Requires the bound cuts of each axis to be nondecreasing.
    """
    problems = spec.problems(env)
    if problems:
        raise ValueError("; ".join(problems))
    rcuts, ccuts = spec.bound_cuts(env)
    out = np.zeros((rcuts[-1], ccuts[-1]), dtype=object)
    for x in range(rcuts[-1]):
        bi = _block_of(rcuts, x)
        for y in range(ccuts[-1]):
            bj = _block_of(ccuts, y)
            payload = spec.blocks[bi + 1, bj + 1]
            li, lj = x - rcuts[bi], y - ccuts[bj]
            probe = getattr(payload, "defined", None)
            if probe is not None and not probe(li, lj):
                raise UndefinedTermForced(spec.symbol(bi + 1, bj + 1), (x, y))
            out[x, y] = payload(li, lj)
    return out


def dense_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != b.shape:
        raise ValueError(f"shapes {a.shape} and {b.shape} differ")
    out = np.zeros(a.shape, dtype=object)
    for idx in np.ndindex(a.shape):
        out[idx] = a[idx] + b[idx]
    return out


def dense_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, m = a.shape
    m2, p = b.shape
    if m != m2:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((n, p), dtype=object)
    for i in range(n):
        for j in range(p):
            acc = 0
            for k in range(m):
                acc = acc + a[i, k] * b[k, j]
            out[i, j] = acc
    return out


@dataclass
class DiffReport:
    max_abs_diff: Any
    mismatch_count: int
    first_mismatch: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.mismatch_count == 0


def _close(a, b, tolerance) -> bool:
    if tolerance is not None and (isinstance(a, float) or isinstance(b, float)):
        return abs(a - b) <= tolerance
    return a == b


def diff(expected: np.ndarray, actual: np.ndarray, tolerance=None) -> DiffReport:
    """Entrywise comparison; ``tolerance`` only relaxes float entries.

    A shape mismatch counts every entry of the larger shape as mismatched.
    """
    if expected.shape != actual.shape:
        count = max(expected.size, actual.size)
        return DiffReport(None, count, None)
    worst = Fraction(0)
    count = 0
    first = None
    for idx in np.ndindex(expected.shape):
        e, a = expected[idx], actual[idx]
        d = abs(e - a)
        if d > worst:
            worst = d
        if not _close(e, a, tolerance):
            count += 1
            if first is None:
                first = (*idx, e, a)
    return DiffReport(worst, count, first)
