"""Block matrices with symbolic block sizes.

A :class:`BlockSpec` describes a matrix by its row and column cut points
(affine size expressions) and one payload per block.  Blocks are numbered
from 1, so block ``(1, 2)`` of a spec named ``"A"`` is the term ``A12``
living on ``[[q0,q1)) x [[r1,r2))``.

:func:`build_sum` and :func:`build_product` produce a single expression
each, whatever the relative order of the two operands' cuts turns out to be
once parameters are bound.  Wrong guesses about that order show up as
negative-multiplicity regions whose contributions cancel before any block is
read at a point where it is undefined.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .errors import ShapeMismatch
from .hybridfn import (
    BlockTerm,
    HybridFunctionExpr,
    SumTerm,
    TermLayer,
    _power_product,
    fn_oplus,
    reduce_plus,
    reduce_times_at,
    restrict_col,
    restrict_row,
)
from .hybridset import EMPTY, HybridSet
from .intervals import Box, co, rect_product
from .sizes import SizeExpr

__all__ = [
    "Table",
    "BlockSpec",
    "Piece",
    "regions_of",
    "universe",
    "interleave_cuts",
    "sum_refinement",
    "build_sum",
    "build_sum_refined",
    "ProductTerm",
    "ProductBlock",
    "BlockProduct",
    "build_product",
    "evaluate",
    "evaluate_pointwise",
]


class Table:
    """Payload backed by an explicit table of local entries.

    Probing outside the table raises instead of wrapping around the way
    negative list indices would.
    """

    def __init__(self, entries):
        arr = np.array(entries, dtype=object)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1) if arr.size else arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("table payloads must be two-dimensional")
        self.entries = arr

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def defined(self, i: int, j: int) -> bool:
        rows, cols = self.entries.shape
        return 0 <= i < rows and 0 <= j < cols

    def __call__(self, i: int, j: int):
        if not self.defined(i, j):
            raise IndexError(f"({i}, {j}) is outside a {self.entries.shape} table")
        return self.entries[i, j]

    def __repr__(self) -> str:
        return f"Table(shape={self.entries.shape})"


def _as_payload(value) -> Callable:
    if isinstance(value, (list, tuple, np.ndarray)):
        return Table(value)
    if not callable(value):
        raise TypeError(f"block payload must be callable or a table, got {value!r}")
    return value


class BlockSpec:
    """A matrix partitioned by symbolic row and column cuts.

    ``row_cuts`` must start at 0 and end at the row total (same for columns).
    Inner cuts of one matrix are expected to be nondecreasing once bound;
    nothing is assumed about how they interleave with another matrix's cuts.
    ``blocks`` maps 1-based ``(i, j)`` to a payload reading local indices.
    """

    def __init__(self, name: str, row_cuts, col_cuts, blocks: Mapping):
        self.name = name
        self.row_cuts = tuple(SizeExpr.coerce(c) for c in row_cuts)
        self.col_cuts = tuple(SizeExpr.coerce(c) for c in col_cuts)
        for label, cuts in (("row", self.row_cuts), ("column", self.col_cuts)):
            if len(cuts) < 2:
                raise ValueError(f"{name}: need at least two {label} cuts")
            if cuts[0] != SizeExpr(0):
                raise ValueError(f"{name}: first {label} cut must be 0, got {cuts[0]}")
        k, l = self.nblocks
        payloads = {}
        for i in range(1, k + 1):
            for j in range(1, l + 1):
                if (i, j) not in blocks:
                    raise ValueError(f"{name}: missing payload for block ({i}, {j})")
                payloads[i, j] = _as_payload(blocks[i, j])
        extra = set(blocks) - set(payloads)
        if extra:
            raise ValueError(f"{name}: blocks {sorted(extra)} are outside the {k}x{l} grid")
        self.blocks = payloads

    @property
    def nblocks(self) -> tuple[int, int]:
        return len(self.row_cuts) - 1, len(self.col_cuts) - 1

    @property
    def rows(self) -> SizeExpr:
        return self.row_cuts[-1]

    @property
    def cols(self) -> SizeExpr:
        return self.col_cuts[-1]

    @property
    def shape(self) -> tuple[SizeExpr, SizeExpr]:
        return self.rows, self.cols

    @property
    def last(self) -> tuple[int, int]:
        return self.nblocks

    def symbol(self, i: int, j: int) -> str:
        k, l = self.nblocks
        if k < 10 and l < 10:
            return f"{self.name}{i}{j}"
        return f"{self.name}{i},{j}"

    def term(self, i: int, j: int) -> BlockTerm:
        rc, cc_ = self.row_cuts, self.col_cuts
        return BlockTerm(
            self.symbol(i, j),
            (rc[i - 1], cc_[j - 1]),
            extent=(rc[i] - rc[i - 1], cc_[j] - cc_[j - 1]),
            payload=self.blocks[i, j],
        )

    def row_interval(self, i: int):
        return co(self.row_cuts[i - 1], self.row_cuts[i])

    def col_interval(self, j: int):
        return co(self.col_cuts[j - 1], self.col_cuts[j])

    def region(self, i: int, j: int) -> Box:
        return rect_product(self.row_interval(i), self.col_interval(j))

    def block_indices(self):
        k, l = self.nblocks
        return [(i, j) for i in range(1, k + 1) for j in range(1, l + 1)]

    def as_expr(self) -> HybridFunctionExpr:
        """The matrix itself as a sum of one layer per block."""
        return HybridFunctionExpr(
            (TermLayer(self.term(i, j), self.region(i, j)) for i, j in self.block_indices()), self.shape
        )

    def bound_cuts(self, env) -> tuple[list[int], list[int]]:
        return [c.eval(env) for c in self.row_cuts], [c.eval(env) for c in self.col_cuts]

    def problems(self, env) -> list[str]:
        """Reasons the bound spec is not an ordinary block matrix (empty if fine)."""
        out = []
        for label, cuts in zip(("row", "column"), self.bound_cuts(env)):
            if cuts[-1] < 0:
                out.append(f"{self.name}: {label} total is negative ({cuts[-1]})")
            if any(b < a for a, b in zip(cuts, cuts[1:])):
                out.append(f"{self.name}: {label} cuts {cuts} are not nondecreasing")
        return out

    def __repr__(self) -> str:
        rc = ", ".join(map(str, self.row_cuts))
        cc_ = ", ".join(map(str, self.col_cuts))
        return f"BlockSpec({self.name!r}, rows=[{rc}], cols=[{cc_}])"


def regions_of(spec: BlockSpec) -> dict[tuple[int, int], Box]:
    return {ij: spec.region(*ij) for ij in spec.block_indices()}


def universe(spec: BlockSpec) -> Box:
    return rect_product(co(0, spec.rows), co(0, spec.cols))


def _check_same_shape(A: BlockSpec, B: BlockSpec):
    if A.shape != B.shape:
        raise ShapeMismatch(f"cannot add {A.rows}x{A.cols} and {B.rows}x{B.cols}")


def _check_names(A: BlockSpec, B: BlockSpec):
    if A is not B and A.name == B.name:
        raise ValueError(f"operands must have distinct names, both are {A.name!r}")


def sum_refinement(A: BlockSpec, B: BlockSpec) -> list[tuple[str, Any, HybridSet]]:
    """The generalized partition behind :func:`build_sum`.

    Every block region of A and of B except each last block, followed by the
    remainder ``P = U - (all of them)``.  Returned as ``(owner, (i, j),
    region)`` triples where owner is ``"A"``, ``"B"`` or ``"P"`` (with
    ``(i, j)`` set to ``None`` for the remainder).
    """
    _check_same_shape(A, B)
    out = []
    for owner, spec in (("A", A), ("B", B)):
        for ij in spec.block_indices():
            if ij != spec.last:
                out.append((owner, ij, spec.region(*ij)))
    rest = universe(A) - sum((r for _, _, r in out), EMPTY)
    out.append(("P", None, rest))
    return out


def build_sum(A: BlockSpec, B: BlockSpec) -> HybridFunctionExpr:
    """``A + B`` as one expression valid for every binding of the cuts.

    A's non-last blocks pair with B's last block over A's regions, B's
    non-last blocks pair with A's last block over B's regions, and the two
    last blocks pair over the remainder.
    """
    _check_same_shape(A, B)
    _check_names(A, B)
    a_last, b_last = A.term(*A.last), B.term(*B.last)
    layers = []
    for owner, ij, region in sum_refinement(A, B):
        if owner == "A":
            term = SumTerm((A.term(*ij), b_last))
        elif owner == "B":
            term = SumTerm((a_last, B.term(*ij)))
        else:
            term = SumTerm((a_last, b_last))
        layers.append(TermLayer(term, region))
    return HybridFunctionExpr(layers, A.shape)


@dataclass(frozen=True)
class Piece:
    """One interval of an interleaved refinement and the blocks it draws on."""

    interval: Any
    first: int
    second: int


def interleave_cuts(first_cuts, second_cuts, order: str = "first") -> list[Piece]:
    """Common refinement of two cut sequences over the same axis.

    The inner cuts are laid out as one sequence (``first``'s cuts then
    ``second``'s, or the reverse with ``order="second"``) and each
    consecutive pair becomes a hybrid interval.  Each piece records which
    block of either sequence it belongs to: the number of that sequence's
    inner cuts already passed, plus one.
    """
    first_cuts = [SizeExpr.coerce(c) for c in first_cuts]
    second_cuts = [SizeExpr.coerce(c) for c in second_cuts]
    if first_cuts[-1] != second_cuts[-1]:
        raise ShapeMismatch(f"axes end at {first_cuts[-1]} and {second_cuts[-1]}")
    inner_a = [(c, 0) for c in first_cuts[1:-1]]
    inner_b = [(c, 1) for c in second_cuts[1:-1]]
    inner = inner_a + inner_b if order == "first" else inner_b + inner_a
    seq = [(SizeExpr(0), None)] + inner + [(first_cuts[-1], None)]
    pieces = []
    passed = [0, 0]
    for (lo, _), (hi, owner) in zip(seq, seq[1:]):
        pieces.append(Piece(co(lo, hi), passed[0] + 1, passed[1] + 1))
        if owner is not None:
            passed[owner] += 1
    return pieces


def build_sum_refined(A: BlockSpec, B: BlockSpec, order: str = "AB") -> HybridFunctionExpr:
    """``A + B`` over the interleaved refinement of both axes.

    ``order="AB"`` places A's cuts before B's on each axis; ``"BA"`` the
    reverse.  For vectors this is the two-ordering construction: both
    orders give the same matrix under every binding.
    """
    _check_same_shape(A, B)
    _check_names(A, B)
    which = {"AB": "first", "BA": "second"}[order]
    row_pieces = interleave_cuts(A.row_cuts, B.row_cuts, which)
    col_pieces = interleave_cuts(A.col_cuts, B.col_cuts, which)
    layers = []
    for rp in row_pieces:
        for cp in col_pieces:
            term = SumTerm((A.term(rp.first, cp.first), B.term(rp.second, cp.second)))
            layers.append(TermLayer(term, rect_product(rp.interval, cp.interval)))
    return HybridFunctionExpr(layers, A.shape)


@dataclass(frozen=True, eq=False)
class ProductBlock:
    """Output block ``(i, j)`` of a product: the row-slice/column-slice layers.

    ``a_layers`` holds ``A[i, a(k)]`` over ``N_i x M_k`` and ``b_layers``
    holds ``B[b(k), j]`` over ``M_k x P_j`` for every refinement piece ``M_k``
    of the shared axis.
    """

    i: int
    j: int
    rows: Any
    cols: Any
    inner: SizeExpr
    a_layers: HybridFunctionExpr
    b_layers: HybridFunctionExpr

    @property
    def region(self) -> Box:
        return rect_product(self.rows, self.cols)

    def factors(self, env, x, y) -> HybridFunctionExpr:
        """Row ``x`` of the A layers together with column ``y`` of the B layers."""
        return fn_oplus(restrict_row(self.a_layers, env, x), restrict_col(self.b_layers, env, y), merge=False)

    def entry(self, env, x, y):
        """Sum over the shared axis of the multiplicative reduction at each index."""
        F = self.factors(env, x, y)
        total = 0
        for m in range(self.inner.eval(env)):
            total = total + reduce_times_at(F, env, m)
        return total

    @staticmethod
    def _side_reductions(layers: HybridFunctionExpr, env, axes) -> np.ndarray:
        # Row x of a layer's region grid is the region restricted at X=x (and
        # likewise for columns), so all restrictions are read off one grid.
        exps: dict[Any, list] = {}
        for lay in layers.layers:
            g = lay.region.grid(axes, env)
            if not g.any():
                continue
            slot = exps.setdefault(lay.term.key, [lay.term, np.zeros(g.shape, dtype=np.int64)])
            slot[1] += g
        bound = [(term.bind(env), g) for term, g in exps.values()]
        shape = tuple(len(a) for a in axes)
        out = np.empty(shape, dtype=object)
        for idx in np.ndindex(shape):
            point = tuple(int(a[i]) for a, i in zip(axes, idx))
            out[idx] = _power_product([(value(point), int(g[idx])) for value, g in bound if g[idx]])
        return out

    def block_values(self, env, xs, ys) -> np.ndarray:
        """Entries at ``xs x ys`` computed as (row reductions) @ (column reductions).

        The multiplicative reduction at each shared index factors into the
        A-side and B-side products because no term appears on both sides.
        """
        ms = np.arange(self.inner.eval(env))
        if len(ms) == 0:
            return np.zeros((len(xs), len(ys)), dtype=object)
        left = self._side_reductions(self.a_layers, env, [np.asarray(xs), ms])
        right = self._side_reductions(self.b_layers, env, [ms, np.asarray(ys)])
        return left.dot(right)


@dataclass(frozen=True, eq=False)
class ProductTerm:
    """Output block of a product, used as a term evaluated at global indices."""

    block: ProductBlock
    symbol: str

    @property
    def key(self):
        return ("product", self.symbol)

    def atoms(self):
        return ((self, 1),)

    def evaluate(self, point, env):
        x, y = point
        return self.block.entry(env, x, y)

    def __str__(self) -> str:
        return self.symbol

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        return isinstance(other, ProductTerm) and self.key == other.key


class BlockProduct:
    """``A @ B`` as one output block per (row block of A, column block of B)."""

    def __init__(self, A: BlockSpec, B: BlockSpec, order: str = "AB"):
        if A.cols != B.rows:
            raise ShapeMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
        _check_names(A, B)
        self.A, self.B = A, B
        self.pieces = interleave_cuts(A.col_cuts, B.row_cuts, {"AB": "first", "BA": "second"}[order])
        self.shape = (A.rows, B.cols)
        self.inner = A.cols
        I, _ = A.nblocks
        _, J = B.nblocks
        self.blocks = {}
        for i in range(1, I + 1):
            for j in range(1, J + 1):
                a_layers = HybridFunctionExpr(
                    TermLayer(A.term(i, p.first), rect_product(A.row_interval(i), p.interval)) for p in self.pieces
                )
                b_layers = HybridFunctionExpr(
                    TermLayer(B.term(p.second, j), rect_product(p.interval, B.col_interval(j))) for p in self.pieces
                )
                self.blocks[i, j] = ProductBlock(
                    i, j, A.row_interval(i), B.col_interval(j), self.inner, a_layers, b_layers
                )

    def block(self, i: int, j: int) -> ProductBlock:
        return self.blocks[i, j]

    def as_expr(self) -> HybridFunctionExpr:
        layers = []
        for (i, j), blk in self.blocks.items():
            layers.append(TermLayer(ProductTerm(blk, f"C{i}{j}"), blk.region))
        return HybridFunctionExpr(layers, self.shape)

    def entry(self, env, x, y):
        return reduce_plus(self.as_expr(), env, (x, y))


def build_product(A: BlockSpec, B: BlockSpec, order: str = "AB") -> BlockProduct:
    """``A @ B`` with the shared axis refined by interleaving both cut lists.

    With ``order="AB"`` A's column cuts come first, which for 2x2 blocks is
    the guess that A's inner cut precedes B's.
    """
    return BlockProduct(A, B, order)


def _dims(shape, env) -> list[int]:
    dims = [s.eval(env) for s in shape]
    if any(d < 0 for d in dims):
        raise ValueError(f"negative matrix dimensions {dims}")
    return dims


def _evaluate_expr(F: HybridFunctionExpr, env) -> np.ndarray:
    if F.shape is None:
        raise ValueError("expression has no shape; evaluate it pointwise instead")
    dims = _dims(F.shape, env)
    axes = [np.arange(d) for d in dims]
    nets: dict[Any, list] = {}
    for lay in F.layers:
        g = lay.region.grid(axes, env)
        if not g.any():
            continue
        for atom, c in lay.term.atoms():
            slot = nets.setdefault(atom.key, [atom, np.zeros(dims, dtype=np.int64)])
            slot[1] += c * g
    out = np.zeros(dims, dtype=object)
    for atom, g in nets.values():
        for idx in zip(*np.nonzero(g)):
            idx = tuple(int(v) for v in idx)
            point = idx[0] if len(idx) == 1 else idx
            out[idx] = out[idx] + int(g[idx]) * atom.evaluate(point, env)
    return out


def _evaluate_product(P: BlockProduct, env) -> np.ndarray:
    n, p = _dims(P.shape, env)
    _dims((P.inner,), env)
    out = np.zeros((n, p), dtype=object)
    xs_all, ys_all = np.arange(n), np.arange(p)
    for blk in P.blocks.values():
        wx = blk.rows.grid([xs_all], env)
        wy = blk.cols.grid([ys_all], env)
        xs, ys = xs_all[wx != 0], ys_all[wy != 0]
        if not len(xs) or not len(ys):
            continue
        vals = blk.block_values(env, [int(x) for x in xs], [int(y) for y in ys])
        weight = np.multiply.outer(wx[wx != 0], wy[wy != 0])
        out[np.ix_(xs, ys)] += weight.astype(object) * vals
    return out


def evaluate(obj, env) -> np.ndarray:
    """Materialize a spec, sum expression or product as a dense object array."""
    if isinstance(obj, BlockProduct):
        return _evaluate_product(obj, env)
    if isinstance(obj, BlockSpec):
        obj = obj.as_expr()
    return _evaluate_expr(obj, env)


def evaluate_pointwise(obj, env) -> np.ndarray:
    """Reference evaluation: one reduction per entry, no vectorisation."""
    if isinstance(obj, BlockSpec):
        obj = obj.as_expr()
    n, m = _dims(obj.shape, env)
    out = np.zeros((n, m), dtype=object)
    for x in range(n):
        for y in range(m):
            out[x, y] = obj.entry(env, x, y) if isinstance(obj, BlockProduct) else reduce_plus(obj, env, (x, y))
    return out
