"""JSON instance files: two block-matrix operands, an operation and bindings.

See ``docs/instance_format.md`` for the schema.  Payload scalars are JSON
integers, floats, or rationals written as strings (``"3/7"``).  Blocks may be
omitted when the instance carries a ``seed``; their entries are then derived
deterministically from the seed, the operand name and the block and local
indices, so the same instance can be evaluated under any binding.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .blockmat import BlockSpec, build_product, build_sum, evaluate
from .errors import HybridMatError
from .oracle import dense_add, dense_mul, dense_operand
from .sizes import ParamEnv, SizeExpr

__all__ = [
    "InstanceError",
    "Instance",
    "SeededPayload",
    "EntryPayload",
    "parse_scalar",
    "format_scalar",
    "load_instance",
    "instance_from_dict",
    "generate_instance",
    "dumps_instance",
    "matrix_to_json",
    "matrix_from_json",
]


class InstanceError(HybridMatError, ValueError):
    """The instance file does not parse or fails validation."""


def parse_scalar(value):
    if isinstance(value, bool):
        raise InstanceError(f"booleans are not scalars: {value!r}")
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str):
        try:
            frac = Fraction(value.strip())
        except ValueError:
            raise InstanceError(f"cannot read scalar {value!r}") from None
        return frac.numerator if frac.denominator == 1 else frac
    raise InstanceError(f"cannot read scalar {value!r}")


def format_scalar(value):
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return str(value)


class SeededPayload:
    """Deterministic pseudo-random integers in ``[-9, 9]`` for any local index."""

    def __init__(self, seed: int, label: str):
        self.seed = seed
        self.label = label

    def __call__(self, i: int, j: int) -> int:
        digest = hashlib.blake2b(f"{self.seed}:{self.label}:{i},{j}".encode(), digest_size=8).digest()
        return int.from_bytes(digest, "little") % 19 - 9

    def __repr__(self) -> str:
        return f"SeededPayload({self.seed}, {self.label!r})"


class EntryPayload:
    """Sparse explicit payload: defined exactly at the listed local indices."""

    def __init__(self, entries: dict[tuple[int, int], Any]):
        self.entries = entries

    def defined(self, i: int, j: int) -> bool:
        return (i, j) in self.entries

    def __call__(self, i: int, j: int):
        return self.entries[i, j]


@dataclass
class Instance:
    operation: str
    operands: tuple[BlockSpec, BlockSpec]
    env: ParamEnv
    seed: int | None = None

    def with_env(self, **bindings: int) -> Instance:
        return Instance(self.operation, self.operands, self.env.updated(**bindings), self.seed)

    def build(self):
        A, B = self.operands
        return build_sum(A, B) if self.operation == "add" else build_product(A, B)

    def evaluate(self) -> np.ndarray:
        return evaluate(self.build(), self.env)

    def oracle(self) -> np.ndarray:
        A, B = (dense_operand(s, self.env) for s in self.operands)
        return dense_add(A, B) if self.operation == "add" else dense_mul(A, B)

    def problems(self) -> list[str]:
        out = []
        for spec in self.operands:
            out.extend(spec.problems(self.env))
        return out

    def parameters(self) -> set[str]:
        names = set()
        for spec in self.operands:
            for c in spec.row_cuts + spec.col_cuts:
                names |= c.parameters
        return names


def _parse_cut(value) -> SizeExpr:
    try:
        return SizeExpr.coerce(value)
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"bad cut {value!r}: {exc}") from None


def _parse_block_key(key: str) -> tuple[int, int]:
    try:
        i, j = (int(p) for p in key.split(","))
    except ValueError:
        raise InstanceError(f"block keys look like \"1,2\", got {key!r}") from None
    return i, j


def _parse_payload(value):
    if isinstance(value, dict):
        if set(value) != {"entries"}:
            raise InstanceError("sparse blocks are written {\"entries\": [[i, j, value], ...]}")
        entries = {}
        for item in value["entries"]:
            if len(item) != 3:
                raise InstanceError(f"sparse entry {item!r} is not [i, j, value]")
            entries[int(item[0]), int(item[1])] = parse_scalar(item[2])
        return EntryPayload(entries)
    if not isinstance(value, list) or any(not isinstance(row, list) for row in value):
        raise InstanceError("dense blocks are lists of rows")
    if len({len(row) for row in value}) > 1:
        raise InstanceError("dense block rows have different lengths")
    return [[parse_scalar(v) for v in row] for row in value]


def _parse_operand(data: dict, seed: int | None) -> BlockSpec:
    if not isinstance(data, dict):
        raise InstanceError("each operand is an object")
    try:
        name = data["name"]
        row_cuts = [_parse_cut(c) for c in data["row_cuts"]]
        col_cuts = [_parse_cut(c) for c in data["col_cuts"]]
    except KeyError as exc:
        raise InstanceError(f"operand is missing {exc.args[0]!r}") from None
    k, l = len(row_cuts) - 1, len(col_cuts) - 1
    raw = data.get("blocks")
    blocks = {}
    if raw is None:
        if seed is None:
            raise InstanceError(f"operand {name!r} has no blocks and the instance has no seed")
        for i in range(1, k + 1):
            for j in range(1, l + 1):
                blocks[i, j] = SeededPayload(seed, f"{name}{i},{j}")
    else:
        for key, value in raw.items():
            blocks[_parse_block_key(key)] = _parse_payload(value)
    for label, cuts, total in (("rows", row_cuts, data.get("rows")), ("cols", col_cuts, data.get("cols"))):
        if total is not None and _parse_cut(total) != cuts[-1]:
            raise InstanceError(f"operand {name!r}: last cut {cuts[-1]} differs from {label} {total}")
    try:
        return BlockSpec(name, row_cuts, col_cuts, blocks)
    except (TypeError, ValueError) as exc:
        raise InstanceError(str(exc)) from None


def instance_from_dict(data: dict) -> Instance:
    if not isinstance(data, dict):
        raise InstanceError("an instance is a JSON object")
    op = data.get("operation")
    if op not in ("add", "mul"):
        raise InstanceError(f"operation must be \"add\" or \"mul\", got {op!r}")
    seed = data.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise InstanceError("seed must be an integer")
    operands = data.get("operands")
    if not isinstance(operands, list) or len(operands) != 2:
        raise InstanceError("exactly two operands are required")
    A, B = (_parse_operand(o, seed) for o in operands)
    if A.name == B.name:
        raise InstanceError(f"operands must have distinct names, both are {A.name!r}")
    try:
        env = ParamEnv(data.get("env", {}))
    except TypeError as exc:
        raise InstanceError(str(exc)) from None
    inst = Instance(op, (A, B), env, seed)
    missing = inst.parameters() - set(env)
    if missing:
        raise InstanceError(f"unbound parameters: {', '.join(sorted(missing))}")
    if op == "add" and A.shape != B.shape:
        raise InstanceError(f"cannot add {A.rows}x{A.cols} and {B.rows}x{B.cols}")
    if op == "mul" and A.cols != B.rows:
        raise InstanceError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    return inst


def load_instance(path) -> Instance:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path} is not valid JSON: {exc}") from None
    return instance_from_dict(data)


def _random_cuts(rng: random.Random, prefix: str, total: str, total_value: int, max_blocks: int):
    nblocks = rng.randint(1, max_blocks)
    values = sorted(rng.randint(0, total_value) for _ in range(nblocks - 1))
    names = [f"{prefix}{k}" for k in range(1, nblocks)]
    return ["0", *names, total], dict(zip(names, values))


def generate_instance(seed: int, max_dim: int = 6, max_blocks: int = 5) -> dict:
    """A random, well-formed instance as a JSON-ready dict.

    Same arguments, same dict.  Payloads are left to the instance seed.
    """
    rng = random.Random(seed)
    op = rng.choice(["add", "mul"])
    n, m, p = (rng.randint(0, max_dim) for _ in range(3))
    env = {"n": n, "m": m}
    if op == "add":
        a_rows, a_env1 = _random_cuts(rng, "q", "n", n, max_blocks)
        a_cols, a_env2 = _random_cuts(rng, "r", "m", m, max_blocks)
        b_rows, b_env1 = _random_cuts(rng, "s", "n", n, max_blocks)
        b_cols, b_env2 = _random_cuts(rng, "t", "m", m, max_blocks)
    else:
        env["p"] = p
        a_rows, a_env1 = _random_cuts(rng, "q", "n", n, max_blocks)
        a_cols, a_env2 = _random_cuts(rng, "r", "m", m, max_blocks)
        b_rows, b_env1 = _random_cuts(rng, "s", "m", m, max_blocks)
        b_cols, b_env2 = _random_cuts(rng, "t", "p", p, max_blocks)
    for part in (a_env1, a_env2, b_env1, b_env2):
        env.update(part)
    return {
        "operation": op,
        "seed": seed,
        "env": env,
        "operands": [
            {"name": "A", "row_cuts": a_rows, "col_cuts": a_cols},
            {"name": "B", "row_cuts": b_rows, "col_cuts": b_cols},
        ],
    }


def dumps_instance(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def matrix_to_json(M: np.ndarray) -> dict:
    rows, cols = M.shape
    return {"rows": rows, "cols": cols, "entries": [[format_scalar(v) for v in row] for row in M.tolist()]}


def matrix_from_json(data: dict) -> np.ndarray:
    try:
        rows, cols, entries = data["rows"], data["cols"], data["entries"]
    except (KeyError, TypeError):
        raise InstanceError("a matrix is {\"rows\": r, \"cols\": c, \"entries\": [[...]]}") from None
    out = np.zeros((rows, cols), dtype=object)
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise InstanceError(f"entries do not form a {rows}x{cols} matrix")
    for i, row in enumerate(entries):
        for j, v in enumerate(row):
            out[i, j] = parse_scalar(v)
    return out

