"""
2x2 block addition
==================

Two matrices of the same size are each split into four blocks, but the
split points differ and are symbolic. The sum is valid for every choice of
split points.
"""

import itertools

import numpy as np

from hybridmat import BlockSpec, ParamEnv, build_sum, evaluate
from hybridmat.oracle import dense_add, dense_operand

rng = np.random.default_rng(0)
N, M = 5, 4
a, b = rng.integers(-9, 10, (N, M)), rng.integers(-9, 10, (N, M))


def blocks_of(dense, row_cut, col_cut):
    """Block payloads that read from the right corner of a dense array."""
    offs = {1: 0, 2: row_cut}, {1: 0, 2: col_cut}
    return {(i, j): (lambda x, y, i=i, j=j: dense[offs[0][i] + x, offs[1][j] + y]) for i in (1, 2) for j in (1, 2)}


checked = 0
for q, r, s, t in itertools.product(range(N + 1), range(M + 1), range(N + 1), range(M + 1)):
    env = ParamEnv(n=N, m=M, q=q, r=r, s=s, t=t)
    A = BlockSpec("A", [0, "q", "n"], [0, "r", "m"], blocks_of(a, q, r))
    B = BlockSpec("B", [0, "s", "n"], [0, "t", "m"], blocks_of(b, s, t))
    got = evaluate(build_sum(A, B), env)
    assert (got == dense_add(dense_operand(A, env), dense_operand(B, env))).all()
    checked += 1

print(f"{checked} split choices, all equal to a + b")
print(got.astype(int))
