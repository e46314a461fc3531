"""
2x2 block product
=================

A is cut at column r and B at row s. The shared dimension is cut at both
points, in whichever order they happen to fall, and each product block
multiplies the pieces that meet there.
"""

import numpy as np
import sympy

from hybridmat import BlockSpec, ParamEnv, build_product, evaluate, evaluate_pointwise

primes = list(sympy.primerange(2, 200))
Q = np.array(primes[:12], dtype=object).reshape(4, 3)
R = np.array(primes[12:27], dtype=object).reshape(3, 5)


def blocks_of(dense, row_cut, col_cut):
    offs = {1: 0, 2: row_cut}, {1: 0, 2: col_cut}
    return {(i, j): (lambda x, y, i=i, j=j: dense[offs[0][i] + x, offs[1][j] + y]) for i in (1, 2) for j in (1, 2)}


env = ParamEnv(n=4, m=3, p=5, q=2, r=2, s=1, t=3)
A = BlockSpec("A", [0, "q", "n"], [0, "r", "m"], blocks_of(Q, 2, 2))
B = BlockSpec("B", [0, "s", "m"], [0, "t", "p"], blocks_of(R, 1, 3))
P = build_product(A, B)

fast = evaluate(P, env)
slow = evaluate_pointwise(P, env)
print(fast)
print("matches Q @ R:", (fast == Q.dot(R)).all(), " pointwise agrees:", (fast == slow).all())

# the same construction with symbolic entries shows which products appear
a = sympy.Matrix(4, 3, lambda i, j: sympy.Symbol(f"a{i}{j}"))
b = sympy.Matrix(3, 5, lambda i, j: sympy.Symbol(f"b{i}{j}"))
A = BlockSpec("A", [0, "q", "n"], [0, "r", "m"], blocks_of(np.array(a.tolist(), dtype=object), 2, 2))
B = BlockSpec("B", [0, "s", "m"], [0, "t", "p"], blocks_of(np.array(b.tolist(), dtype=object), 1, 3))
top_left = sympy.expand(evaluate(build_product(A, B), env)[0, 0])
print("entry (0,0):", top_left)
print("equals (a b)[0,0]:", sympy.expand((a * b)[0, 0] - top_left) == 0)
