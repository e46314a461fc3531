"""
Adding vectors cut in different places
======================================

u is cut after k entries and v after l entries. We never say which cut comes
first. The hybrid construction gives one expression that is right for both
orders. In the middle stretch the piece is backwards when k > l, so its
multiplicity there is -1 and it cancels the overlap.
"""

import numpy as np

from hybridmat import BlockSpec, ParamEnv, build_sum, build_sum_refined, evaluate, net_atoms_at

u_top, u_bot = np.array([1, 2, 3, 4, 5]), np.array([10, 20, 30, 40, 50])
v_top, v_bot = np.array([100, 200, 300, 400, 500]), np.array([1000, 2000, 3000, 4000, 5000])

U = BlockSpec("U", [0, "k", "n"], [0, 1], {(1, 1): lambda i, j: u_top[i], (2, 1): lambda i, j: u_bot[i]})
V = BlockSpec("V", [0, "l", "n"], [0, 1], {(1, 1): lambda i, j: v_top[i], (2, 1): lambda i, j: v_bot[i]})

for k, l in [(1, 4), (4, 1), (2, 2)]:
    env = ParamEnv(n=5, k=k, l=l)
    dense_u = np.concatenate([u_top[:k], u_bot[: 5 - k]])
    dense_v = np.concatenate([v_top[:l], v_bot[: 5 - l]])
    got = evaluate(build_sum(U, V), env).ravel().astype(int)
    print(f"k={k} l={l}", got.tolist(), "ok" if (got == dense_u + dense_v).all() else "WRONG")

# which block entries survive at row 2 when k=4, l=1
env = ParamEnv(n=5, k=4, l=1)
print("row 2 uses:", [(str(t), m) for t, m in net_atoms_at(build_sum(U, V), env, (2, 0))])

# the three-piece refinement: the middle piece runs backwards here
refined = build_sum_refined(U, V, "AB")
print("middle piece at row 2:", refined.layers[1].region.mult_at((2, 0), env))
print("refined result:", evaluate(refined, env).ravel().astype(int).tolist())
