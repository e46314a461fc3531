"""
Hybrid intervals
================

An interval whose endpoints come in the "wrong" order is not empty. It has
multiplicity -1, so glued pieces always add up no matter how the cut points
are ordered.
"""

from hybridmat import cc, co, interval_concat, interval_negate, mult_at, oc, oo

xs = range(-1, 7)


def show(label, region):
    print(f"{label:>10}", [mult_at(region, x) for x in xs])


print("x:        ", list(xs))
show("[1,4)", co(1, 4))
show("[4,1)", co(4, 1))
show("(1,4]", oc(1, 4))
show("[4,4]", cc(4, 4))
show("(4,4)", oo(4, 4))

# negation swaps the endpoints
show("-[1,4)", interval_negate(co(1, 4)))

# [a,b) glued to [b,c) is [a,c), even when b sits outside [a,c]
a, b, c = 1, 5, 3
show("[1,5)+[5,3)", co(a, b) + co(b, c))
show("[1,3)", interval_concat(co(a, b), co(b, c)))

# symbolic endpoints are resolved against an environment of sizes
from hybridmat import ParamEnv

env = ParamEnv(k=4, n=2)
print("[k,n) at 2, 3:", mult_at(co("k", "n"), 2, env), mult_at(co("k", "n"), 3, env))
