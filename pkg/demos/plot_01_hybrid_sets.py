"""
Hybrid sets
===========

A hybrid set gives every element an integer multiplicity, which may be
negative. Sets combine with oplus (add multiplicities), ominus (subtract)
and otimes (multiply).
"""

from hybridmat import EMPTY, co, equal_on, hset, mult_at, ominus, oplus, support

# finite hybrid sets are just dictionaries of multiplicities
H = hset({"a": 2, "b": -1})
print("H at a, b, c:", mult_at(H, "a"), mult_at(H, "b"), mult_at(H, "c"))

# an element and its negative cancel out completely
print("a minus a is empty:", equal_on(oplus(hset(["a"]), ominus(hset(["a"]))), EMPTY, ["a"]))

# intervals are hybrid sets too; overlaps add up
overlap = co(1, 3) + co(2, 5)
print("[1,3) + [2,5):", [mult_at(overlap, x) for x in range(6)])

# subtraction can leave negative multiplicity behind
diff = co(1, 4) - co(3, 6)
print("[1,4) - [3,6):", [mult_at(diff, x) for x in range(7)])
print("support:", support(diff, range(7)))
