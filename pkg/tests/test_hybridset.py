import pytest
from hypothesis import given
from hypothesis import strategies as st

from hybridmat import (
    EMPTY,
    HybridSet,
    co,
    equal_on,
    generalized_partition_check,
    hset,
    index_domain,
    is_disjoint,
    is_reducible,
    mult_at,
    ominus,
    oplus,
    otimes,
    scale,
    strict_partition_check,
    support,
)

POINTS = range(-2, 10)


def brute(terms, x):
    """Multiplicity from (lo, hi, coeff) half-open pieces, by counting."""
    return sum(c for lo, hi, c in terms if lo <= x < hi)


def test_mult_at_point_sets():
    H = hset({"a": 2, "b": -1})
    assert mult_at(H, "a") == 2
    assert mult_at(H, "b") == -1
    assert mult_at(EMPTY, "a") == 0


def test_mult_at_difference_of_intervals():
    H = ominus(co(1, 4), co(3, 6))
    assert [mult_at(H, x) for x in range(8)] == [brute([(1, 4, 1), (3, 6, -1)], x) for x in range(8)]
    assert mult_at(H, 3) == 0
    assert mult_at(H, 1) == 1 and mult_at(H, 5) == -1


def test_oplus_examples():
    assert equal_on(oplus(hset({"a": 1}), hset({"a": -1})), EMPTY, ["a", "b"])
    assert len(oplus(hset({"a": 1}), hset({"a": -1}))) == 0
    both = oplus(hset(["a"]), hset(["b"]))
    assert mult_at(both, "a") == mult_at(both, "b") == 1
    assert mult_at(oplus(co(1, 3), co(2, 5)), 2) == 2 == brute([(1, 3, 1), (2, 5, 1)], 2)


def test_ominus_examples():
    assert equal_on(ominus(hset(["a"]), hset(["a"])), EMPTY, ["a"])
    assert mult_at(ominus(hset({"a": 2})), "a") == -2
    assert mult_at(ominus(co(0, 4), co(2, 6)), 5) == -1 == brute([(0, 4, 1), (2, 6, -1)], 5)


def test_otimes_examples():
    A = ominus(co(0, 3), co(1, 2))
    assert equal_on(otimes(A, EMPTY), EMPTY, POINTS)
    assert mult_at(otimes(hset({"a": 2}), hset({"a": 3})), "a") == 6
    assert mult_at(otimes(hset({"a": 2}), hset({"b": 3})), "a") == 0
    assert mult_at(otimes(A, co(1, 4)), 1) == 0 == brute([(0, 3, 1), (1, 2, -1)], 1) * brute([(1, 4, 1)], 1)


def test_scale_examples():
    A = oplus(co(0, 3), co(2, 5))
    assert equal_on(scale(0, A), EMPTY, POINTS)
    assert equal_on(scale(-1, A), ominus(A), POINTS)
    assert mult_at(scale(3, hset({"b": -1})), "b") == -3
    with pytest.raises(TypeError):
        scale(1.5, A)


def test_is_disjoint():
    dom = range(6)
    assert is_disjoint(co(0, 2), co(2, 4), dom)
    assert not is_disjoint(co(0, 3), co(2, 4), dom)
    assert is_disjoint(co(0, 3), ominus(co(2, 4), co(2, 4)), dom)


def test_is_reducible():
    assert is_reducible(hset(["a", "b"]), ["a", "b"])
    assert not is_reducible(hset({"a": 2}), ["a"])
    H = ominus(co(0, 5), co(2, 3))
    assert [mult_at(H, x) for x in range(6)] == [1, 1, 0, 1, 1, 0]
    assert is_reducible(H, range(6))
    assert not is_reducible(co(3, 1), range(6))


def test_partition_checks():
    H = co(0, 5)
    dom = range(-1, 7)
    assert generalized_partition_check([co(0, 2), co(2, 5)], H, dom)
    assert strict_partition_check([co(0, 2), co(2, 5)], H, dom)
    assert not generalized_partition_check([co(0, 3), co(2, 5)], H, dom)
    parts = [co(0, 3), ominus(co(2, 3)), co(2, 5)]
    assert generalized_partition_check(parts, H, dom)
    assert not strict_partition_check(parts, H, dom)


def test_support_and_domain():
    assert support(oplus(co(1, 3), co(5, 3)), range(8)) == [1, 2, 3, 4]
    assert index_domain(2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert index_domain(3) == [0, 1, 2]


def test_symbolic_endpoints_need_env():
    H = oplus(co(0, "q"), co("q", "n"))
    env = {"n": 4, "q": 7}
    assert equal_on(H, co(0, "n"), range(-2, 10), env)


def test_multiplicities_must_be_integers():
    with pytest.raises(TypeError):
        HybridSet([(co(0, 1), 0.5)])


# random combinations of half-open intervals, checked against counting

pieces = st.lists(st.tuples(st.integers(-2, 8), st.integers(-2, 8), st.integers(-3, 3)), max_size=4)


def build(ps):
    return sum((scale(c, co(a, b)) for a, b, c in ps), EMPTY)


def count(ps, x):
    # co(a, b) with b < a is -[b, a)
    return sum(c * (brute([(a, b, 1)], x) - brute([(b, a, 1)], x)) for a, b, c in ps)


@given(pieces)
def test_semantics_match_counting(ps):
    H = build(ps)
    assert all(mult_at(H, x) == count(ps, x) for x in POINTS)


@given(pieces, pieces, pieces)
def test_abelian_group(a, b, c):
    A, B, C = build(a), build(b), build(c)
    assert equal_on((A + B) + C, A + (B + C), POINTS)
    assert equal_on(A + B, B + A, POINTS)
    assert equal_on(A + EMPTY, A, POINTS)
    assert equal_on(A + ominus(A), EMPTY, POINTS)


@given(pieces, st.integers(-4, 4))
def test_scale_is_repeated_oplus(a, c):
    A = build(a)
    repeated = sum([A] * abs(c), EMPTY)
    assert equal_on(scale(c, A), repeated if c >= 0 else ominus(repeated), POINTS)


@given(pieces, pieces, pieces)
def test_otimes_distributes(a, b, c):
    A, B, C = build(a), build(b), build(c)
    assert equal_on(otimes(A, B + C), otimes(A, B) + otimes(A, C), POINTS)
    assert all(mult_at(otimes(A, B), x) == count(a, x) * count(b, x) for x in POINTS)
