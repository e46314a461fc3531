import itertools
import random

import pytest
from conftest import brute_interval

from hybridmat import (
    ArityMismatch,
    EndpointMismatch,
    Flavor,
    FlavorMismatch,
    HybridInterval,
    ParamEnv,
    UnboundParameter,
    cartesian,
    cc,
    co,
    equal_on,
    hset,
    interval_concat,
    interval_mult_at,
    interval_negate,
    mult_at,
    oc,
    ominus,
    oo,
    oplus,
    parse_interval,
    parse_region,
    rect_product,
    size,
    tuple_interval,
)

FLAVORS = list(Flavor)
PTS = range(-1, 9)


@pytest.mark.parametrize("flavor", FLAVORS, ids=lambda f: f.name)
def test_indicator_matches_definition(flavor):
    lc, rc = flavor.value
    for a, b in itertools.product(range(5), repeat=2):
        I = HybridInterval(a, b, flavor)
        assert [I.indicator(x) for x in PTS] == [brute_interval(a, b, lc, rc, x) for x in PTS]
        assert list(I.grid([list(PTS)])) == [I.indicator(x) for x in PTS]


def test_mult_at_examples():
    assert interval_mult_at(cc(1, 4), ParamEnv(), 2) == 1
    rev = cc(4, 1)
    assert [interval_mult_at(rev, ParamEnv(), x) for x in range(6)] == [0, 0, -1, -1, 0, 0]
    assert interval_mult_at(oo(2, 2), ParamEnv(), 2) == -1


def test_symbolic_endpoints():
    I = co("q", "n - 1")
    assert I.indicator(3, {"q": 1, "n": 5}) == 1
    assert I.indicator(3, {"q": 6, "n": 3}) == -1
    with pytest.raises(UnboundParameter):
        I.indicator(0, {"q": 1})


def test_single_sign_for_distinct_endpoints():
    for flavor in FLAVORS:
        for a, b in itertools.permutations(range(5), 2):
            values = {HybridInterval(a, b, flavor).indicator(x) for x in PTS} - {0}
            assert len(values) <= 1


def test_negate_examples():
    I = co(1, 4)
    assert interval_negate(I) == co(4, 1)
    assert equal_on(interval_negate(I), ominus(I), PTS)
    assert interval_negate(interval_negate(I)) == I
    point = cc(1, 1)
    assert interval_negate(point) == oo(1, 1)
    assert point.indicator(1) == 1 and interval_negate(point).indicator(1) == -1


@pytest.mark.parametrize("flavor", FLAVORS, ids=lambda f: f.name)
def test_negate_is_pointwise_negation(flavor):
    for a, b in itertools.product(range(-1, 5), repeat=2):
        I = HybridInterval(a, b, flavor)
        N = interval_negate(I)
        assert all(N.indicator(x) == -I.indicator(x) for x in range(-3, 8))
        assert interval_negate(N) == I


def test_concat_examples():
    assert interval_concat(co(1, 3), co(3, 5)) == co(1, 5)
    joined = interval_concat(co(5, 3), co(3, 1))
    assert joined == co(5, 1)
    assert equal_on(joined, oplus(co(5, 3), co(3, 1)), range(7))
    assert equal_on(joined, co(1, 5) * -1, range(7))
    assert interval_concat(co(1, 4), co(4, 2)) == co(1, 2)
    assert interval_concat(cc(1, 3), oo(3, 6)) == co(1, 6)


def test_concat_symbolic():
    assert interval_concat(co(0, "q"), co("q", "n")) == co(0, "n")
    assert co("q", "n - q").concat(co("n - q", "n")) == co("q", "n")
    with pytest.raises(EndpointMismatch):
        interval_concat(co(0, "q"), co("r", "n"))
    with pytest.raises(EndpointMismatch):
        interval_concat(co(0, 2), co(3, 4))


def test_concat_flavor_rule_exhaustive():
    """Every flavor pair either concatenates correctly for all orders or is rejected."""
    valid = set()
    for f, g in itertools.product(FLAVORS, repeat=2):
        I, J = HybridInterval(0, 1, f), HybridInterval(1, 2, g)
        if f.right_closed == g.left_closed:
            with pytest.raises(FlavorMismatch):
                interval_concat(I, J)
            # and no single interval could stand for the sum: the junction has
            # multiplicity 0 or 2 in the forward case
            assert oplus(I, J).mult_at(1) in (0, 2)
            continue
        valid.add((f, g))
        for a, b, c in itertools.product(range(5), repeat=3):
            I, J = HybridInterval(a, b, f), HybridInterval(b, c, g)
            assert equal_on(interval_concat(I, J), oplus(I, J), range(-1, 7)), (f, g, a, b, c)
    assert len(valid) == 8
    assert (Flavor.CLOSED_OPEN, Flavor.CLOSED_OPEN) in valid
    assert (Flavor.OPEN_CLOSED, Flavor.OPEN_CLOSED) in valid
    assert (Flavor.CLOSED_CLOSED, Flavor.OPEN_OPEN) in valid
    assert (Flavor.OPEN_OPEN, Flavor.CLOSED_CLOSED) in valid


def test_rect_product_sign_rule():
    assert rect_product(co(0, 2), co(0, 3)).indicator((1, 1)) == 1
    assert rect_product(co(2, 0), co(0, 3)).indicator((1, 1)) == -1
    assert rect_product(co(2, 0), co(3, 0)).indicator((1, 1)) == 1
    R = rect_product(co(2, 0), co(0, 3))
    assert R.rows == co(2, 0) and R.cols == co(0, 3)


def test_rect_grid_matches_indicator():
    R = rect_product(oc(4, 1), cc(0, 2))
    xs, ys = list(range(-1, 6)), list(range(-1, 4))
    g = R.grid([xs, ys])
    assert all(g[a, b] == R.indicator((x, y)) for a, x in enumerate(xs) for b, y in enumerate(ys))


def test_tuple_interval():
    assert tuple_interval((0, 0), (2, 2)).indicator((1, 1)) == 1
    assert tuple_interval((2, 0), (0, 2)).indicator((1, 1)) == -1
    assert tuple_interval((1, 1), (1, 1)).indicator((1, 1)) == 1
    assert tuple_interval((1, 1), (1, 1)).indicator((1, 0)) == 0
    with pytest.raises(ArityMismatch):
        tuple_interval((0, 0), (1,))
    with pytest.raises(ArityMismatch):
        tuple_interval((0, 0), (1, 1)).indicator((0,))


def test_tuple_interval_sign_parity():
    rng = random.Random(5)
    for _ in range(200):
        k = rng.randint(1, 4)
        lo = [rng.randint(0, 4) for _ in range(k)]
        hi = [rng.randint(0, 4) for _ in range(k)]
        box = tuple_interval(lo, hi, Flavor.CLOSED_OPEN)
        if any(a == b for a, b in zip(lo, hi)):
            continue
        corner = tuple(min(a, b) for a, b in zip(lo, hi))
        reversed_axes = sum(a > b for a, b in zip(lo, hi))
        assert box.indicator(corner) == (-1) ** reversed_axes


def test_cartesian_of_point_sets():
    X = hset({"a": 2, "b": -1})
    Y = hset({"c": -3})
    P = cartesian(X, Y)
    assert mult_at(P, ("a", "c")) == -6
    assert mult_at(P, ("b", "c")) == 3
    assert mult_at(P, ("a", "a")) == 0


def test_parse():
    assert parse_interval("[[0,q))") == co(0, "q")
    assert parse_interval("((k,n]]") == oc("k", "n")
    assert parse_interval("[[ n - q , 2*r + 1 ]]") == cc(size("n - q"), size("2*r + 1"))
    assert parse_interval("((a,b))") == oo("a", "b")
    assert parse_region("[[q,n)) x [[0,r))") == rect_product(co("q", "n"), co(0, "r"))
    assert str(parse_region("[[q,n)) x [[0,r))")) == "[[q,n)) x [[0,r))"
    with pytest.raises(ValueError):
        parse_interval("[0,q)")
