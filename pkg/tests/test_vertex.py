import pytest
from hypothesis import given, strategies as st

from midpointlab.errors import DecodeError
from midpointlab.vertex import decode, encode, leaf, level, midpoint, vertex_key


def vertices(max_level=6, n0=3):
    """Strategy for interned vertices of bounded level."""
    leaves = st.integers(0, n0 - 1).map(leaf)
    return st.recursive(
        leaves,
        lambda children: st.tuples(children, children).map(lambda ab: midpoint(*ab)),
        max_leaves=2 ** (max_level - 1),
    ).filter(lambda v: v.level <= max_level)


def test_leaf_basics():
    assert leaf(0) is leaf(0)
    assert leaf(0).level == 1
    assert encode(leaf(0)) == "0"
    with pytest.raises(ValueError):
        leaf(-1)


def test_midpoint_of_equal_is_identity():
    assert midpoint(leaf(0), leaf(0)) is leaf(0)


def test_midpoint_pair_example():
    p = midpoint(leaf(0), leaf(1))
    assert encode(p) == "{0,1}"
    assert p.level == 2


def test_midpoint_symmetry_with_mixed_levels():
    p = midpoint(leaf(0), leaf(1))
    assert midpoint(p, leaf(0)) is midpoint(leaf(0), p)


def test_levels():
    assert level(leaf(1)) == 1
    p = midpoint(leaf(0), leaf(1))
    assert level(p) == 2
    assert level(midpoint(leaf(0), p)) == 3


def test_interning_means_identity_equality():
    a = midpoint(midpoint(leaf(0), leaf(1)), leaf(2))
    b = midpoint(leaf(2), midpoint(leaf(1), leaf(0)))
    assert a is b


def test_canonical_order_leaves_before_pairs():
    p = midpoint(leaf(0), leaf(1))
    assert leaf(5) < p
    assert leaf(0) < leaf(1)
    q = midpoint(leaf(0), p)  # level 3
    assert p < q


def test_decode_rejections():
    for bad in ["{1,0}", "{0,0}", "{0,1", "0,1}", "", "{,}", "01", "-1", "{0, 1}", "x"]:
        with pytest.raises(DecodeError):
            decode(bad)


def test_decode_trailing_garbage():
    with pytest.raises(DecodeError):
        decode("{0,1}x")


def test_encode_examples():
    assert encode(midpoint(leaf(0), leaf(1))) == "{0,1}"
    v = midpoint(leaf(0), midpoint(leaf(0), leaf(1)))
    assert encode(v) == "{0,{0,1}}"
    assert decode("{0,{0,1}}") is v


@given(vertices())
def test_roundtrip(v):
    assert decode(encode(v)) is v


@given(vertices(), vertices())
def test_midpoint_laws(a, b):
    m = midpoint(a, b)
    assert m is midpoint(b, a)
    if a is b:
        assert m is a and m.level == a.level
    else:
        assert m.level == max(a.level, b.level) + 1


@given(st.lists(vertices(), min_size=2, max_size=20))
def test_order_total_and_consistent(vs):
    ordered = sorted(vs, key=vertex_key)
    for x, y in zip(ordered, ordered[1:]):
        assert x is y or x < y
    for x in vs:
        for y in vs:
            if x is not y:
                assert (x < y) != (y < x)
