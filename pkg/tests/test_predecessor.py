"""strict_predecessor against linear-scan and stdlib references."""

import math
from bisect import bisect_right

import pytest
from hypothesis import given, strategies as st

from fcgrid import ComparisonCounter, InvalidArgumentError, strict_predecessor
from helpers import linear_strict_predecessor


def test_interior_key():
    assert strict_predecessor((1.0, 2.0, 3.0, 4.0, 5.0), 3.2) == 2


def test_below_all_returns_sentinel():
    assert strict_predecessor((1.0, 2.0, 3.0, 4.0, 5.0), 0.0) == -1


def test_at_or_above_last():
    assert strict_predecessor((1.0, 2.0, 3.0, 4.0, 5.0), 7.0) == 4
    assert strict_predecessor((1.0, 2.0, 3.0, 4.0, 5.0), 5.0) == 4


def test_duplicates_take_last_among_equals():
    assert strict_predecessor((1.0, 2.0, 2.0, 2.0, 5.0), 2.0) == 3


def test_single_element():
    assert strict_predecessor((4.0,), 4.0) == 0
    assert strict_predecessor((4.0,), 3.9) == -1


def test_nan_key_rejected():
    with pytest.raises(InvalidArgumentError):
        strict_predecessor((1.0, 2.0), float("nan"))


def test_counter_tallies_each_probe():
    counter = ComparisonCounter()
    strict_predecessor(tuple(float(i) for i in range(9)), 4.5, counter)
    assert 1 <= counter.count <= math.floor(math.log2(9)) + 1


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
sorted_values = st.lists(finite, min_size=1, max_size=40).map(sorted).map(tuple)
clumpy_values = (
    st.lists(st.integers(0, 6).map(float), min_size=1, max_size=25).map(sorted).map(tuple)
)


@given(values=sorted_values | clumpy_values, key=finite | st.integers(-2, 8).map(float))
def test_matches_references(values, key):
    expected = linear_strict_predecessor(values, key)
    assert strict_predecessor(values, key) == expected
    assert bisect_right(values, key) - 1 == expected


@given(values=sorted_values, key=finite)
def test_comparison_budget(values, key):
    counter = ComparisonCounter()
    strict_predecessor(values, key, counter)
    assert counter.count <= math.floor(math.log2(len(values))) + 1
