"""Hypothesis-driven calculus laws on the small (2|2) chart."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycontact.laws import LAWS, naive_odd_product, product_oracle_mismatches
from polycontact.algebra import merge_odds


@pytest.mark.parametrize("name", sorted(LAWS))
@settings(max_examples=60, deadline=None)
@given(rng=st.randoms(use_true_random=False))
def test_law(name, rng):
    witness = LAWS[name](rng)
    assert witness is None, witness


def test_product_oracle_small():
    assert product_oracle_mismatches(generators=6, max_degree=3) == []


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 9), max_size=6), st.lists(st.integers(0, 9), max_size=6))
def test_merge_odds_matches_naive_on_words(a, b):
    a, b = tuple(sorted(set(a))), tuple(sorted(set(b)))
    sign, word = merge_odds(a, b)
    want_sign, want_word = naive_odd_product(a, b)
    assert (sign or 0) == want_sign
    if want_sign:
        assert tuple(word) == want_word
