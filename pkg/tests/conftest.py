"""Shared hypothesis strategies and small helpers for the test suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from necklace_chern.words_necklaces import Word


@st.composite
def surjective_words(draw, max_alphabet: int = 5, max_length: int = 10) -> Word:
    """A random surjective word with bounded alphabet and length."""
    alphabet = draw(st.integers(min_value=1, max_value=max_alphabet))
    length = draw(st.integers(min_value=alphabet, max_value=max_length))
    extra = draw(
        st.lists(
            st.integers(min_value=0, max_value=alphabet - 1),
            min_size=length - alphabet,
            max_size=length - alphabet,
        )
    )
    letters = list(range(alphabet)) + extra
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    random.Random(seed).shuffle(letters)
    return Word(tuple(letters), alphabet)


@st.composite
def odd_alphabet_words(draw, max_length: int = 9) -> Word:
    """A random surjective word over an odd alphabet (1, 3 or 5 letters)."""
    alphabet = draw(st.sampled_from([1, 3, 5]))
    length = draw(st.integers(min_value=alphabet, max_value=max_length))
    extra = draw(
        st.lists(
            st.integers(min_value=0, max_value=alphabet - 1),
            min_size=length - alphabet,
            max_size=length - alphabet,
        )
    )
    letters = list(range(alphabet)) + extra
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    random.Random(seed).shuffle(letters)
    return Word(tuple(letters), alphabet)
