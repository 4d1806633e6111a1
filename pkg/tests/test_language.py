from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from specgen import specs
from toeplitz_words.core_words import block, leading_window
from toeplitz_words.errors import BoundExceeded
from toeplitz_words.language_oracle import (
    collect_language,
    complexity_oracle,
    count_copies,
    frequency_estimate,
    palindrome_oracle,
    power_scan,
    repetitivity_oracle,
    right_special_words,
)


def brute_words(text, L):
    return {text[i:i + L] for i in range(len(text) - L + 1)}


def test_words_small(gr, pd):
    idx = collect_language(gr, 4)
    assert len(idx.words(1)) == 4
    assert len(idx.words(2)) == 6
    assert idx.words(0) == [b""]
    idx = collect_language(pd, 2)
    assert {pd.alphabet.render(w) for w in idx.words(2)} == {"ab", "ba", "aa"}


def test_complexity_values(gr, nb, pd):
    assert complexity_oracle(collect_language(gr, 5), 4) == 10
    assert complexity_oracle(collect_language(nb, 3), 2) == 7
    assert complexity_oracle(collect_language(pd, 3), 2) == 3


def test_right_special(gr, pd):
    rs = dict(right_special_words(collect_language(gr, 3), 1))
    assert rs == {gr.alphabet.id("a").to_bytes(1, "big"): (1, 2, 3)}
    idx = collect_language(pd, 4)
    rs = right_special_words(idx, 2)
    # aa -> aaa, aab and ba -> baa, bab; s(2) = p(3) - p(2) = 5 - 3
    assert {pd.alphabet.render(w) for w, _ in rs} == {"aa", "ba"}
    assert len(rs) == idx.growth(2) == 2


@given(specs(max_depth=2))
def test_every_length_has_a_right_special_word(spec):
    idx = collect_language(spec, 12)
    for L in range(12):
        assert right_special_words(idx, L)


def test_palindromes_pd(pd):
    idx = collect_language(pd, 5)
    assert [palindrome_oracle(idx, L) for L in range(4)] == [1, 2, 1, 3]


@given(specs(max_depth=2))
def test_oracle_matches_brute_force(spec):
    # a long limit-word factor: every word in it is in the language
    k = 3
    text = block(spec, k + 2)
    idx = collect_language(spec, 10)
    for L in range(6):
        assert brute_words(text, L) <= idx.word_set(L)
    # reversal closure
    for w in idx.words(6):
        assert idx.contains(w[::-1])


def test_repetitivity_grigorchuk(gr):
    assert repetitivity_oracle(gr, 5) == 64


def test_repetitivity_monotone(pd):
    idx = collect_language(pd, 200)
    vals = []
    for L in range(1, 20):
        try:
            vals.append(idx.repetitivity(L))
        except BoundExceeded:
            break
    assert len(vals) >= 10
    assert all(b >= a + 1 for a, b in zip(vals, vals[1:]))


def test_count_copies():
    c = count_copies(b"aa", b"aaaa")
    assert (c.overlapping, c.disjoint) == (3, 2)
    c = count_copies(b"abc", b"abc")
    assert (c.overlapping, c.disjoint) == (1, 1)


def test_disjoint_copies_of_blocks(pd):
    assert count_copies(block(pd, 1), block(pd, 3)).disjoint >= len(block(pd, 3)) // (len(block(pd, 1)) + 1)


def test_frequency(pd):
    L = pd.block_length(6)
    assert frequency_estimate(pd, block(pd, 2), L) >= Fraction(1, 8)
    u = block(pd, 4)
    assert frequency_estimate(pd, u, len(u)) == Fraction(1, len(u))
    assert frequency_estimate(pd, b"\x01\x01", 50) == 0


def test_power_scan_pd(pd):
    b = pd.alphabet.id("b")
    R = pd.block_length(5)
    found = {l for l, kind in power_scan(leading_window(pd, b, R), R, 80) if kind.endswith("3")}
    for k in range(1, 6):
        if pd.letter(k) == b:
            assert pd.block_length(k - 1) + 1 in found


def test_power_scan_alternating(alt_gr):
    from toeplitz_words.core_words import toeplitz_window

    R = alt_gr.block_length(6)
    w = toeplitz_window(alt_gr, -R, R)
    assert power_scan(w, R, R // 2) == []


def test_power_scan_periodic():
    w = b"\x00\x01" * 10
    for origin in range(2, 12):
        assert any(l == 2 for l, _ in power_scan(w, origin, 4))
