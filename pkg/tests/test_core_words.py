from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from specgen import specs
from toeplitz_words.core_words import (
    Alphabet,
    CodingSpec,
    PeriodicTail,
    block,
    build_blocks,
    hole_fill,
    is_aperiodic,
    leading_window,
    letter_at,
    rotation_word,
    sturmian_blocks,
    sturmian_s_blocks,
    toeplitz_window,
)
from toeplitz_words.errors import BudgetError, DepthError, SpecError
from toeplitz_words.language_oracle import limit_prefix


def text(spec, w):
    return spec.alphabet.render(w)


def test_period_doubling_p2(pd):
    assert text(pd, block(pd, 2)) == "abaaaba"


def test_empty_block(gr):
    assert block(gr, -1) == b""


def test_grigorchuk_block_lengths(gr):
    for k in range(8):
        assert len(block(gr, k)) == 2 ** (k + 1) - 1 == gr.block_length(k)


def test_build_blocks_consistent(gg):
    for b in build_blocks(gg, 5):
        assert b.word == block(gg, b.k)


def test_blocks_are_palindromes(gr, nb, gg):
    for spec in (gr, nb, gg):
        for k in range(5):
            w = block(spec, k)
            assert w == w[::-1]


@given(specs())
def test_block_recursion_property(spec):
    for k in range(4):
        prev, cur = block(spec, k - 1), block(spec, k)
        a = bytes([spec.letter(k)])
        assert cur == (prev + a) * (spec.mult(k) - 1) + prev
        assert cur == cur[::-1]


def test_budget_refuses_huge_block(gr):
    with pytest.raises(BudgetError):
        block(gr, 40, budget=1 << 20)


def test_finite_spec_depth():
    spec = CodingSpec(Alphabet(("a", "b")), (0, 1, 0), (2, 2, 2))
    assert spec.depth == 2
    with pytest.raises(DepthError):
        block(spec, 3)


def test_spec_validation():
    A = Alphabet(("a", "b"))
    with pytest.raises(SpecError):
        CodingSpec(A, (0, 1), (2, 1))
    with pytest.raises(SpecError):
        CodingSpec(A, (0, 0), (2, 2))
    CodingSpec(A, (0, 0), (2, 2), strict=False)


def test_hole_fill_grigorchuk(gr):
    st1 = hole_fill(gr, 1)
    assert st1.period_length == 4
    assert st1.undetermined_residue == 0


def test_hole_fill_alternating(alt_gr):
    st2 = hole_fill(alt_gr, 2)
    assert st2.period_length == 8
    assert st2.undetermined_residue == 2


def test_hole_fill_level0(gg):
    st0 = hole_fill(gg, 0)
    assert st0.period_length == gg.mult(0)
    assert st0.undetermined_residue == gg.phase(0)


def test_window_grigorchuk(gr):
    w = toeplitz_window(gr, -3, 4, fill_letter=gr.alphabet.id("b"))
    assert text(gr, w) == "abababac"


def test_layer0_letters(gr):
    for j in range(-20, 20):
        if j % 2 != 0:
            assert letter_at(gr, j) == gr.letter(0)


def test_leading_window_pd(pd):
    assert text(pd, leading_window(pd, pd.alphabet.id("b"), 3)) == "abababa"


def test_leading_window_radius0(gr):
    for e in range(1, 4):
        assert leading_window(gr, e, 0) == bytes([e])


def test_leading_window_symmetric(gr):
    R = gr.block_length(2)
    w = leading_window(gr, gr.alphabet.id("b"), R)
    assert w[:R] == w[R + 1:][::-1]
    assert w[R] == gr.alphabet.id("b")


def test_alternating_no_origin_squares(alt_gr):
    for k in range(7):
        l = alt_gr.block_length(k) + 1
        right = toeplitz_window(alt_gr, 1, 2 * l)
        left = toeplitz_window(alt_gr, -2 * l + 1, 0)
        assert right != left


def test_aperiodicity(pd, nb):
    cert = is_aperiodic(pd)
    assert cert.aperiodic and cert.recurrent == ("a", "b")
    cert = is_aperiodic(nb)
    assert cert.aperiodic and cert.recurrent == ("a", "b", "c", "d")


def test_eventually_constant_is_periodic():
    A = Alphabet(("a", "b"))
    spec = CodingSpec(A, (0, 1, 0, 1, 0), (2, 2, 2, 2, 2), tail=PeriodicTail(5, (0,), (2,)), strict=False)
    assert not is_aperiodic(spec).aperiodic


def test_sturmian_blocks(fib):
    s = sturmian_s_blocks(fib, 5)
    assert [fib_text(x) for x in s[:5]] == ["b", "a", "ab", "aba", "abaab"]
    s, p = sturmian_blocks(fib, 6)
    assert fib_text(s[5]) == "abaababa"
    assert fib_text(p[5]) == "abaaba"


def fib_text(w):
    return "".join("ab"[c] for c in w)


def test_sturmian_s1_shape():
    from toeplitz_words.core_words import SturmianSpec

    for n1 in range(1, 5):
        spec = SturmianSpec((n1, 2, 3))
        s = sturmian_s_blocks(spec, 1)
        assert s[0] == b"\x01"
        assert s[1] == b"\x01" * (n1 - 1) + b"\x00"


def test_rotation_word_fibonacci(fib):
    assert fib_text(rotation_word(fib, Fraction(0), 5)) == "abaab"
    n = len(sturmian_s_blocks(fib, 8)[8])
    assert rotation_word(fib, 0, n) == limit_prefix(fib, n)


@given(st.lists(st.integers(1, 4), min_size=3, max_size=5))
def test_rotation_matches_blocks(cf):
    from toeplitz_words.core_words import SturmianSpec

    spec = SturmianSpec(tuple(cf), (1,))
    n = len(sturmian_s_blocks(spec, 6)[6])
    assert rotation_word(spec, 0, n) == limit_prefix(spec, n)
