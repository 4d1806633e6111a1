from fractions import Fraction

import pytest
from hypothesis import given

from specgen import specs
from toeplitz_words.closed_forms import (
    boshernitzan_verdict,
    complexity_formula,
    complexity_value,
    ell,
    filtration,
    growth_formula,
    occurrence_profile,
    palindrome_formula,
    repetitivity_class,
    repetitivity_first_covered,
    repetitivity_formula,
    repetitivity_range,
)
from toeplitz_words.core_words import Alphabet, CodingSpec
from toeplitz_words.errors import UndecidableError
from toeplitz_words.language_oracle import collect_language


def grigorchuk_reference(L):
    """The piecewise complexity of the Grigorchuk subshift, written out."""
    if L <= 1:
        return 3 * L + 1
    if L == 2:
        return 3 * L
    if L <= 4:
        return 2 * L + 2
    k = (L - 1).bit_length() - 1  # 2^k + 1 <= L <= 2^(k+1)
    if L <= 2 ** (k + 1) - 2 ** (k - 1):
        return 3 * L - 2 ** k + 2 ** (k - 1)
    return 2 * L + 2 ** k


def test_grigorchuk_small_values(gr):
    assert [complexity_formula(gr, L) for L in range(5)] == [1, 4, 6, 8, 10]


def test_grigorchuk_k2_branch(gr):
    assert [complexity_formula(gr, L) for L in (5, 6, 7, 8)] == [13, 16, 18, 20]


def test_grigorchuk_against_reference(gr):
    for L in range(0, 2 ** 11 + 1):
        assert complexity_formula(gr, L) == grigorchuk_reference(L), L


def test_grigorchuk_first_branch_start(gr):
    for k in range(2, 12):
        L = 2 ** k + 1
        assert complexity_formula(gr, L) == 3 * L - 2 ** k + 2 ** (k - 1)


def test_nonb_p2(nb):
    assert complexity_formula(nb, 2) == 7


def test_growth_small(gr, pd):
    assert growth_formula(gr, 1) == 2
    assert growth_formula(gr, 0) == len(filtration(gr).spec.alphabet) - 1
    assert growth_formula(pd, 1) == 1


@given(specs())
def test_complexity_matches_oracle(spec):
    L_top = min(spec.block_length(3) + 1, 300)
    idx = collect_language(spec, L_top + 1)
    for L in range(L_top + 1):
        assert complexity_formula(spec, L) == idx.complexity(L)
    for L in range(L_top):
        assert growth_formula(spec, L) == idx.growth(L)


@given(specs())
def test_palindromes_match_oracle(spec):
    L_top = min(spec.block_length(3) + 1, 300)
    idx = collect_language(spec, L_top + 1)
    for L in range(L_top + 1):
        assert palindrome_formula(spec, L) == idx.palindromes(L)


def test_palindromes_values(pd, gr):
    assert [palindrome_formula(pd, L) for L in range(4)] == [1, 2, 1, 3]
    assert all(palindrome_formula(gr, L) == 0 for L in range(2, 200, 2))
    for k in range(2, 8):
        assert palindrome_formula(gr, 2 ** k + 1) == 5


def test_complexity_branch_labels(gr):
    assert complexity_value(gr, 6).branch


def test_filtration(gr, pd, nb):
    f = filtration(gr)
    assert f.eventual == frozenset({1, 2, 3})
    assert f.stable_from == 1
    assert filtration(pd).stable_from == 0
    assert filtration(nb).eventual == frozenset(range(4))


def test_ell_values(gr, nb, pd):
    assert [ell(gr, k) for k in range(10)] == [k + 3 for k in range(10)]
    prof = occurrence_profile(gr, 5)
    assert all(b == a + 1 for a, b in zip(prof.m, prof.m[1:]))
    prof = occurrence_profile(nb, 5)
    assert prof.m[1:] == tuple((i + 1) ** 2 - 2 for i in range(1, 6))
    for l in range(2, 6):
        for k in range(l * l - 2, (l + 1) ** 2 - 2):
            assert ell(nb, k) == (l + 2) ** 2 - 2
    assert all(ell(pd, k) == k + 2 for k in range(2, 20))


def test_repetitivity_grigorchuk(gr):
    assert repetitivity_formula(gr, 5) == 64
    pk = gr.block_length
    assert 2 * pk(4) + 1 - pk(2) + pk(1) + 5 == 64


def test_repetitivity_seam(pd, gr, gg, nb):
    # the two expressions of piece i meet between |p^(m_i)| + 1 and |p^(m_i)| + 2;
    # for Grigorchuk the second expression is empty
    seen = 0
    for spec in (pd, gr, gg, nb):
        for i in range(1, 5):
            m = occurrence_profile(spec, i).m[i]
            L = spec.block_length(m) + 1
            lo, hi = repetitivity_range(spec, i)
            if not lo <= L < hi:
                continue
            jump = repetitivity_formula(spec, L + 1) - repetitivity_formula(spec, L)
            assert jump == spec.block_length(m) - spec.block_length(m - 1) + 1
            seen += 1
    assert seen >= 4


def test_repetitivity_strictly_increasing(pd, gr):
    for spec in (pd, gr):
        start = repetitivity_first_covered(spec)
        vals = [repetitivity_formula(spec, L) for L in range(start, start + 200)]
        assert all(b > a for a, b in zip(vals, vals[1:]))


def test_repetitivity_vs_oracle(pd, gr):
    for spec in (pd, gr):
        idx = collect_language(spec, 4096)
        start = repetitivity_first_covered(spec)
        for L in range(start, 40):
            assert repetitivity_formula(spec, L) == idx.repetitivity(L)


def test_verdicts(pd, gr, nb):
    v = boshernitzan_verdict(nb)
    assert v.verdict is False
    for i, p in enumerate(v.witness["products"], start=1):
        assert p >= 2 ** (2 * i + 2)
    assert boshernitzan_verdict(pd).verdict is True
    assert boshernitzan_verdict(gr).verdict is True
    for spec in (pd, gr):
        assert repetitivity_class(spec, 1)["linearly_repetitive"] is True
    for alpha in (1, Fraction(3, 2), 2):
        assert repetitivity_class(nb, alpha)["alpha_repetitive"] is False


def test_finite_spec_is_undecidable():
    spec = CodingSpec(Alphabet(("a", "b")), (0, 1, 0), (2, 2, 2))
    with pytest.raises(UndecidableError):
        boshernitzan_verdict(spec)


def test_non_strict_spec_refused():
    from toeplitz_words.core_words import PeriodicTail
    from toeplitz_words.errors import SpecError

    spec = CodingSpec(Alphabet(("a", "b")), (0, 0, 1), (2, 2, 2), tail=PeriodicTail(3, (0, 1), (2, 2)), strict=False)
    with pytest.raises(SpecError):
        complexity_formula(spec, 3)
    with pytest.raises(SpecError):
        boshernitzan_verdict(spec)
