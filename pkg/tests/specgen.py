"""Random coding data for tests: explicit levels 0..depth, then a periodic tail."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from toeplitz_words.core_words import Alphabet, CodingSpec, PeriodicTail

NAMES = "abcd"


def _distinct_run(draw_letter, length, first_avoid, size):
    out = []
    prev = first_avoid
    for _ in range(length):
        choices = [x for x in range(size) if x != prev]
        prev = draw_letter(choices)
        out.append(prev)
    return out


def build_spec(size, prefix_a, prefix_n, period_a, period_n, with_r=True, name="random"):
    depth = len(prefix_a)
    tail = PeriodicTail(depth, tuple(period_a), tuple(period_n), tuple(0 for _ in period_n) if with_r else None)
    r = tuple(0 for _ in prefix_n) if with_r else None
    return CodingSpec(Alphabet(tuple(NAMES[:size])), tuple(prefix_a), tuple(prefix_n), r, tail, name)


def random_spec(rng: random.Random, max_size=4, max_n=5, depth=6, max_period=3):
    """Letters a_0..a_depth and multipliers drawn uniformly, then a tail of
    period 2..max_period that keeps a_k != a_(k+1) across every seam."""
    size = rng.randint(2, max_size)
    while True:
        prefix = _distinct_run(rng.choice, depth + 1, None, size)
        period = rng.randint(2, max_period)
        tail = _distinct_run(rng.choice, period, prefix[-1], size)
        if tail[-1] != tail[0] and len(set(tail)) >= 2:
            break
    pn = [rng.randint(2, max_n) for _ in prefix]
    tn = [rng.randint(2, max_n) for _ in tail]
    return build_spec(size, prefix, pn, tail, tn, name=f"random-{rng.random():.6f}")


@st.composite
def specs(draw, max_size=4, max_n=3, max_depth=3, max_period=3):
    """Hypothesis strategy; kept small so the oracles stay fast."""
    size = draw(st.integers(2, max_size))
    depth = draw(st.integers(1, max_depth))

    def letter(choices):
        return draw(st.sampled_from(choices))

    prefix = _distinct_run(letter, depth, None, size)
    period = draw(st.integers(2, max_period))
    tail = _distinct_run(letter, period, prefix[-1], size)
    if tail[-1] == tail[0]:
        tail = tail[:-1]
    if len(tail) < 2:
        tail = [x for x in range(size) if x != prefix[-1]][:1] + [prefix[-1]]
    pn = [draw(st.integers(2, max_n)) for _ in prefix]
    tn = [draw(st.integers(2, max_n)) for _ in tail]
    return build_spec(size, prefix, pn, tail, tn)
