"""Brute-force ground truth for the language of a subshift.

The language up to length L is read off a handful of finite
representative words.  For a simple Toeplitz subshift these are the
words p^(k) e p^(k) with e running over A_(k+1) and k the least level
with |p^(k)| + 1 >= L; every subword of length at most |p^(k)| + 1 of
the subshift shows up in one of them.  For Sturmian subshifts the two
words p ab p and p ba p around a long central palindrome p are used.

Everything below works on a generalised suffix array over the
concatenated texts, so counting all lengths at once is cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _kernels
from .core_words import (
    CodingSpec,
    SturmianSpec,
    block,
    check_budget,
    letters_from,
    sturmian_s_blocks,
)
from .errors import ArgError, BoundExceeded, DepthError, RangeError, UndecidableError

Word = bytes
SEPARATOR_BASE = 256


@dataclass(frozen=True)
class CopyCount:
    overlapping: int
    disjoint: int


class LanguageIndex:
    """Language of a subshift for all lengths 0..max_valid_L.

    Immutable after construction; lazily computed tables are cached.
    """

    def __init__(self, texts: Sequence[bytes], max_valid_L: int, source: str = "", alphabet=None):
        self.texts = tuple(bytes(t) for t in texts)
        self.max_valid_L = int(max_valid_L)
        self.source = source
        self.alphabet = alphabet
        if not self.texts:
            raise ArgError("a language index needs at least one text")
        longest = max(len(t) for t in self.texts)
        if self.max_valid_L > longest:
            raise ArgError("max_valid_L exceeds the longest representative text")
        parts = []
        starts = []
        pos = 0
        for idx, t in enumerate(self.texts):
            starts.append(pos)
            parts.append(np.frombuffer(t, dtype=np.uint8).astype(np.int64))
            parts.append(np.array([SEPARATOR_BASE + idx], dtype=np.int64))
            pos += len(t) + 1
        self._concat = np.concatenate(parts)
        self._starts = np.array(starts, dtype=np.int64)
        self._ends = self._starts + np.array([len(t) for t in self.texts], dtype=np.int64)
        n = self._concat.size
        text_of = np.repeat(np.arange(len(self.texts)), [len(t) + 1 for t in self.texts])
        self._seglen = self._ends[text_of] - np.arange(n)  # 0 on separators
        self._sa = _kernels.suffix_array(self._concat)
        self._lcp = _kernels.lcp_array(self._concat, self._sa)
        self._bytes = bytes(np.where(self._concat < 256, self._concat, 0).astype(np.uint8))

    # -- range handling -----------------------------------------------------
    def _check(self, L: int, extra: int = 0) -> None:
        if L < 0:
            raise RangeError(f"length must be >= 0, got {L}")
        if L + extra > self.max_valid_L:
            raise RangeError(
                f"length {L + extra} outside the valid range 0..{self.max_valid_L} of this index"
            )

    # -- complexity ---------------------------------------------------------
    @cached_property
    def _complexity(self) -> np.ndarray:
        top = self.max_valid_L + 2
        diff = np.zeros(top + 1, dtype=np.int64)
        seg = self._seglen[self._sa]
        lo = np.minimum(self._lcp + 1, top)
        hi = np.minimum(seg + 1, top)
        ok = seg > self._lcp
        np.add.at(diff, lo[ok], 1)
        np.add.at(diff, hi[ok], -1)
        counts = np.cumsum(diff)
        counts[0] = 1  # the empty word
        return counts[: self.max_valid_L + 1]

    def complexity(self, L: int) -> int:
        self._check(L)
        return int(self._complexity[L])

    def complexity_table(self) -> list[int]:
        return [int(x) for x in self._complexity]

    def growth(self, L: int) -> int:
        self._check(L, 1)
        return int(self._complexity[L + 1] - self._complexity[L])

    # -- explicit words -----------------------------------------------------
    def _groups(self, L: int):
        """(positions of the valid suffixes in SA order, their group ids)."""
        seg = self._seglen[self._sa]
        gid = np.cumsum(self._lcp < L) - 1
        valid = seg >= L
        return self._sa[valid], gid[valid]

    def words(self, L: int) -> list[Word]:
        """All length-L words, sorted lexicographically by letter id."""
        self._check(L)
        if L == 0:
            return [b""]
        pos, gid = self._groups(L)
        first = np.ones(gid.size, dtype=bool)
        first[1:] = gid[1:] != gid[:-1]
        data = self._bytes
        return [data[p : p + L] for p in pos[first].tolist()]

    def word_set(self, L: int) -> frozenset[Word]:
        return frozenset(self.words(L))

    def contains(self, u: Word) -> bool:
        self._check(len(u))
        return any(u in t for t in self.texts)

    def right_extensions(self, L: int) -> dict[Word, tuple[int, ...]]:
        self._check(L, 1)
        ext: dict[Word, list[int]] = {}
        for w in self.words(L + 1):
            ext.setdefault(w[:-1], []).append(w[-1])
        return {u: tuple(sorted(v)) for u, v in ext.items()}

    def left_extensions(self, L: int) -> dict[Word, tuple[int, ...]]:
        self._check(L, 1)
        ext: dict[Word, list[int]] = {}
        for w in self.words(L + 1):
            ext.setdefault(w[1:], []).append(w[0])
        return {u: tuple(sorted(v)) for u, v in sorted(ext.items())}

    def right_special_words(self, L: int) -> list[tuple[Word, tuple[int, ...]]]:
        return [(u, e) for u, e in sorted(self.right_extensions(L).items()) if len(e) >= 2]

    # -- palindromes --------------------------------------------------------
    @cached_property
    def _palindromes(self) -> np.ndarray:
        lengths = distinct_palindrome_lengths(self.texts)
        counts = np.zeros(self.max_valid_L + 1, dtype=np.int64)
        for ln in lengths:
            if ln <= self.max_valid_L:
                counts[ln] += 1
        counts[0] = 1
        return counts

    def palindromes(self, L: int) -> int:
        self._check(L)
        return int(self._palindromes[L])

    # -- repetitivity -------------------------------------------------------
    def longest_avoiding(self, L: int) -> int:
        """Length of the longest text factor that misses some length-L word."""
        self._check(L)
        if L == 0:
            return -1
        pos, gid = self._groups(L)
        gid = np.unique(gid, return_inverse=True)[1].ravel()
        order = np.lexsort((pos, gid))
        pos = pos[order]
        gid = gid[order]
        text = np.searchsorted(self._starts, pos, side="right") - 1
        best = 0
        same = (gid[1:] == gid[:-1]) & (text[1:] == text[:-1])
        if same.any():
            gaps = pos[1:][same] - pos[:-1][same] + L - 2
            best = max(best, int(gaps.max()))
        ngroups = int(gid[-1]) + 1 if gid.size else 0
        ntexts = len(self.texts)
        # edge segments: before the first and after the last occurrence in each text
        key = gid * ntexts + text
        first = np.ones(key.size, dtype=bool)
        first[1:] = key[1:] != key[:-1]
        last = np.ones(key.size, dtype=bool)
        last[:-1] = key[1:] != key[:-1]
        head = pos[first] - self._starts[text[first]] + L - 1
        tail = self._ends[text[last]] - pos[last] - 1
        best = max(best, int(head.max()), int(tail.max()))
        # a word missing from a whole text makes that text free of it
        present = np.zeros((ngroups, ntexts), dtype=bool)
        present[gid, text] = True
        lengths = self._ends - self._starts
        missing = ~present
        if missing.any():
            best = max(best, int(lengths[missing.any(axis=0)].max()))
        return best

    def repetitivity(self, L: int) -> int:
        """Least R such that every length-R word contains every length-L word."""
        self._check(L)
        m = self.longest_avoiding(L)
        if m + 1 > self.max_valid_L:
            raise BoundExceeded(
                f"R({L}) exceeds the index range {self.max_valid_L}",
                lower_bound=self.max_valid_L + 1,
            )
        return max(m + 1, L)


# ---------------------------------------------------------------------------
# palindromic tree


def distinct_palindrome_lengths(texts: Sequence[bytes]) -> list[int]:
    """Lengths of all distinct non-empty palindromes occurring in the texts.

    One palindromic tree shared by all texts; each node is a distinct
    palindrome.
    """
    length = [-1, 0]
    link = [0, 0]
    edges: list[dict[int, int]] = [{}, {}]
    for t in texts:
        last = 1
        for i, c in enumerate(t):
            cur = last
            while True:
                ln = length[cur]
                if i - ln - 1 >= 0 and t[i - ln - 1] == c:
                    break
                cur = link[cur]
            nxt = edges[cur].get(c)
            if nxt is not None:
                last = nxt
                continue
            node = len(length)
            length.append(length[cur] + 2)
            edges.append({})
            if length[node] == 1:
                link.append(1)
            else:
                w = link[cur]
                while True:
                    ln = length[w]
                    if i - ln - 1 >= 0 and t[i - ln - 1] == c:
                        break
                    w = link[w]
                link.append(edges[w][c])
            edges[cur][c] = node
            last = node
    return length[2:]


# ---------------------------------------------------------------------------
# building indices


def representative_texts(spec: CodingSpec, L_max: int) -> tuple[list[bytes], int, int]:
    """Texts p^(k) e p^(k), e in A_(k+1), for the least k with |p^(k)|+1 >= L_max.

    Returns (texts, k, max_valid_L).
    """
    if spec.tail is None:
        raise UndecidableError("the language needs A_(k+1), which requires an infinite tail")
    k = spec.level_for_length(max(L_max, 1))
    letters = sorted(letters_from(spec, k + 1))
    check_budget((2 * spec.block_length(k) + 1) * len(letters) * 24, what="language index")
    p = block(spec, k)
    return [p + bytes((e,)) + p for e in letters], k, spec.block_length(k) + 1


def sturmian_texts(sspec: SturmianSpec, L_max: int) -> tuple[list[bytes], int]:
    """p ab p and p ba p with p a central palindrome of length >= L_max."""
    k = 2
    s = sturmian_s_blocks(sspec, k)
    while len(s[k]) - 2 < max(L_max, 1):
        k += 1
        s = sturmian_s_blocks(sspec, k)
    p = s[k][:-2]
    return [p + b"\x00\x01" + p, p + b"\x01\x00" + p], len(p) + 1


def collect_language(spec: CodingSpec | SturmianSpec, L_max: int) -> LanguageIndex:
    if L_max < 0:
        raise RangeError("L_max must be >= 0")
    if isinstance(spec, SturmianSpec):
        texts, valid = sturmian_texts(spec, L_max)
        return LanguageIndex(texts, valid, source=spec.name, alphabet=spec.alphabet)
    texts, _k, valid = representative_texts(spec, L_max)
    return LanguageIndex(texts, valid, source=spec.name, alphabet=spec.alphabet)


def complexity_oracle(index: LanguageIndex, L: int) -> int:
    return index.complexity(L)


def growth_oracle(index: LanguageIndex, L: int) -> int:
    return index.growth(L)


def right_special_words(index: LanguageIndex, L: int):
    return index.right_special_words(L)


def palindrome_oracle(index: LanguageIndex, L: int) -> int:
    return index.palindromes(L)


def repetitivity_oracle(spec: CodingSpec | SturmianSpec, L: int, index: LanguageIndex | None = None) -> int:
    """R(L) by scanning return gaps; grows the index until the answer fits."""
    if L < 1:
        raise RangeError("repetitivity is defined for L >= 1")
    if index is not None:
        return index.repetitivity(L)
    guess = max(8 * L, 16)
    lower = L
    while True:
        try:
            idx = collect_language(spec, guess)
        except DepthError as exc:
            raise BoundExceeded(f"R({L}) not found within available depth", lower_bound=lower) from exc
        try:
            return idx.repetitivity(L)
        except BoundExceeded as exc:
            lower = max(lower, exc.lower_bound or lower)
            guess = idx.max_valid_L * 2 + 1


# ---------------------------------------------------------------------------
# copies, frequencies, powers


def count_copies(u: Word, v: Word) -> CopyCount:
    """Overlapping occurrences and the greedy (maximal) disjoint count."""
    u, v = bytes(u), bytes(v)
    if not u:
        raise ArgError("the pattern must be non-empty")
    over = 0
    i = v.find(u)
    while i != -1:
        over += 1
        i = v.find(u, i + 1)
    disjoint = 0
    i = v.find(u)
    while i != -1:
        disjoint += 1
        i = v.find(u, i + len(u))
    return CopyCount(over, disjoint)


def limit_prefix(spec: CodingSpec | SturmianSpec, length: int) -> bytes:
    """Prefix of the one-sided limit of the blocks (p^infinity)."""
    if isinstance(spec, SturmianSpec):
        k = 2
        s = sturmian_s_blocks(spec, k)
        while len(s[k]) - 2 < length:
            k += 1
            s = sturmian_s_blocks(spec, k)
        return s[k][:length]
    k = spec.level_for_length(length + 1)
    return block(spec, k)[:length]


def frequency_estimate(spec: CodingSpec | SturmianSpec, u: Word, L: int) -> Fraction:
    if L < 1:
        raise ArgError("prefix length must be >= 1")
    if not u:
        raise ArgError("the pattern must be non-empty")
    prefix = limit_prefix(spec, L)
    return Fraction(count_copies(u, prefix).overlapping, L)


LEFT3 = "LEFT3"
RIGHT3 = "RIGHT3"
LEFT2 = "LEFT2"
RIGHT2 = "RIGHT2"


def power_scan(window: Word, origin_offset: int, max_l: int | None = None) -> list[tuple[int, str]]:
    """Repetitions touching the origin.

    ``window[origin_offset]`` is position 0.  Reported kinds, with
    w(i..j) the letters at positions i..j:

    * LEFT3:  w(-2l+1..-l) = w(-l+1..0) = w(1..l)
    * RIGHT3: w(-l+1..0) = w(1..l) = w(l+1..2l)
    * LEFT2:  w(-2l+1..-l) = w(-l+1..0)
    * RIGHT2: w(1..l) = w(l+1..2l)
    """
    w = bytes(window)
    o = origin_offset
    left_room = o + 1  # positions -o..0
    right_room = len(w) - o - 1  # positions 1..
    top = max(left_room, right_room)
    if max_l is not None:
        top = min(top, max_l)

    def seg(a: int, b: int) -> bytes | None:
        i, j = o + a, o + b
        if i < 0 or j >= len(w):
            return None
        return w[i : j + 1]

    found = []
    for l in range(1, top + 1):
        ll = seg(-2 * l + 1, -l)
        lc = seg(-l + 1, 0)
        rc = seg(1, l)
        rr = seg(l + 1, 2 * l)
        if ll is not None and lc is not None and rc is not None and ll == lc == rc:
            found.append((l, LEFT3))
        if lc is not None and rc is not None and rr is not None and lc == rc == rr:
            found.append((l, RIGHT3))
        if ll is not None and lc is not None and ll == lc:
            found.append((l, LEFT2))
        if rc is not None and rr is not None and rc == rr:
            found.append((l, RIGHT2))
    return found
