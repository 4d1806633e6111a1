"""Exact construction of simple Toeplitz words and Sturmian words.

Words are ``bytes`` objects whose entries are letter ids, so slicing,
hashing and reversal come for free and stay exact.  Lengths are Python
integers and never overflow.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BudgetError,
    DepthError,
    ExtendedWordError,
    SpecError,
    UndecidableError,
)

HOLE = 255
DEFAULT_BUDGET = 1 << 28
MAX_LETTERS = 250


def budget_bytes() -> int:
    raw = os.environ.get("TOEPL_BUDGET_BYTES")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise SpecError(f"TOEPL_BUDGET_BYTES must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise SpecError("TOEPL_BUDGET_BYTES must be positive")
    return value


def check_budget(n_bytes: int, budget: int | None = None, what: str = "word") -> None:
    limit = budget_bytes() if budget is None else budget
    if n_bytes > limit:
        raise BudgetError(f"{what} needs {n_bytes} bytes, budget is {limit}")


# ---------------------------------------------------------------------------
# alphabet


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(str(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        if len(letters) < 2:
            raise SpecError("alphabet: at least two letters are required")
        if len(set(letters)) != len(letters):
            raise SpecError("alphabet: letters must be distinct")
        if len(letters) > MAX_LETTERS:
            raise SpecError(f"alphabet: at most {MAX_LETTERS} letters are supported")
        if any(not x for x in letters):
            raise SpecError("alphabet: empty letter name")

    def __len__(self) -> int:
        return len(self.letters)

    def id(self, name: str) -> int:
        try:
            return self.letters.index(str(name))
        except ValueError:
            raise SpecError(f"unknown letter {name!r}") from None

    def name(self, letter: int) -> str:
        return self.letters[letter]

    def encode(self, text: str | Iterable[str]) -> bytes:
        if isinstance(text, str) and all(len(x) == 1 for x in self.letters):
            items = list(text)
        elif isinstance(text, str):
            items = text.split()
        else:
            items = list(text)
        return bytes(self.id(x) for x in items)

    def render(self, word: bytes | Sequence[int], hole: str = "?") -> str:
        sep = "" if all(len(x) == 1 for x in self.letters) else " "
        return sep.join(hole if c == HOLE else self.letters[c] for c in word)


# ---------------------------------------------------------------------------
# tails: infinite continuations of the coding data


@dataclass(frozen=True)
class PeriodicTail:
    """From ``preperiod`` on, (a_k, n_k[, r_k]) cycle through the given periods."""

    preperiod: int
    period_a: tuple[int, ...]
    period_n: tuple[int, ...]
    period_r: tuple[int, ...] | None = None
    kind = "periodic"

    def __post_init__(self):
        object.__setattr__(self, "period_a", tuple(int(x) for x in self.period_a))
        object.__setattr__(self, "period_n", tuple(int(x) for x in self.period_n))
        if self.period_r is not None:
            object.__setattr__(self, "period_r", tuple(int(x) for x in self.period_r))
        if self.preperiod < 0:
            raise SpecError("tail.preperiod must be >= 0")
        if not self.period_a or len(self.period_a) != len(self.period_n):
            raise SpecError("tail: period_a and period_n must be non-empty and equally long")
        if self.period_r is not None and len(self.period_r) != len(self.period_a):
            raise SpecError("tail: period_r must have the same length as period_a")

    @property
    def period(self) -> int:
        return len(self.period_a)

    def _idx(self, k: int) -> int:
        return (k - self.preperiod) % self.period

    def letter(self, k: int) -> int:
        return self.period_a[self._idx(k)]

    def mult(self, k: int) -> int:
        return self.period_n[self._idx(k)]

    def phase(self, k: int) -> int | None:
        if self.period_r is None:
            return None
        return self.period_r[self._idx(k)]

    def defines_from(self) -> int:
        return self.preperiod

    def eventual_letters(self) -> frozenset[int]:
        return frozenset(self.period_a)

    def to_json(self) -> dict:
        out = {
            "kind": "periodic",
            "preperiod": self.preperiod,
            "period_a": list(self.period_a),
            "period_n": list(self.period_n),
        }
        if self.period_r is not None:
            out["period_r"] = list(self.period_r)
        return out


@dataclass(frozen=True)
class SquareGapTail:
    """Letters ``fill`` alternate in runs whose separators sit at (l+1)^2 - 2.

    The separators alternate between the two ``separators`` letters, starting
    with the first one at index 2.  The run between two separators therefore
    grows by two letters each time, which is what breaks the Boshernitzan
    condition.  ``n`` is constant.
    """

    fill: tuple[int, int]
    separators: tuple[int, int]
    n: int = 2
    kind = "square_gaps"

    def __post_init__(self):
        object.__setattr__(self, "fill", tuple(int(x) for x in self.fill))
        object.__setattr__(self, "separators", tuple(int(x) for x in self.separators))
        if len(self.fill) != 2 or len(self.separators) != 2:
            raise SpecError("tail: fill and separators need exactly two letters each")
        if len(set(self.fill + self.separators)) != 4:
            raise SpecError("tail: fill and separator letters must be four distinct letters")
        if self.n < 2:
            raise SpecError("tail.n: n_k >= 2 required")

    @staticmethod
    def separator_index(l: int) -> int:
        return (l + 1) ** 2 - 2

    def letter(self, k: int) -> int:
        # smallest l >= 1 with (l+1)^2 - 2 >= k
        l = max(1, math.isqrt(k + 2) - 1)
        while self.separator_index(l) < k:
            l += 1
        while l > 1 and self.separator_index(l - 1) >= k:
            l -= 1
        if self.separator_index(l) == k:
            return self.separators[(l - 1) % 2]
        start = self.separator_index(l - 1) + 1
        return self.fill[(k - start) % 2]

    def mult(self, k: int) -> int:
        return self.n

    def phase(self, k: int) -> int | None:
        return None

    def defines_from(self) -> int:
        return 0

    def eventual_letters(self) -> frozenset[int]:
        return frozenset(self.fill + self.separators)

    def to_json(self) -> dict:
        return {
            "kind": "square_gaps",
            "fill": list(self.fill),
            "separators": list(self.separators),
            "n": self.n,
        }


Tail = PeriodicTail | SquareGapTail


# ---------------------------------------------------------------------------
# coding data


@dataclass(frozen=True)
class CodingSpec:
    """Coding sequences (a_k), (n_k) and optionally (r_k), plus a tail.

    With ``strict=False`` consecutive equal letters are tolerated; the block
    recursion still makes sense and this is the only way to describe an
    eventually constant letter sequence.
    """

    alphabet: Alphabet
    a: tuple[int, ...]
    n: tuple[int, ...]
    r: tuple[int, ...] | None = None
    tail: Tail | None = None
    name: str = ""
    strict: bool = True
    _lengths: list = field(default_factory=list, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        if self.r is not None:
            object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        self._validate()

    # -- validation ---------------------------------------------------------
    def _validate(self) -> None:
        size = len(self.alphabet)
        if len(self.a) != len(self.n):
            raise SpecError(f"a and n must have equal length ({len(self.a)} vs {len(self.n)})")
        if not self.a and self.tail is None:
            raise SpecError("a: at least a_0 is required")
        for k, x in enumerate(self.a):
            if not 0 <= x < size:
                raise SpecError(f"a[{k}]: letter id {x} outside alphabet")
        for k, x in enumerate(self.n):
            if x < 2:
                raise SpecError(f"n[{k}]: n_k >= 2 required, got {x}")
        tail = self.tail
        if tail is not None:
            for x in tail.eventual_letters():
                if not 0 <= x < size:
                    raise SpecError(f"tail: letter id {x} outside alphabet")
            if isinstance(tail, PeriodicTail):
                for j, x in enumerate(tail.period_n):
                    if x < 2:
                        raise SpecError(f"tail.period_n[{j}]: n_k >= 2 required, got {x}")
                if tail.period_r is not None:
                    for j, (x, m) in enumerate(zip(tail.period_r, tail.period_n)):
                        if not 0 <= x < m:
                            raise SpecError(f"tail.period_r[{j}]: 0 <= r_k < n_k required")
            start = tail.defines_from()
            for k in range(start, len(self.a)):
                if self.a[k] != tail.letter(k) or self.n[k] != tail.mult(k):
                    raise SpecError(f"a[{k}]/n[{k}]: explicit value disagrees with the tail")
            if isinstance(tail, PeriodicTail) and len(self.a) < tail.preperiod:
                raise SpecError(
                    f"tail.preperiod={tail.preperiod} but only {len(self.a)} explicit levels given"
                )
        if self.r is not None:
            for k, x in enumerate(self.r):
                if k < len(self.n):
                    m = self.n[k]
                elif tail is not None:
                    m = tail.mult(k)
                else:
                    raise SpecError(f"r[{k}]: no n_k available for this level")
                if not 0 <= x < m:
                    raise SpecError(f"r[{k}]: 0 <= r_k < n_k required, got r={x}, n={m}")
            if tail is not None and isinstance(tail, PeriodicTail) and tail.period_r is not None:
                for k in range(tail.preperiod, len(self.r)):
                    if self.r[k] != tail.phase(k):
                        raise SpecError(f"r[{k}]: explicit value disagrees with tail.period_r")
        if self.strict:
            self._check_consecutive()

    def _check_consecutive(self) -> None:
        horizon = len(self.a)
        if self.tail is not None:
            horizon = max(horizon, self.tail.defines_from()) + 2 * getattr(self.tail, "period", 2) + 2
        prev = None
        for k in range(horizon):
            cur = self.letter(k)
            if prev is not None and cur == prev:
                raise SpecError(f"a[{k}]: consecutive letters must differ (a_k != a_(k+1))")
            prev = cur

    # -- access -------------------------------------------------------------
    @property
    def depth(self) -> int | None:
        """Largest available level, or None when the tail makes it unbounded."""
        if self.tail is not None:
            return None
        return len(self.a) - 1

    def has_level(self, k: int) -> bool:
        return k >= 0 and (self.tail is not None or k < len(self.a))

    def require_level(self, k: int) -> None:
        if k >= 0 and not self.has_level(k):
            raise DepthError(f"level {k} requested but spec {self.name or '?'} stops at {self.depth}")

    def letter(self, k: int) -> int:
        if 0 <= k < len(self.a):
            return self.a[k]
        if k >= 0 and self.tail is not None:
            return self.tail.letter(k)
        raise DepthError(f"a_{k} not available (depth {self.depth})")

    def mult(self, k: int) -> int:
        if 0 <= k < len(self.n):
            return self.n[k]
        if k >= 0 and self.tail is not None:
            return self.tail.mult(k)
        raise DepthError(f"n_{k} not available (depth {self.depth})")

    def phase(self, k: int) -> int:
        if self.r is not None and 0 <= k < len(self.r):
            return self.r[k]
        if self.tail is not None and k >= 0:
            value = self.tail.phase(k)
            if value is not None and (self.r is not None or k >= self.tail.defines_from()):
                return value
        if self.r is None and (self.tail is None or self.tail.phase(k) is None):
            raise SpecError("this operation needs the hole sequence r")
        raise DepthError(f"r_{k} not available")

    @property
    def has_phases(self) -> bool:
        return self.r is not None or (self.tail is not None and self.tail.phase(0) is not None)

    def block_length(self, k: int) -> int:
        """|p^(k)| as an exact integer; |p^(-1)| = 0."""
        if k < -1:
            raise DepthError("block level must be >= -1")
        lengths = self._lengths
        if not lengths:
            lengths.append(1)  # index j holds |p^(j-1)| + 1
        while len(lengths) <= k + 1:
            j = len(lengths) - 1
            lengths.append(lengths[-1] * self.mult(j))
        return lengths[k + 1] - 1

    def period_product(self, k: int) -> int:
        """n_0 * ... * n_k, which equals |p^(k)| + 1."""
        return self.block_length(k) + 1

    def level_for_length(self, length: int) -> int:
        """Smallest k >= 0 with |p^(k)| + 1 >= length."""
        k = 0
        while self.block_length(k) + 1 < length:
            k += 1
            self.require_level(k)
        return k

    def with_r(self, r: Sequence[int] | None, tail_r: Sequence[int] | None = None) -> "CodingSpec":
        tail = self.tail
        if tail_r is not None:
            if not isinstance(tail, PeriodicTail):
                raise SpecError("a periodic r-tail needs a periodic letter tail")
            tail_r = tuple(tail_r)
            span = math.lcm(tail.period, len(tail_r))
            reps = span // tail.period
            tail = PeriodicTail(
                tail.preperiod,
                tail.period_a * reps,
                tail.period_n * reps,
                tail_r * (span // len(tail_r)),
            )
        return CodingSpec(self.alphabet, self.a, self.n, None if r is None else tuple(r), tail, self.name, self.strict)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "alphabet": list(self.alphabet.letters),
            "a": [self.alphabet.name(x) for x in self.a],
            "n": list(self.n),
        }
        if self.r is not None:
            out["r"] = list(self.r)
        if self.tail is not None:
            t = self.tail.to_json()
            for key in ("period_a", "fill", "separators"):
                if key in t:
                    t[key] = [self.alphabet.name(x) for x in t[key]]
            out["tail"] = t
        if not self.strict:
            out["strict"] = False
        return out


# ---------------------------------------------------------------------------
# blocks


@dataclass(frozen=True)
class Block:
    k: int
    word: bytes

    def __len__(self) -> int:
        return len(self.word)


def _next_block(prev: bytes, letter: int, n: int) -> bytes:
    unit = prev + bytes((letter,))
    return unit * (n - 1) + prev


def build_blocks(spec: CodingSpec, k_max: int, budget: int | None = None) -> list[Block]:
    """Blocks p^(-1), ..., p^(k_max) from p^(k+1) = (p^(k) a_(k+1))^(n_(k+1)-1) p^(k)."""
    if k_max < -1:
        raise DepthError("k_max must be >= -1")
    if k_max >= 0:
        spec.require_level(k_max)
    total = sum(spec.block_length(k) for k in range(k_max + 1))
    check_budget(total, budget, what=f"blocks up to level {k_max}")
    out = [Block(-1, b"")]
    word = b""
    for k in range(k_max + 1):
        if k == 0:
            word = bytes((spec.letter(0),)) * (spec.mult(0) - 1)
        else:
            word = _next_block(word, spec.letter(k), spec.mult(k))
        out.append(Block(k, word))
    return out


def block(spec: CodingSpec, k: int, budget: int | None = None) -> bytes:
    """The single block p^(k), built without keeping the intermediate levels."""
    if k == -1:
        return b""
    spec.require_level(k)
    check_budget(spec.block_length(k), budget, what=f"p^({k})")
    word = bytes((spec.letter(0),)) * (spec.mult(0) - 1)
    for j in range(1, k + 1):
        word = _next_block(word, spec.letter(j), spec.mult(j))
    return word


# ---------------------------------------------------------------------------
# hole filling


@dataclass(frozen=True)
class HoleFillingState:
    """Level-k periodic word: ``period_word`` repeated, anchored by the residue.

    Position j carries ``period_word[(j - undetermined_residue - 1) % period_length]``,
    so the hole (the last entry) sits exactly on ``undetermined_residue + P*Z``.
    """

    k: int
    period_word: bytes
    period_length: int
    undetermined_residue: int

    def letter_at(self, j: int) -> int:
        return self.period_word[(j - self.undetermined_residue - 1) % self.period_length]


def undetermined_residue(spec: CodingSpec, k: int) -> int:
    u = 0
    for j in range(k + 1):
        u += spec.phase(j) * spec.period_product(j - 1) if j else spec.phase(0)
    return u % spec.period_product(k)


def hole_fill(spec: CodingSpec, k: int, budget: int | None = None) -> HoleFillingState:
    if not spec.has_phases:
        raise SpecError("hole filling needs the sequence r")
    spec.require_level(k)
    word = block(spec, k, budget) + bytes((HOLE,))
    return HoleFillingState(k, word, spec.period_product(k), undetermined_residue(spec, k))


def _permanent_hole(spec: CodingSpec, k: int, d: int) -> bool | None:
    """Whether digit state ``d`` at level ``k`` stays a hole forever.

    Returns None when the data cannot tell (r runs out with no periodic tail).
    """
    tail = spec.tail
    if not isinstance(tail, PeriodicTail) or tail.period_r is None:
        return None
    start = max(k, tail.preperiod, len(spec.r or ()))
    # explicit phases before the periodic regime must match too
    for j in range(k, start):
        want = 0 if d == 0 else spec.mult(j) - 1
        if spec.phase(j) != want:
            return False
    for j in range(start, start + tail.period):
        want = 0 if d == 0 else spec.mult(j) - 1
        if spec.phase(j) != want:
            return False
    return True


def _resolve_positions(
    spec: CodingSpec,
    positions: np.ndarray,
    phase,
    fill: int | None,
) -> np.ndarray:
    """Vectorised digit expansion: position x gets a_k at the first level k
    whose hole grid misses it.  ``phase(k)`` supplies r_k."""
    pos = np.asarray(positions, dtype=np.int64)
    out = np.full(pos.shape, HOLE, dtype=np.uint8)
    d = pos.copy()
    open_idx = np.arange(pos.size)
    k = 0
    while open_idx.size:
        if not spec.has_level(k):
            raise DepthError(f"window needs level {k} but the spec stops at {spec.depth}")
        try:
            r = phase(k)
        except DepthError:
            raise DepthError(f"window needs r_{k}, which is not available") from None
        m = spec.mult(k)
        dk = d[open_idx] - r
        filled = (dk % m) != 0
        out[open_idx[filled]] = spec.letter(k)
        keep = ~filled
        open_idx = open_idx[keep]
        d[open_idx] = dk[keep] // m
        k += 1
        if open_idx.size == 1 and int(d[open_idx[0]]) in (0, -1):
            state = int(d[open_idx[0]])
            perm = _permanent_hole(spec, k, state) if phase == spec.phase else _zero_phase_permanent(state)
            if perm:
                if fill is None:
                    raise ExtendedWordError(
                        f"position {int(pos[open_idx[0]])} is never filled; pass a fill letter"
                    )
                out[open_idx[0]] = fill
                break
            if perm is None and not spec.has_level(k):
                raise DepthError("cannot decide whether the remaining hole is permanent")
    return out


def _zero_phase_permanent(state: int) -> bool:
    return state == 0


def _eventual_alphabet(spec: CodingSpec) -> frozenset[int]:
    if spec.tail is None:
        raise UndecidableError("the eventual alphabet needs an infinite tail")
    return spec.tail.eventual_letters()


def letters_from(spec: CodingSpec, k: int) -> frozenset[int]:
    """A_k = {a_j : j >= k}, exact thanks to the tail."""
    ev = _eventual_alphabet(spec)
    stable = spec.tail.defines_from()
    if isinstance(spec.tail, PeriodicTail):
        stable = max(stable, len(spec.a))
    else:
        stable = max(k, len(spec.a))
    extra = {spec.letter(j) for j in range(k, stable)}
    return frozenset(ev | extra)


def toeplitz_window(spec: CodingSpec, lo: int, hi: int, fill_letter: int | None = None) -> bytes:
    """omega restricted to [lo, hi] for the word defined by (a_k), (n_k), (r_k)."""
    if lo > hi:
        raise SpecError("window needs lo <= hi")
    if not spec.has_phases:
        raise SpecError("toeplitz_window needs the sequence r")
    check_budget(hi - lo + 1, what="window")
    if fill_letter is not None and spec.tail is not None:
        if fill_letter not in _eventual_alphabet(spec):
            raise SpecError("fill letter must be recurrent in (a_k)")
    return _resolve_positions(spec, np.arange(lo, hi + 1), spec.phase, fill_letter).tobytes()


def letter_at(spec: CodingSpec, x: int, fill_letter: int | None = None) -> int:
    return toeplitz_window(spec, x, x, fill_letter)[0]


def leading_window(spec: CodingSpec, e: int, radius: int) -> bytes:
    """(p^(k) e p^(k)) on [-radius, radius] with e at the centre."""
    if radius < 0:
        raise SpecError("radius must be >= 0")
    if e not in _eventual_alphabet(spec):
        raise SpecError(f"letter {spec.alphabet.name(e)!r} is not recurrent in (a_k)")
    check_budget(2 * radius + 1, what="leading window")
    zero = lambda k: 0  # noqa: E731  hole stays at the origin
    return _resolve_positions(spec, np.arange(-radius, radius + 1), zero, e).tobytes()


@dataclass(frozen=True)
class AperiodicityCertificate:
    aperiodic: bool
    recurrent: tuple[str, ...]


def is_aperiodic(spec: CodingSpec) -> AperiodicityCertificate:
    letters = sorted(_eventual_alphabet(spec))
    return AperiodicityCertificate(len(letters) >= 2, tuple(spec.alphabet.name(x) for x in letters))


# ---------------------------------------------------------------------------
# Sturmian words

STURM_ALPHABET = Alphabet(("a", "b"))
_A, _B = 0, 1


@dataclass(frozen=True)
class SturmianSpec:
    """Continued fraction [0; n_1, n_2, ...] of the rotation number."""

    cf: tuple[int, ...]
    tail: tuple[int, ...] | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "cf", tuple(int(x) for x in self.cf))
        if self.tail is not None:
            object.__setattr__(self, "tail", tuple(int(x) for x in self.tail))
            if not self.tail:
                raise SpecError("cf tail must be non-empty")
        for k, x in enumerate(self.cf + (self.tail or ())):
            if x < 1:
                raise SpecError(f"cf[{k}]: coefficients must be >= 1")
        if not self.cf and not self.tail:
            raise SpecError("cf: at least one coefficient is required")

    alphabet = STURM_ALPHABET

    @property
    def depth(self) -> int | None:
        return None if self.tail is not None else len(self.cf)

    def coefficient(self, k: int) -> int:
        """n_k for k >= 1."""
        if k < 1:
            raise SpecError("continued fraction coefficients start at n_1")
        if k <= len(self.cf):
            return self.cf[k - 1]
        if self.tail is None:
            raise DepthError(f"n_{k} not available (cf has {len(self.cf)} terms)")
        return self.tail[(k - 1 - len(self.cf)) % len(self.tail)]

    def to_json(self) -> dict:
        out = {"name": self.name, "cf": list(self.cf)}
        if self.tail is not None:
            out["tail"] = list(self.tail)
        return out


def sturmian_s_blocks(sspec: SturmianSpec, k_max: int, budget: int | None = None) -> list[bytes]:
    """s_0 = b, s_1 = b^(n_1 - 1) a, s_(k+1) = s_k^(n_(k+1)) s_(k-1)."""
    s = [bytes((_B,))]
    if k_max >= 1:
        s.append(bytes((_B,)) * (sspec.coefficient(1) - 1) + bytes((_A,)))
    lengths = [len(x) for x in s]
    for k in range(1, k_max):
        lengths.append(lengths[k] * sspec.coefficient(k + 1) + lengths[k - 1])
    check_budget(sum(lengths), budget, what=f"Sturmian blocks up to level {k_max}")
    for k in range(1, k_max):
        s.append(s[k] * sspec.coefficient(k + 1) + s[k - 1])
    return s[: k_max + 1]


def sturmian_blocks(sspec: SturmianSpec, k_max: int, budget: int | None = None):
    """Returns (s_0..s_k_max, {k: p^(k)} for 2 <= k <= k_max)."""
    s = sturmian_s_blocks(sspec, k_max, budget)
    p = {k: s[k][:-2] for k in range(2, k_max + 1)}
    return s, p


def _convergents(sspec: SturmianSpec):
    """Yields (p_K, q_K, p_(K-1), q_(K-1)) for K = 1, 2, ..."""
    p_prev, q_prev = 1, 0  # p_(-1)/q_(-1)
    p_cur, q_cur = 0, 1  # p_0/q_0 = 0
    k = 1
    while True:
        try:
            nk = sspec.coefficient(k)
        except DepthError:
            return
        p_prev, p_cur = p_cur, nk * p_cur + p_prev
        q_prev, q_cur = q_cur, nk * q_cur + q_prev
        yield p_cur, q_cur, p_prev, q_prev
        k += 1


def rotation_floors(sspec: SturmianSpec, x0: Fraction, ms: Sequence[int], max_terms: int = 10_000) -> list[int]:
    """Exact floor(x0 + m*alpha) for every m, using convergent brackets only.

    With alpha = [0; n_1, ..., n_K, x] and x > 1, alpha lies strictly between
    p_K/q_K and (p_K + p_(K-1))/(q_K + q_(K-1)).
    """
    if sspec.tail is None:
        raise SpecError("a finite continued fraction is a rational rotation; give a tail")
    x0 = Fraction(x0)
    if not 0 <= x0 < 1:
        raise SpecError("x0 must lie in [0, 1)")
    pending = {m: None for m in ms}
    result: dict[int, int] = {}
    for count, (pk, qk, pp, qp) in enumerate(_convergents(sspec)):
        ends = (Fraction(pk, qk), Fraction(pk + pp, qk + qp))
        lo, hi = min(ends), max(ends)
        done = []
        for m in pending:
            low = x0 + m * lo
            f = math.floor(low)
            if x0 + m * hi <= f + 1:
                result[m] = f
                done.append(m)
        for m in done:
            del pending[m]
        if not pending or count >= max_terms:
            break
    if pending:
        raise SpecError("could not separate rotation orbit from the partition boundary")
    return [result[m] for m in ms]


def rotation_word(sspec: SturmianSpec, x0: Fraction | int, length: int) -> bytes:
    """Letters j = 1..length: b when R^j(x0) lies in [0, 1 - alpha), else a."""
    if length < 0:
        raise SpecError("length must be >= 0")
    check_budget(length, what="rotation word")
    if length == 0:
        return b""
    floors = rotation_floors(sspec, Fraction(x0), list(range(1, length + 2)))
    return bytes(_A if floors[j + 1] > floors[j] else _B for j in range(length))
