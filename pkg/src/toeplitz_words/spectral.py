"""Transfer matrices and SL(2, R) cocycles over Toeplitz and Sturmian words.

The Jacobi operator is

    (H phi)(n) = f(S^{n+1} w) phi(n+1) + f(S^n w) phi(n-1) + g(S^n w) phi(n)

with f, g locally constant: both read the window w[n-J .. n+J].  The step
matrix T(S^j w) evaluates g at S^{j+1} w and f at S^{j+1} w, S^{j+2} w, so
it maps (phi(j+1), phi(j)) to (phi(j+2), phi(j+1)).  This shift by one is
deliberate: it is the convention the cocycle identities below are written in.

Products can overflow long before they stop being meaningful, so every
product carries a natural-log scale next to its (normalised) entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import mpmath
import numpy as np

from . import _kernels
from .core_words import CodingSpec, SturmianSpec, block, leading_window, toeplitz_window
from .errors import ArgError, DepthError, PatternError, PotentialError
from .language_oracle import LEFT3, RIGHT3, count_copies, limit_prefix, power_scan

# ---------------------------------------------------------------------------
# 2x2 matrices with a log scale


@dataclass(frozen=True)
class Mat2:
    """Matrix ``exp(log_scale) * [[a11, a12], [a21, a22]]``."""

    a11: float
    a12: float
    a21: float
    a22: float
    log_scale: float = 0.0

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, m) -> "Mat2":
        m = np.asarray(m, dtype=float)
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]))

    def entries(self) -> tuple[float, float, float, float]:
        return self.a11, self.a12, self.a21, self.a22

    def normalised(self) -> "Mat2":
        s = max(abs(x) for x in self.entries())
        if s == 0.0 or not math.isfinite(s):
            return self
        return Mat2(self.a11 / s, self.a12 / s, self.a21 / s, self.a22 / s, self.log_scale + math.log(s))

    def as_array(self) -> np.ndarray:
        """Plain float entries; overflows to inf for huge scales."""
        with np.errstate(over="ignore"):
            return np.array([[self.a11, self.a12], [self.a21, self.a22]]) * np.exp(self.log_scale)

    def det(self) -> float:
        return (self.a11 * self.a22 - self.a12 * self.a21) * math.exp(2.0 * self.log_scale)

    def trace(self) -> float:
        return (self.a11 + self.a22) * _exp(self.log_scale)

    def log_abs_trace(self) -> float:
        t = abs(self.a11 + self.a22)
        return -math.inf if t == 0.0 else math.log(t) + self.log_scale

    def log_norm(self) -> float:
        """ln of the operator 2-norm (largest singular value)."""
        n = _kernels._norm2(*self.entries())
        return -math.inf if n == 0.0 else math.log(n) + self.log_scale

    def norm(self) -> float:
        return _exp(self.log_norm())

    def __matmul__(self, other: "Mat2") -> "Mat2":
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return Mat2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.log_scale + other.log_scale).normalised()

    def inverse(self) -> "Mat2":
        a, b, c, d = self.entries()
        det = a * d - b * c
        if det == 0.0:
            raise PotentialError("singular transfer matrix")
        return Mat2(d / det, -b / det, -c / det, a / det, -self.log_scale).normalised()

    def sl2_inverse(self) -> "Mat2":
        """Inverse of a determinant-one matrix via the adjugate; stable even
        when the scaled determinant underflows."""
        a, b, c, d = self.entries()
        return Mat2(d, -b, -c, a, self.log_scale)

    def apply(self, v: "SolutionVector") -> "SolutionVector":
        x, y = v.upper, v.lower
        return SolutionVector(self.a11 * x + self.a12 * y, self.a21 * x + self.a22 * y, self.log_scale + v.log_scale).normalised()


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class SolutionVector:
    """(phi(j+1), phi(j)) times ``exp(log_scale)``."""

    upper: float
    lower: float
    log_scale: float = 0.0

    def normalised(self) -> "SolutionVector":
        s = max(abs(self.upper), abs(self.lower))
        if s == 0.0 or not math.isfinite(s):
            return self
        return SolutionVector(self.upper / s, self.lower / s, self.log_scale + math.log(s))

    def log_norm(self) -> float:
        n = math.hypot(self.upper, self.lower)
        return -math.inf if n == 0.0 else math.log(n) + self.log_scale

    def values(self) -> tuple[float, float]:
        s = _exp(self.log_scale)
        return self.upper * s, self.lower * s


# ---------------------------------------------------------------------------
# potentials


@dataclass(frozen=True)
class PotentialSpec:
    """Locally constant f (off-diagonal) and g (diagonal) of radius J.

    Either give letter tables (J = 0), or callables on the window
    ``w[n-J .. n+J]`` passed as bytes.  A plain number for ``f`` means a
    constant off-diagonal.
    """

    J: int = 0
    f: Callable[[bytes], float] | float | None = None
    g: Callable[[bytes], float] | None = None
    f_table: tuple[float, ...] | None = None
    g_table: tuple[float, ...] | None = None
    name: str = ""
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.J < 0:
            raise PotentialError("J must be >= 0")
        if (self.f_table is None) == (self.f is None):
            raise PotentialError("give f either as a table or as a callable")
        if (self.g_table is None) == (self.g is None):
            raise PotentialError("give g either as a table or as a callable")
        if self.f_table is not None:
            if self.J != 0:
                raise PotentialError("letter tables need J = 0")
            if any(x == 0.0 for x in self.f_table):
                raise PotentialError("f must not vanish")
        if self.g_table is not None and self.J != 0:
            raise PotentialError("letter tables need J = 0")
        if isinstance(self.f, (int, float)) and float(self.f) == 0.0:
            raise PotentialError("f must not vanish")

    @classmethod
    def letter_table(cls, g: Sequence[float] | Mapping[int, float], f: Sequence[float] | Mapping[int, float] | None = None,
                     size: int | None = None, name: str = "") -> "PotentialSpec":
        def width(x):
            if x is None:
                return 1
            return max(x) + 1 if isinstance(x, Mapping) else len(x)

        n = max(size or 0, width(g), width(f))

        def table(x, default):
            if x is None:
                return (default,) * n
            if isinstance(x, Mapping):
                return tuple(float(x.get(i, default)) for i in range(n))
            return tuple(float(v) for v in x) + (default,) * (n - len(x))

        return cls(J=0, f_table=table(f, 1.0), g_table=table(g, 0.0), name=name)

    @classmethod
    def schrodinger(cls, g: Sequence[float] | Mapping[int, float], size: int | None = None) -> "PotentialSpec":
        return cls.letter_table(g, None, size=size, name="schrodinger")

    @property
    def f_constant(self) -> float | None:
        """The value of f if it is constant, else None."""
        if self.f_table is not None and len(set(self.f_table)) == 1:
            return self.f_table[0]
        if isinstance(self.f, (int, float)):
            return float(self.f)
        return None

    @property
    def single_letter(self) -> bool:
        """The step matrix depends on one letter only."""
        return self.J == 0 and self.g_table is not None and self.f_constant is not None

    @property
    def cocycle_radius(self) -> int:
        """Radius of the window that the shifted step matrix depends on."""
        return self.J + (0 if self.f_constant is not None else 1)

    def _eval(self, which: str, letters: np.ndarray, centres: np.ndarray) -> np.ndarray:
        table = self.f_table if which == "f" else self.g_table
        if table is not None:
            idx = letters[centres]
            if idx.size and int(idx.max()) >= len(table):
                raise PotentialError(f"{which} has no value for letter {int(idx.max())}")
            return np.asarray(table, dtype=float)[idx]
        fn = self.f if which == "f" else self.g
        if isinstance(fn, (int, float)):
            return np.full(centres.size, float(fn))
        J = self.J
        out = np.empty(centres.size, dtype=float)
        cache = self._cache.setdefault(which, {})
        for i, c in enumerate(centres.tolist()):
            key = letters[c - J : c + J + 1].tobytes()
            val = cache.get(key)
            if val is None:
                val = float(fn(key))
                cache[key] = val
            out[i] = val
        if which == "f" and np.any(out == 0.0):
            raise PotentialError("f vanishes on a window of the word")
        return out

    def values(self, letters: np.ndarray, centres: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return self._eval("f", letters, centres), self._eval("g", letters, centres)

    def letter_values(self, letter: int) -> tuple[float, float]:
        if not self.single_letter:
            raise PotentialError("potential is not a single-letter table")
        return float(self.f_constant), float(self.g_table[letter])


# ---------------------------------------------------------------------------
# word sources


@dataclass(frozen=True)
class WordWindow:
    """Finite piece of a two-sided word; ``letters[origin]`` is w(0).

    A periodic window extends itself in both directions.
    """

    letters: np.ndarray
    origin: int = 0
    periodic: bool = False

    def __post_init__(self):
        arr = np.frombuffer(bytes(self.letters), dtype=np.uint8) if isinstance(self.letters, (bytes, bytearray)) else np.asarray(self.letters, dtype=np.uint8)
        object.__setattr__(self, "letters", arr)
        if arr.size == 0:
            raise ArgError("empty word window")

    @classmethod
    def leading(cls, spec: CodingSpec, e: int, radius: int) -> "WordWindow":
        return cls(leading_window(spec, e, radius), radius)

    @classmethod
    def toeplitz(cls, spec: CodingSpec, lo: int, hi: int, fill_letter: int | None = None) -> "WordWindow":
        if lo > 0 or hi < 0:
            raise ArgError("the window must contain position 0")
        return cls(toeplitz_window(spec, lo, hi, fill_letter), -lo)

    @classmethod
    def approximant(cls, spec: CodingSpec, k: int) -> "WordWindow":
        """One period of (p^(k) a_{k+1})^infinity."""
        return cls(block(spec, k) + bytes([spec.letter(k + 1)]), 0, periodic=True)

    @property
    def lo(self) -> int:
        return -self.origin

    @property
    def hi(self) -> int:
        return self.letters.size - 1 - self.origin

    def span(self, lo: int, hi: int) -> np.ndarray:
        """Letters at positions lo..hi inclusive."""
        if self.periodic:
            idx = (np.arange(lo, hi + 1) + self.origin) % self.letters.size
            return self.letters[idx]
        if lo < self.lo or hi > self.hi:
            raise DepthError(f"positions {lo}..{hi} are outside the window {self.lo}..{self.hi}")
        return self.letters[lo + self.origin : hi + self.origin + 1]

    def shifted(self, t: int) -> "WordWindow":
        """The window of S^t w."""
        return WordWindow(self.letters, self.origin + t, self.periodic)


@dataclass(frozen=True)
class TransferContext:
    source: WordWindow
    potential: PotentialSpec
    E: float

    def with_energy(self, E: float) -> "TransferContext":
        return TransferContext(self.source, self.potential, float(E))

    def fg(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        """f and g at S^m w for m = lo..hi."""
        J = self.potential.J
        letters = self.source.span(lo - J, hi + J)
        centres = np.arange(hi - lo + 1) + J
        return self.potential.values(letters, centres)

    def step_arrays(self, i0: int, n: int, modified: bool = True):
        """Entries of T(S^i w) for i = i0 .. i0+n-1 as four arrays."""
        if n <= 0:
            z = np.zeros(0)
            return z, z, z, z
        f, g = self.fg(i0 + 1, i0 + n + 1)
        f1, f2, g1 = f[:-1], f[1:], g[:-1]
        m11 = (self.E - g1) / f2
        if modified:
            return m11, -1.0 / f2, f2.copy(), np.zeros(n)
        return m11, -f1 / f2, np.ones(n), np.zeros(n)


def _step(ctx: TransferContext, j: int, modified: bool) -> Mat2:
    m = ctx.step_arrays(j, 1, modified)
    return Mat2(float(m[0][0]), float(m[1][0]), float(m[2][0]), float(m[3][0]))


def elementary_transfer(ctx: TransferContext, j: int) -> Mat2:
    return _step(ctx, j, modified=False)


def elementary_modified(ctx: TransferContext, j: int) -> Mat2:
    return _step(ctx, j, modified=True)


def _forward(ctx: TransferContext, n: int, start: int, modified: bool) -> Mat2:
    if n == 0:
        return Mat2.identity()
    a, b, c, d, ls = _kernels.ordered_product(*ctx.step_arrays(start, n, modified))
    return Mat2(float(a), float(b), float(c), float(d), float(ls)).normalised()


def _inverse_arrays(m11, m12, m21, m22):
    det = m11 * m22 - m12 * m21
    return m22 / det, -m12 / det, -m21 / det, m11 / det


def _backward(ctx: TransferContext, n: int, start: int, modified: bool) -> Mat2:
    """T(S^{start-n} w)^{-1} ... T(S^{start-1} w)^{-1}."""
    inv = _inverse_arrays(*ctx.step_arrays(start - n, n, modified))
    a, b, c, d, ls = _kernels.ordered_product(*(x[::-1] for x in inv))
    return Mat2(float(a), float(b), float(c), float(d), float(ls)).normalised()


def cocycle_product(ctx: TransferContext, j: int, start: int = 0, modified: bool = True) -> Mat2:
    """A(j, S^start w): T(S^{start+j-1} w) ... T(S^start w) for j > 0,
    the identity for j = 0 and the product of inverses for j < 0."""
    if j >= 0:
        return _forward(ctx, j, start, modified)
    return _backward(ctx, -j, start, modified)


def solve_eigen_iteration(ctx: TransferContext, phi0: SolutionVector, j: int, modified: bool = False) -> SolutionVector:
    """Phi(j) from Phi(0) through the cocycle."""
    return cocycle_product(ctx, j, 0, modified).apply(phi0)


def recurrence_solution(ctx: TransferContext, phi0: SolutionVector, j: int) -> SolutionVector:
    """Phi(j) by iterating the three-term recurrence directly (j >= 0)."""
    if j < 0:
        raise ArgError("the direct recurrence runs forward only")
    if j == 0:
        return phi0
    f, g = ctx.fg(1, j + 1)
    up, lo = phi0.upper, phi0.lower
    ls = phi0.log_scale
    for m in range(j):
        # f(S^{m+2}) phi(m+2) = (E - g(S^{m+1})) phi(m+1) - f(S^{m+1}) phi(m)
        nxt = ((ctx.E - g[m]) * up - f[m] * lo) / f[m + 1]
        up, lo = nxt, up
        s = max(abs(up), abs(lo))
        if s > 1e100 or (0.0 < s < 1e-100):
            up, lo, ls = up / s, lo / s, ls + math.log(s)
    return SolutionVector(up, lo, ls)


# ---------------------------------------------------------------------------
# traces of periodic approximants


def _block_traces(spec: CodingSpec, potential: PotentialSpec, energies: np.ndarray, k: int):
    """tr(A(P_k)) by the block recursion X_{k+1} = X_k (M_a X_k)^{n-1}.

    Only valid when the step matrix depends on one letter.  Returns scaled
    traces and log scales.
    """
    c = potential.f_constant
    g = np.asarray(potential.g_table, dtype=float)
    E = np.asarray(energies, dtype=float)
    one = np.ones_like(E)
    zero = np.zeros_like(E)

    def letter(x):
        return ((E - g[x]) / c, -one / c, one * c, zero.copy(), zero.copy())

    def mul(A, B):
        a, b, cc, d, s = A
        e, f, gg, h, t = B
        r = (a * e + b * gg, a * f + b * h, cc * e + d * gg, cc * f + d * h)
        m = np.maximum(np.maximum(np.abs(r[0]), np.abs(r[1])), np.maximum(np.abs(r[2]), np.abs(r[3])))
        m = np.where(m > 0, m, 1.0)
        return (r[0] / m, r[1] / m, r[2] / m, r[3] / m, s + t + np.log(m))

    X = (one.copy(), zero.copy(), zero.copy(), one.copy(), zero.copy())  # empty word
    for lev in range(k + 1):
        M = letter(spec.letter(lev))
        step = mul(M, X)
        Y = X
        for _ in range(spec.mult(lev) - 1):
            Y = mul(Y, step)
        X = Y
    T = mul(letter(spec.letter(k + 1)), X)
    return T[0] + T[3], T[4]


def _direct_traces(spec: CodingSpec, potential: PotentialSpec, energies: np.ndarray, k: int):
    src = WordWindow.approximant(spec, k)
    P = src.letters.size
    if potential.J == 0 and potential.f_table is not None and potential.f_constant == 1.0:
        gvals = np.asarray(potential.g_table, dtype=float)[src.span(1, P)]
        return _kernels.schrodinger_traces(energies, gvals)
    tr = np.empty(len(energies))
    ls = np.empty(len(energies))
    ctx = TransferContext(src, potential, 0.0)
    for i, E in enumerate(energies):
        m = cocycle_product(ctx.with_energy(E), P)
        tr[i] = m.a11 + m.a22
        ls[i] = m.log_scale
    return tr, ls


def trace_curve(spec: CodingSpec, potential: PotentialSpec, energies, k: int, method: str = "auto"):
    """Scaled traces of the level-k approximant: the trace is ``tr * exp(ls)``."""
    energies = np.atleast_1d(np.asarray(energies, dtype=float))
    spec.require_level(k + 1)
    if method == "auto":
        method = "blocks" if potential.single_letter else "direct"
    if method == "blocks":
        if not potential.single_letter:
            raise PotentialError("the block recursion needs a single-letter potential with constant f")
        return _block_traces(spec, potential, energies, k)
    if method == "direct":
        return _direct_traces(spec, potential, energies, k)
    raise ArgError(f"unknown trace method {method!r}")


def periodic_trace(spec: CodingSpec, potential: PotentialSpec, E: float, k: int, method: str = "auto") -> float:
    """tau_{E,k}: trace of the modified cocycle over one period p^(k) a_{k+1}."""
    tr, ls = trace_curve(spec, potential, [E], k, method)
    return float(tr[0]) * _exp(float(ls[0])) if tr[0] != 0.0 else 0.0


def _mp(tr: float, ls: float) -> mpmath.mpf:
    return mpmath.mpf(tr) * mpmath.exp(mpmath.mpf(ls))


def trace_map_residuals(spec: CodingSpec, potential: PotentialSpec, energies, k_max: int, method: str = "direct") -> np.ndarray:
    """Relative residual of tau_{k+1} = tau_k (tau_{k-1}^2 - 2) - 2 for k = 1..k_max-1.

    Row i, column m holds the residual at k = i+1 for energies[m], divided
    by max(1, |tau_{k+1}|, |tau_k (tau_{k-1}^2 - 2)|).  Huge traces are
    combined in multiprecision so nothing overflows.
    """
    energies = np.atleast_1d(np.asarray(energies, dtype=float))
    taus = [trace_curve(spec, potential, energies, k, method) for k in range(k_max + 1)]
    out = np.zeros((max(k_max - 1, 0), energies.size))
    with mpmath.workdps(40):
        for k in range(1, k_max):
            for m in range(energies.size):
                t0 = _mp(taus[k - 1][0][m], taus[k - 1][1][m])
                t1 = _mp(taus[k][0][m], taus[k][1][m])
                t2 = _mp(taus[k + 1][0][m], taus[k + 1][1][m])
                rhs = t1 * (t0 * t0 - 2)
                scale = max(mpmath.mpf(1), abs(t2), abs(rhs))
                out[k - 1, m] = float(abs(t2 - (rhs - 2)) / scale)
    return out


def escape_table(spec: CodingSpec, potential: PotentialSpec, energies, k_max: int) -> np.ndarray:
    """Boolean array [k, E]: |tau_{E,k}| > 2, computed from log scales."""
    energies = np.atleast_1d(np.asarray(energies, dtype=float))
    rows = []
    for k in range(k_max + 1):
        tr, ls = trace_curve(spec, potential, energies, k)
        with np.errstate(divide="ignore"):
            rows.append(np.log(np.abs(tr)) + ls > math.log(2.0))
    return np.array(rows)


def nesting_violations(spec: CodingSpec, potential: PotentialSpec, energies, j_max: int, span: int = 10) -> list[tuple[int, int, float]]:
    """(j, k, E) where |tau_j|, |tau_{j+1}| > 2 but |tau_k| <= 2 for some j <= k <= j+span."""
    energies = np.atleast_1d(np.asarray(energies, dtype=float))
    esc = escape_table(spec, potential, energies, j_max + span)
    bad = []
    for j in range(j_max + 1):
        start = esc[j] & esc[j + 1]
        for k in range(j, j + span + 1):
            hit = np.nonzero(start & ~esc[k])[0]
            bad.extend((j, k, float(energies[i])) for i in hit)
    return bad


# ---------------------------------------------------------------------------
# spectra of periodic approximants


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi}


def _excess(spec, potential, k, E):
    """(log|tau| - log 2, sign of tau); the first is <= 0 inside the bands."""
    tr, ls = trace_curve(spec, potential, E, k)
    with np.errstate(divide="ignore"):
        return np.log(np.abs(tr)) + ls - math.log(2.0), np.sign(tr)


def spectrum_approx(spec: CodingSpec, potential: PotentialSpec, k: int, E_range: tuple[float, float],
                    grid_n: int = 4001, refine_tol: float = 1e-10) -> list[Interval]:
    """{E : |tau_{E,k}| <= 2} from a grid, refined by bisection.

    tau runs monotonically from +-2 to -+2 across every band, so a sign
    change of tau between two outside grid points still reveals a band
    narrower than the spacing.  Two bands inside one grid cell cancel and
    can be missed.
    """
    lo, hi = float(E_range[0]), float(E_range[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise ArgError(f"degenerate energy range {E_range!r}")
    if grid_n < 2:
        raise ArgError("grid_n must be >= 2")
    if refine_tol <= 0:
        raise ArgError("refine_tol must be > 0")

    def classify(E):
        ex, sg = _excess(spec, potential, k, E)
        return ex <= 0.0, sg

    grid = np.linspace(lo, hi, grid_n)
    inside, sign = classify(grid)
    # hidden bands: tau changes sign between two outside points
    cells = np.nonzero(~inside[:-1] & ~inside[1:] & (sign[:-1] != sign[1:]))[0]
    a, b, sa = grid[cells].copy(), grid[cells + 1].copy(), sign[cells]
    found = np.zeros(cells.size, dtype=bool)
    hits = np.zeros(cells.size)
    while cells.size and not found.all() and np.max(b - a) > refine_tol * 1e-3:
        mid = 0.5 * (a + b)
        m_in, m_sg = classify(mid)
        new = m_in & ~found
        hits[new] = mid[new]
        found |= m_in
        left = m_sg == sa
        a = np.where(left, mid, a)
        b = np.where(left, b, mid)
    if found.any():
        pts = np.concatenate([grid, hits[found]])
        order = np.argsort(pts, kind="stable")
        grid = pts[order]
        inside = np.concatenate([inside, np.ones(int(found.sum()), dtype=bool)])[order]
    flips = np.nonzero(inside[1:] != inside[:-1])[0]
    a = grid[flips].copy()
    b = grid[flips + 1].copy()
    a_in = inside[flips]
    while flips.size and np.max(b - a) > refine_tol:
        mid = 0.5 * (a + b)
        m_in = classify(mid)[0]
        same = m_in == a_in
        a = np.where(same, mid, a)
        b = np.where(same, b, mid)
    edges = 0.5 * (a + b)
    out: list[Interval] = []
    cur = lo if inside[0] else None
    for x, entering in zip(edges.tolist(), (~a_in).tolist()):
        if entering:
            cur = x
        elif cur is not None:
            out.append(Interval(cur, x))
            cur = None
    if cur is not None:
        out.append(Interval(cur, hi))
    return out


def _bisect(fun, a: np.ndarray, b: np.ndarray, tol: float) -> np.ndarray:
    """Vectorised bisection; ``fun(a)`` is assumed True and ``fun(b)`` False."""
    a, b = a.copy(), b.copy()
    while a.size and np.max(np.abs(b - a)) > tol:
        mid = 0.5 * (a + b)
        keep = fun(mid)
        a = np.where(keep, mid, a)
        b = np.where(keep, b, mid)
    return 0.5 * (a + b)


def _bloch_matrix(spec: CodingSpec, potential: PotentialSpec, k: int, phase: complex) -> np.ndarray:
    """Level-k periodic operator on one period with the wrap-around bond
    multiplied by ``phase``."""
    src = WordWindow.approximant(spec, k)
    P = src.letters.size
    f, g = TransferContext(src, potential, 0.0).fg(0, P)  # f(S^n w) couples n-1 and n
    H = np.diag(g[:P]).astype(complex)
    for n in range(1, P):
        H[n, n - 1] = H[n - 1, n] = f[n]
    if P == 1:
        H[0, 0] += 2.0 * (phase * f[P]).real
    else:
        H[P - 1, 0] += phase * f[P]
        H[0, P - 1] += np.conj(phase) * f[P]
    return H


def band_edges(spec: CodingSpec, potential: PotentialSpec, k: int) -> list[Interval]:
    """Bands of the level-k periodic operator from its periodic and
    antiperiodic eigenvalues.  Independent of the transfer matrices."""
    ev = np.sort(np.concatenate([np.linalg.eigvalsh(_bloch_matrix(spec, potential, k, s)) for s in (1.0, -1.0)]))
    return [Interval(float(ev[2 * i]), float(ev[2 * i + 1])) for i in range(ev.size // 2)]


def spectrum_bands(spec: CodingSpec, potential: PotentialSpec, k: int, refine_tol: float = 1e-12) -> list[Interval]:
    """Bands of the level-k approximant, edges located on tau itself.

    Inside every band tau runs monotonically between +-2 and crosses 0 once;
    those crossings are the eigenvalues of the operator with Bloch phase i,
    which separates the bands even when they are far narrower than any
    affordable grid.  Between two consecutive crossings |tau| is unimodal, so
    each gap is found by a golden-section search for its maximum followed by
    bisection of the two edges on |tau| = 2.
    """
    roots = np.sort(np.linalg.eigvalsh(_bloch_matrix(spec, potential, k, 1j)))
    span = float(roots[-1] - roots[0]) + 1.0
    lo, hi = float(roots[0]) - 4.0 * span, float(roots[-1]) + 4.0 * span

    def inside(E):
        return _excess(spec, potential, k, E)[0] <= 0.0

    lefts = [_bisect(lambda E: ~inside(E), np.array([lo]), roots[:1], refine_tol)[0]]
    rights = []
    if roots.size > 1:
        a, b = roots[:-1].copy(), roots[1:].copy()
        golden = (math.sqrt(5.0) - 1.0) / 2.0
        while np.max(b - a) > refine_tol:
            c = b - golden * (b - a)
            d = a + golden * (b - a)
            left = _excess(spec, potential, k, c)[0] > _excess(spec, potential, k, d)[0]
            a, b = np.where(left, a, c), np.where(left, d, b)
        top = 0.5 * (a + b)
        gap = ~inside(top)
        t = top[gap]
        if t.size:
            rights.extend(_bisect(inside, roots[:-1][gap], t, refine_tol).tolist())
            lefts.extend(_bisect(lambda E: ~inside(E), t, roots[1:][gap], refine_tol).tolist())
    rights.append(_bisect(inside, roots[-1:], np.array([hi]), refine_tol)[0])
    return [Interval(float(x), float(y)) for x, y in zip(lefts, rights)]


def measure(intervals: Sequence[Interval]) -> float:
    return float(sum(iv.length for iv in intervals))


def merge_intervals(intervals: Sequence[Interval], tol: float = 0.0) -> list[Interval]:
    out: list[Interval] = []
    for iv in sorted(intervals, key=lambda x: x.lo):
        if out and iv.lo <= out[-1].hi + tol:
            out[-1] = Interval(out[-1].lo, max(out[-1].hi, iv.hi))
        else:
            out.append(iv)
    return out


# ---------------------------------------------------------------------------
# Gordon argument


@dataclass(frozen=True)
class GordonReport:
    l: int
    kind: str
    E: float
    radius: int
    trace: float
    norm_B: float
    sup_step_norm: float
    norm_B_bound: float
    log_norms: dict
    bound_ok: bool
    cayley_hamilton: float
    relation_residual: float
    split_residual: float

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "kind": self.kind,
            "E": self.E,
            "radius": self.radius,
            "trace": self.trace,
            "norm_B": self.norm_B,
            "sup_step_norm": self.sup_step_norm,
            "norm_B_bound": self.norm_B_bound,
            "log_norms": dict(self.log_norms),
            "bound_ok": self.bound_ok,
            "cayley_hamilton": self.cayley_hamilton,
            "relation_residual": _finite_or_none(self.relation_residual),
            "split_residual": _finite_or_none(self.split_residual),
        }


def _finite_or_none(x: float) -> float | None:
    return x if math.isfinite(x) else None


def cayley_hamilton_residual(m: Mat2) -> float:
    """|| M^2 - tr(M) M + det(M) Id || relative to max(|det M|, ||M||^2)."""
    a, b, c, d = m.entries()
    t = a + d
    det = a * d - b * c
    r = np.array([[a * a + b * c - t * a + det, a * b + b * d - t * b], [c * a + d * c - t * c, c * b + d * d - t * d + det]])
    den = max(abs(det), _kernels._norm2(a, b, c, d) ** 2, 1e-300)
    return float(np.abs(r).max() / den)


def _log_add(*xs: float) -> float:
    top = max(xs)
    if top == -math.inf:
        return top
    return top + math.log(sum(math.exp(x - top) for x in xs))


def gordon_verify(ctx: TransferContext, l: int, pattern_kind: str | None = None,
                  phi0: SolutionVector | None = None) -> GordonReport:
    """Check the three-block Gordon bound for a cube of length l at the origin.

    The cocycle is C(S^m w) = T~(S^{m-1} w), which depends on
    w[m-R .. m+R] with R = ``potential.cocycle_radius``; rho = S^R w.
    """
    phi0 = phi0 or SolutionVector(1.0, 0.0)
    if phi0.upper == 0.0 and phi0.lower == 0.0:
        raise ArgError("phi0 must be non-zero")
    src = ctx.source
    origin = src.origin
    try:
        found = {kind for ll, kind in power_scan(src.letters.tobytes(), origin, max_l=l) if ll == l}
    except IndexError:  # pragma: no cover - defensive
        found = set()
    kinds = [x for x in (LEFT3, RIGHT3) if x in found]
    if pattern_kind is not None:
        kinds = [x for x in kinds if x == pattern_kind]
    if not kinds:
        raise PatternError(f"no {pattern_kind or 'cube'} of length {l} at the origin")
    kind = kinds[0]
    if kind == RIGHT3:
        # the right cube is a left cube of S^l w
        ctx = TransferContext(src.shifted(l), ctx.potential, ctx.E)
    R = ctx.potential.cocycle_radius

    def A(n: int, t: int) -> Mat2:
        """A_C(n, S^t rho) in terms of the transfer cocycle."""
        return cocycle_product(ctx, n, start=t + R - 1, modified=True)

    M = A(l, -l + 1)
    # the 4R boundary factors; B is the identity when R = 0
    B = A(2 * R, -2 * R + 1) @ A(2 * R, l - 2 * R + 1).sl2_inverse()
    split = B @ A(l, 1)
    # both are normalised, so this is relative to the largest entry; the
    # boundary blocks overlap when l < 2R and the split does not apply
    if l >= 2 * R:
        split_err = max(abs(x - y * _exp(split.log_scale - M.log_scale)) for x, y in zip(M.entries(), split.entries()))
    else:
        split_err = math.nan

    # sup of ||C|| over the steps that can enter B
    steps = ctx.step_arrays(-l - 2 * R, 2 * l + 4 * R + 1, modified=True)
    S = max(1.0, max(_kernels._norm2(*(float(x[i]) for x in steps)) for i in range(steps[0].size)))

    def phi(j: int) -> SolutionVector:
        return cocycle_product(ctx, j, start=R, modified=True).apply(phi0)

    p_m2, p_m1, p_p1 = phi(-2 * l), phi(-l), phi(l)
    lhs = max(p_m2.log_norm(), p_m1.log_norm(), p_p1.log_norm())
    nB = B.norm()
    rhs = phi0.log_norm() - math.log(2.0 * nB)
    # Phi_0 - tr(M) Phi_{-l} + Phi_{-2l} = 0 (repetition + Cayley/Hamilton)
    tr = M.trace()
    v0 = phi0.values()
    vm1 = p_m1.values()
    vm2 = p_m2.values()
    if all(math.isfinite(x) for x in (tr, *vm1, *vm2)):
        res = np.array(v0) - tr * np.array(vm1) + np.array(vm2)
        den = max(math.hypot(*v0), abs(tr) * math.hypot(*vm1), math.hypot(*vm2))
        rel = float(np.abs(res).max() / den)
    else:
        rel = math.nan
    return GordonReport(
        l=l,
        kind=kind,
        E=ctx.E,
        radius=R,
        trace=tr,
        norm_B=nB,
        sup_step_norm=S,
        norm_B_bound=S ** (4 * R),
        log_norms={"phi(-2l)": p_m2.log_norm(), "phi(-l)": p_m1.log_norm(), "phi(l)": p_p1.log_norm(), "phi(0)": phi0.log_norm()},
        bound_ok=bool(lhs >= rhs - 1e-12) and nB <= S ** (4 * R) * (1 + 1e-9),
        cayley_hamilton=cayley_hamilton_residual(M),
        relation_residual=rel,
        split_residual=float(split_err),
    )


def cube_lengths(window: WordWindow, max_l: int) -> list[tuple[int, str]]:
    """Cubes LEFT3/RIGHT3 touching the origin."""
    return [(l, kind) for l, kind in power_scan(window.letters.tobytes(), window.origin, max_l) if kind in (LEFT3, RIGHT3)]


# ---------------------------------------------------------------------------
# Lyapunov averages


@dataclass(frozen=True)
class LyapunovSeries:
    j: np.ndarray
    forward: np.ndarray | None
    backward: np.ndarray | None

    def rows(self) -> list[tuple]:
        out = []
        for i, j in enumerate(self.j.tolist()):
            out.append((j, None if self.forward is None else float(self.forward[i]), None if self.backward is None else float(self.backward[i])))
        return out


def lyapunov_sequence(ctx: TransferContext, j_max: int, direction: str = "both", stride: int = 1,
                      modified: bool = True) -> LyapunovSeries:
    """(1/j) ln ||A(+-j, w)|| for j = stride, 2 stride, ..., j_max."""
    if j_max < 1:
        raise ArgError("j_max must be >= 1")
    if direction not in ("forward", "backward", "both"):
        raise ArgError(f"unknown direction {direction!r}")
    js = np.arange(stride, j_max + 1, stride, dtype=np.int64)
    fwd = bwd = None
    if direction in ("forward", "both"):
        series = _kernels.log_norm_series(*ctx.step_arrays(0, j_max, modified))
        fwd = series[js - 1] / js
    if direction in ("backward", "both"):
        m = ctx.step_arrays(-j_max, j_max, modified)
        inv = _inverse_arrays(*m)
        # A(-j) = T(S^{-j})^{-1} ... T(S^{-1})^{-1}: apply S^{-1} first
        series = _kernels.log_norm_series(*(x[::-1] for x in inv))
        bwd = series[js - 1] / js
    return LyapunovSeries(js, fwd, bwd)


# ---------------------------------------------------------------------------
# (PQ) diagnostic


def pq_diagnostic(spec: CodingSpec | SturmianSpec, j_list: Sequence[int], L: int) -> list[tuple[int, Fraction]]:
    """(j, (j/L) * #disjoint copies of prefix_j in prefix_L), exactly."""
    if L < 1:
        raise ArgError("L must be >= 1")
    if any(j < 1 or j > L for j in j_list):
        raise ArgError("need 1 <= j <= L")
    word = limit_prefix(spec, L)
    if len(word) < L:  # pragma: no cover - limit_prefix always delivers
        raise DepthError("prefix too short")
    return [(j, Fraction(j, L) * count_copies(word[:j], word).disjoint) for j in j_list]
