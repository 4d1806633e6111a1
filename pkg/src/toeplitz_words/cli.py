"""Command line front end: ``toeplitz-words <command> --spec FILE ...``.

Exit codes: 0 ok, 2 bad spec or arguments, 3 depth/range exhausted,
4 verification failure, 5 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from .closed_forms import (
    boshernitzan_verdict,
    complexity_value,
    growth_formula,
    palindrome_value,
    repetitivity_first_covered,
    repetitivity_value,
    repetitivity_class,
)
from .core_words import CodingSpec, SturmianSpec, block, rotation_word, sturmian_blocks
from .debruijn import (
    build_graph,
    graph_stats,
    graph_to_dot,
    graph_to_json,
    palindrome_count_from_graph,
    reversal_is_isomorphism,
)
from .errors import ArgError, BoundExceeded, ToeplitzError
from .language_oracle import collect_language, limit_prefix, repetitivity_oracle
from .spec_io import parse_spec_file
from .spectral import (
    PotentialSpec,
    SolutionVector,
    TransferContext,
    WordWindow,
    band_edges,
    cocycle_product,
    cube_lengths,
    elementary_modified,
    gordon_verify,
    lyapunov_sequence,
    measure,
    merge_intervals,
    nesting_violations,
    pq_diagnostic,
    recurrence_solution,
    solve_eigen_iteration,
    spectrum_approx,
    spectrum_bands,
    trace_curve,
    trace_map_residuals,
)

EXIT_OK, EXIT_SPEC, EXIT_DEPTH, EXIT_VERIFY, EXIT_IO = 0, 2, 3, 4, 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ArgError(message)


# ---------------------------------------------------------------------------
# output helpers


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if x is None else x for x in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    tmp = f"{out}.tmp-{os.getpid()}"
    try:
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, out)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def _coding(spec) -> CodingSpec:
    if not isinstance(spec, CodingSpec):
        raise ArgError("this command needs a Toeplitz coding, not a Sturmian one")
    return spec


def _table_values(text: str | None, spec, default) -> list[float]:
    """Parse ``a=0,b=1`` into a per-letter table."""
    names = spec.alphabet.letters
    table = [default(i) for i in range(len(names))]
    if not text:
        return table
    for item in text.split(","):
        if "=" not in item:
            raise ArgError(f"expected letter=value, got {item!r}")
        key, val = item.split("=", 1)
        try:
            table[spec.alphabet.id(key.strip())] = float(val)
        except ValueError:
            raise ArgError(f"bad value in {item!r}") from None
    return table


def _potential(args, spec) -> PotentialSpec:
    g = _table_values(args.g, spec, float)
    f = _table_values(args.f, spec, lambda i: 1.0)
    return PotentialSpec.letter_table(g, f)


def _leading_letter(args, spec: CodingSpec) -> int:
    if args.letter is None:
        return _first_recurrent(spec)
    return spec.alphabet.id(args.letter)


def _first_recurrent(spec: CodingSpec) -> int:
    if spec.tail is None:
        raise ArgError("leading words need a spec with an infinite tail")
    return min(spec.tail.eventual_letters())


# ---------------------------------------------------------------------------
# commands


def cmd_blocks(args, spec) -> int:
    if isinstance(spec, SturmianSpec):
        s, p = sturmian_blocks(spec, args.k)
        rows = [(k, len(s[k]), spec.alphabet.render(s[k]), "" if k not in p else spec.alphabet.render(p[k])) for k in range(args.k + 1)]
        _emit(_csv(("k", "len_s", "s", "p"), rows), args.out)
        return EXIT_OK
    rows = []
    for k in range(-1, args.k + 1):
        w = block(spec, k) if k >= 0 else b""
        rows.append((k, spec.block_length(k), spec.alphabet.render(w) if len(w) <= args.max_print else ""))
    _emit(_csv(("k", "length", "block"), rows), args.out)
    return EXIT_OK


def _series(args, spec, name):
    idx = collect_language(spec, args.max_L + 1) if args.mode in ("oracle", "both") else None
    rows = []
    mismatch = False
    for L in range(0, args.max_L + 1):
        formula = branch = oracle = None
        if args.mode in ("formula", "both"):
            if isinstance(spec, SturmianSpec):
                formula, branch = L + 1, "sturmian"
            else:
                fv = complexity_value(spec, L) if name == "complexity" else palindrome_value(spec, L)
                formula, branch = fv.value, fv.branch
        if idx is not None:
            oracle = idx.complexity(L) if name == "complexity" else idx.palindromes(L)
        if formula is not None and oracle is not None and formula != oracle:
            mismatch = True
        rows.append((L, formula, oracle, branch))
    return rows, mismatch


def cmd_complexity(args, spec) -> int:
    rows, bad = _series(args, spec, "complexity")
    if args.format == "json":
        _emit(_json([{"L": r[0], "formula": r[1], "oracle": r[2], "branch": r[3]} for r in rows]), args.out)
    else:
        _emit(_csv(("L", "formula", "oracle", "branch"), rows), args.out)
    return EXIT_VERIFY if bad else EXIT_OK


def cmd_palindromes(args, spec) -> int:
    rows, bad = _series(args, _coding(spec), "palindromes")
    if args.format == "json":
        _emit(_json([{"L": r[0], "formula": r[1], "oracle": r[2], "branch": r[3]} for r in rows]), args.out)
    else:
        _emit(_csv(("L", "formula", "oracle", "branch"), rows), args.out)
    return EXIT_VERIFY if bad else EXIT_OK


def cmd_repetitivity(args, spec) -> int:
    spec = _coding(spec)
    lo = repetitivity_first_covered(spec)
    rows = []
    bad = False
    idx = None
    if args.mode in ("oracle", "both"):
        idx = collect_language(spec, args.oracle_L)
    for L in range(max(1, args.min_L), args.max_L + 1):
        formula = oracle = branch = None
        if args.mode in ("formula", "both") and L >= lo:
            fv = repetitivity_value(spec, L)
            formula, branch = fv.value, fv.branch
        if idx is not None:
            try:
                oracle = repetitivity_oracle(spec, L, idx)
            except BoundExceeded:
                oracle = None
        if formula is not None and oracle is not None and formula != oracle:
            bad = True
        rows.append((L, formula, oracle, branch))
    _emit(_csv(("L", "formula", "oracle", "branch"), rows), args.out)
    return EXIT_VERIFY if bad else EXIT_OK


def cmd_debruijn(args, spec) -> int:
    idx = collect_language(spec, args.L + 2)
    g = build_graph(idx, args.L)
    if args.format == "dot":
        if not g.edges:
            raise ArgError("graph has no edges")
        _emit(graph_to_dot(g), args.out)
    elif args.format == "json":
        _emit(_json(graph_to_json(g)), args.out)
    else:
        st = graph_stats(g)
        d = st.as_dict(g)
        d["reversal_isomorphism"] = reversal_is_isomorphism(g)
        d["palindromes"] = idx.palindromes(args.L)
        d["palindromes_from_graph"] = palindrome_count_from_graph(g, st)
        _emit(_json(d), args.out)
    return EXIT_OK


def cmd_verdicts(args, spec) -> int:
    spec = _coding(spec)
    out = {"boshernitzan": boshernitzan_verdict(spec, args.terms).to_json(), "repetitivity": []}
    for a in args.alpha:
        out["repetitivity"].append(repetitivity_class(spec, Fraction(a), args.terms))
    _emit(_json(out), args.out)
    return EXIT_OK


def cmd_spectrum(args, spec) -> int:
    spec = _coding(spec)
    V = _potential(args, spec)
    if args.curve:
        E = np.linspace(args.E_min, args.E_max, args.grid)
        tr, ls = trace_curve(spec, V, E, args.k)
        rows = []
        for e, t, s in zip(E.tolist(), tr.tolist(), ls.tolist()):
            val = t * math.exp(s) if s < 700 else math.copysign(math.inf, t)
            rows.append((repr(e), repr(val)))
        _emit(_csv(("E", "tau"), rows), args.out)
        return EXIT_OK
    if args.method == "eigen":
        ivs = merge_intervals(band_edges(spec, V, args.k))
    elif args.method == "bands":
        ivs = spectrum_bands(spec, V, args.k, args.tol)
    else:
        ivs = spectrum_approx(spec, V, args.k, (args.E_min, args.E_max), args.grid, args.tol)
    _emit(_json({"k": args.k, "method": args.method, "intervals": [iv.to_json() for iv in ivs], "measure": measure(ivs)}), args.out)
    return EXIT_OK


def cmd_tracemap(args, spec) -> int:
    spec = _coding(spec)
    V = _potential(args, spec)
    rng = np.random.default_rng(args.seed)
    E = np.sort(rng.uniform(args.E_min, args.E_max, args.samples))
    res = trace_map_residuals(spec, V, E, args.k_max)
    rows = [(k + 1, repr(float(res[k].max()))) for k in range(res.shape[0])]
    worst = float(res.max()) if res.size else 0.0
    viol = nesting_violations(spec, V, np.linspace(args.E_min, args.E_max, args.nest_grid), args.nest_j)
    rows.append(("nesting_violations", len(viol)))
    _emit(_csv(("k", "max_relative_residual"), rows), args.out)
    return EXIT_VERIFY if worst > args.tol or viol else EXIT_OK


def cmd_lyapunov(args, spec) -> int:
    spec = _coding(spec)
    V = _potential(args, spec)
    src = WordWindow.leading(spec, _leading_letter(args, spec), args.j_max + 2 * V.J + 4)
    s = lyapunov_sequence(TransferContext(src, V, args.E), args.j_max, args.direction, args.stride)
    _emit(_csv(("j", "forward", "backward"), [(j, None if f is None else repr(f), None if b is None else repr(b)) for j, f, b in s.rows()]), args.out)
    return EXIT_OK


def cmd_gordon(args, spec) -> int:
    spec = _coding(spec)
    V = _potential(args, spec)
    e = _leading_letter(args, spec)
    src = WordWindow.leading(spec, e, 3 * args.max_l + 8)
    rng = np.random.default_rng(args.seed)
    energies = rng.uniform(args.E_min, args.E_max, args.samples)
    reports = []
    ok = True
    lengths = cube_lengths(src, args.max_l) if args.l is None else [(args.l, None)]
    for l, kind in lengths:
        for E in energies:
            r = gordon_verify(TransferContext(src, V, float(E)), l, kind)
            ok &= r.bound_ok and r.cayley_hamilton <= 1e-9
            reports.append(r.to_json())
    _emit(_json({"letter": spec.alphabet.name(e), "reports": reports, "all_ok": ok}), args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_pq(args, spec) -> int:
    if isinstance(spec, SturmianSpec):
        s, _ = sturmian_blocks(spec, max(args.j_level, args.L_level))
        j_max, L = len(s[args.j_level]), len(s[args.L_level])
    else:
        j_max, L = spec.block_length(args.j_level), spec.block_length(args.L_level)
    vals = pq_diagnostic(spec, range(1, j_max + 1), L)
    _emit(_csv(("j", "value", "float"), [(j, str(v), repr(float(v))) for j, v in vals]), args.out)
    return EXIT_OK


def cmd_sturmian(args, spec) -> int:
    if not isinstance(spec, SturmianSpec):
        raise ArgError("sturmian needs a continued-fraction spec")
    s, p = sturmian_blocks(spec, args.k)
    n = len(s[args.k])
    rot = rotation_word(spec, 0, n)
    lim = limit_prefix(spec, n)
    out = {
        "k": args.k,
        "length": n,
        "rotation_equals_blocks": rot == lim,
        "prefix": spec.alphabet.render(lim[: args.max_print]),
    }
    _emit(_json(out), args.out)
    return EXIT_OK if rot == lim else EXIT_VERIFY


# ---------------------------------------------------------------------------
# verify


@dataclass
class Check:
    name: str
    ok: bool | None  # None: skipped
    detail: str = ""

    @property
    def status(self) -> str:
        return "SKIP" if self.ok is None else ("PASS" if self.ok else "FAIL")


def _verify_coding(spec: CodingSpec, depth: int) -> list[Check]:
    checks = []
    L_top = spec.block_length(depth) + 1
    idx = collect_language(spec, L_top + 1)
    bad = [L for L in range(L_top + 1) if complexity_value(spec, L).value != idx.complexity(L)]
    checks.append(Check("complexity formula = oracle", not bad, f"L <= {L_top}, mismatches {bad[:5]}"))
    bad = [L for L in range(L_top) if growth_formula(spec, L) != idx.growth(L)]
    checks.append(Check("growth formula = oracle", not bad, f"mismatches {bad[:5]}"))
    bad = [L for L in range(L_top + 1) if palindrome_value(spec, L).value != idx.palindromes(L)]
    checks.append(Check("palindrome formula = oracle", not bad, f"mismatches {bad[:5]}"))
    lo = repetitivity_first_covered(spec)
    bad, tested = [], 0
    big = collect_language(spec, 16 * L_top)
    for L in range(lo, L_top + 1):
        try:
            o = big.repetitivity(L)
        except BoundExceeded:
            break
        tested += 1
        if repetitivity_value(spec, L).value != o:
            bad.append(L)
    if tested:
        checks.append(Check("repetitivity formula = oracle", not bad, f"{tested} values from L={lo}, mismatches {bad[:5]}"))
    else:
        checks.append(Check("repetitivity formula = oracle", None, f"oracle bound exceeded already at L={lo}"))
    probs = []
    for L in range(0, min(32, idx.max_valid_L - 1) + 1):
        g = build_graph(idx, L)
        st = graph_stats(g)
        if len(g.vertices) != idx.complexity(L) or len(g.edges) != idx.complexity(L + 1):
            probs.append((L, "size"))
        if {g.vertices[v] for v in st.branch_vertices} != {u for u, _ in idx.right_special_words(L)}:
            probs.append((L, "branch"))
        if not reversal_is_isomorphism(g):
            probs.append((L, "reversal"))
        if palindrome_count_from_graph(g, st) != idx.palindromes(L):
            probs.append((L, "palindromes"))
    checks.append(Check("de Bruijn structure", not probs, f"problems {probs[:5]}"))
    checks.extend(_verify_spectral(spec))
    return checks


def _verify_spectral(spec: CodingSpec) -> list[Check]:
    checks = []
    rng = np.random.default_rng(12345)
    size = len(spec.alphabet)
    V = PotentialSpec.letter_table([float(i) for i in range(size)], [1.0 + 0.25 * i for i in range(size)])
    e = _first_recurrent(spec)
    src = WordWindow.leading(spec, e, 600)
    ctx = TransferContext(src, V, 0.4)
    det = max(abs(elementary_modified(ctx.with_energy(E), j).det() - 1.0) for E in rng.uniform(-4, 4, 10) for j in range(-100, 100, 7))
    checks.append(Check("det of modified transfer matrix = 1", det <= 1e-14, f"max deviation {det:.2e}"))
    worst = 0.0
    for _ in range(20):
        s, t = (int(x) for x in rng.integers(-200, 201, 2))
        lhs = cocycle_product(ctx, s)
        a, b = cocycle_product(ctx, s - t, start=t), cocycle_product(ctx, t)
        rhs = a @ b
        scale = math.exp(a.log_norm() + b.log_norm() - lhs.log_scale)
        diff = max(abs(x - y * math.exp(rhs.log_scale - lhs.log_scale)) for x, y in zip(lhs.entries(), rhs.entries()))
        worst = max(worst, diff / scale)
    checks.append(Check("composition law", worst <= 1e-12, f"max residual {worst:.2e}"))
    worst = max(abs(cocycle_product(ctx, -j).log_norm() - cocycle_product(ctx, j, start=-j).log_norm()) for j in range(1, 200, 9))
    checks.append(Check("inverse norm identity", worst <= 1e-10, f"max log difference {worst:.2e}"))
    a = solve_eigen_iteration(ctx, SolutionVector(1.0, 0.5), 500)
    b = recurrence_solution(ctx, SolutionVector(1.0, 0.5), 500)
    rel = max(abs(x - y * math.exp(b.log_scale - a.log_scale)) for x, y in zip((a.upper, a.lower), (b.upper, b.lower)))
    checks.append(Check("cocycle = recurrence", rel <= 1e-10, f"relative difference {rel:.2e}"))
    S = PotentialSpec.schrodinger([float(i) for i in range(size)])
    worst_ch, ok = 0.0, True
    for l, kind in cube_lengths(src, 128):
        for E in rng.uniform(-2, 3, 5):
            r = gordon_verify(TransferContext(src, S, float(E)), l, kind)
            worst_ch = max(worst_ch, r.cayley_hamilton)
            ok &= r.bound_ok
    checks.append(Check("Gordon bound and Cayley/Hamilton", ok and worst_ch <= 1e-9, f"max residual {worst_ch:.2e}"))
    if size == 2 and all(spec.mult(k) == 2 for k in range(40)):
        res = trace_map_residuals(spec, S, rng.uniform(-5, 5, 20), 10)
        checks.append(Check("trace map recursion", float(res.max()) <= 1e-9, f"max residual {float(res.max()):.2e}"))
        viol = nesting_violations(spec, S, np.linspace(-3, 4, 2000), 6)
        checks.append(Check("non-escaping nesting", not viol, f"{len(viol)} violations"))
    return checks


def _verify_sturmian(spec: SturmianSpec, depth: int) -> list[Check]:
    checks = []
    s, p = sturmian_blocks(spec, depth + 1)
    n = len(s[depth])
    checks.append(Check("rotation word = block limit", rotation_word(spec, 0, n) == limit_prefix(spec, n), f"length {n}"))
    idx = collect_language(spec, min(n, 200) + 1)
    bad = [L for L in range(min(n, 200) + 1) if idx.complexity(L) != L + 1]
    checks.append(Check("complexity L+1", not bad, f"mismatches {bad[:5]}"))
    checks.append(Check("p^(k) palindromes", all(p[k] == p[k][::-1] for k in p), ""))
    checks.append(Check("s_k p^(k+1) = s_(k+1) p^(k)", all(s[k] + p[k + 1] == s[k + 1] + p[k] for k in range(2, depth)), ""))
    return checks


def cmd_verify(args, spec) -> int:
    if isinstance(spec, SturmianSpec):
        checks = _verify_sturmian(spec, args.depth)
    else:
        checks = _verify_coding(spec, args.depth)
    lines = [f"{c.status}  {c.name}  {c.detail}".rstrip() for c in checks]
    failed = sum(c.ok is False for c in checks)
    skipped = sum(c.ok is None for c in checks)
    lines.append(f"{len(checks) - failed - skipped} passed, {failed} failed, {skipped} skipped")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_VERIFY if failed else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_potential(p):
    p.add_argument("--g", help="diagonal values per letter, e.g. a=0,b=1 (default: letter index)")
    p.add_argument("--f", help="off-diagonal values per letter (default: 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toeplitz-words", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--spec", required=True, help="JSON spec file or bundled name")
        p.add_argument("--out", default="-", help="output file (default stdout)")
        p.set_defaults(func=fn)
        return p

    p = cmd("blocks", cmd_blocks, "palindromic blocks p^(k)")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--max-print", type=int, default=4096)

    for name, fn in (("complexity", cmd_complexity), ("palindromes", cmd_palindromes)):
        p = cmd(name, fn, f"{name} table")
        p.add_argument("--max-L", dest="max_L", type=int, default=32)
        p.add_argument("--mode", choices=("formula", "oracle", "both"), default="both")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = cmd("repetitivity", cmd_repetitivity, "repetitivity table")
    p.add_argument("--min-L", dest="min_L", type=int, default=1)
    p.add_argument("--max-L", dest="max_L", type=int, default=32)
    p.add_argument("--oracle-L", dest="oracle_L", type=int, default=4096, help="length the oracle index is built for")
    p.add_argument("--mode", choices=("formula", "oracle", "both"), default="both")

    p = cmd("debruijn", cmd_debruijn, "de Bruijn graph export")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--format", choices=("dot", "json", "stats"), default="dot")

    p = cmd("verdicts", cmd_verdicts, "Boshernitzan and repetitivity verdicts")
    p.add_argument("--alpha", nargs="*", default=["1", "3/2", "2"])
    p.add_argument("--terms", type=int, default=8)

    p = cmd("spectrum", cmd_spectrum, "spectra of periodic approximants")
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--E-min", dest="E_min", type=float, default=-3.0)
    p.add_argument("--E-max", dest="E_max", type=float, default=4.0)
    p.add_argument("--grid", type=int, default=4001)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--method", choices=("grid", "bands", "eigen"), default="grid")
    p.add_argument("--curve", action="store_true", help="emit (E, tau) samples instead of intervals")
    _add_potential(p)

    p = cmd("tracemap", cmd_tracemap, "trace map residuals and nesting")
    p.add_argument("--k-max", dest="k_max", type=int, default=12)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--E-min", dest="E_min", type=float, default=-5.0)
    p.add_argument("--E-max", dest="E_max", type=float, default=5.0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--nest-grid", dest="nest_grid", type=int, default=10000)
    p.add_argument("--nest-j", dest="nest_j", type=int, default=10)
    _add_potential(p)

    p = cmd("lyapunov", cmd_lyapunov, "finite-scale Lyapunov averages")
    p.add_argument("--E", type=float, required=True)
    p.add_argument("--j-max", dest="j_max", type=int, default=10000)
    p.add_argument("--stride", type=int, default=100)
    p.add_argument("--direction", choices=("forward", "backward", "both"), default="both")
    p.add_argument("--letter", help="letter at the origin of the leading word")
    _add_potential(p)

    p = cmd("gordon", cmd_gordon, "three-block Gordon bound on a leading word")
    p.add_argument("--letter", help="letter at the origin of the leading word")
    p.add_argument("--l", type=int, help="cube length (default: every cube up to --max-l)")
    p.add_argument("--max-l", dest="max_l", type=int, default=128)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--E-min", dest="E_min", type=float, default=-3.0)
    p.add_argument("--E-max", dest="E_max", type=float, default=4.0)
    _add_potential(p)

    p = cmd("pq", cmd_pq, "(PQ) quasiweight diagnostic")
    p.add_argument("--j-level", dest="j_level", type=int, default=3)
    p.add_argument("--L-level", dest="L_level", type=int, default=6)

    p = cmd("sturmian", cmd_sturmian, "Sturmian blocks against the rotation coding")
    p.add_argument("--k", type=int, default=8)
    p.add_argument("--max-print", type=int, default=80)

    p = cmd("verify", cmd_verify, "formula-vs-oracle and spectral identity checks")
    p.add_argument("--depth", type=int, default=5)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        spec = parse_spec_file(args.spec)
        return args.func(args, spec)
    except ToeplitzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
