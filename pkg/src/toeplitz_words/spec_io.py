"""Reading and writing coding data as JSON.

Letters are written by name.  A file either describes a Toeplitz coding
(``alphabet``, ``a``, ``n`` and optionally ``r`` and ``tail``) or a Sturmian
one (``cf`` and optionally ``tail``).
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .core_words import Alphabet, CodingSpec, PeriodicTail, SquareGapTail, SturmianSpec
from .errors import SpecError

BUNDLED = ("period_doubling", "grigorchuk", "gen_grigorchuk", "nonb", "fibonacci")


def _need(obj: dict, key: str, path: str):
    if key not in obj:
        raise SpecError(f"{path}{key}: missing field")
    return obj[key]


def _int_list(value, path: str) -> list[int]:
    if not isinstance(value, list):
        raise SpecError(f"{path}: expected a list of integers")
    out = []
    for i, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, int):
            raise SpecError(f"{path}[{i}]: expected an integer, got {x!r}")
        out.append(x)
    return out


def _letters(value, alphabet: Alphabet, path: str) -> list[int]:
    if not isinstance(value, list):
        raise SpecError(f"{path}: expected a list of letters")
    out = []
    for i, x in enumerate(value):
        try:
            out.append(alphabet.id(str(x)))
        except SpecError:
            raise SpecError(f"{path}[{i}]: {x!r} is not in the alphabet {list(alphabet.letters)}") from None
    return out


def _check_multipliers(values: list[int], path: str) -> None:
    for i, x in enumerate(values):
        if x < 2:
            raise SpecError(f"{path}[{i}]: n_k >= 2 required, got {x}")


def _tail(data, alphabet: Alphabet):
    if not isinstance(data, dict):
        raise SpecError("tail: expected an object")
    kind = data.get("kind", "periodic")
    if kind == "periodic":
        period_n = _int_list(_need(data, "period_n", "tail."), "tail.period_n")
        _check_multipliers(period_n, "tail.period_n")
        period_r = data.get("period_r")
        return PeriodicTail(
            int(data.get("preperiod", 0)),
            tuple(_letters(_need(data, "period_a", "tail."), alphabet, "tail.period_a")),
            tuple(period_n),
            None if period_r is None else tuple(_int_list(period_r, "tail.period_r")),
        )
    if kind == "square_gaps":
        n = data.get("n", 2)
        if not isinstance(n, int) or n < 2:
            raise SpecError("tail.n: n_k >= 2 required")
        return SquareGapTail(
            tuple(_letters(_need(data, "fill", "tail."), alphabet, "tail.fill")),
            tuple(_letters(_need(data, "separators", "tail."), alphabet, "tail.separators")),
            n,
        )
    raise SpecError(f"tail.kind: unknown tail kind {kind!r}")


def spec_from_json(data: dict) -> CodingSpec | SturmianSpec:
    if not isinstance(data, dict):
        raise SpecError("top level: expected an object")
    name = str(data.get("name", ""))
    if "cf" in data:
        tail = data.get("tail")
        return SturmianSpec(
            tuple(_int_list(data["cf"], "cf")),
            None if tail is None else tuple(_int_list(tail, "tail")),
            name,
        )
    alphabet = Alphabet(tuple(str(x) for x in _need(data, "alphabet", "")))
    a = _letters(data.get("a", []), alphabet, "a")
    n = _int_list(data.get("n", []), "n")
    _check_multipliers(n, "n")
    for k in range(len(a) - 1):
        if a[k] == a[k + 1] and data.get("strict", True):
            raise SpecError(f"a[{k + 1}]: a_k != a_(k+1) required, both are {alphabet.name(a[k])!r}")
    r = data.get("r")
    tail = data.get("tail")
    return CodingSpec(
        alphabet,
        tuple(a),
        tuple(n),
        None if r is None else tuple(_int_list(r, "r")),
        None if tail is None else _tail(tail, alphabet),
        name,
        bool(data.get("strict", True)),
    )


def parse_spec_text(text: str, source: str = "<string>") -> CodingSpec | SturmianSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return spec_from_json(data)
    except SpecError as exc:
        raise SpecError(f"{source}: {exc}") from None


def bundled_path(name: str) -> Path:
    if name not in BUNDLED:
        raise SpecError(f"no bundled spec called {name!r}; choose from {', '.join(BUNDLED)}")
    return Path(str(resources.files("toeplitz_words") / "specs" / f"{name}.json"))


def parse_spec_file(path: str) -> CodingSpec | SturmianSpec:
    """Load a spec from a path, or by bundled name (``grigorchuk``...)."""
    p = Path(path)
    if not p.exists():
        stem = p.name[:-5] if p.name.endswith(".json") else p.name
        if stem in BUNDLED and p.parent == Path("."):
            p = bundled_path(stem)
    text = p.read_text(encoding="utf-8")
    return parse_spec_text(text, str(path))


def spec_to_json(spec: CodingSpec | SturmianSpec) -> str:
    return json.dumps(spec.to_json(), indent=2, sort_keys=True) + "\n"
