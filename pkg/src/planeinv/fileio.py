"""JSON file formats: configurations, invariant vectors, letter grids.

All rational values are serialized as reduced strings "p/q" (denominator
omitted when it is 1) -- never floats, so parse/serialize roundtrips are
lossless.  Files are UTF-8, keys in a fixed order, newline-terminated, and
written atomically (temp file + rename), so a failed command never leaves a
partial output file behind.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction

from .divisible import ReducedDivisible
from .errors import RankDeficientError
from .grassmann import Config, Subspace
from .linalg import Mat
from .words import InvariantVector


def format_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(value) -> Fraction:
    if isinstance(value, bool):
        raise ValueError(f"not a rational value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational value: {value!r} ({exc})") from None
    raise ValueError(f"not a rational value: {value!r}")


def _parse_matrix(rows, nrows: int, ncols: int, what: str) -> Mat:
    if (
        not isinstance(rows, list)
        or len(rows) != nrows
        or any(not isinstance(r, list) or len(r) != ncols for r in rows)
    ):
        raise ValueError(f"{what} must be {nrows} rows x {ncols} columns")
    return Mat([[parse_rat(x) for x in row] for row in rows])


def _format_matrix(m: Mat) -> list[list[str]]:
    return [[format_rat(x) for x in row] for row in m.data]


def config_to_obj(config: Config) -> dict:
    return {
        "n": config.n,
        "d": config.d,
        "subspaces": [_format_matrix(sub.basis) for sub in config],
    }


def config_from_obj(obj) -> Config:
    if not isinstance(obj, dict):
        raise ValueError("configuration file must contain a JSON object")
    for key in ("n", "d", "subspaces"):
        if key not in obj:
            raise ValueError(f"configuration file is missing the '{key}' field")
    n, d, subs = obj["n"], obj["d"], obj["subspaces"]
    if not (isinstance(n, int) and isinstance(d, int) and 1 <= d < n):
        raise ValueError(f"need integers 1 <= d < n, got n={n!r}, d={d!r}")
    if not isinstance(subs, list) or not subs:
        raise ValueError("'subspaces' must be a nonempty array")
    out = []
    for i, rows in enumerate(subs, start=1):
        basis = _parse_matrix(rows, n, d, f"subspace {i}")
        try:
            out.append(Subspace(basis))
        except RankDeficientError as exc:
            raise ValueError(f"subspace {i}: {exc}") from None
    return Config(out)


def invariants_to_obj(vec: InvariantVector) -> dict:
    case = {
        "kind": vec.case.kind,
        "r": vec.case.r,
        "e": vec.case.e,
        "k": len(vec.letter_ids),
    }
    obj = {
        "case": case,
        "n": vec.n,
        "d": vec.d,
        "s": vec.s,
        "max_word_len": vec.max_word_len,
        "letters": list(vec.letter_ids),
        "invariants": [
            {
                "word": [vec.letter_ids[k] for k in word],
                "value": format_rat(value),
            }
            for word, value in vec.entries
        ],
    }
    if not vec.letter_ids:
        obj["note"] = (
            "trivial range: every general-position configuration of this shape "
            "lies in one dense orbit, so there are no invariants"
        )
    return obj


def letters_to_obj(rd: ReducedDivisible) -> dict:
    return {
        "kind": "divisible",
        "d": rd.d,
        "r": rd.r,
        "s": rd.s,
        "letters": {
            f"G_{i}_{j}": _format_matrix(rd.letter(i, j))
            for i in range(2, rd.r + 1)
            for j in range(2, rd.s - rd.r + 1)
        },
    }


def letters_from_obj(obj) -> ReducedDivisible:
    if not isinstance(obj, dict):
        raise ValueError("letters file must contain a JSON object")
    if obj.get("kind", "divisible") != "divisible":
        raise ValueError("only divisible-case letter grids can be embedded")
    for key in ("d", "r", "s", "letters"):
        if key not in obj:
            raise ValueError(f"letters file is missing the '{key}' field")
    d, r, s, letters = obj["d"], obj["r"], obj["s"], obj["letters"]
    if not (isinstance(d, int) and d >= 1 and isinstance(r, int) and r >= 2):
        raise ValueError("need integers d >= 1 and r >= 2")
    if not (isinstance(s, int) and s >= r + 1):
        raise ValueError("need an integer s >= r + 1")
    if not isinstance(letters, dict):
        raise ValueError("'letters' must be an object keyed by letter id")
    expected = {
        f"G_{i}_{j}" for i in range(2, r + 1) for j in range(2, s - r + 1)
    }
    if set(letters) != expected:
        missing = sorted(expected - set(letters))
        extra = sorted(set(letters) - expected)
        raise ValueError(
            f"letter ids do not match the (r, s) grid; missing {missing}, unexpected {extra}"
        )
    grid = tuple(
        tuple(
            _parse_matrix(letters[f"G_{i}_{j}"], d, d, f"letter G_{i}_{j}")
            for j in range(2, s - r + 1)
        )
        for i in range(2, r + 1)
    )
    return ReducedDivisible(d=d, r=r, s=s, grid=grid)


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from None


def write_json(path: str, obj) -> None:
    """Serialize and atomically replace ``path`` (no partial files on failure)."""
    text = json.dumps(obj, ensure_ascii=False, indent=2) + "\n"
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
