"""JSON formats: subalgebra files (exact rationals) and command reports."""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from typing import Any

from .errors import NotInAlgebra, ParseError
from .exact_linalg import ExactMatrix, GaussianRational
from .polar import Subalgebra, close_check
from .su1n import make_context

__all__ = [
    "SCHEMA_VERSION",
    "encode_scalar",
    "decode_scalar",
    "subalgebra_to_dict",
    "subalgebra_from_dict",
    "dumps_subalgebra",
    "loads_subalgebra",
    "load_subalgebra",
    "write_json",
    "dumps_report",
]

SCHEMA_VERSION = 1


def encode_scalar(z) -> dict:
    z = GaussianRational.coerce(z)
    return {"re": [z.re.numerator, z.re.denominator],
            "im": [z.im.numerator, z.im.denominator]}


def _fraction(pair, where: str) -> Fraction:
    if (not isinstance(pair, list) or len(pair) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool)
                       for x in pair)):
        raise ParseError(f"{where}: expected [numerator, denominator]")
    if pair[1] == 0:
        raise ParseError(f"{where}: zero denominator")
    return Fraction(pair[0], pair[1])


def decode_scalar(obj, where: str = "scalar") -> GaussianRational:
    if not isinstance(obj, dict) or set(obj) - {"re", "im"}:
        raise ParseError(f"{where}: expected an object with keys re, im")
    re = _fraction(obj.get("re", [0, 1]), f"{where}.re")
    im = _fraction(obj.get("im", [0, 1]), f"{where}.im")
    return GaussianRational(re, im)


def subalgebra_to_dict(h: Subalgebra, meta: dict | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": h.ctx.n,
        "scalars": "gaussian-rational",
        "basis": [[[encode_scalar(x) for x in e.matrix.row(i)]
                   for i in range(h.ctx.size)] for e in h.elements],
        "meta": dict(meta or {}, origin=h.origin_note),
    }


def subalgebra_from_dict(data: Any) -> Subalgebra:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ParseError("n: expected an integer >= 2")
    if data.get("scalars", "gaussian-rational") != "gaussian-rational":
        raise ParseError("scalars: only gaussian-rational is supported")
    basis = data.get("basis")
    if not isinstance(basis, list):
        raise ParseError("basis: expected a list of matrices")
    ctx = make_context(n)
    elems = []
    for k, m in enumerate(basis):
        where = f"basis[{k}]"
        if (not isinstance(m, list) or len(m) != n + 1
                or not all(isinstance(r, list) and len(r) == n + 1
                           for r in m)):
            raise ParseError(f"{where}: expected a {n + 1}x{n + 1} matrix")
        rows = [[decode_scalar(x, f"{where}[{i}][{j}]")
                 for j, x in enumerate(r)] for i, r in enumerate(m)]
        try:
            elems.append(ctx.from_matrix(ExactMatrix.from_rows(rows)))
        except NotInAlgebra as exc:
            raise ParseError(f"{where}: {exc}") from exc
    meta = data.get("meta") or {}
    note = meta.get("origin", "") if isinstance(meta, dict) else ""
    return close_check(ctx, elems, note)


def dumps_subalgebra(h: Subalgebra, meta: dict | None = None) -> str:
    return json.dumps(subalgebra_to_dict(h, meta), indent=1, sort_keys=True)


def loads_subalgebra(text: str) -> Subalgebra:
    """Parse and validate; raises ParseError or NotClosed."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    return subalgebra_from_dict(data)


def load_subalgebra(path: str) -> Subalgebra:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return loads_subalgebra(text)
    except ParseError as exc:
        exc.args = (f"{path}: {exc.args[0]}",) + exc.args[1:]
        raise


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True, default=str)


def write_json(path: str, text: str) -> None:
    """Atomic write: temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

