"""Command line entry point.

    polarfol decompose --n 3
    polarfol example --n 3 --a 1 --b 2 --json-out s12.json
    polarfol check s12.json
    polarfol survey --n 2 --trials 500 --seed 42
    polarfol congruent a.json b.json
    polarfol geom --n 2 --class 0,1
    polarfol lemmas --n 2

Settings resolve as flags > environment (POLARFOL_SEED, POLARFOL_TOL) >
``--config`` JSON file > defaults.  Exit status: 0 when every assertion
holds, 2 on an assertion violation, 3 on an input error.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import os
import re
import sys
import time
from fractions import Fraction
from typing import Any, Callable

from . import __version__
from .catalog import CanonicalClass, as_root_data, build_example, catalog
from .errors import (BadParameters, InvalidRank, NotClosed, NotInBorel,
                     NotInSolvablePart, ParseError, PolarfolError, WrongShape)
from .geometry import (busemann, export_csv, holomorphic_curvature_probe,
                       sample_orbit, second_fundamental_form_norm,
                       section_orthogonality)
from .io import (SCHEMA_VERSION, dumps_report, dumps_subalgebra,
                 load_subalgebra, write_json)
from .lemmas import run_identity_suite
from .normal_form import congruence_witness, foliation_probe, invariants
from .polar import Subalgebra, check_polar
from .root_space import verify_structure
from .su1n import make_context
from .survey import survey

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 2, 3

DEFAULTS = {"seed": 0, "tolerance": 1e-9, "trials": 100, "samples": 20}
ENV = {"seed": ("POLARFOL_SEED", int), "tolerance": ("POLARFOL_TOL", float)}

INPUT_ERRORS = (ParseError, NotClosed, NotInBorel, InvalidRank,
                BadParameters, NotInSolvablePart)


class InputError(PolarfolError):
    pass


# -- settings -------------------------------------------------------------

def load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"config {path}: {exc.msg}", exc.lineno, exc.colno)
    if not isinstance(data, dict):
        raise InputError(f"config {path}: top level must be an object")
    return data


def resolve_settings(args: argparse.Namespace,
                     environ: dict | None = None) -> dict:
    environ = os.environ if environ is None else environ
    out = dict(DEFAULTS)
    out.update({k: v for k, v in load_config(args.config).items()
                if k in DEFAULTS})
    for key, (var, cast) in ENV.items():
        if environ.get(var) not in (None, ""):
            try:
                out[key] = cast(environ[var])
            except ValueError:
                raise InputError(f"{var}={environ[var]!r} is not a valid "
                                 f"{cast.__name__}")
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            out[key] = val
    if out["trials"] < 0 or out["samples"] < 1:
        raise InputError("trials must be >= 0 and samples >= 1")
    if not out["tolerance"] > 0:
        raise InputError("tolerance must be positive")
    return out


# -- report helpers -------------------------------------------------------

def _frac(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def verdict_record(h: Subalgebra, rd, source: str = "") -> dict:
    """Polar verdict, invariants and foliation status of one subalgebra."""
    v = check_polar(h, rd)
    rec: dict[str, Any] = {
        "input": source or h.origin_note,
        "dim": h.dim,
        "is_polar": v.is_polar,
        "failure_reason": v.failure_reason.value if v.failure_reason else None,
        "section_type": str(v.section_type),
        "cohomogeneity": v.cohomogeneity,
        "conditional": v.conditional,
        "invariants": None,
        "foliation": None,
    }
    if not v.is_polar:
        return rec
    status = foliation_probe(h, rd) if h.dim < rd.ctx.dim else None
    if status is not None:
        rec["foliation"] = {"status": status.status, "reason": status.reason}
        if status.rejected:
            return rec
    try:
        rec["invariants"] = invariants(h, rd).to_dict()
    except WrongShape as exc:
        rec["invariants_error"] = str(exc)
    return rec


def _report(command: str, args: dict, settings: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "tool_version": __version__,
            "command": {"name": command, "args": args},
            "seed": settings["seed"], "tolerance": settings["tolerance"],
            "verdicts": [], "violations": []}


# -- commands -------------------------------------------------------------

def cmd_decompose(ns, settings) -> dict:
    rd = as_root_data(make_context(ns.n))
    rep = _report("decompose", {"n": ns.n}, settings)
    dims = [rd.spaces[k].dim for k in (-2, -1, 0, 1, 2)]
    bad = verify_structure(rd, trials=settings["trials"],
                           seed=settings["seed"])
    rep["result"] = {
        "root_space_dims": {"g_-2a": dims[0], "g_-a": dims[1], "g_0": dims[2],
                            "g_a": dims[3], "g_2a": dims[4]},
        "dims": dims,
        "k0_dim": rd.k0.dim, "t_dim": rd.t.dim,
        "B": _matrix(rd.B), "Z": _matrix(rd.Z),
        "metric_scale": _frac(rd.ctx.metric_scale),
        "verify_structure": {"passed": not bad, "failures": bad},
    }
    rep["violations"] = list(bad)
    return rep


def _matrix(x) -> list:
    m = x.matrix
    return [[{"re": _frac(z.re), "im": _frac(z.im)} for z in m.row(i)]
            for i in range(m.rows)]


def cmd_check(ns, settings) -> dict:
    rep = _report("check", {"files": ns.files, "geom": ns.geom,
                            "conditional_ok": ns.conditional_ok}, settings)
    for path in ns.files:
        h = load_subalgebra(path)
        rd = as_root_data(h.ctx)
        if h.dim < rd.ctx.dim:
            if not h.basis.is_subspace_of(rd.borel):
                raise NotInBorel(f"{path}: subalgebra is not contained in "
                                 "t + a + n")
            if not ns.conditional_ok and not h.basis.is_subspace_of(rd.an):
                raise InputError(f"{path}: subalgebra has a t-component; "
                                 "pass --conditional-ok to accept it")
        rec = verdict_record(h, rd, path)
        if ns.geom and rec["is_polar"] and h.basis.is_subspace_of(rd.an):
            rec["geometry"] = _geom_checks(h, rd, rec["invariants"],
                                           settings, rep["violations"])
        rep["verdicts"].append(rec)
    return rep


def cmd_example(ns, settings) -> dict:
    ctx = make_context(ns.n)
    h = build_example(ctx, ns.a, ns.b)
    cls = CanonicalClass.of(ns.n, ns.a, ns.b)
    text = dumps_subalgebra(h, {"class": cls.label})
    if ns.json_out:
        write_json(ns.json_out, text)
        return {}
    sys.stdout.write(text + "\n")
    return {}


def cmd_survey(ns, settings) -> dict:
    rep = _report("survey", {"n": ns.n, "trials": settings["trials"]},
                  settings)
    res = survey(make_context(ns.n), settings["trials"], settings["seed"])
    data = res.to_dict()
    data.pop("elapsed")
    cat = {c.label for c, _ in catalog(make_context(ns.n))}
    data["catalog_size"] = len(cat)
    data["catalog_classes"] = sorted(cat)
    rep["result"] = data
    rep["violations"] = [f"trial {v['trial']} ({v['strategy']}): "
                         f"{v['message']}" for v in res.violations]
    if ns.csv_out:
        buf = _io.StringIO()
        w = csv.writer(buf)
        w.writerow(["class", "count"])
        for label, count in sorted(res.classes.items()):
            w.writerow([label, count])
        write_json(ns.csv_out, buf.getvalue())
    return rep


def cmd_congruent(ns, settings) -> dict:
    rep = _report("congruent", {"files": [ns.file1, ns.file2]}, settings)
    h1, h2 = load_subalgebra(ns.file1), load_subalgebra(ns.file2)
    if h1.ctx.n != h2.ctx.n:
        raise InputError("the two files have different n")
    rd = as_root_data(h1.ctx)
    r1 = verdict_record(h1, rd, ns.file1)
    r2 = verdict_record(h2, rd, ns.file2)
    rep["verdicts"] = [r1, r2]
    result: dict[str, Any] = {"congruent": None, "witness": None}
    if r1["invariants"] and r2["invariants"]:
        result["congruent"] = (r1["invariants"]["label"]
                               == r2["invariants"]["label"])
        wit = congruence_witness(h1, h2, rd)
        if wit is not None:
            result["witness"] = {"exact": wit.exact,
                                 "matrix": _witness_matrix(wit)}
    else:
        result["reason"] = "congruence needs two polar foliating inputs"
    rep["result"] = result
    return rep


def _witness_matrix(wit) -> list:
    if wit.exact:
        return [[{"re": _frac(z.re), "im": _frac(z.im)} for z in row]
                for row in wit.matrix]
    return [[[float(z.real), float(z.imag)] for z in row]
            for row in wit.numpy()]


_CLASS_RE = re.compile(r"^(?:S_?\{?)?\s*([01])\s*,\s*(\d+)\s*\}?$")


def parse_class(text: str, n: int) -> CanonicalClass | None:
    """'0,1', 'S_{0,1}', 'points' or 'one-leaf'; None for 'all'."""
    t = text.strip()
    if t == "all":
        return None
    if t == "points":
        return CanonicalClass.points(n)
    if t == "one-leaf":
        return CanonicalClass.one_leaf()
    m = _CLASS_RE.match(t)
    if not m:
        raise InputError(f"cannot parse class {text!r}")
    return CanonicalClass.of(n, int(m.group(1)), int(m.group(2)))


def _geom_checks(h, rd, inv: dict | None, settings, violations) -> dict:
    tol = settings["tolerance"]
    seed = settings["seed"]
    samples = settings["samples"]
    label = inv["label"] if inv else h.origin_note
    orbit = sample_orbit(h, count=samples, seed=seed, class_id=label, rd=rd)
    values = [busemann(p) for p in orbit.points]
    spread = max(values) - min(values)
    ortho = section_orthogonality(h, samples=min(samples, 10), seed=seed,
                                  rd=rd)
    sff, sff_exact = second_fundamental_form_norm(h, rd)
    out = {"busemann_spread": spread, "orthogonality": ortho,
           "sff_norm": sff, "sff_norm_sq_exact": _frac(sff_exact),
           "tolerance": tol}
    if inv is None:
        return out
    if inv["trivial"] is False:
        if inv["a"] == 0 and spread > tol:
            violations.append(f"{label}: Busemann spread {spread:.3e}")
        if inv["a"] == 1 and spread <= 1e-3:
            violations.append(f"{label}: Busemann function nearly constant")
        if sff <= 1e-8 or sff_exact == 0:
            violations.append(f"{label}: second fundamental form vanishes")
    if ortho > 1e-8:
        violations.append(f"{label}: orthogonality deviation {ortho:.3e}")
    return out


def cmd_geom(ns, settings) -> dict:
    ctx = make_context(ns.n)
    rd = as_root_data(ctx)
    wanted = parse_class(ns.class_, ns.n)
    rep = _report("geom", {"n": ns.n, "class": ns.class_,
                           "samples": settings["samples"]}, settings)
    chosen = [(c, h) for c, h in catalog(rd)
              if wanted is None or c.key == wanted.key]
    rows = []
    for cls, h in chosen:
        rec = {"class": cls.label, **cls.to_dict()}
        rec["geometry"] = _geom_checks(h, rd, cls.to_dict(), settings,
                                       rep["violations"])
        rep["verdicts"].append(rec)
        rows.append((cls.label, sample_orbit(h, count=settings["samples"],
                                             seed=settings["seed"],
                                             class_id=cls.label, rd=rd)))
    K = holomorphic_curvature_probe(ns.n, (0.3, -0.2))
    rep["result"] = {"holomorphic_curvature": K, "curvature_tolerance": 1e-4}
    if abs(K + 1) > 1e-4:
        rep["violations"].append(f"curvature probe gave {K}")
    if ns.csv_out:
        export_csv([s for _, s in rows], ns.csv_out)
    return rep


def cmd_lemmas(ns, settings) -> dict:
    rep = _report("lemmas", {"n": ns.n, "trials": settings["trials"]},
                  settings)
    results = run_identity_suite(make_context(ns.n), settings["trials"],
                                 settings["seed"])
    rep["result"] = {"identities": [r.to_dict() for r in results]}
    rep["violations"] = [r.detail for r in results if not r.passed]
    return rep


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--json-out", metavar="PATH", default=None)
    common.add_argument("--config", metavar="PATH", default=None,
                        help="JSON file with seed, tolerance, trials, samples")

    p = argparse.ArgumentParser(prog="polarfol", description=(
        "Polar foliations of complex hyperbolic space: exact checks."))
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_: str):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("decompose", cmd_decompose, "root space decomposition report")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=None)

    sp = add("check", cmd_check, "polarity verdict for subalgebra files")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--geom", action="store_true",
                    help="add float geometric cross-checks")
    sp.add_argument("--conditional-ok", action="store_true",
                    help="accept subalgebras with a t-component")
    sp.add_argument("--samples", type=int, default=None)

    sp = add("survey", cmd_survey, "randomized classification survey")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--csv-out", metavar="PATH", default=None)

    sp = add("example", cmd_example, "emit the standard S_{a,b} file")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)

    sp = add("congruent", cmd_congruent, "compare two subalgebra files")
    sp.add_argument("file1")
    sp.add_argument("file2")

    sp = add("geom", cmd_geom, "float cross-checks on catalog classes")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--class", dest="class_", default="all",
                    help="'a,b', 'S_{a,b}', 'points', 'one-leaf' or 'all'")
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--csv-out", metavar="PATH", default=None)

    sp = add("lemmas", cmd_lemmas, "exact identity suite")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=None)
    return p


def _emit(rep: dict, ns) -> None:
    text = dumps_report(rep)
    if ns.json_out:
        write_json(ns.json_out, text)
    else:
        sys.stdout.write(text + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        settings = resolve_settings(ns)
        rep = ns.func(ns, settings)
    except (InputError, *INPUT_ERRORS) as exc:
        sys.stderr.write(f"polarfol: input error: {exc}\n")
        return EXIT_INPUT
    if not rep:
        return EXIT_OK
    rep.setdefault("timing", {})["elapsed_s"] = round(
        time.perf_counter() - start, 3)
    rep["ok"] = not rep["violations"]
    _emit(rep, ns)
    for v in rep["violations"]:
        sys.stderr.write(f"polarfol: violation: {v}\n")
    return EXIT_OK if rep["ok"] else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
