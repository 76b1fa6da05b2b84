"""
Command-line front end.

    python3 -m refined_eulerian table --n 6 --format csv
    python3 -m refined_eulerian verify --suite core --nmax 8
    python3 -m refined_eulerian stein --n 50 --d 24 --samples 100000 --seed 42

Exit codes: 0 success, 1 a verification failed, 2 usage error,
3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import checks, exact_core, moments, real_roots, series, stein
from .errors import (ConsistencyError, DomainError, InvalidArgument, ResourceLimitError,
                     UndefinedDistribution)
from .poly import Poly

CACHE_ENV = "REFINED_EULERIAN_CACHE"
SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# serialization

def encode(v):
    """Exact numbers become strings, floats become ``{"float": repr}``."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (int, Fraction)):
        return str(v)
    if isinstance(v, float):
        return {"float": repr(v)}
    if isinstance(v, Poly):
        return [str(c) for c in v.coeffs]
    if isinstance(v, dict):
        return {str(k): encode(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [encode(x) for x in v]
    if hasattr(v, "item"):  # numpy scalar
        return encode(v.item())
    raise TypeError(f"cannot encode {type(v).__name__}")


def decimal_str(q, digits=12) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def _text_value(v, digits):
    if isinstance(v, Fraction) and v.denominator != 1:
        return f"{v}  (~{decimal_str(v, digits)})"
    if isinstance(v, Poly):
        return str(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_text_value(x, digits) for x in v) + "]"
    return str(v)


def _render_text(report, digits):
    out = [f"# {report['command']}"]
    for k, v in report["params"].items():
        out.append(f"# {k} = {v}")
    def walk(d, indent):
        for k, v in d.items():
            if isinstance(v, dict):
                out.append(f"{indent}{k}:")
                walk(v, indent + "  ")
            elif isinstance(v, list) and v and isinstance(v[0], dict):
                out.append(f"{indent}{k}:")
                for item in v:
                    out.append(f"{indent}  - " + ", ".join(
                        f"{a}={_text_value(b, digits)}" for a, b in item.items()))
            else:
                out.append(f"{indent}{k}: {_text_value(v, digits)}")
    walk(report["result"], "")
    return "\n".join(out) + "\n"


def _render_csv(report, rows, header):
    buf = io.StringIO()
    for k, v in report["params"].items():
        buf.write(f"# {k}={v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([str(x) for x in r])
    return buf.getvalue()


def _render_json(report):
    doc = {"schema_version": SCHEMA_VERSION, "command": report["command"],
           "params": encode(report["params"]), "result": encode(report["result"])}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# table cache

def _cache_dir(args):
    d = args.cache_dir or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def cache_path(directory: Path, n: int) -> Path:
    return directory / f"refined_first_n{n}.csv"


def _load_cached(path: Path, n: int):
    # header n,d,k,count then n*n rows; any mismatch means the file is ignored
    try:
        with path.open(newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError:
        return None
    if not rows or rows[0] != ["n", "d", "k", "count"] or len(rows) != n * n + 1:
        return None
    counts = [[0] * n for _ in range(n)]
    try:
        for r in rows[1:]:
            nn, d, k, c = (int(x) for x in r)
            if nn != n:
                return None
            counts[d][k - 1] = c
    except (ValueError, IndexError):
        return None
    t = exact_core.RefinedTable(n, tuple(map(tuple, counts)), "cache")
    from math import factorial
    if any(s != factorial(n - 1) for s in t.column_sums()):
        return None
    if t.row_sums() != exact_core.euler_row(n).row:
        return None
    return t


def _store_cached(path: Path, t):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with tmp.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "d", "k", "count"])
        for d, row in enumerate(t.counts):
            for k, c in enumerate(row, 1):
                w.writerow([t.n, d, k, c])
    tmp.replace(path)


def _table(n, method, args):
    directory = _cache_dir(args)
    if directory is None:
        return exact_core.refined_table(n, method)
    path = cache_path(directory, n)
    t = _load_cached(path, n)
    if t is None:
        t = exact_core.refined_table(n, method)
        try:
            _store_cached(path, t)
        except OSError:
            pass
    return t


# commands; each returns (report, exit code, csv rows or None)

def cmd_table(args):
    n = args.n
    t = _table(n, args.method, args)
    if args.side == "first":
        counts = t.counts
    else:
        counts = tuple(t.counts[n - 1 - d] for d in range(n))
    rows = [(n, d, k, c) for d, row in enumerate(counts) for k, c in enumerate(row, 1)]
    result = {"counts": [list(r) for r in counts],
              "row_sums": list(t.row_sums() if args.side == "first" else t.row_sums()[::-1]),
              "column_sums": list(t.column_sums())}
    return result, EXIT_OK, (rows, ["n", "d", "k", "count"])


def cmd_verify(args):
    results = checks.run_suite(args.suite, args.nmax)
    failed = [r for r in results if not r.passed]
    result = {"passed": not failed, "checks": [r.to_dict() for r in results],
              "failures": [f for r in failed for f in r.failures]}
    rows = [(r.name, r.cases, "pass" if r.passed else "FAIL") for r in results]
    return result, (EXIT_FAIL if failed else EXIT_OK), (rows, ["check", "cases", "status"])


def cmd_moments(args):
    n, d = args.n, args.d
    fd = moments.first_dist(n, d)
    ld = moments.last_dist(n, d)
    mean, var = moments.des_mean_var(n)
    result = {
        "first_dist": list(fd.probs), "last_dist": list(ld.probs),
        "expected_first": moments.expected_first(n, d),
        "expected_last": moments.expected_last(n, d),
        "rising_moments": [moments.rising_moment(n, d, m) for m in range(args.m + 1)],
        "unimodal": moments.unimodal_case(n, d)._asdict(),
        "descent_mean": mean, "descent_variance": var,
    }
    rows = [(n, d, k, p, q) for k, (p, q) in enumerate(zip(fd.probs, ld.probs), 1)]
    return result, EXIT_OK, (rows, ["n", "d", "k", "p_first", "p_last"])


def cmd_geom(args):
    n, d = args.n, args.d
    sup = moments.geometric_ratio_sup(n, d)
    tvd = moments.tvd_geometric(n, d)
    result = {"p": Fraction(d, d + 1), "ratio_sup": sup, "tvd": tvd,
              "ratio_sup_decimal": decimal_str(sup, args.digits),
              "tvd_decimal": decimal_str(tvd, args.digits)}
    rows = [(n, d, sup, tvd)]
    return result, EXIT_OK, (rows, ["n", "d", "ratio_sup", "tvd"])


def cmd_roots(args):
    n, k, l = args.n, args.k, args.l
    if l is None:
        poly = real_roots.c_poly(k - 1, n - k)
        v = real_roots.check_neggers_first_fixed(n, k)
        what = "first-fixed"
    else:
        poly = real_roots.both_fixed_polynomial(n, k, l)
        v = real_roots.check_neggers_both_fixed(n, k, l)
        what = "both-fixed (reduced polynomial)"
    result = {"polynomial": poly, "checked": what, "degree": v.degree,
              "distinct_real_roots": v.distinct_real_roots,
              "squarefree": v.squarefree, "verdict": v.verdict}
    if args.isolate and not poly.is_zero():
        ivs = real_roots.isolate_real_roots(poly, Fraction(1, 10 ** 6))
        result["root_intervals"] = [[lo, hi] for lo, hi in ivs]
    code = EXIT_OK
    if not v.verdict:
        witness = {"n": n, "k": k} if l is None else {"n": n, "k": k, "l": l}
        result["failures"] = [{"identity": "distinct real roots", "witness": witness}]
        code = EXIT_FAIL
    rows = [(d, c) for d, c in enumerate(poly.int_coeffs())]
    return result, code, (rows, ["d", "coefficient"])


def cmd_stein(args):
    rep = stein.mc_drift(args.n, args.d, args.samples, args.seed, args.workers)
    result = dict(rep.__dict__)
    result["within_4se"] = rep.within(4.0)
    if args.n <= stein.EXACT_CAP:
        result["exact_enumerated"] = stein.exact_drift(args.n, args.d)
    code = EXIT_OK
    if not result["within_4se"]:
        result["failures"] = [{"identity": "Monte Carlo mean within 4 SE of exact drift",
                               "witness": {"n": args.n, "d": args.d, "seed": args.seed}}]
        code = EXIT_FAIL
    rows = [(rep.n, rep.d, rep.samples, rep.seed, rep.workers, repr(rep.mean),
             repr(rep.std_error), rep.exact_target)]
    return result, code, (rows, ["n", "d", "samples", "seed", "workers", "mean",
                                 "std_error", "exact_target"])


def cmd_gf(args):
    if args.pde:
        X, Y, Z = args.pde
        ok = series.pde_check(X, Y, Z)
        result = {"pde_orders": [X, Y, Z], "holds": ok}
        code = EXIT_OK if ok else EXIT_FAIL
        if not ok:
            result["failures"] = [{"identity": "generating-function PDE",
                                   "witness": {"orders": [X, Y, Z]}}]
        return result, code, ([(X, Y, Z, ok)], ["x_order", "y_order", "z_order", "holds"])
    if args.numeric:
        x, y, z = args.numeric
        res = series.gfall_numeric_check(x, y, z, args.terms, args.tol)
        ok = res < args.tol
        result = {"point": [x, y, z], "terms": args.terms, "tol": args.tol,
                  "residual": res, "holds": ok}
        if not ok:
            result["failures"] = [{"identity": "closed form vs truncated series",
                                   "witness": {"point": [x, y, z], "terms": args.terms}}]
        return result, (EXIT_OK if ok else EXIT_FAIL), ([(x, y, z, args.terms, repr(res))],
                                                        ["x", "y", "z", "terms", "residual"])
    if args.n is None:
        raise UsageError("gf: give --n, --pde or --numeric")
    n = args.n
    if args.k is not None:
        p = series.gf_nk(n, args.k)
        return {"variable": "x^d", "polynomial": p}, EXIT_OK, (
            [(d, c) for d, c in enumerate(p.int_coeffs())], ["d", "coefficient"])
    if args.d is not None:
        p = series.gf_nd(n, args.d)
        return {"variable": "x^k", "polynomial": p}, EXIT_OK, (
            [(k, c) for k, c in enumerate(p.int_coeffs())], ["k", "coefficient"])
    g = series.gf_n(n)
    rows = sorted((d, k, c) for (d, k), c in g.items())
    return {"terms": [{"d": d, "k": k, "coefficient": c} for d, k, c in rows]}, EXIT_OK, (
        [(n, d, k, c) for d, k, c in rows], ["n", "d", "k", "count"])


COMMANDS = {"table": cmd_table, "verify": cmd_verify, "moments": cmd_moments,
            "geom": cmd_geom, "roots": cmd_roots, "stein": cmd_stein, "gf": cmd_gf}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="refined-eulerian",
                description="Eulerian numbers refined by the first and last letter.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("--format", choices=("json", "csv", "text"), default="json")
        s.add_argument("--digits", type=int, default=12,
                       help="significant digits for decimal renderings")
        return s

    s = add("table", "refined Eulerian table")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=exact_core.METHODS, default="rec3")
    s.add_argument("--side", choices=("first", "last"), default="first")
    s.add_argument("--cache-dir", default=None,
                   help=f"table cache directory (default ${CACHE_ENV}, unset = no cache)")

    s = add("verify", "run a named verification suite")
    s.add_argument("--suite", choices=tuple(checks.SUITES), default="all")
    s.add_argument("--nmax", type=int, default=8)

    s = add("moments", "first/last-value distribution and rising moments")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--m", type=int, default=4, help="highest rising moment")

    s = add("geom", "distance to the geometric limit")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)

    s = add("roots", "real-rootedness of a descent polynomial")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True, help="first value")
    s.add_argument("--l", type=int, default=None, help="last value (optional)")
    s.add_argument("--isolate", action="store_true", help="report isolating intervals")

    s = add("stein", "Monte Carlo drift of the transposition pair")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--samples", type=int, default=100000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)

    s = add("gf", "generating functions")
    s.add_argument("--n", type=int, default=None)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--k", type=int, default=None)
    g.add_argument("--d", type=int, default=None)
    g.add_argument("--pde", type=int, nargs=3, metavar=("X", "Y", "Z"))
    g.add_argument("--numeric", type=float, nargs=3, metavar=("x", "y", "z"))
    s.add_argument("--terms", type=int, default=18, help="truncation order for --numeric")
    s.add_argument("--tol", type=float, default=1e-6)
    return p


def _params(args):
    out = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "cache_dir")}
    return out


def dispatch(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be positive")
        result, code, (rows, header) = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc.what} (n={exc.n}, cap={exc.cap})", file=stderr)
        return EXIT_CAP
    except (InvalidArgument, UndefinedDistribution, DomainError) as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(json.dumps({"failures": [{"identity": "internal consistency",
                                         "witness": str(exc)}]}), file=stdout)
        return EXIT_FAIL
    report = {"command": args.command, "params": _params(args), "result": result}
    if args.format == "json":
        stdout.write(_render_json(report))
    elif args.format == "csv":
        stdout.write(_render_csv(report, rows, header))
    else:
        stdout.write(_render_text(report, args.digits))
    return code


def main():  # pragma: no cover
    sys.exit(dispatch())
