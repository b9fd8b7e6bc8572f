"""Command line front end: ``skeinlab invariant | reproduce | table``.

Exit codes: 0 success, 1 a reproduction check failed, 2 unparseable input,
3 input over a size cap, 4 bundled data missing.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import yaml

from . import __version__
from .bt_algebra import (
    SizeCap,
    Theta_trace,
    enumerate_basis,
    from_tied_braid,
    multiply,
    ptl_element,
    ptl_ideal_check,
    theta_trace,
    tie,
    trace_rho,
)
from .classical import DEFAULT_CAP, TooManyCrossings, homflypt, jones
from .data import MissingData, load_pairs, load_table
from .diagram import DiagramError, braid_closure, canonical_key, parse_braid, parse_pd
from .poly import VARIABLES, LaurentFraction, PolyParseError, canonical_eq, parse, substitute, var
from .theta import NORMALIZATIONS, Theta_partition, theta_partition, theta_skein, thistlethwaite_report

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP, EXIT_DATA = 0, 1, 2, 3, 4

INVARIANTS = ("V", "P", "theta", "Theta")
ROUTES = ("partition", "skein", "trace")


# ---------------------------------------------------------------------------
# serialisation


def _coeff_text(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def _terms_json(p) -> list:
    return [
        {"monomial": {VARIABLES[i]: e for i, e in enumerate(m) if e}, "coeff": _coeff_text(c)}
        for m, c in p.terms()
    ]


def poly_json(value: LaurentFraction, source: str, invariant: str, normalization: str) -> dict:
    """The stable output record; ``denominator`` is ``[{monomial: {}, coeff: "1"}]`` for Laurent values."""
    return {
        "input": source,
        "invariant": invariant,
        "variables": sorted(value.variables(), key=VARIABLES.index),
        "normalization": normalization,
        "polynomial": _terms_json(value.num),
        "denominator": _terms_json(value.den),
        "text": str(value),
    }


# ---------------------------------------------------------------------------
# invariant


def compute_invariant(
    invariant: str,
    diagram=None,
    braid=None,
    route: str = "partition",
    normalization: str = "consistent",
    e_value=None,
    lambda_q4: bool = False,
    cap: int | None = DEFAULT_CAP,
) -> LaurentFraction:
    if diagram is None and route != "trace":
        diagram = braid_closure(braid)
    if route == "trace" and invariant in ("V", "P"):
        diagram = braid_closure(braid)
    if invariant == "V":
        value = jones(diagram, cap=cap)
    elif invariant == "P":
        value = homflypt(diagram, cap=cap)
    elif invariant == "theta":
        if route == "trace":
            if braid is None:
                raise ValueError("the trace route needs a braid word")
            value = theta_trace(braid)
        elif route == "skein" or normalization != "consistent":
            value = theta_skein(diagram, normalization, cap=cap)
        else:
            value = theta_partition(diagram, cap=cap)
    elif invariant == "Theta":
        if route == "trace":
            if braid is None:
                raise ValueError("the trace route needs a braid word")
            value = Theta_trace(braid)
        else:
            value = Theta_partition(diagram, cap=cap)
        if lambda_q4:
            value = substitute(value, "s", var("q", 2))
    else:
        raise ValueError("unknown invariant %r" % invariant)
    if e_value is not None:
        value = substitute(value, "E", e_value)
    return value


def cmd_invariant(args) -> int:
    try:
        if args.pd is not None:
            text = Path(args.pd).read_text()
            diagram, braid, source = parse_pd(text), None, str(args.pd)
        else:
            braid = parse_braid(args.braid, args.strands)
            diagram, source = None if braid.has_ties else braid_closure(braid), args.braid
        e_value = None
        if args.e_value is not None:
            e_value = parse(args.e_value)
            if not e_value.is_laurent() or not e_value.as_poly().is_constant():
                raise PolyParseError("--e-value must be a rational number")
            e_value = e_value.as_poly().constant_value()
    except (DiagramError, PolyParseError, OSError) as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    if diagram is None and args.route != "trace":
        print("parse error: tied braids are only supported with --route trace", file=sys.stderr)
        return EXIT_PARSE
    try:
        value = compute_invariant(
            args.invariant,
            diagram,
            braid,
            route=args.route,
            normalization=args.split_normalization,
            e_value=e_value,
            lambda_q4=args.lambda_q4,
            cap=args.cap,
        )
    except (TooManyCrossings, SizeCap) as exc:
        print("size cap: %s" % exc, file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    record = poly_json(value, source, args.invariant, args.split_normalization)
    json.dump(record, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# reproduce


class Check:
    __slots__ = ("item", "passed", "detail", "seconds")

    def __init__(self, item, passed, detail="", seconds=0.0):
        self.item, self.passed, self.detail, self.seconds = item, passed, detail, seconds

    def line(self) -> str:
        tag = "PASS" if self.passed is True else ("FAIL" if self.passed is False else "INFO")
        return "%s %s (%.2fs)%s" % (tag, self.item, self.seconds, ("\n    " + self.detail.replace("\n", "\n    ")) if self.detail else "")


def _relation(got: LaurentFraction, ref: LaurentFraction) -> str:
    if canonical_eq(got, ref):
        return "equal"
    if canonical_eq(got, -ref):
        return "computed = -reference"
    return "computed / reference = %s" % (got / ref)


def pair_checks(table=None) -> list:
    table = load_table() if table is None else table
    out = []
    for pair in load_pairs():
        t0 = time.time()
        missing = [n for n in (pair.first, pair.second) if n not in table]
        if missing:
            raise MissingData("bundled table lacks %s" % ", ".join(missing))
        A, B = table[pair.first].diagram(), table[pair.second].diagram()
        ta, tb = theta_partition(A), theta_partition(B)
        diff = ta - tb
        ref = parse(pair.reference_difference)
        v_eq = jones(A) == jones(B)
        p_eq = homflypt(A) == homflypt(B)
        ok = v_eq and p_eq and not diff.is_zero() and canonical_eq(diff, ref)
        detail = "\n".join(
            [
                "V equal: %s, P equal: %s, theta differs: %s" % (v_eq, p_eq, not diff.is_zero()),
                "computed difference:  %s" % diff,
                "reference difference: %s" % ref,
                "relation: %s" % _relation(diff, ref),
            ]
        )
        out.append(Check("theta(%s) - theta(%s)" % (pair.first, pair.second), ok, detail, time.time() - t0))
    return out


def thistlethwaite_checks(table=None) -> list:
    t0 = time.time()
    rep = thistlethwaite_report(table)
    dt = time.time() - t0
    out = []
    for name, ok in rep["flags"].items():
        out.append(Check("thistlethwaite: %s" % name, ok, "", dt))
    inv = rep["invariants"]
    out.append(
        Check(
            "thistlethwaite: theta = (1 - E^-1)(q + q^-1) V(3_1) V(4_1) + V(TLink)",
            rep["flags"]["closed-expression"],
            "theta(TLink) = %s\ntheta(unlink2) = %s" % (inv["theta(TLink) partition"], inv["theta(unlink2)"]),
            dt,
        )
    )
    return out


def algebra_checks() -> list:
    out = []
    t0 = time.time()
    basis = enumerate_basis(3)
    out.append(Check("dim E_3(q) = 30", len(basis) == 30, "enumerated %d basis elements" % len(basis), time.time() - t0))
    t0 = time.time()
    rep = ptl_ideal_check(3)
    out.append(
        Check(
            "m * b12 = q^k b12 = b12 * m for all 30 basis elements",
            rep["flags"]["eigenline"],
            "failures: %s" % (rep["eigen-failures"] or "none"),
            time.time() - t0,
        )
    )
    t0 = time.time()
    b12 = ptl_element(3)
    m = multiply(tie(1, 3, 3), from_tied_braid((3, [(1, 1), (2, 1), (1, 1)])))
    worked = multiply(m, b12) == b12.scale(var("q", 3))
    out.append(Check("eps_13 b1 b2 b1 * b12 = q^3 b12", worked, "", time.time() - t0))
    t0 = time.time()
    rho = trace_rho(b12)
    z = var("z")
    target = ((var("q", 2) + 1) * var("q") * z + var("E")) * (var("q") * z + var("E"))
    out.append(
        Check(
            "rho(b12) = ((q^2+1) q z + E)(q z + E)",
            canonical_eq(rho, LaurentFraction(target)),
            "rho(b12) = %s\nfactored: %s" % (rho, rep["factored"]),
            time.time() - t0,
        )
    )
    out.append(
        Check(
            "roots of rho(b12) in z",
            None,
            "computed roots: %s\n-q^-1/E is %sa root" % (", ".join(rep["z-roots"]), "" if rep["flags"]["printed-root -q^-1/E is a root"] else "not "),
        )
    )
    return out


SUITES = {
    "pairs": pair_checks,
    "thistlethwaite": thistlethwaite_checks,
    "algebra": lambda table=None: algebra_checks(),
}


def cmd_reproduce(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    try:
        table = load_table() if any(n != "algebra" for n in names) else None
        checks = []
        for n in names:
            checks.extend(SUITES[n](table))
    except MissingData as exc:
        print("missing data: %s" % exc, file=sys.stderr)
        return EXIT_DATA
    for c in checks:
        print(c.line())
    failed = [c for c in checks if c.passed is False]
    print("%d checks, %d failed" % (sum(1 for c in checks if c.passed is not None), len(failed)))
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# table


def _read_entries(path: Path) -> list:
    """``[(name, pd_text, expected_jones or None)]`` from a YAML table or ``name: PD`` lines."""
    text = path.read_text()
    if not text.strip():
        return []
    if path.suffix in (".yaml", ".yml"):
        doc = yaml.safe_load(text) or {}
        recs = doc.get("links", []) if isinstance(doc, dict) else doc
        return [(str(r["name"]), str(r.get("pd", "")), r.get("expected_jones")) for r in recs]
    out = []
    for k, line in enumerate(text.splitlines()):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, pd = line.partition(":")
        if not sep:
            name, pd = "row%d" % (k + 1), line
        out.append((name.strip(), pd.strip(), None))
    return out


def _row_worker(job):
    name, pd, expected, invariants, normalization, cap, cached = job
    row = {"name": name, "status": "ok", "error": "", "components": "", "crossings": "", "key": ""}
    try:
        D = parse_pd(pd)
    except DiagramError as exc:
        row.update(status="parse-error", error=str(exc))
        return row, {}
    key = canonical_key(D).hex()
    row.update(components=D.n_components, crossings=D.n_crossings, key=key)
    fresh = {}
    for inv in invariants:
        ck = "%s|%s|%s" % (key, inv, normalization if inv == "theta" else "")
        if ck in cached:
            row[inv] = cached[ck]
            continue
        try:
            value = str(compute_invariant(inv, D, normalization=normalization, cap=cap))
        except TooManyCrossings as exc:
            row.update(status="size-cap", error=str(exc))
            return row, fresh
        row[inv] = fresh[ck] = value
    if expected is not None:
        v = row.get("V")
        if v is None:
            v = str(jones(D, cap=cap))
        ok = parse(v) == parse(expected)
        row["jones-check"] = "match" if ok else "MISMATCH"
        if not ok:
            row["status"] = "jones-mismatch"
    return row, fresh


def _load_cache(path) -> dict:
    cache = {}
    if path and Path(path).is_file():
        for line in Path(path).read_text().splitlines():
            if line.strip():
                rec = json.loads(line)
                cache[rec["key"]] = rec["value"]
    return cache


def cmd_table(args) -> int:
    try:
        entries = _read_entries(Path(args.input))
    except (OSError, yaml.YAMLError) as exc:
        print("cannot read %s: %s" % (args.input, exc), file=sys.stderr)
        return EXIT_PARSE
    invariants = [s for s in args.invariants.split(",") if s]
    bad = [s for s in invariants if s not in INVARIANTS]
    if bad:
        print("unknown invariants: %s" % ", ".join(bad), file=sys.stderr)
        return EXIT_PARSE
    cache = _load_cache(args.cache)
    jobs = [(n, pd, exp, invariants, args.split_normalization, args.cap, cache) for n, pd, exp in entries]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_row_worker, jobs))
    else:
        results = [_row_worker(j) for j in jobs]
    rows = [r for r, _ in results]
    if args.cache:
        fresh = {}
        for _, f in results:
            fresh.update(f)
        if fresh:
            with open(args.cache, "a") as fh:
                for k in sorted(fresh):
                    fh.write(json.dumps({"key": k, "value": fresh[k]}, sort_keys=True) + "\n")
    cols = ["name", "status", "components", "crossings"] + invariants
    if any("jones-check" in r for r in rows):
        cols.append("jones-check")
    cols += ["error", "key"]
    if args.format == "json":
        body = json.dumps([{c: r.get(c, "") for c in cols} for r in rows], indent=1, sort_keys=False) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        if rows:
            w.writeheader()
            w.writerows(rows)
        body = buf.getvalue()
    try:
        if args.output in (None, "-"):
            sys.stdout.write(body)
        else:
            Path(args.output).write_text(body)
    except OSError as exc:
        print("cannot write output: %s" % exc, file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------


def _cap(text: str):
    return None if text.lower() == "none" else int(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skeinlab", description="Exact link invariants V, P, theta and Theta.")
    ap.add_argument("--version", action="version", version="skeinlab %s" % __version__)
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--split-normalization", choices=NORMALIZATIONS, default="consistent")
    common.add_argument("--cap", type=_cap, default=DEFAULT_CAP, help="crossing cap (or 'none')")

    p = sub.add_parser("invariant", parents=[common], help="compute one invariant of one link")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pd", help="file holding a PD code")
    src.add_argument("--braid", help='braid word such as "s1 s2^-1 s1"')
    p.add_argument("--strands", type=int, default=None)
    p.add_argument("--invariant", choices=INVARIANTS, required=True)
    p.add_argument("--route", choices=ROUTES, default="partition")
    p.add_argument("--e-value", default=None, help="substitute a rational value for E")
    p.add_argument("--lambda-q4", action="store_true", help="set lambda = q^4 (s = q^2) in Theta")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("reproduce", help="run the reproduction checks")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("table", parents=[common], help="batch invariants for a file of PD codes")
    p.add_argument("input")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--invariants", default="V,theta")
    p.add_argument("--cache", default=None, help="JSON-lines cache keyed by canonical diagram key")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
