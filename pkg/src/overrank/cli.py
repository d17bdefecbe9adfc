"""Batch command-line front end with machine-readable output.

Every computation the library exposes is reachable here.  Output format is
selected by --format {text,json,csv}; JSON documents validate against the
schemas shipped in schemas/ and are emitted with sorted keys so identical
invocations produce byte-identical output.

Exit codes: 0 success, 1 violation found by a verify run, 2 usage or
precondition error, 3 internal-consistency failure.

Exact rank tables are expensive to build (minutes at n_max around 2000),
so commands that need one keep a write-once cache, one file per n_max,
under --cache (or $OVERRANK_CACHE, default .overrank-cache/); any cached
table at least as large as requested is reused.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from . import arith, asymptotic, bounds, cache, expsums, qseries
from .errors import CrossoverNotFoundError, InternalConsistencyError

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3

IDENTITY_IDS = ("lemma:zeta10", "lemma:zeta6", "mao")


@dataclass
class Config:
    precision_bits: int = arith.DEFAULT_PREC
    n_max: int = qseries.N_MAX_CAP
    fmt: str = "text"
    cache_path: str = ".overrank-cache"
    threads: int = 0
    force: bool = False

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision must be at least 64 bits")


def _digits(cfg: Config) -> int:
    return max(10, int(cfg.precision_bits * 0.301))


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True, separators=(",", ":")))


def _ensure_table(n_needed: int, cfg: Config) -> qseries.RankTable:
    """Load the smallest adequate cached table, or build and cache one."""
    if n_needed > qseries.N_MAX_CAP and not cfg.force:
        raise ValueError(f"n={n_needed} exceeds the table cap {qseries.N_MAX_CAP}; use --force")
    best = None
    if os.path.isdir(cfg.cache_path):
        for name in os.listdir(cfg.cache_path):
            if name.startswith("ranktable-v1-") and name.endswith(".bin"):
                try:
                    size = int(name[len("ranktable-v1-") : -4])
                except ValueError:
                    continue
                if size >= n_needed and (best is None or size < best):
                    best = size
    if best is not None:
        return cache.load_table(os.path.join(cfg.cache_path, f"ranktable-v1-{best}.bin"))
    table = qseries.rank_table(n_needed, force=cfg.force)
    os.makedirs(cfg.cache_path, exist_ok=True)
    path = os.path.join(cfg.cache_path, f"ranktable-v1-{n_needed}.bin")
    if not os.path.exists(path):  # write-once per n_max
        cache.save_table(table, path, "binary")
    return table


def _cmd_pbar(args, cfg: Config) -> int:
    if args.zuckerman:
        value = asymptotic.zuckerman_pbar(args.n, args.kcap, cfg.precision_bits)
        rounded = asymptotic.nearest_int(value)
        cap = args.kcap if args.kcap else asymptotic.default_zuckerman_cap(args.n)
        if cfg.fmt == "json":
            _emit_json(
                {
                    "command": "pbar",
                    "n": args.n,
                    "k_cap": cap,
                    "zuckerman": mp.nstr(value, _digits(cfg)),
                    "rounded": str(rounded),
                }
            )
        elif cfg.fmt == "csv":
            print("n,k_cap,zuckerman,rounded")
            print(f"{args.n},{cap},{mp.nstr(value, _digits(cfg))},{rounded}")
        else:
            print(f"zuckerman({args.n}; k_cap={cap}) = {mp.nstr(value, _digits(cfg))}")
            print(f"rounded = {rounded}")
        return EXIT_OK
    series = qseries.pbar_series(args.n)
    if cfg.fmt == "json":
        _emit_json({"command": "pbar", "n": args.n, "pbar": [str(v) for v in series.coeffs]})
    elif cfg.fmt == "csv":
        print("n,pbar")
        for n, v in enumerate(series.coeffs):
            print(f"{n},{v}")
    else:
        print(",".join(str(v) for v in series.coeffs))
    return EXIT_OK


def _cmd_ranks(args, cfg: Config) -> int:
    table = _ensure_table(args.nmax, cfg)
    if cfg.fmt == "json":
        _emit_json(
            {
                "command": "ranks",
                "format_version": cache.FORMAT_VERSION,
                "n_max": args.nmax,
                "rows": [
                    [[m, str(v)] for m, v in enumerate(table.rows[n]) if v]
                    for n in range(args.nmax + 1)
                ],
            }
        )
    elif cfg.fmt == "csv":
        sub = table if table.n_max == args.nmax else _truncate(table, args.nmax)
        sys.stdout.write(cache.table_to_csv(sub))
    else:
        for n in range(args.nmax + 1):
            row = " ".join(str(v) for v in table.rows[n])
            print(f"n={n}: {row}")
    return EXIT_OK


def _truncate(table: qseries.RankTable, n_max: int) -> qseries.RankTable:
    return qseries.RankTable(n_max, table.rows[: n_max + 1])


def _cmd_classes(args, cfg: Config) -> int:
    table = _ensure_table(args.nmax, cfg)
    rows = [table.class_counts(args.c, n) for n in range(args.nmax + 1)]
    if cfg.fmt == "json":
        _emit_json(
            {
                "command": "classes",
                "c": args.c,
                "n_max": args.nmax,
                "rows": [[str(v) for v in row] for row in rows],
            }
        )
    elif cfg.fmt == "csv":
        print("n," + ",".join(f"class{a}" for a in range(args.c)))
        for n, row in enumerate(rows):
            print(f"{n}," + ",".join(str(v) for v in row))
    else:
        for n, row in enumerate(rows):
            print(f"n={n}: " + " ".join(str(v) for v in row))
    return EXIT_OK


def _cmd_eval_zeta(args, cfg: Config) -> int:
    table = _ensure_table(args.n, cfg)
    elt, value = qseries.zeta_eval(args.a, args.c, args.n, table, cfg.precision_bits)
    decomposed = qseries.orthogonality_decompose(args.a % args.c, args.c, args.n, table)
    expected = qseries.rank_class(args.a % args.c, args.c, args.n, table)
    if decomposed != expected:
        raise InternalConsistencyError(
            f"orthogonality decomposition {decomposed} != class count {expected}", witness=args.n
        )
    if cfg.fmt == "json":
        _emit_json(
            {
                "command": "eval-zeta",
                "a": args.a,
                "c": args.c,
                "n": args.n,
                "group_ring": [str(v) for v in elt.coeffs],
                "value": mp.nstr(value, _digits(cfg)),
            }
        )
    elif cfg.fmt == "csv":
        print("a,c,n,value")
        print(f"{args.a},{args.c},{args.n},{mp.nstr(value, _digits(cfg))}")
    else:
        print(f"group ring coefficients: {list(elt.coeffs)}")
        print(f"A({args.a}/{args.c};{args.n}) = {mp.nstr(value, _digits(cfg))}")
    return EXIT_OK


def _term_rows(est, cfg: Config) -> list:
    return [
        {
            "kind": t.kind,
            "k": t.k,
            "r": t.r,
            "re": mp.nstr(t.contribution.re, _digits(cfg)),
            "im": mp.nstr(t.contribution.im, _digits(cfg)),
        }
        for t in est.terms
    ]


def _cmd_asym(args, cfg: Config) -> int:
    est = asymptotic.estimate_A(args.a, args.c, args.n, cfg.precision_bits)
    if cfg.fmt == "json":
        doc = {
            "command": "asym",
            "a": args.a,
            "c": args.c,
            "n": args.n,
            "k_max": est.k_max,
            "re": mp.nstr(est.value.re, _digits(cfg)),
            "im": mp.nstr(est.value.im, _digits(cfg)),
        }
        if args.breakdown:
            doc["terms"] = _term_rows(est, cfg)
        _emit_json(doc)
    elif cfg.fmt == "csv":
        print("kind,k,r,re,im")
        for row in _term_rows(est, cfg):
            print(f"{row['kind']},{row['k']},{'' if row['r'] is None else row['r']},{row['re']},{row['im']}")
    else:
        print(f"estimate A({args.a}/{args.c};{args.n}) = {mp.nstr(est.value.re, _digits(cfg))}")
        print(f"k_max = {est.k_max}, terms = {len(est.terms)}")
        if args.breakdown:
            for t in est.terms:
                r = "-" if t.r is None else t.r
                print(f"  {t.kind} k={t.k} r={r}: {mp.nstr(t.contribution.re, _digits(cfg))}")
    return EXIT_OK


def _cmd_compare(args, cfg: Config) -> int:
    table = _ensure_table(args.n, cfg)
    _, exact = qseries.zeta_eval(args.a, args.c, args.n, table, cfg.precision_bits)
    est = asymptotic.estimate_A(args.a, args.c, args.n, cfg.precision_bits)
    with mp.workprec(cfg.precision_bits):
        rel = abs(est.value.as_mpc() - exact) / abs(exact) if exact else mp.mpf("inf")
    if cfg.fmt == "json":
        _emit_json(
            {
                "command": "compare",
                "a": args.a,
                "c": args.c,
                "n": args.n,
                "exact": mp.nstr(exact, _digits(cfg)),
                "estimate": mp.nstr(est.value.re, _digits(cfg)),
                "relative_error": mp.nstr(rel, 8),
            }
        )
    elif cfg.fmt == "csv":
        print("a,c,n,exact,estimate,relative_error")
        print(
            f"{args.a},{args.c},{args.n},{mp.nstr(exact, _digits(cfg))},"
            f"{mp.nstr(est.value.re, _digits(cfg))},{mp.nstr(rel, 8)}"
        )
    else:
        print(f"exact    A({args.a}/{args.c};{args.n}) = {mp.nstr(exact, _digits(cfg))}")
        print(f"estimate A({args.a}/{args.c};{args.n}) = {mp.nstr(est.value.re, _digits(cfg))}")
        print(f"relative error = {mp.nstr(rel, 8)}")
    return EXIT_OK


def _verify_identity(ident: str, n_hi: int, table) -> dict:
    if ident == "lemma:zeta10":
        for a in (1, 3, 7, 9):
            bounds.zeta_relation_10(a, n_hi, table)
    elif ident == "lemma:zeta6":
        for a in (1, 5):
            bounds.zeta_relation_6(a, n_hi, table)
    else:
        bounds.mao_decomposition(n_hi, table)
    return {
        "id": ident,
        "range": [0, n_hi],
        "checked": n_hi + 1,
        "violations": [],
        "passed": True,
    }


def _cmd_verify(args, cfg: Config) -> int:
    table = _ensure_table(args.to, cfg)
    if args.id in IDENTITY_IDS:
        report = _verify_identity(args.id, args.to, table)
    else:
        if cfg.threads and cfg.threads > 1:
            chunks = _split_range(args.frm, args.to, cfg.threads)
            with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                parts = list(
                    pool.map(lambda lohi: bounds.verify_inequality(args.id, lohi[0], lohi[1], table), chunks)
                )
            report = parts[0]
            report["range"] = [args.frm, args.to]
            report["checked"] = sum(p["checked"] for p in parts)
            report["violations"] = [n for p in parts for n in p["violations"]]
            report["passed"] = not report["violations"]
        else:
            report = bounds.verify_inequality(args.id, args.frm, args.to, table)
    report["bound_assembly"] = bounds.crossover_assembly()
    report["crossover_used"] = None
    if cfg.fmt == "json":
        _emit_json({"command": "verify", **report})
    elif cfg.fmt == "csv":
        print("id,from,to,checked,violations,passed")
        print(
            f"{report['id']},{report['range'][0]},{report['range'][1]},"
            f"{report['checked']},{';'.join(map(str, report['violations']))},{report['passed']}"
        )
    else:
        status = "PASS" if report["passed"] else "FAIL"
        print(f"{report['id']} on [{report['range'][0]}, {report['range'][1]}]: {status}")
        print(f"checked {report['checked']} values; violations: {report['violations']}")
    return EXIT_OK if report["passed"] else EXIT_VIOLATION


def _split_range(lo: int, hi: int, parts: int) -> list:
    width = (hi - lo + 1 + parts - 1) // parts
    out = []
    start = lo
    while start <= hi:
        out.append((start, min(start + width - 1, hi)))
        start += width
    return out


def _cmd_bounds(args, cfg: Config) -> int:
    report = bounds.bound_report(args.n, cfg.precision_bits, args.c)
    if cfg.fmt == "json":
        _emit_json({"command": "bounds", **report.as_json_dict()})
    elif cfg.fmt == "csv":
        print("side,component,value")
        print(f",main,{mp.nstr(report.main, 12)}")
        for side, comps in report.components.items():
            for name, v in comps.items():
                print(f"{side},{name},{mp.nstr(v, 12)}")
        print(f",dominated,{report.dominated}")
    else:
        print(f"n={report.n} c={report.c} N={report.farey_order}")
        print(f"main  = {mp.nstr(report.main, 12)}")
        for side, comps in report.components.items():
            for name, v in comps.items():
                print(f"  {side} {name:12s} = {mp.nstr(v, 12)}")
        print(f"total = {mp.nstr(report.total_error, 12)}")
        print(f"dominated = {report.dominated}")
    return EXIT_OK


def _cmd_crossover(args, cfg: Config) -> int:
    report = bounds.crossover(args.c, cfg.precision_bits)
    if cfg.fmt == "json":
        _emit_json(
            {
                "command": "crossover",
                "c": report.c,
                "crossover": report.crossover,
                "samples_checked": report.samples_checked,
                "bound_assembly": report.assembly,
                "boundary": report.boundary.as_json_dict(),
            }
        )
    elif cfg.fmt == "csv":
        print("c,crossover,samples_checked")
        print(f"{report.c},{report.crossover},{report.samples_checked}")
    else:
        print(f"crossover(c={report.c}) = {report.crossover}")
        print(f"samples checked: {report.samples_checked}")
        print(f"assembly: {report.assembly}")
    return EXIT_OK


def _cmd_dedekind(args, cfg: Config) -> int:
    value = arith.dedekind_sum(args.h, args.k)
    if cfg.fmt == "json":
        _emit_json(
            {
                "command": "dedekind",
                "h": args.h,
                "k": args.k,
                "numerator": str(value.numerator),
                "denominator": str(value.denominator),
            }
        )
    elif cfg.fmt == "csv":
        print("h,k,value")
        print(f"{args.h},{args.k},{value}")
    else:
        print(f"S({args.h},{args.k}) = {value} = {float(value):.12g}")
    return EXIT_OK


def _cmd_kloosterman(args, cfg: Config) -> int:
    m = Fraction(args.m)
    if args.kind == "D":
        twice = 2 * m
        if twice.denominator != 1:
            raise ValueError("m must be an integer or half-integer for kind D")
        val = expsums.kloosterman_D(args.a, args.c, args.k, args.n, int(twice), cfg.precision_bits)
    else:
        if m.denominator != 1:
            raise ValueError(f"m must be an integer for kind {args.kind}")
        fn = expsums.kloosterman_A if args.kind == "A" else expsums.kloosterman_B
        val = fn(args.a, args.c, args.k, args.n, int(m), cfg.precision_bits)
    if cfg.fmt == "json":
        _emit_json(
            {
                "command": "kloosterman",
                "kind": args.kind,
                "a": args.a,
                "c": args.c,
                "k": args.k,
                "n": args.n,
                "m": str(m),
                "re": mp.nstr(val.re, _digits(cfg)),
                "im": mp.nstr(val.im, _digits(cfg)),
            }
        )
    elif cfg.fmt == "csv":
        print("kind,a,c,k,n,m,re,im")
        print(
            f"{args.kind},{args.a},{args.c},{args.k},{args.n},{m},"
            f"{mp.nstr(val.re, _digits(cfg))},{mp.nstr(val.im, _digits(cfg))}"
        )
    else:
        print(f"{args.kind}_({args.a},{args.c},{args.k})({args.n},{m}) = "
              f"{mp.nstr(val.re, _digits(cfg))} + {mp.nstr(val.im, _digits(cfg))}i")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="overrank",
        description="Exact and asymptotic computation of Dyson ranks of overpartitions.",
    )
    parser.add_argument("--precision-bits", type=int, default=arith.DEFAULT_PREC)
    parser.add_argument("--format", dest="output", choices=("text", "json", "csv"), default="text")
    parser.add_argument("--cache", default=None, help="rank-table cache directory")
    parser.add_argument("--threads", type=int, default=0, help="0 = auto (single-threaded)")
    parser.add_argument("--force", action="store_true", help="allow n_max beyond the table cap")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pbar", help="exact overpartition counts or Zuckerman evaluation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--zuckerman", action="store_true")
    p.add_argument("--kcap", type=int, default=None)
    p.set_defaults(fn=_cmd_pbar)

    p = sub.add_parser("ranks", help="exact rank-count table")
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(fn=_cmd_ranks)

    p = sub.add_parser("classes", help="rank residue-class counts mod c")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(fn=_cmd_classes)

    p = sub.add_parser("eval-zeta", help="exact A(a/c;n) with group-ring vector")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_eval_zeta)

    p = sub.add_parser("asym", help="asymptotic estimate of A(a/c;n)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--breakdown", action="store_true")
    p.set_defaults(fn=_cmd_asym)

    p = sub.add_parser("compare", help="asymptotic vs exact with relative error")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("verify", help="exact inequality/identity verification")
    p.add_argument("--id", required=True)
    p.add_argument("--from", dest="frm", type=int, default=0)
    p.add_argument("--to", dest="to", type=int, required=True)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("bounds", help="explicit error-bound report at n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=int, choices=(10, 6), default=10)
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("crossover", help="find the main-term domination point")
    p.add_argument("--c", type=int, choices=(10, 6), default=10)
    p.set_defaults(fn=_cmd_crossover)

    p = sub.add_parser("dedekind", help="exact Dedekind sum S(h,k)")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=_cmd_dedekind)

    p = sub.add_parser("kloosterman", help="evaluate one Kloosterman-type sum")
    p.add_argument("--kind", choices=("A", "B", "D"), required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", default="0", help="integer, or half-integer for kind D (e.g. -1/2)")
    p.set_defaults(fn=_cmd_kloosterman)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config(
            precision_bits=args.precision_bits,
            fmt=args.output,
            cache_path=args.cache or os.environ.get("OVERRANK_CACHE", ".overrank-cache"),
            threads=args.threads,
            force=args.force,
        )
        return args.fn(args, cfg)
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except CrossoverNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
