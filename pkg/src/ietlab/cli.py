"""Command-line surface.

Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error,
3 resource-limit abort.  Diagnostics go to stderr; results go to stdout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

from . import amicable, analysis, atlas, sturmian, triet, verify
from .atlas import AtlasError
from .cache import ResultCache, cache_from_env
from .exact import format_exact, parse_exact
from .triet import EnumerationLimitError

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _err(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _cached_enumerate(
    length: int, cache: Optional[ResultCache], workers: int, limit: Optional[int]
) -> list[str]:
    if cache is not None:
        payload = cache.load("enumerate", length=length)
        if payload is not None:
            return list(payload["words"])
    words = triet.enumerate_factors(length, workers=workers, limit=limit)
    if cache is not None:
        cache.store(
            "enumerate",
            {"length": length, "count": len(words), "words": words},
            length=length,
        )
    return words


def cmd_count(args) -> int:
    cache = cache_from_env(args.cache)
    words = _cached_enumerate(args.length, cache, args.workers, args.max_words)
    if args.by_b:
        counts: dict[int, int] = {}
        for w in words:
            b = w.count("B")
            counts[b] = counts.get(b, 0) + 1
        counts = dict(sorted(counts.items()))
        if args.json:
            print(json.dumps({"length": args.length, "count": len(words),
                              "by_b": {str(b): c for b, c in counts.items()}}, indent=2))
        else:
            for b, c in counts.items():
                print(f"b={b} count={c}")
            print(f"total={len(words)}")
    elif args.json:
        print(json.dumps({"length": args.length, "count": len(words)}, indent=2))
    else:
        print(len(words))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    cache = cache_from_env(args.cache)
    words = _cached_enumerate(args.length, cache, args.workers, args.max_words)
    if args.json:
        print(json.dumps({"length": args.length, "count": len(words), "words": words}, indent=2))
    else:
        for w in words:
            print(w)
    return EXIT_OK


def cmd_sturmian(args) -> int:
    m = args.length
    if args.b is not None:
        count = sturmian.h_count(m, args.b)
        if args.json:
            print(json.dumps({"length": m, "min_ones": args.b, "count": count}, indent=2))
        else:
            print(count)
        return EXIT_OK
    if args.classes:
        doc = {
            "length": m,
            "classes": [
                {
                    "left": str(cls.left),
                    "right": str(cls.right),
                    "factors": sorted(cls.factors),
                }
                for cls in (sturmian.class_factors(m, i) for i in range(sturmian.class_count(m)))
            ],
        }
        if args.json:
            print(json.dumps(doc, indent=2))
        else:
            for i, cls in enumerate(doc["classes"]):
                print(f"class {i} ({cls['left']}, {cls['right']}): {' '.join(cls['factors'])}")
        return EXIT_OK
    words = sorted(sturmian.all_factors(m))
    if args.json:
        print(json.dumps({"length": m, "count": len(words), "words": words}, indent=2))
    else:
        print(len(words))
    return EXIT_OK


def cmd_amicable(args) -> int:
    m = args.length
    if args.per_class:
        if args.b is None:
            _err("--per-class requires --b")
            return EXIT_USAGE
        rows = []
        for i in range(sturmian.class_count(m)):
            cls = sturmian.class_factors(m, i)
            rows.append(
                {
                    "left": str(cls.left),
                    "right": str(cls.right),
                    "pairs": amicable.class_pair_count(m, i, args.b),
                }
            )
        doc = {"length": m, "b": args.b, "classes": rows, "z_count": amicable.z_count(m, args.b)}
        if args.json:
            print(json.dumps(doc, indent=2))
        else:
            for i, row in enumerate(rows):
                print(f"class {i} ({row['left']}, {row['right']}): pairs={row['pairs']}")
            print(f"z_count={doc['z_count']}")
        return EXIT_OK
    if args.b is not None:
        count = amicable.count_pairs(m, args.b)
        if args.json:
            print(json.dumps({"length": m, "b": args.b, "pairs": count}, indent=2))
        else:
            print(count)
        return EXIT_OK
    counts = amicable.pair_counts_by_b(m)
    if args.json:
        print(json.dumps({"length": m, "pairs_by_b": {str(b): c for b, c in counts.items()}}, indent=2))
    else:
        for b, c in counts.items():
            print(f"b={b} pairs={c}")
    return EXIT_OK


def cmd_atlas(args) -> int:
    built = atlas.build_atlas(args.length)
    regions = list(built.regions)
    if args.svg:
        with open(args.svg, "w") as handle:
            handle.write(atlas.emit_svg(regions, length=args.length))
        print(f"wrote {args.svg}", file=sys.stderr)
    if args.fig:
        from .figures import render_atlas_figure

        render_atlas_figure(regions, args.fig, length=args.length)
        print(f"wrote {args.fig}", file=sys.stderr)
    if args.json:
        print(json.dumps(atlas.emit_json(regions, length=args.length), indent=2))
    else:
        print(f"regions={len(regions)} lines={len(built.lines)}")
    return EXIT_OK


def cmd_orbit(args) -> int:
    params = triet.IetParams(
        parse_exact(args.epsilon), parse_exact(args.ell), parse_exact(args.x0)
    )
    word = triet.code_orbit(params, args.n)
    if args.json:
        print(
            json.dumps(
                {
                    "epsilon": format_exact(params.epsilon),
                    "ell": format_exact(params.ell),
                    "x0": format_exact(params.x0),
                    "n": args.n,
                    "word": word,
                },
                indent=2,
            )
        )
    else:
        print(word)
    return EXIT_OK


def cmd_bounds(args) -> int:
    top = args.max_n
    rows = analysis.bounds_table(top, workers=args.workers)
    reports = [analysis.prop_lower_report(n) for n in range(1, top + 1)]
    if args.fig:
        from .figures import render_bounds_figure

        render_bounds_figure(rows, args.fig)
        print(f"wrote {args.fig}", file=sys.stderr)
    if args.json:
        doc = {
            "rows": [
                {"n": r.n, "count": r.count, "ratio": r.ratio, "ratio_3sf": r.ratio_3sf}
                for r in rows
            ],
            "lower_const": str(analysis.LOWER_CONST),
            "upper_const": str(analysis.UPPER_CONST),
            "prop_lower": [
                {"n": r.n, "lhs": r.lhs, "rhs": r.rhs, "holds": r.holds} for r in reports
            ],
        }
        print(json.dumps(doc, indent=2))
    elif args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerows(analysis.bounds_csv_rows(rows, reports))
        sys.stdout.write(buf.getvalue())
    else:
        print(f"constants: lower {analysis.LOWER_CONST}, upper {analysis.UPPER_CONST}")
        print("N count ratio")
        for r in rows:
            print(f"{r.n} {r.count} {r.ratio_3sf}")
        print("N lhs rhs holds")
        for rep in reports:
            print(f"{rep.n} {rep.lhs} {rep.rhs} {str(rep.holds).lower()}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite, args.max_n)
    for result in results:
        print(result.line())
    failed = sum(1 for r in results if not r.ok)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ietlab",
        description="Exact toolkit for words coding exchanges of two and three intervals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, length=True):
        if length:
            p.add_argument("--length", type=int, required=True, help="word length")
        p.add_argument("--json", action="store_true", help="emit JSON on stdout")
        p.add_argument("--cache", help="cache directory (env IETLAB_CACHE when absent)")
        p.add_argument("--workers", type=int, default=1, help="parallel enumeration workers")
        p.add_argument("--max-words", type=int, default=None, help="resource cap on enumerated words")

    p = sub.add_parser("count", help="number of ternary factors of one length")
    common(p)
    p.add_argument("--by-b", action="store_true", help="partition the count by letters B")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="all ternary factors of one length")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sturmian", help="binary factor sets and counts")
    common(p)
    p.add_argument("--b", type=int, default=None, help="count factors with at least B ones")
    p.add_argument("--classes", action="store_true", help="list per-class factor sets")
    p.set_defaults(func=cmd_sturmian)

    p = sub.add_parser("amicable", help="amicable pair counts")
    common(p)
    p.add_argument("--b", type=int, default=None, help="number of letters B in the merged word")
    p.add_argument("--per-class", action="store_true", help="per-class pair counts and z count")
    p.set_defaults(func=cmd_amicable)

    p = sub.add_parser("atlas", help="parameter-plane region atlas")
    common(p)
    p.add_argument("--svg", help="write an SVG atlas to this path")
    p.add_argument("--fig", help="write a matplotlib rendering to this path")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("orbit", help="exact orbit coding for explicit parameters")
    p.add_argument("--epsilon", required=True, help='exact number, e.g. "(-1+1*sqrt(5))/2"')
    p.add_argument("--ell", required=True, help='exact number, e.g. "9/10"')
    p.add_argument("--x0", required=True, help="exact number")
    p.add_argument("--n", type=int, required=True, help="number of letters")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("bounds", help="ratio table and tail-count report")
    p.add_argument("--max-n", type=int, default=10, help="largest length in the table")
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true", help="emit CSV on stdout")
    p.add_argument("--fig", help="write a matplotlib figure to this path")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all", help=f"one of {sorted(verify.SUITES)} or 'all'")
    p.add_argument("--max-n", type=int, default=None, help="cap the suite's range")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (EnumerationLimitError, AtlasError) as exc:
        _err(str(exc))
        return EXIT_RESOURCE
    except (ValueError, IndexError, OSError) as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
