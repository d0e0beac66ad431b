"""Command line front end: ``fastkh compute | oracle | verify | bench``.

Exit codes: 0 on success, 1 when a verification fails, 2 on bad input,
3 when a size or time limit is hit.  ``KH_LOG`` sets the log level
(``debug``, ``info``, ``warning``); progress goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import signal
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from pathlib import Path

from .homology import HomologyTable, homology, primary_decomposition
from .oracle import DEFAULT_LIMIT, SizeLimitExceeded, cube_complex
from .planar import Diagram, DiagramError, PDSyntaxError, order_crossings, parse_pd, torus_knot
from .rings import ring_from_name
from .scan import divide_and_conquer_result, scan_state

log = logging.getLogger("fastkh")

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class LimitExceeded(Exception):
    pass


@contextmanager
def time_limit(seconds: float | None):
    """Raise :class:`LimitExceeded` after ``seconds`` of wall time (Unix only)."""
    if not seconds or not hasattr(signal, "SIGALRM"):
        yield
        return

    def fire(signum, frame):
        raise LimitExceeded(f"time limit of {seconds:g}s exceeded")

    old = signal.signal(signal.SIGALRM, fire)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _setup_logging() -> None:
    level = os.environ.get("KH_LOG", "warning").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )


# ---------------------------------------------------------------------------
# input


def _read_diagram(args) -> Diagram:
    if getattr(args, "torus", None):
        try:
            p, q = (int(x) for x in args.torus.split(","))
        except ValueError:
            raise PDSyntaxError("--torus expects P,Q", 0) from None
        return torus_knot(p, q)
    if args.pd is not None:
        text = args.pd
    elif args.file is not None:
        text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    else:
        raise PDSyntaxError("no diagram given (use --pd, --file or --torus)", 0)
    return parse_pd(text)


def _ring(args):
    return ring_from_name(args.ring, args.p)


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--pd", help="PD code, e.g. 'PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]' or JSON")
    src.add_argument("--file", help="file holding a PD code ('-' for stdin)")
    src.add_argument("--torus", metavar="P,Q", help="the torus knot T(P,Q) as a braid closure")
    p.add_argument("--ring", default="z", help="z, q, fp (with --p) or f2, f3, ... (default z)")
    p.add_argument("--p", type=int, default=None, help="prime for --ring fp")
    p.add_argument("--json", action="store_true", help="print JSON instead of a table")
    p.add_argument("--tsv", action="store_true", help="print tab-separated rows")
    p.add_argument("--timeout", type=float, default=None, help="wall-clock limit in seconds")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes")


def _print_table(table: HomologyTable, args, extra: dict | None = None) -> None:
    if args.json:
        data = {"ring": table.ring.name, "groups": table.rows()}
        if extra:
            data["stats"] = extra
        print(json.dumps(data, sort_keys=True))
        return
    if args.tsv:
        print(table.to_tsv())
        return
    print("Khovanov homology, columns q:")
    print(table.to_text("q"))
    print()
    print("columns j = q - 2r:")
    print(table.to_text("j"))
    torsion = [
        (r, q, t) for (r, q), (_, t) in table.entries.items() if t
    ]
    if torsion:
        print()
        print("torsion as prime powers:")
        for r, q, t in torsion:
            parts = "+".join(f"Z{x}" for x in primary_decomposition(t))
            print(f"  r={r} q={q} (j={q - 2 * r}): {parts}")
    if extra:
        print()
        for k, v in extra.items():
            print(f"{k}: {v}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_compute(args) -> int:
    d = _read_diagram(args)
    ring = _ring(args)
    dump = Path(args.dump_stages) if args.dump_stages else None
    if dump:
        dump.mkdir(parents=True, exist_ok=True)

    def progress(state):
        log.info("crossing %d/%d: %d objects", state.crossings_done, d.n, len(state.work))
        if dump:
            name = dump / f"stage_{state.crossings_done:03d}.json"
            name.write_text(state.current.to_json())

    order = order_crossings(d, args.order)
    with time_limit(args.timeout):
        state = scan_state(d, order, ring, on_progress=progress)
        table = homology(state.current)
    stats = None
    if args.stats:
        stats = {
            "crossings": d.n,
            "order": args.order,
            "max_width": order.max_width,
            "peak_objects": state.peak_objects,
            "peak_delooped_objects": state.peak_delooped,
            "eliminations": state.eliminations,
            "seconds": round(state.seconds, 3),
        }
    _print_table(table, args, stats)
    return EXIT_OK


def cmd_oracle(args) -> int:
    d = _read_diagram(args)
    with time_limit(args.timeout):
        table = homology(cube_complex(d, _ring(args), limit=args.limit))
    _print_table(table, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import report_json, run_all

    ring = ring_from_name(args.ring, args.p)
    with time_limit(args.timeout):
        reports = run_all(ring)
    if args.json:
        print(report_json(reports))
    else:
        for r in reports:
            print(f"{r.name}: {'ok' if r.ok else 'FAILED'}")
            for k, v in r.details.items():
                print(f"  {k}: {v}")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED


def _bench_one(text: str, ring_name: str, p, strategy: str) -> dict:
    d = parse_pd(text)
    order = order_crossings(d, strategy)
    state = scan_state(d, order, ring_from_name(ring_name, p))
    return {
        "order": strategy,
        "max_width": order.max_width,
        "width_profile": list(order.width_profile),
        "peak_objects": state.peak_objects,
        "peak_delooped_objects": state.peak_delooped,
        "eliminations": state.eliminations,
        "seconds": round(state.seconds, 3),
    }


def cmd_bench(args) -> int:
    from .planar import serialize

    d = _read_diagram(args)
    ring = _ring(args)
    report = {"crossings": d.n, "naive_cube_objects": 2**d.n, "runs": []}
    with time_limit(args.timeout):
        text = serialize(d)
        strategies = ["given", "greedy"]
        if args.threads > 1:
            with ProcessPoolExecutor(max_workers=min(args.threads, 2)) as pool:
                futures = [pool.submit(_bench_one, text, args.ring, args.p, s) for s in strategies]
                report["runs"] = [f.result() for f in futures]
        else:
            report["runs"] = [_bench_one(text, args.ring, args.p, s) for s in strategies]
        if args.divide:
            left, right = (
                [int(x) for x in part.split(",") if x.strip()] for part in args.divide.split("|")
            )
            start = time.perf_counter()
            res = divide_and_conquer_result(d, (left, right), ring)
            report["divide_and_conquer"] = {
                "cut": [left, right],
                "left_objects": res.left.object_count,
                "right_objects": res.right.object_count,
                "tensor_objects": res.tensor_objects,
                "seconds": round(time.perf_counter() - start, 3),
            }
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(f"crossings: {d.n}   naive cube objects: {2 ** d.n}")
        for run in report["runs"]:
            print(
                f"{run['order']:>7}: max width {run['max_width']:>3}  peak objects "
                f"{run['peak_objects']:>7} ({run['peak_delooped_objects']} delooped)  "
                f"eliminations {run['eliminations']:>8}  "
                f"{run['seconds']:.3f}s"
            )
            print(f"         widths {run['width_profile']}")
        if "divide_and_conquer" in report:
            dc = report["divide_and_conquer"]
            print(
                f"divide and conquer {dc['cut']}: halves {dc['left_objects']} and "
                f"{dc['right_objects']} objects, tensor {dc['tensor_objects']} objects"
            )
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fastkh", description="Khovanov homology by scanning tangle complexes."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="Khovanov homology of a diagram")
    _add_input(p)
    p.add_argument("--order", choices=["given", "greedy"], default="greedy")
    p.add_argument("--dump-stages", metavar="DIR", help="write the complex after each crossing")
    p.add_argument("--stats", action="store_true", help="report peak object count and timing")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("oracle", help="homology from the full cube (small diagrams)")
    _add_input(p)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="maximum crossings")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="Reidemeister invariance checks")
    p.add_argument("--ring", default="z")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timeout", type=float, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="object counts and timing, given vs greedy order")
    _add_input(p)
    p.add_argument("--divide", metavar="A|B", help="also run divide and conquer, e.g. '0,1|2,3'")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SizeLimitExceeded, LimitExceeded) as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (PDSyntaxError, DiagramError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
