"""Command-line front end.

Exit codes: 0 pass, 1 bound or validation failure, 2 input error, 3 internal
error (a proven bound was violated). Batch commands report the largest code
over their inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

from . import formats
from .decomp import run_pipeline, validate_td, width_bound
from .drawing import ConvexDrawing, compute_crossings
from .errors import BudgetExceeded, ConvexWidthError, InputError, InternalError, NotMinKPlanar
from .families import (
    gen_Fk,
    gen_Gk,
    gen_Gk_bramble,
    gen_grid,
    gen_stacked_prism,
    random_outer_min_k_planar,
    verify_bramble,
)
from .oracles import bramble_order, exact_treewidth
from .planarize import planarize
from .separate import (
    brute_force_min_balanced_separation,
    extract_balanced_separation,
    separation_bound,
    trivial_separation,
    verify_separation,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
SEPARATION_ORACLE_LIMIT = 16


@dataclass
class RunReport:
    command: str
    inputs: list[str]
    k: int | None = None
    k_value: int | None = None
    min_k_value: int | None = None
    measure: str | None = None  # "width", "order", "treewidth", ...
    value: int | None = None
    bound: int | None = None
    elapsed: float = 0.0
    verdict: str = "pass"
    exit_code: int = EXIT_PASS
    messages: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def fail(self, message: str, code: int = EXIT_FAIL) -> None:
        self.verdict = "fail" if code == EXIT_FAIL else "error"
        self.exit_code = max(self.exit_code, code)
        self.messages.append(message)

    def summary(self) -> str:
        parts = [self.command, ",".join(self.inputs)]
        for label, val in (("k", self.k), ("kValue", self.k_value), ("minKValue", self.min_k_value)):
            if val is not None:
                parts.append(f"{label}={val}")
        if self.measure is not None and self.measure not in ("kValue", "minKValue"):
            parts.append(f"{self.measure}={self.value}")
        if self.bound is not None:
            parts.append(f"bound={self.bound}")
        for key, val in self.details.items():
            if not isinstance(val, (list, dict)):
                parts.append(f"{key}={val}")
        parts.append(self.verdict)
        line = " ".join(parts)
        return "\n".join([line, *(f"  {m}" for m in self.messages)])

    def to_json(self) -> str:
        out = asdict(self)
        out["elapsed"] = round(self.elapsed, 6)
        return json.dumps(out, sort_keys=True)


def _guarded(report: RunReport, body: Callable[[RunReport], None]) -> RunReport:
    start = time.perf_counter()
    try:
        body(report)
    except NotMinKPlanar as exc:
        report.details["offending_pair"] = [list(e) for e in exc.pair]
        report.fail(str(exc), EXIT_FAIL)
    except InputError as exc:
        report.fail(str(exc), EXIT_INPUT)
    except BudgetExceeded as exc:
        report.fail(str(exc), EXIT_FAIL)
    except (InternalError, ConvexWidthError) as exc:
        report.fail(f"internal error: {exc}", EXIT_INTERNAL)
    report.elapsed = time.perf_counter() - start
    return report


def _load_drawing(path: str) -> ConvexDrawing:
    return formats.parse_cvx(formats.read_text(path), path)


def _output_for(out: str | None, path: str, suffix: str, batch: bool) -> str | None:
    if out is None:
        return None
    if batch:
        return str(Path(out) / (Path(path).stem + suffix))
    return out


def _resolve_k(report: RunReport, d: ConvexDrawing, k: int | None, auto: bool) -> int:
    crossings = compute_crossings(d)
    report.k_value = crossings.k_value
    report.min_k_value = crossings.min_k_value
    if auto:
        k = crossings.min_k_value
    if k is None:
        raise InputError("--k is required unless --auto-k is given")
    if k < 0:
        raise InputError("k must be non-negative")
    report.k = k
    return k


# ---------------------------------------------------------------------------
# Per-input tasks (module level so they can run in worker processes)
# ---------------------------------------------------------------------------


def task_check(path: str, k: int, mode: str, show_edges: bool) -> RunReport:
    def body(r: RunReport) -> None:
        d = _load_drawing(path)
        crossings = compute_crossings(d)
        r.k, r.k_value, r.min_k_value = k, crossings.k_value, crossings.min_k_value
        r.measure = "kValue" if mode == "k" else "minKValue"
        r.value = crossings.k_value if mode == "k" else crossings.min_k_value
        r.bound = k
        if show_edges:
            r.details["per_edge"] = [
                [u + 1, v + 1, crossings.per_edge[(u, v)]] for u, v in sorted(d.edges)
            ]
        if r.value > k:
            r.fail(f"{r.measure} {r.value} exceeds k={k}")

    return _guarded(RunReport("check", [path]), body)


def task_decompose(
    path: str, k: int | None, auto_k: bool, out: str | None, expanded_out: str | None
) -> RunReport:
    def body(r: RunReport) -> None:
        d = _load_drawing(path)
        kk = _resolve_k(r, d, k, auto_k)
        result = run_pipeline(d, kk)
        td = result.decomposition
        r.measure, r.value, r.bound = "width", td.width, width_bound(kk)
        if result.tree_pair is not None:
            r.details["dual_depth"] = result.tree_pair.max_depth
        problems = validate_td(td, d.graph)
        for p in problems:
            r.fail(p)
        if td.width > r.bound:
            r.fail(f"width {td.width} exceeds bound {r.bound}", EXIT_INTERNAL)
        if out is not None:
            formats.write_atomic(out, formats.format_td(td, d.n))
        if expanded_out is not None and result.expanded_decomposition is not None:
            nx = result.expansion.expanded.n if result.expansion is not None else d.n
            formats.write_atomic(expanded_out, formats.format_td(result.expanded_decomposition, nx))

    return _guarded(RunReport("decompose", [path]), body)


def task_separate(path: str, k: int | None, auto_k: bool, out: str | None) -> RunReport:
    def body(r: RunReport) -> None:
        d = _load_drawing(path)
        kk = _resolve_k(r, d, k, auto_k)
        result = run_pipeline(d, kk)
        if result.trivial:
            sep = trivial_separation(d.n)
        else:
            sep, _ = extract_balanced_separation(result.decomposition, d.graph)
        r.measure, r.value, r.bound = "order", sep.order, separation_bound(kk)
        r.details["scope"] = "given graph"
        for p in verify_separation(sep, d.graph):
            r.fail(p)
        if sep.order > r.bound:
            r.fail(f"order {sep.order} exceeds bound {r.bound}", EXIT_INTERNAL)
        if d.n <= SEPARATION_ORACLE_LIMIT:
            r.details["oracle_min_order"] = brute_force_min_balanced_separation(d.graph)
        if out is not None:
            formats.write_atomic(out, formats.format_sep(sep, d.n))

    return _guarded(RunReport("separate", [path]), body)


def task_planarize(path: str, out: str | None) -> tuple[RunReport, str]:
    dump: list[str] = []

    def body(r: RunReport) -> None:
        d = _load_drawing(path)
        gc, gs = planarize(d)
        r.details.update(
            gc_vertices=gc.num_vertices, gc_edges=gc.num_edges,
            gs_vertices=gs.num_vertices, gs_edges=gs.num_edges,
        )
        text = formats.format_planarization(gc, gs)
        if out is not None:
            formats.write_atomic(out, text)
        else:
            dump.append(text)

    report = _guarded(RunReport("planarize", [path]), body)
    return report, "".join(dump)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _run_batch(tasks: list[tuple[Callable[..., RunReport], tuple]], jobs: int) -> list[RunReport]:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(*a) for fn, a in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, *a) for fn, a in tasks]
        return [f.result() for f in futures]


def _emit(reports: Sequence[RunReport], as_json: bool) -> int:
    for r in reports:
        print(r.to_json() if as_json else r.summary())
    return max((r.exit_code for r in reports), default=EXIT_PASS)


def _check_batch_output(args: argparse.Namespace, *names: str) -> bool:
    batch = len(args.inputs) > 1
    if batch:
        for name in names:
            out = getattr(args, name)
            if out is not None and Path(out).exists() and not Path(out).is_dir():
                raise InputError(f"with several inputs, {out} must be a directory")
    return batch


def cmd_check(args: argparse.Namespace) -> int:
    tasks = [(task_check, (p, args.k, args.mode, not args.json)) for p in args.inputs]
    reports = _run_batch(tasks, args.jobs)
    if not args.json:
        for r in reports:
            for u, v, c in r.details.pop("per_edge", []):
                print(f"edge {u} {v} crossings {c}")
    return _emit(reports, args.json)


def cmd_decompose(args: argparse.Namespace) -> int:
    batch = _check_batch_output(args, "output", "expanded_td")
    tasks = [
        (
            task_decompose,
            (
                p, args.k, args.auto_k,
                _output_for(args.output, p, ".td", batch),
                _output_for(args.expanded_td, p, ".expanded.td", batch),
            ),
        )
        for p in args.inputs
    ]
    return _emit(_run_batch(tasks, args.jobs), args.json)


def cmd_separate(args: argparse.Namespace) -> int:
    batch = _check_batch_output(args, "output")
    tasks = [
        (task_separate, (p, args.k, args.auto_k, _output_for(args.output, p, ".sep", batch)))
        for p in args.inputs
    ]
    return _emit(_run_batch(tasks, args.jobs), args.json)


def cmd_planarize(args: argparse.Namespace) -> int:
    report, dump = task_planarize(args.input, args.output)
    if dump and report.exit_code == EXIT_PASS:
        sys.stdout.write(dump)
    if args.json or report.exit_code != EXIT_PASS or args.output is not None:
        return _emit([report], args.json)
    return report.exit_code


def cmd_gen(args: argparse.Namespace) -> int:
    def body(r: RunReport) -> None:
        fam = args.family
        needed = {"grid": ("m", "n"), "gk": ("k",), "fk": ("k",), "prism": ("m", "n"), "random": ("n", "k")}
        for name in needed[fam]:
            if getattr(args, name) is None:
                raise InputError(f"gen {fam} requires --{name}")
        if fam == "grid":
            text = formats.format_gr(gen_grid(args.m, args.n))
        elif fam == "gk":
            text = formats.format_gr(gen_Gk(args.k))
        elif fam == "fk":
            text = formats.format_cvx(gen_Fk(args.k))
        elif fam == "prism":
            text = formats.format_cvx(gen_stacked_prism(args.m, args.n))
        else:
            text = formats.format_cvx(random_outer_min_k_planar(args.n, args.k, args.seed))
        if args.output is None:
            sys.stdout.write(text)
        else:
            formats.write_atomic(args.output, text)

    report = _guarded(RunReport("gen", [args.family]), body)
    if args.output is None and report.exit_code == EXIT_PASS:
        return EXIT_PASS
    return _emit([report], args.json)


def cmd_validate(args: argparse.Namespace) -> int:
    def body(r: RunReport) -> None:
        g = formats.parse_graph(formats.read_text(args.graph), args.graph)
        td, n = formats.parse_td(formats.read_text(args.td), args.td)
        if n != g.n:
            r.fail(f"decomposition is over {n} vertices but the graph has {g.n}")
            return
        r.measure, r.value = "width", td.width
        for p in validate_td(td, g):
            r.fail(p)

    return _emit([_guarded(RunReport("validate", [args.td, args.graph]), body)], args.json)


def cmd_oracle(args: argparse.Namespace) -> int:
    def body(r: RunReport) -> None:
        if args.kind == "bramble":
            if args.k is None:
                raise InputError("oracle bramble requires --k")
            g, b = gen_Gk(args.k), gen_Gk_bramble(args.k)
            violation = verify_bramble(g, b)
            if violation is not None:
                r.fail(f"not a bramble: {violation}")
                return
            r.k, r.measure = args.k, "bramble_order"
            r.value = bramble_order(g, b, args.max_universe, args.max_sets)
            return
        if args.input is None:
            raise InputError(f"oracle {args.kind} requires an input graph")
        g = formats.parse_graph(formats.read_text(args.input), args.input)
        if args.kind == "tw":
            r.measure, r.value = "treewidth", exact_treewidth(g, cap=args.cap or 22)
        else:
            r.measure = "min_balanced_separation_order"
            r.value = brute_force_min_balanced_separation(g, cap=args.cap or SEPARATION_ORACLE_LIMIT)

    inputs = [args.input] if args.input else [f"G_{args.k}"]
    return _emit([_guarded(RunReport(f"oracle {args.kind}", inputs), body)], args.json)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexwidth",
        description="Tree decompositions and balanced separations of outer min-k-planar drawings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, batch: bool = True) -> None:
        p.add_argument("--json", action="store_true", help="one JSON record per input")
        if batch:
            p.add_argument("--jobs", type=int, default=1, help="worker processes for several inputs")

    p = sub.add_parser("check", help="crossing counts and outer (min-)k-planarity")
    p.add_argument("inputs", nargs="+", metavar="drawing.cvx")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("k", "min-k"), default="k")
    common(p)
    p.set_defaults(func=cmd_check)

    for name, helptext, func in (
        ("decompose", "tree decomposition of width at most 3*(k//2)+4", cmd_decompose),
        ("separate", "balanced separation of order at most 2*(k//2)+4", cmd_separate),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("inputs", nargs="+", metavar="drawing.cvx")
        p.add_argument("--k", type=int)
        p.add_argument("--auto-k", action="store_true", help="use the drawing's minKValue as k")
        p.add_argument("-o", "--output", help="output file, or directory with several inputs")
        if name == "decompose":
            p.add_argument("--expanded-td", help="also write the decomposition of the expanded graph")
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("planarize", help="dump the crossing graph and its subdivision")
    p.add_argument("input", metavar="drawing.cvx")
    p.add_argument("-o", "--output")
    common(p, batch=False)
    p.set_defaults(func=cmd_planarize)

    p = sub.add_parser("gen", help="generate a graph family")
    p.add_argument("family", choices=("grid", "gk", "fk", "prism", "random"))
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    common(p, batch=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("validate", help="check a .td file against a graph")
    p.add_argument("td")
    p.add_argument("graph", help=".cvx or .gr file")
    common(p, batch=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle", help="exact small-instance oracles")
    p.add_argument("kind", choices=("tw", "sep", "bramble"))
    p.add_argument("input", nargs="?", help=".cvx or .gr file (tw, sep)")
    p.add_argument("--k", type=int, help="G_k parameter (bramble)")
    p.add_argument("--cap", type=int, help="vertex cap for tw and sep")
    p.add_argument("--max-universe", type=int, default=64)
    p.add_argument("--max-sets", type=int, default=512)
    common(p, batch=False)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
