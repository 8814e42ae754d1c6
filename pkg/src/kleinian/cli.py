"""Command-line front end: render, bench, counts, presets.

Exit codes: 0 on success, 2 for configuration problems (bad flags, unknown
preset, malformed range, unwritable output), 1 for unexpected runtime errors.
"""

from __future__ import annotations

import argparse
import sys

from . import bench as bench_mod
from .config import ConfigError, builtin_presets, resolve_group
from .enumeration import EnumerationMode, EnumeratorConfig, RangeError, counts
from .render import (
    Palette,
    PaletteMode,
    RenderJob,
    RenderKind,
    Viewport,
    render,
    write_image,
)

_MODES = {m.value: m for m in EnumerationMode}


def _parse_range(text: str) -> tuple[int, int]:
    parts = text.split("..")
    if len(parts) != 2:
        raise ConfigError(f"malformed range {text!r}; expected START..END")
    try:
        start, end = int(parts[0]), int(parts[1])
    except ValueError:
        raise ConfigError(f"malformed range {text!r}; bounds must be integers") from None
    if start >= end:
        raise ConfigError(f"malformed range {text!r}; start must be below end")
    return start, end


def _parse_size(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ConfigError(f"malformed size {text!r}; expected WIDTHxHEIGHT")
    try:
        w, h = int(parts[0]), int(parts[1])
    except ValueError:
        raise ConfigError(f"malformed size {text!r}; dimensions must be integers") from None
    if w <= 0 or h <= 0:
        raise ConfigError(f"size {text!r} must be positive")
    return w, h


def _parse_viewport(text: str) -> Viewport:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"malformed viewport {text!r}; expected CX,CY,HALF")
    try:
        cx, cy, half = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"malformed viewport {text!r}; values must be numbers") from None
    if half <= 0:
        raise ConfigError(f"viewport half-extent must be positive in {text!r}")
    return Viewport(complex(cx, cy), half)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kleinian", description="render tessellations and limit sets of Kleinian groups")
    sub = parser.add_subparsers(dest="command", required=True)

    p_render = sub.add_parser("render", help="render a limit set or tessellation to a PPM file")
    p_render.add_argument("--group", required=True, help="preset name or group config file")
    p_render.add_argument("--mode", default="ordinal", choices=sorted(_MODES), help="word enumerator")
    p_render.add_argument("--depth", type=int, default=6, help="maximal word length")
    p_render.add_argument("--range", dest="index_range", default=None, help="integer subrange START..END (index modes only)")
    p_render.add_argument("--kind", default="limitset", choices=[k.value for k in RenderKind])
    p_render.add_argument("--size", default="800x800", help="output resolution WIDTHxHEIGHT")
    p_render.add_argument("--viewport", default=None, help="CX,CY,HALF window of the plane")
    p_render.add_argument("--palette", default="depth", choices=[p.value for p in PaletteMode])
    p_render.add_argument("--out", required=True, help="output PPM path")
    p_render.add_argument("--stats", action="store_true", help="print a key=value stats block")
    p_render.add_argument("--jobs", type=int, default=1, help="partition the index range across N workers")

    p_bench = sub.add_parser("bench", help="compare enumerators on time and retained storage")
    p_bench.add_argument("--group", default=None, help="preset name or group config file")
    p_bench.add_argument("--n", type=int, default=4, help="generator count for an abstract group")
    variant = p_bench.add_mutually_exclusive_group()
    variant.add_argument("--self-inverse", dest="self_inverse", action="store_true", default=True)
    variant.add_argument("--non-self-inverse", dest="self_inverse", action="store_false")
    p_bench.add_argument("--depth", type=int, nargs="+", default=[6], help="depths to benchmark")
    p_bench.add_argument("--modes", default="lex,ordinal,cardinal", help="comma-separated enumerator modes")
    p_bench.add_argument("--cap", type=int, default=None, help="cap the index modes at this many integers")
    p_bench.add_argument("--budget", type=float, default=None, help="per-mode time budget in seconds")
    p_bench.add_argument("--csv", default=None, help="write results as CSV")
    p_bench.add_argument("--plot", default=None, help="write a figure next to the CSV")
    p_bench.add_argument("--table4", action="store_true", help="print the closed-form cost table")

    p_counts = sub.add_parser("counts", help="closed-form word counts")
    p_counts.add_argument("--n", type=int, required=True, help="generator count (= base)")
    p_counts.add_argument("--depth", type=int, required=True, help="maximal word length")
    cvariant = p_counts.add_mutually_exclusive_group()
    cvariant.add_argument("--self-inverse", dest="self_inverse", action="store_true", default=True)
    cvariant.add_argument("--non-self-inverse", dest="self_inverse", action="store_false")

    sub.add_parser("presets", help="list builtin groups")
    return parser


def _cmd_render(args) -> int:
    gs, rules, preset_viewport = resolve_group(args.group)
    mode = _MODES[args.mode]
    index_range = _parse_range(args.index_range) if args.index_range else None
    if index_range is not None and mode is EnumerationMode.LEXICOGRAPHIC:
        raise ConfigError("--range applies to index modes only; the tree walk cannot jump")
    if args.jobs > 1 and mode is EnumerationMode.LEXICOGRAPHIC:
        raise ConfigError("--jobs applies to index modes only; the tree walk cannot be partitioned")
    if args.depth < 1:
        raise ConfigError("--depth must be at least 1")
    try:
        cfg = EnumeratorConfig(len(gs), args.depth, mode, index_range)
    except (RangeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    width, height = _parse_size(args.size)
    viewport = _parse_viewport(args.viewport) if args.viewport else (preset_viewport or Viewport())
    job = RenderJob(
        group=gs,
        rules=rules,
        enumerator=cfg,
        kind=RenderKind(args.kind),
        viewport=viewport,
        width=width,
        height=height,
        palette=Palette(PaletteMode(args.palette)),
    )
    try:
        image, stats = render(job, workers=args.jobs)
    except RangeError as exc:
        raise ConfigError(str(exc)) from exc
    try:
        write_image(image, args.out)
    except OSError as exc:
        raise ConfigError(f"unwritable output: {exc}") from exc
    if args.stats:
        print(stats.as_text())
    print(f"wrote {args.out}")
    return 0


def _cmd_bench(args) -> int:
    if args.group:
        gs, rules, _ = resolve_group(args.group)
    else:
        from .groups import abstract_group, pair_rules

        gs = abstract_group(args.n, self_inverse=args.self_inverse)
        rules = pair_rules(gs)
    try:
        modes = tuple(_MODES[m.strip()] for m in args.modes.split(",") if m.strip())
    except KeyError as exc:
        raise ConfigError(f"unknown mode {exc.args[0]!r} in --modes") from exc
    if args.table4:
        print(bench_mod.table4_report())
        print()
    results = []
    for depth in args.depth:
        results.extend(
            bench_mod.run_bench(gs, rules, depth, modes, index_cap=args.cap, time_budget=args.budget)
        )
    print(bench_mod.format_results(results))
    if args.csv:
        try:
            bench_mod.write_csv(results, args.csv)
        except OSError as exc:
            raise ConfigError(f"unwritable output: {exc}") from exc
        print(f"wrote {args.csv}")
    if args.plot:
        try:
            bench_mod.plot_report(results, args.plot)
        except OSError as exc:
            raise ConfigError(f"unwritable output: {exc}") from exc
        print(f"wrote {args.plot}")
    return 0


def _cmd_counts(args) -> int:
    if args.n < 2 or args.depth < 1:
        raise ConfigError("counts needs --n >= 2 and --depth >= 1")
    report = counts(args.n, args.depth)
    variant = "self-inverse" if args.self_inverse else "non-self-inverse"
    print(f"base n={report.base} depth d={report.depth} ({variant} pair rules)")
    print(f"tree words (all lengths 1..d):     {report.tree_words}")
    print(f"leaf words (length d):             {report.leaf_words}")
    print(f"reduced tree words:                {report.reduced_tree_words}")
    print(f"reduced leaf words:                {report.reduced_leaf_words}")
    print(f"reduced tessellation with root:    {bench_mod.table4_cumulative(args.n, args.depth)}")
    return 0


def _cmd_presets() -> int:
    for preset in builtin_presets().values():
        print(f"{preset.name}: {preset.description}")
        vp = preset.viewport
        print(f"    suggested viewport: center {vp.center.real},{vp.center.imag} half {vp.half_extent}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "render":
            return _cmd_render(args)
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "counts":
            return _cmd_counts(args)
        if args.command == "presets":
            return _cmd_presets()
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
