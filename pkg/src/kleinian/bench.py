"""Cost accounting and enumerator comparison.

Reproduces the closed-form word counts behind the dictionary-size table for
self-inverse four-generator groups, and measures both enumerators with an
instrumented storage meter: the index modes must never retain more than one
in-flight word (at most max_depth + 1 symbols) per active range, however large
the total word count grows.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass

from .enumeration import (
    EnumerationMode,
    EnumeratorConfig,
    StorageMeter,
    counts,
    default_index_range,
    enumerate_index,
    enumerate_lexicographic,
)
from .groups import CancellationRules, GeneratorSet

CSV_COLUMNS = ("mode", "n", "d", "emitted", "skipped", "ms", "peak_words", "peak_symbols")

# Word lengths and process-step counts as printed in the source cost table
# (self-inverse, four generators, tessellation row).
TABLE4_LENGTHS = (0, 1, 3, 5, 7, 9, 11, 13, 15, 17)
TABLE4_TESSELLATION_STEPS = (1, 5, 53, 485, 4373, 39365, 354293, 3188645, 28697813, 258280325)
TABLE4_LIMIT_SET_STEPS = (1, 4, 9, 81, 729, 6561, 59049, 531441, 4782969, 43046721)


class TimeBudgetExceeded(RuntimeError):
    pass


@dataclass
class BenchResult:
    mode: str
    n: int
    depth: int
    words_emitted: int
    words_skipped: int
    wall_time: float
    peak_retained_words: int
    peak_retained_symbols: int
    partial: bool = False

    def csv_row(self) -> tuple:
        return (
            self.mode,
            self.n,
            self.depth,
            self.words_emitted,
            self.words_skipped,
            round(self.wall_time * 1000.0, 3),
            self.peak_retained_words,
            self.peak_retained_symbols,
        )


def table4_cumulative(base: int, depth: int) -> int:
    """Reduced tessellation words up to the given length, root included."""
    if depth == 0:
        return 1
    return 1 + counts(base, depth).reduced_tree_words


def _human_bytes(n: int) -> str:
    if n < 1024:
        return f"{n}B"
    if n < 1024**2:
        return f"{n / 1024:.1f}KB"
    return f"{n / 1024 ** 2:.1f}MB"


def table4_report(base: int = 4, depths: tuple[int, ...] = TABLE4_LENGTHS) -> str:
    """Closed-form process steps and dictionary sizes at one byte per word.

    The tessellation row is reproduced exactly. The printed limit-set row of
    the source table matches neither n^d nor the reduced leaf count
    n*(n-1)^(d-1); our computed values are shown beside it with a note.
    """
    lines = [
        f"Process steps and dictionary sizes, self-inverse group of {base} generators",
        "",
        f"{'length':>8} {'tessellation':>14} {'dict size':>10} {'reduced leaves':>15} {'printed limit set':>18}",
    ]
    printed = dict(zip(TABLE4_LENGTHS, TABLE4_LIMIT_SET_STEPS))
    for d in depths:
        steps = table4_cumulative(base, d)
        leaves = 1 if d == 0 else counts(base, d).reduced_leaf_words
        shown = printed.get(d, "-")
        lines.append(f"{d:>8} {steps:>14} {_human_bytes(steps):>10} {leaves:>15} {shown:>18}")
    lines.append("")
    lines.append(
        "note: the source's limit-set row equals (n-1)^(d-1) for n=4 and is inconsistent"
    )
    lines.append(
        "with its own leaf count n^d; the reduced-leaves column holds our computed values."
    )
    return "\n".join(lines)


def _capped_config(n: int, depth: int, mode: EnumerationMode, cap: int | None) -> EnumeratorConfig:
    cfg = EnumeratorConfig(n, depth, mode)
    if cap is None:
        return cfg
    start, end = default_index_range(cfg)
    return EnumeratorConfig(n, depth, mode, (start, min(end, start + cap)))


def run_bench(
    gs: GeneratorSet,
    rules: CancellationRules,
    depth: int,
    modes: tuple[EnumerationMode, ...] = (
        EnumerationMode.LEXICOGRAPHIC,
        EnumerationMode.ORDINAL,
        EnumerationMode.CARDINAL,
    ),
    *,
    index_cap: int | None = None,
    time_budget: float | None = None,
) -> list[BenchResult]:
    """Run each mode with a counting sink and instrumented storage.

    ``index_cap`` limits the index modes to the first so-many integers of their
    range, which keeps deep runs affordable without touching the storage
    contract. A mode exceeding ``time_budget`` seconds is cut short and its
    result flagged partial. Index-mode results are gated here: retaining more
    than depth + 1 symbols would mean a dictionary is being built.
    """
    n = len(gs)
    results = []
    for mode in modes:
        meter = StorageMeter()
        deadline = None if time_budget is None else time.monotonic() + time_budget
        calls = 0

        def sink(word) -> None:
            nonlocal calls
            calls += 1
            if deadline is not None and calls % 1024 == 0 and time.monotonic() > deadline:
                raise TimeBudgetExceeded

        start = time.perf_counter()
        partial = False
        try:
            if mode is EnumerationMode.LEXICOGRAPHIC:
                enumerate_lexicographic(gs, rules, depth, sink, meter=meter)
            else:
                enumerate_index(gs, rules, _capped_config(n, depth, mode, index_cap), sink, meter=meter)
        except TimeBudgetExceeded:
            partial = True
        elapsed = time.perf_counter() - start
        result = BenchResult(
            mode=mode.value,
            n=n,
            depth=depth,
            words_emitted=meter.emitted,
            words_skipped=meter.skipped,
            wall_time=elapsed,
            peak_retained_words=meter.peak_retained_words,
            peak_retained_symbols=meter.peak_retained_symbols,
            partial=partial,
        )
        if mode is not EnumerationMode.LEXICOGRAPHIC:
            if result.peak_retained_symbols > depth + 1 or result.peak_retained_words > 1:
                raise AssertionError(
                    f"index mode retained {result.peak_retained_words} words / "
                    f"{result.peak_retained_symbols} symbols, breaking the d+1 storage contract"
                )
        results.append(result)
    return results


def write_csv(results: list[BenchResult], path) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_COLUMNS)
        for r in results:
            writer.writerow(r.csv_row())


def format_results(results: list[BenchResult]) -> str:
    lines = [" ".join(f"{c:>12}" for c in CSV_COLUMNS)]
    for r in results:
        lines.append(" ".join(f"{v:>12}" for v in r.csv_row()) + ("  (partial)" if r.partial else ""))
    return "\n".join(lines)


def plot_report(results: list[BenchResult], path) -> None:
    """Figure beside the CSV: dictionary growth vs. retained storage, and timings."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    depths = sorted({r.depth for r in results})
    base = results[0].n if results else 4
    fig, (ax_mem, ax_time) = plt.subplots(1, 2, figsize=(11, 4.2))

    dict_sizes = [table4_cumulative(base, d) for d in depths]
    ax_mem.semilogy(depths, dict_sizes, "k--", marker="o", label="dictionary words (closed form)")
    for mode in ("ordinal", "cardinal"):
        pts = [(r.depth, r.peak_retained_symbols) for r in results if r.mode == mode]
        if pts:
            ax_mem.semilogy(*zip(*pts), marker="s", label=f"{mode} peak retained symbols")
    ax_mem.set_xlabel("depth")
    ax_mem.set_ylabel("words / symbols")
    ax_mem.set_title("index generation retains no dictionary")
    ax_mem.legend(fontsize=8)
    ax_mem.grid(True, alpha=0.3)

    modes = sorted({r.mode for r in results})
    for mode in modes:
        pts = [(r.depth, r.wall_time * 1000.0) for r in results if r.mode == mode]
        if pts:
            ax_time.plot(*zip(*pts), marker="o", label=mode)
    ax_time.set_xlabel("depth")
    ax_time.set_ylabel("wall time (ms)")
    ax_time.set_title("enumeration time")
    ax_time.legend(fontsize=8)
    ax_time.grid(True, alpha=0.3)

    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
