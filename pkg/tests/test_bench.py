import csv

import pytest

from kleinian.bench import (
    CSV_COLUMNS,
    TABLE4_LENGTHS,
    TABLE4_TESSELLATION_STEPS,
    format_results,
    plot_report,
    run_bench,
    table4_cumulative,
    table4_report,
    write_csv,
)
from kleinian.enumeration import EnumerationMode, enumerate_lexicographic
from kleinian.groups import abstract_group, pair_rules

SELF4 = abstract_group(4, self_inverse=True)
SELF4_RULES = pair_rules(SELF4)


class TestTable4:
    def test_printed_tessellation_row_reproduced(self):
        for length, steps in zip(TABLE4_LENGTHS, TABLE4_TESSELLATION_STEPS):
            assert table4_cumulative(4, length) == steps

    def test_depth_three_breakdown(self):
        assert table4_cumulative(4, 3) == 1 + 4 + 12 + 36 == 53

    def test_closed_form_matches_actual_tree_counts(self):
        for depth in range(1, 9):
            emitted = enumerate_lexicographic(SELF4, SELF4_RULES, depth, lambda w: None)
            assert 1 + emitted == table4_cumulative(4, depth)

    def test_report_mentions_discrepancy(self):
        report = table4_report()
        assert "258280325" in report
        assert "inconsistent" in report


class TestRunBench:
    def test_modes_emit_identical_counts(self):
        results = run_bench(SELF4, SELF4_RULES, 6)
        emitted = {r.words_emitted for r in results}
        assert len(emitted) == 1
        assert emitted.pop() == sum(4 * 3 ** (i - 1) for i in range(1, 7))

    def test_index_mode_retains_one_word(self):
        results = run_bench(SELF4, SELF4_RULES, 5, (EnumerationMode.ORDINAL, EnumerationMode.CARDINAL))
        for r in results:
            assert r.peak_retained_words == 1
            assert r.peak_retained_symbols <= 6

    def test_examined_splits_into_emitted_and_skipped(self):
        for r in run_bench(SELF4, SELF4_RULES, 4):
            assert r.words_skipped >= 0
            assert r.words_emitted > 0

    def test_index_cap_limits_work(self):
        capped = run_bench(SELF4, SELF4_RULES, 10, (EnumerationMode.ORDINAL,), index_cap=1000)
        assert capped[0].words_emitted + capped[0].words_skipped == 1000

    def test_time_budget_flags_partial(self):
        results = run_bench(SELF4, SELF4_RULES, 9, (EnumerationMode.ORDINAL,), time_budget=0.0)
        assert results[0].partial

    def test_csv_columns(self, tmp_path):
        results = run_bench(SELF4, SELF4_RULES, 3)
        path = tmp_path / "bench.csv"
        write_csv(results, path)
        with open(path) as f:
            rows = list(csv.reader(f))
        assert tuple(rows[0]) == CSV_COLUMNS
        assert len(rows) == 1 + len(results)
        assert rows[1][0] == "lex" and rows[1][3] == "52"

    def test_plot_written(self, tmp_path):
        results = run_bench(SELF4, SELF4_RULES, 3) + run_bench(SELF4, SELF4_RULES, 5)
        path = tmp_path / "bench.png"
        plot_report(results, path)
        assert path.stat().st_size > 1000

    def test_format_results_has_header_and_rows(self):
        results = run_bench(SELF4, SELF4_RULES, 3, (EnumerationMode.ORDINAL,))
        text = format_results(results)
        assert "peak_symbols" in text.splitlines()[0]
        assert len(text.splitlines()) == 2

    def test_per_word_time_scaling_reported(self, capsys):
        # informational, not gating: per-word cost should grow about linearly in d
        cap = 20_000
        shallow = run_bench(SELF4, SELF4_RULES, 5, (EnumerationMode.ORDINAL,), index_cap=cap)[0]
        deep = run_bench(SELF4, SELF4_RULES, 10, (EnumerationMode.ORDINAL,), index_cap=cap)[0]
        per_word = lambda r: r.wall_time / max(1, r.words_emitted + r.words_skipped)
        ratio = per_word(deep) / per_word(shallow)
        print(f"per-word time ratio d=10 vs d=5: {ratio:.2f} (soft target <= ~2.5)")
