import json

import pytest
from openpyxl import load_workbook

from herdisc.config import Config, ReportGenerationError
from herdisc.core.bench import ResultRow
from herdisc.core.report import emit_report
from herdisc.utils.file_io import read_results_csv


def make_rows(sizes=((8, 8),), kinds=('uniform',), seeds=(1,)):
    rows = []
    for m, n in sizes:
        for kind in kinds:
            for seed in seeds:
                rows.append(ResultRow('hereditary', kind, m, n, seed, disc=2.0, elapsed=0.5,
                                      retries=1))
                rows.append(ResultRow('sample', kind, m, n, seed, disc=4.0, elapsed=0.001,
                                      trials=10))
                rows.append(ResultRow('sample_many', kind, m, n, seed, disc=3.0, elapsed=1.5,
                                      trials=10))
    return rows


def table_rows(markdown, heading="# Discrepancy results"):
    lines = markdown.splitlines()
    start = lines.index(heading) + 2
    table = []
    for line in lines[start:]:
        if not line.startswith("|"):
            break
        table.append(line)
    return table[2:]


class TestCsv:
    def test_empty_rows_give_header(self, tmp_path):
        path = tmp_path / "empty.csv"
        emit_report([], 'csv', str(path))
        assert path.read_text().strip() == "algorithm,kind,m,n,seed,disc,elapsed_s,trials,retries"

    def test_round_trip(self, tmp_path):
        path = str(tmp_path / "results.csv")
        emit_report(make_rows(), 'csv', path)
        df = read_results_csv(path)
        assert list(df.columns) == Config.REPORT_COLUMNS
        assert df['algorithm'].tolist() == ['hereditary', 'sample', 'sample_many']
        assert df['disc'].tolist() == [2.0, 4.0, 3.0]
        assert df.loc[2, 'trials'] == 10

    def test_counts_are_written_as_integers(self, tmp_path):
        path = tmp_path / "results.csv"
        emit_report(make_rows(), 'csv', str(path))
        lines = path.read_text().splitlines()
        assert lines[1].endswith(",,1")
        assert lines[3].endswith(",10,")


class TestMarkdown:
    def test_one_row_per_size_and_algorithm(self, tmp_path):
        path = tmp_path / "results.md"
        sizes = ((4, 4), (6, 6), (8, 8), (10, 6))
        emit_report(make_rows(sizes=sizes, kinds=('uniform', 'corner2d')), 'markdown', str(path))
        text = path.read_text()
        header = text.splitlines()[2]
        assert header == "| Algorithm | Matrix Size | Disc Uniform | Disc 2D Corner | Time (s) |"
        assert len(table_rows(text)) == 12
        assert "## HereditaryMinimize / Sample" in text

    def test_sub_second_time(self, tmp_path):
        path = tmp_path / "results.md"
        emit_report(make_rows(), 'markdown', str(path))
        first = table_rows(path.read_text())[0]
        assert first.endswith("| < 1 |")

    def test_failed_runs_are_listed(self, tmp_path):
        rows = make_rows()
        rows[0] = ResultRow('hereditary', 'uniform', 8, 8, 1, disc=float('nan'), elapsed=0.1,
                            error="RetryLimitError: stuck")
        path = tmp_path / "results.md"
        emit_report(rows, 'markdown', str(path))
        text = path.read_text()
        assert "## Failed runs" in text
        assert "RetryLimitError: stuck" in text


def test_json_includes_error(tmp_path):
    rows = make_rows()
    rows.append(ResultRow('hereditary', 'zero', 2, 2, 9, disc=float('nan'), elapsed=0.0,
                          error="boom"))
    path = tmp_path / "results.json"
    emit_report(rows, 'json', str(path))
    records = json.loads(path.read_text())
    assert len(records) == 4
    assert records[-1]['error'] == "boom"
    assert records[0]['error'] is None
    assert records[0]['elapsed_s'] == 0.5
    assert records[0]['trials'] is None and records[0]['retries'] == 1
    assert records[2]['trials'] == 10


def test_xlsx_workbook(tmp_path):
    path = tmp_path / "results.xlsx"
    emit_report(make_rows(seeds=(1, 2)), 'xlsx', str(path))
    wb = load_workbook(str(path))
    assert wb.sheetnames == ["Results", "Ratios"]
    results = wb["Results"]
    assert [c.value for c in results[1]] == Config.REPORT_COLUMNS + ['error']
    assert results.max_row == 7
    assert results["H2"].value is None and results["I2"].value == 1
    assert results["H3"].value == 10
    assert wb["Ratios"]["F2"].value == pytest.approx(0.5)


def test_unknown_format(tmp_path):
    with pytest.raises(ReportGenerationError) as excinfo:
        emit_report(make_rows(), 'html', str(tmp_path / "results.html"))
    assert excinfo.value.report_type == 'html'
