#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Report generation module for herdisc experiment results.

Writes result rows as CSV, JSON, a markdown table in the benchmark layout
(one row per matrix size and algorithm, one discrepancy column per matrix
kind) or an Excel workbook. Markdown and Excel outputs also carry the
dominance-ratio table.
"""

import os
import math
import logging

import numpy as np
import pandas as pd
from openpyxl import Workbook
from openpyxl.styles import PatternFill, Border, Side, Alignment, Font
from openpyxl.utils import get_column_letter

from ..config import Config, ReportGenerationError
from ..utils.file_io import ensure_directory
from .bench import dominance_ratios, rows_to_frame

logger = logging.getLogger(__name__)


def _format_number(value):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "-"
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return f"{value:g}"


def _format_time(seconds):
    if seconds is None or math.isnan(seconds):
        return "-"
    if seconds < 1:
        return "< 1"
    return f"{seconds:.{Config.TIMING_DECIMALS}f}".rstrip('0').rstrip('.')


def _benchmark_table(df):
    """Rows of the benchmark table: medians over seeds per size, algorithm and kind."""
    ok = df[df['error'].isna()]
    kinds = [k for k in Config.MATRIX_KINDS if k in set(df['kind'])]
    sizes = list(dict.fromkeys(zip(df['m'], df['n'])))
    algorithms = [a for a in Config.ALGORITHMS if a in set(df['algorithm'])]

    header = (["Algorithm", "Matrix Size"]
              + [f"Disc {Config.KIND_LABELS.get(k, k)}" for k in kinds] + ["Time (s)"])
    table = []
    for m, n in sizes:
        for algorithm in algorithms:
            cell = ok[(ok['m'] == m) & (ok['n'] == n) & (ok['algorithm'] == algorithm)]
            discs = []
            for kind in kinds:
                values = cell[cell['kind'] == kind]['disc']
                discs.append(_format_number(float(values.median())) if len(values) else "-")
            elapsed = float(cell['elapsed_s'].median()) if len(cell) else float('nan')
            table.append([Config.ALGORITHM_LABELS.get(algorithm, algorithm), f"{m} x {n}"]
                         + discs + [_format_time(elapsed)])
    return header, table


def _markdown_table(header, table):
    lines = ["| " + " | ".join(header) + " |",
             "|" + "|".join("---" for _ in header) + "|"]
    lines.extend("| " + " | ".join(row) + " |" for row in table)
    return lines


def _write_markdown(rows, df, path):
    header, table = _benchmark_table(df)
    lines = ["# Discrepancy results", ""]
    lines.extend(_markdown_table(header, table))

    ratios = dominance_ratios(rows)
    if not ratios.empty:
        ratio_rows = [[Config.KIND_LABELS.get(r.kind, r.kind), f"{r.m} x {r.n}",
                       _format_number(float(r.hereditary)), _format_number(float(r.sample)),
                       _format_number(round(float(r.ratio), 3))]
                      for r in ratios.itertuples()]
        lines.extend(["", "## HereditaryMinimize / Sample", ""])
        lines.extend(_markdown_table(["Kind", "Matrix Size", "HereditaryMinimize", "Sample", "Ratio"],
                                     ratio_rows))

    failed = df[df['error'].notna()]
    if not failed.empty:
        lines.extend(["", "## Failed runs", ""])
        for r in failed.itertuples():
            lines.append(f"- {r.algorithm} {r.kind} {r.m}x{r.n} seed {r.seed}: {r.error}")

    with open(path, 'w', encoding='utf-8') as f:
        f.write("\n".join(lines) + "\n")


def _write_xlsx(rows, df, path):
    wb = Workbook()
    ws = wb.active
    ws.title = "Results"

    columns = Config.REPORT_COLUMNS + ['error']
    for col, name in enumerate(columns, start=1):
        cell = ws.cell(row=1, column=col, value=name)
        cell.font = Font(bold=True, size=12)
        cell.alignment = Alignment(horizontal='center', vertical='center')

    error_fill = PatternFill(start_color="FFE6E6", end_color="FFE6E6", fill_type="solid")
    for r, record in enumerate(df.to_dict('records'), start=2):
        failed = isinstance(record['error'], str)
        for col, name in enumerate(columns, start=1):
            value = record[name]
            if not isinstance(value, str) and pd.isna(value):
                value = None
            elif isinstance(value, np.integer):
                value = int(value)
            cell = ws.cell(row=r, column=col, value=value)
            cell.alignment = Alignment(horizontal='center', vertical='center')
            if failed:
                cell.fill = error_fill

    thick = Side(style='medium')
    for col in range(1, len(columns) + 1):
        ws.cell(row=1, column=col).border = Border(top=thick, bottom=thick)
        ws.column_dimensions[get_column_letter(col)].width = 12
    ws.column_dimensions[get_column_letter(len(columns))].width = 40
    ws.freeze_panes = ws.cell(row=2, column=1)

    ratios = dominance_ratios(rows)
    ratio_ws = wb.create_sheet("Ratios")
    for col, name in enumerate(ratios.columns, start=1):
        ratio_ws.cell(row=1, column=col, value=name).font = Font(bold=True)
    for r, record in enumerate(ratios.itertuples(index=False), start=2):
        for col, value in enumerate(record, start=1):
            ratio_ws.cell(row=r, column=col, value=value)

    wb.save(path)


def emit_report(rows, fmt, path):
    """
    Write experiment rows to a file.

    Args:
        rows (list): ResultRow objects
        fmt (str): One of csv, json, markdown, xlsx
        path (str): Output file path

    Returns:
        str: Path to the written report

    Raises:
        ReportGenerationError: If the format is unknown or writing fails
    """
    if fmt not in Config.REPORT_FORMATS:
        error_msg = f"Unknown report format '{fmt}'. Valid formats: {Config.REPORT_FORMATS}"
        logger.error(error_msg)
        raise ReportGenerationError(error_msg, report_type=fmt, output_path=path)

    logger.debug(f"Writing {fmt} report with {len(rows)} rows to {path}")
    try:
        ensure_directory(os.path.dirname(os.path.abspath(path)))
        df = rows_to_frame(rows)
        if fmt == 'csv':
            df[Config.REPORT_COLUMNS].to_csv(path, index=False)
        elif fmt == 'json':
            df.to_json(path, orient='records', indent=2)
        elif fmt == 'markdown':
            _write_markdown(rows, df, path)
        else:
            _write_xlsx(rows, df, path)
    except Exception as e:
        error_msg = f"Error creating {fmt} report {os.path.basename(path)}: {str(e)}"
        logger.error(error_msg)
        logger.debug(f"Error details: {str(e)}", exc_info=True)
        raise ReportGenerationError(error_msg, report_type=fmt, output_path=path) from e

    logger.debug(f"Report saved to {path}")
    return path
