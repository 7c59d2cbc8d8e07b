"""Tabular report rendering: aligned text, RFC-4180-style CSV, and JSON."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

FORMATS = ("table", "csv", "json")


@dataclass
class ReportTable:
    """A titled grid of numeric (or string) cells with optional footnotes."""

    title: str
    row_labels: list[str]
    col_labels: list[str]
    cells: list[list[object]]
    precision: int = 3
    notes: list[str] = field(default_factory=list)
    cell_markers: dict[tuple[int, int], str] = field(default_factory=dict)

    def __post_init__(self):
        for row in self.cells:
            if len(row) != len(self.col_labels):
                raise ValueError(
                    f"row has {len(row)} cells, expected {len(self.col_labels)}"
                )
        if len(self.cells) != len(self.row_labels):
            raise ValueError(
                f"{len(self.cells)} rows but {len(self.row_labels)} row labels"
            )

    def _display(self, r: int, c: int) -> str:
        value = self.cells[r][c]
        if isinstance(value, float):
            text = f"{value:.{self.precision}f}"
        else:
            text = str(value)
        return text + self.cell_markers.get((r, c), "")

    def to_text(self) -> str:
        header = [""] + list(self.col_labels)
        body = [
            [self.row_labels[r]] + [self._display(r, c) for c in range(len(self.col_labels))]
            for r in range(len(self.row_labels))
        ]
        widths = [
            max(len(row[i]) for row in [header] + body) for i in range(len(header))
        ]
        lines = [self.title] if self.title else []
        lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        for row in body:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        for note in self.notes:
            lines.append(note)
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow([self.title] + [""] * len(self.col_labels))
        writer.writerow([""] + list(self.col_labels))
        for r, label in enumerate(self.row_labels):
            writer.writerow(
                [label] + [self._display(r, c) for c in range(len(self.col_labels))]
            )
        for note in self.notes:
            writer.writerow([note])
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "title": self.title,
            "columns": list(self.col_labels),
            "rows": [
                {
                    "label": self.row_labels[r],
                    "cells": list(self.cells[r]),
                    "markers": {
                        str(c): m for (rr, c), m in self.cell_markers.items() if rr == r
                    },
                }
                for r in range(len(self.row_labels))
            ],
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)

    def render(self, fmt: str = "table") -> str:
        if fmt == "table":
            return self.to_text()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json() + "\n"
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
