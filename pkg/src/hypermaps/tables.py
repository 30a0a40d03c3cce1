"""Exact coefficient tables and their JSON / CSV / text serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

from .series import TruncatedSeries

Index = Tuple[Union[int, str], ...]


@dataclass
class CoefficientTable:
    """Rows of ``(index, exact value)`` with provenance metadata.

    ``meta`` holds at least ``command``, ``parameters``, ``module`` and
    ``anchor`` (the name of the formula that produced the numbers).
    """

    meta: Dict[str, Any]
    rows: List[Tuple[Index, Fraction]] = field(default_factory=list)

    def add(self, index: Sequence[Union[int, str]], value) -> None:
        self.rows.append((tuple(index), Fraction(value)))

    def add_series(self, label: Union[str, Sequence], series: TruncatedSeries) -> None:
        prefix = (label,) if isinstance(label, (str, int)) else tuple(label)
        for e, c in series.items():
            self.add(prefix + e, c)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "meta": self.meta,
            "rows": [{"index": list(i), "num": str(v.numerator), "den": str(v.denominator)}
                     for i, v in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        width = max((len(i) for i, _ in self.rows), default=0)
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"i{k}" for k in range(width)] + ["num", "den"])
        for i, v in self.rows:
            w.writerow(list(i) + [""] * (width - len(i)) + [v.numerator, v.denominator])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"# {k}: {json.dumps(self.meta[k], sort_keys=True)}" for k in sorted(self.meta)]
        for i, v in self.rows:
            lines.append(f"{' '.join(map(str, i))}\t{v}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")

    @classmethod
    def from_json(cls, text: str) -> "CoefficientTable":
        data = json.loads(text)
        t = cls(data["meta"])
        for row in data["rows"]:
            t.add(row["index"], Fraction(int(row["num"]), int(row["den"])))
        return t

    def lookup(self, index: Sequence[Union[int, str]]) -> Fraction:
        key = tuple(index)
        for i, v in self.rows:
            if i == key:
                return v
        return Fraction(0)
