"""CSV ingestion with cause-label recoding, plus the analysis run report.

Real datasets rarely arrive with causes coded as 1/2; the ingest spec maps
raw label strings onto cause 1, cause 2, or "drop this row" (e.g. censored
records).  Matching is exact on the stripped cell text.  Any label outside
the three sets is an error rather than a silent drop, so a typo in the
mapping cannot quietly change the sample.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .data import Sample
from .errors import NegativeTime, ParseError, UnmappedLabel

SCHEMA_VERSION = 1


def _labelset(values) -> frozenset[str]:
    return frozenset(str(v).strip() for v in values)


@dataclass(frozen=True)
class IngestSpec:
    """How to read one CSV file.

    ``time_column`` / ``cause_column`` are header names (str) or zero-based
    positions (int); names require ``has_header``.  The three label sets must
    be pairwise disjoint.
    """

    path: str | Path
    time_column: str | int
    cause_column: str | int
    cause1_labels: frozenset[str]
    cause2_labels: frozenset[str]
    drop_labels: frozenset[str] = frozenset()
    has_header: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "cause1_labels", _labelset(self.cause1_labels))
        object.__setattr__(self, "cause2_labels", _labelset(self.cause2_labels))
        object.__setattr__(self, "drop_labels", _labelset(self.drop_labels))
        if not self.cause1_labels or not self.cause2_labels:
            raise ValueError("cause1_labels and cause2_labels must be non-empty")
        overlap = (
            (self.cause1_labels & self.cause2_labels)
            | (self.cause1_labels & self.drop_labels)
            | (self.cause2_labels & self.drop_labels)
        )
        if overlap:
            raise ValueError(f"label sets must be disjoint; shared: {sorted(overlap)}")
        for col in (self.time_column, self.cause_column):
            if isinstance(col, str) and not self.has_header:
                raise ValueError(
                    f"column {col!r} is a name but the file has no header; use an index"
                )


@dataclass(frozen=True)
class IngestResult:
    """A parsed sample plus the bookkeeping the run report needs.

    ``n_used + n_dropped == rows_parsed`` always; ``fingerprint`` is the
    SHA-256 of the raw file bytes.
    """

    sample: Sample
    n_used: int
    n_dropped: int
    rows_parsed: int
    fingerprint: str


def _column_index(col: str | int, header: list[str] | None, row_num: int) -> int:
    if isinstance(col, int):
        if col < 0:
            raise ParseError(row_num, col, "column index must be >= 0")
        return col
    assert header is not None
    stripped = [h.strip() for h in header]
    try:
        return stripped.index(col)
    except ValueError:
        raise ParseError(row_num, col, f"column not found in header {stripped}") from None


def _cell(row: list[str], idx: int, row_num: int) -> str:
    if idx >= len(row):
        raise ParseError(row_num, idx, f"row has only {len(row)} fields")
    return row[idx].strip()


def ingest(spec: IngestSpec) -> IngestResult:
    """Read, fingerprint and recode one CSV file.

    Raises :class:`ParseError` for malformed cells, :class:`NegativeTime`
    for negative times and :class:`UnmappedLabel` for labels not in the
    spec; row numbers in errors are 1-based file lines.
    """
    raw = Path(spec.path).read_bytes()
    fingerprint = hashlib.sha256(raw).hexdigest()
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ParseError(0, str(spec.path), f"not valid UTF-8: {exc}") from None

    reader = csv.reader(io.StringIO(text))
    rows = enumerate(reader, start=1)

    header: list[str] | None = None
    if spec.has_header:
        for _, first in rows:
            header = first
            break
        if header is None:
            raise ParseError(0, str(spec.path), "file is empty but a header was expected")
    t_idx = _column_index(spec.time_column, header, 1)
    c_idx = _column_index(spec.cause_column, header, 1)

    times: list[float] = []
    causes: list[int] = []
    n_dropped = 0
    for row_num, row in rows:
        if not row or all(not cell.strip() for cell in row):
            continue
        raw_time = _cell(row, t_idx, row_num)
        try:
            t = float(raw_time)
        except ValueError:
            raise ParseError(row_num, spec.time_column, f"not a number: {raw_time!r}") from None
        if not math.isfinite(t):
            raise ParseError(row_num, spec.time_column, f"non-finite time: {raw_time!r}")
        if t < 0:
            raise NegativeTime(row_num, spec.time_column, f"negative time: {raw_time!r}")
        label = _cell(row, c_idx, row_num)
        if label in spec.drop_labels:
            n_dropped += 1
        elif label in spec.cause1_labels:
            times.append(t)
            causes.append(1)
        elif label in spec.cause2_labels:
            times.append(t)
            causes.append(2)
        else:
            raise UnmappedLabel(label, row=row_num)

    sample = Sample.from_arrays(times, causes)
    return IngestResult(
        sample=sample,
        n_used=len(times),
        n_dropped=n_dropped,
        rows_parsed=len(times) + n_dropped,
        fingerprint=fingerprint,
    )


@dataclass(frozen=True)
class RunReport:
    """Machine- and human-readable record of one CLI test run."""

    method: str
    result: object  # JelTestResult or DdkTestResult
    n_used: int
    n_dropped: int
    input_sha256: str
    tool_version: str
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "method": self.method,
            "n_used": self.n_used,
            "n_dropped": self.n_dropped,
            "input_sha256": self.input_sha256,
            "tool_version": self.tool_version,
            "result": self.result.to_dict(),
        }
        if self.extra:
            d["extra"] = dict(self.extra)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        r = self.result.to_dict()
        lines = [
            f"method:        {self.method}",
            f"input sha256:  {self.input_sha256}",
            f"rows used:     {self.n_used}    rows dropped: {self.n_dropped}",
            f"delta_hat:     {r['delta_hat']:.6g}",
        ]
        if self.method == "jel":
            stat = r["statistic"]
            stat_txt = stat if isinstance(stat, str) else f"{stat:.6g}"
            lines.append(f"statistic:     {stat_txt}  (chi-square df=1 calibration)")
            if not r["hull_ok"]:
                lines.append("note:          0 outside pseudo-value hull; treated as reject")
            if r["degenerate"]:
                lines.append("note:          degenerate sample (no pseudo-value spread)")
        else:
            lines.append(f"z:             {r['z']:.6g}  "
                         f"({'two-sided' if r['two_sided'] else 'one-sided'} normal calibration)")
            lines.append(f"p1_hat:        {r['p1_hat']:.6g}")
        lines.append(f"p value:       {r['p_value']:.6g}")
        lines.append(
            f"decision:      {'reject' if r['reject'] else 'do not reject'} "
            f"independence at alpha={r['alpha']:g}"
        )
        return "\n".join(lines) + "\n"
