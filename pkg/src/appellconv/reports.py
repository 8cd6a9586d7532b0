"""CSV and JSON-lines writers for verification reports."""

from __future__ import annotations

import csv
import json
from typing import IO, Iterable, Iterator

from .identities import VerificationReport

FIELDS = ("identity", "m", "n", "parameters", "lhs", "rhs", "equal", "micros")
FORMATS = ("csv", "jsonl")


class ReportWriter:
    """Single serializing writer; records appear in submission order."""

    def __init__(self, stream: IO[str], fmt: str = "csv", timing: bool = True):
        if fmt not in FORMATS:
            raise ValueError(f"unknown report format {fmt!r}")
        self.stream = stream
        self.fmt = fmt
        self.timing = timing
        self._csv = None
        if fmt == "csv":
            self._csv = csv.DictWriter(stream, fieldnames=FIELDS, lineterminator="\n")
            self._csv.writeheader()

    def write(self, report: VerificationReport) -> None:
        record = report.as_record()
        if not self.timing:
            record["micros"] = 0
        if self._csv is not None:
            record["equal"] = "true" if record["equal"] else "false"
            self._csv.writerow(record)
        else:
            self.stream.write(json.dumps(record) + "\n")
        self.stream.flush()


def read_records(stream: IO[str], fmt: str) -> Iterator[dict]:
    """Parse a report stream back into dicts (``equal`` as bool)."""
    if fmt == "csv":
        for row in csv.DictReader(stream):
            row["equal"] = row["equal"] == "true"
            row["m"], row["n"], row["micros"] = int(row["m"]), int(row["n"]), int(row["micros"])
            yield row
    elif fmt == "jsonl":
        for line in stream:
            if line.strip():
                yield json.loads(line)
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def write_all(reports: Iterable[VerificationReport], stream: IO[str], fmt: str = "csv") -> bool:
    """Write every report; return True iff all were equal."""
    writer = ReportWriter(stream, fmt)
    ok = True
    for report in reports:
        writer.write(report)
        ok = ok and report.equal
    return ok
