"""Structured check reports with a byte-stable machine section.

A report collects named check records, each carrying the mathematical
law it tested, the measured value, and the contract it was held to.
The machine rendering is canonical JSON (sorted keys, no whitespace, no
timestamps), so identical runs produce identical bytes; the human
rendering adds a timestamped header and one line per record.
"""

from dataclasses import dataclass, field
import datetime
import json

SCHEMA = "qcdual-report-1"
MACHINE_MARKER = "=== machine-readable ==="


@dataclass(frozen=True)
class CheckRecord:
    """One verified statement: law, measured value, contract, verdict."""

    name: str
    law: str
    value: float
    contract: str
    passed: bool
    details: str = ""

    def as_dict(self):
        return {
            "name": self.name,
            "law": self.law,
            "value": self.value,
            "contract": self.contract,
            "passed": self.passed,
            "details": self.details,
        }


@dataclass
class Report:
    """Check records plus the configuration that produced them."""

    title: str
    config: dict = field(default_factory=dict)
    records: list = field(default_factory=list)
    payload: dict = field(default_factory=dict)

    def add(self, record):
        self.records.append(record)

    def extend(self, records):
        self.records.extend(records)

    @property
    def passed_count(self):
        return sum(1 for r in self.records if r.passed)

    @property
    def failed_count(self):
        return sum(1 for r in self.records if not r.passed)

    @property
    def all_passed(self):
        return self.failed_count == 0

    @property
    def exit_code(self):
        return 0 if self.all_passed else 1

    def machine_json(self):
        """Canonical JSON: sorted keys, compact separators, no timestamp."""
        from . import __version__

        body = {
            "schema": SCHEMA,
            "version": __version__,
            "title": self.title,
            "config": self.config,
            "records": [r.as_dict() for r in self.records],
            "payload": self.payload,
            "summary": {
                "passed": self.passed_count,
                "failed": self.failed_count,
            },
        }
        return json.dumps(body, sort_keys=True, separators=(",", ":"))

    def human_text(self, timestamp=None):
        if timestamp is None:
            timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
        lines = [
            f"{self.title}",
            f"generated: {timestamp}",
            f"config: {json.dumps(self.config, sort_keys=True)}",
            "",
        ]
        for r in self.records:
            verdict = "PASS" if r.passed else "FAIL"
            lines.append(f"[{verdict}] {r.name}: {r.law}")
            lines.append(f"       value {r.value!r}  contract {r.contract}")
            if r.details:
                lines.append(f"       {r.details}")
        lines.append("")
        lines.append(f"passed {self.passed_count}, failed {self.failed_count}")
        return "\n".join(lines) + "\n"

    def render(self, fmt="human"):
        """Full report text: human summary plus the machine section."""
        if fmt == "machine":
            return self.machine_json() + "\n"
        if fmt != "human":
            raise ValueError(f"unknown format {fmt!r}")
        return self.human_text() + "\n" + MACHINE_MARKER + "\n" + self.machine_json() + "\n"


def machine_section(text):
    """Extract the machine-readable section from rendered report text."""
    if MACHINE_MARKER in text:
        return text.split(MACHINE_MARKER, 1)[1].strip()
    return text.strip()


def emit_report(report, path, fmt="human"):
    """Write the rendered report; errors carry the path and cause."""
    text = report.render(fmt)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
