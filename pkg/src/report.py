"""Verification results and their JSON and text renderings."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, is_dataclass
from typing import Any, Optional

from benedict import benedict

from . import ui
from .core import FilteredElement


@dataclass(frozen=True)
class CheckResult:
    """One identity evaluated on one sample; it passes iff the residual is zero."""

    identity: str
    sample: str
    residual: str
    passed: bool
    # Highest homogeneous degree compared, for degree-by-degree checks
    degree: Optional[int] = None

    def to_json(self) -> dict:
        result = {"identity": self.identity, "sample": self.sample,
                  "residual": self.residual, "pass": self.passed}
        if self.degree is not None:
            result["max_checked_degree"] = self.degree
        return result


def check(identity: str, residual: FilteredElement, *sample: Any,
          degree: Optional[int] = None) -> CheckResult:
    """Build a CheckResult from an exact residual."""
    return CheckResult(identity, ", ".join(str(s) for s in sample), str(residual),
                       residual.is_zero(), degree)


def check_equal(identity: str, left: Any, right: Any, *sample: Any) -> CheckResult:
    """A CheckResult for values that are compared but not subtracted (trees, rationals, ...)."""
    passed = left == right
    residual = "0" if passed else f"{left} != {right}"
    return CheckResult(identity, ", ".join(str(s) for s in sample), residual, passed)


def check_degrees(identity: str, left: FilteredElement, right: FilteredElement,
                  *sample: Any) -> list[CheckResult]:
    """Compare two elements one homogeneous component at a time, up to the truncation order."""
    difference = left - right
    return [check(identity, difference.degree_part(k), *sample, degree=k)
            for k in range(0, left.ctx.order + 1)]


@dataclass
class ReportEntry:
    """The checks run for one named acceptance item."""

    name: str
    # Which identity of the theory the entry exercises
    anchor: str
    checks: list = field(default_factory=list)
    # Rendered expansions and other data shown alongside the checks
    info: dict = field(default_factory=dict)
    # Set when the entry raised instead of completing
    error: Optional[str] = None

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if all(c.passed for c in self.checks) else "fail"

    def to_json(self) -> dict:
        details: dict = {"checks": [c.to_json() for c in self.checks]}
        if self.info:
            details["info"] = self.info
        if self.error is not None:
            details["error"] = self.error
        return {"name": self.name, "anchor": self.anchor, "status": self.status, "details": details}


@dataclass
class Report:
    """Everything one CLI run produced, together with the configuration that produced it."""

    config: Any
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    def to_json(self) -> dict:
        config = asdict(self.config) if is_dataclass(self.config) else dict(self.config)
        return {"config": config, "entries": [e.to_json() for e in self.entries]}

    def dumps_json(self) -> str:
        return benedict(self.to_json(), keypath_separator=None).to_json(indent=2, ensure_ascii=False) + "\n"

    def render_text(self, color: bool = False) -> str:
        lines = []
        for entry in self.entries:
            lines.extend(_entry_lines(entry, color))
        total = len(self.entries)
        good = sum(1 for e in self.entries if e.status == "pass")
        summary = f"{good}/{total} entries passed"
        lines.append(ui.fmt_color(ui.BOLD + (ui.GREEN if good == total else ui.RED), summary) if color else summary)
        return "\n".join(lines) + "\n"


_STATUS_COLORS = {"pass": ui.GREEN, "fail": ui.RED, "error": ui.RED}


def _entry_lines(entry: ReportEntry, color: bool) -> list:
    status = entry.status.upper()
    if color:
        status = ui.fmt_color(ui.BOLD + _STATUS_COLORS[entry.status], status)
        head = f"{status} {ui.fmt_color(ui.BOLD, entry.name)} {ui.fmt_color(ui.FAINT, entry.anchor)}"
    else:
        head = f"{status} {entry.name} ({entry.anchor})"
    lines = [head]
    for key, value in entry.info.items():
        if isinstance(value, list):
            lines.append(f"  {key}:")
            lines.extend(f"    {item}" for item in value)
        elif isinstance(value, dict):
            lines.append(f"  {key}:")
            lines.extend(f"    {k}: {v}" for k, v in value.items())
        else:
            lines.append(f"  {key}: {value}")
    passed = sum(1 for c in entry.checks if c.passed)
    lines.append(f"  checks: {passed}/{len(entry.checks)} passed")
    for c in entry.checks:
        if not c.passed:
            text = f"  {ui.BOX_TRIANGLE_MINI} {c.identity} on {c.sample}: residual {c.residual}"
            lines.append(ui.fmt_color(ui.RED, text) if color else text)
    if entry.error is not None:
        text = f"  {ui.BOX_TRIANGLE_MINI} {entry.error}"
        lines.append(ui.fmt_color(ui.RED, text) if color else text)
    return lines
