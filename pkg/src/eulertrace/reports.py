"""Deterministic reports: named checks with both sides spelled out.

Reports render as canonical JSON (the machine format) or as an aligned
table for terminals. Identical inputs produce byte-identical output; the
overall status is the conjunction of the checks.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .rat import format_rational
from .serialize import canonical_dumps


@dataclass
class Check:
    name: str
    lhs: str
    rhs: str
    equal: bool
    justification: str = ""


def value_check(name, lhs, rhs, justification=""):
    """Check comparing two exact values; strings pass through unrendered."""
    equal = lhs == rhs
    ls = lhs if isinstance(lhs, str) else format_rational(lhs)
    rs = rhs if isinstance(rhs, str) else format_rational(rhs)
    return Check(name, ls, rs, bool(equal), justification)


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def ok(self) -> bool:
        return all(c.equal for c in self.checks)

    def add(self, check: Check):
        self.checks.append(check)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": [
                {"name": c.name, "lhs": c.lhs, "rhs": c.rhs,
                 "equal": c.equal, "justification": c.justification}
                for c in self.checks
            ],
            "warnings": list(self.warnings),
            "status": "pass" if self.ok() else "fail",
        }

    def render(self, mode: str = "json") -> str:
        if mode == "json":
            return canonical_dumps(self.to_json())
        return self.render_table()

    def render_table(self) -> str:
        lines = [f"command: {self.command}"]
        for key in sorted(self.inputs):
            lines.append(f"input {key}: {self.inputs[key]}")
        if self.results:
            lines.append("")
            lines.append("results")
            lines.extend(_render_tree(self.results, "  "))
        if self.checks:
            lines.append("")
            lines.append("checks")
            name_w = max(len(c.name) for c in self.checks)
            lhs_w = max(len(c.lhs) for c in self.checks)
            rhs_w = max(len(c.rhs) for c in self.checks)
            for c in self.checks:
                status = "ok " if c.equal else "FAIL"
                lines.append(
                    f"  {status} {c.name.ljust(name_w)}  {c.lhs.rjust(lhs_w)}"
                    f" == {c.rhs.rjust(rhs_w)}  [{c.justification}]")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        lines.append(f"status: {'pass' if self.ok() else 'fail'}")
        return "\n".join(lines) + "\n"


def _render_tree(value, indent):
    lines = []
    if isinstance(value, dict):
        for key in sorted(value, key=str):
            sub = value[key]
            if isinstance(sub, (dict, list)):
                lines.append(f"{indent}{key}:")
                lines.extend(_render_tree(sub, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {sub}")
    elif isinstance(value, list):
        for i, sub in enumerate(value):
            if isinstance(sub, (dict, list)):
                lines.append(f"{indent}- [{i}]")
                lines.extend(_render_tree(sub, indent + "  "))
            else:
                lines.append(f"{indent}- {sub}")
    else:
        lines.append(f"{indent}{value}")
    return lines


def digest_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()
