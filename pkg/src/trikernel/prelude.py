"""Prelude loading and integrity verification.

The prelude file carries marker comments (#tier, #covers, #statement-only)
that attach to the next declaration; verification re-checks every entry and
confirms the ten named principles are each covered exactly once.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .diagnostics import Diagnostic, LineMap
from .kernel import Checker

AXIOM_TAGS = (
    "interval-lattice",
    "path-lock-rule",
    "interval-involution",
    "univalence",
    "crisp-identity-induction",
    "interval-detects-discreteness",
    "interval-global-points",
    "cubes-separate",
    "simplicial-stability",
    "algebra-duality",
)

ENV_VAR = "TTT_PRELUDE"


@dataclass
class PreludeEntry:
    name: str
    kind: str  # "def" | "axiom"
    tier: str = "infra"
    covers: Optional[str] = None
    statement_only: bool = False
    line: int = 0


@dataclass
class PreludeReport:
    entries: list[PreludeEntry]
    diagnostics: list[Diagnostic]
    coverage: dict[str, Optional[str]] = field(default_factory=dict)
    tier_counts: dict[str, int] = field(default_factory=dict)
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diagnostics and not self.problems

    def render(self) -> str:
        lines = []
        status = "ok" if self.ok else "FAILED"
        lines.append(f"prelude: {len(self.entries)} entries, {status}")
        for tag in AXIOM_TAGS:
            holder = self.coverage.get(tag)
            mark = holder if holder else "MISSING"
            lines.append(f"  principle {tag:32s} -> {mark}")
        for tier, count in sorted(self.tier_counts.items()):
            lines.append(f"  tier {tier}: {count}")
        for problem in self.problems:
            lines.append(f"  problem: {problem}")
        for diag in self.diagnostics:
            lines.append(f"  {diag.render()}")
        return "\n".join(lines)


def default_prelude_path() -> str:
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    return str(resources.files("trikernel") / "prelude.ttt")


def read_prelude(path: Optional[str] = None) -> tuple[str, str]:
    actual = path or default_prelude_path()
    with open(actual, "r", encoding="utf-8") as handle:
        return handle.read(), actual


def parse_metadata(text: str) -> list[PreludeEntry]:
    entries: list[PreludeEntry] = []
    tier: Optional[str] = None
    covers: Optional[str] = None
    statement_only = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("--"):
            body = stripped[2:].strip()
            if body.startswith("#tier:"):
                tier = body[len("#tier:"):].strip()
            elif body.startswith("#covers:"):
                covers = body[len("#covers:"):].strip()
            elif body.startswith("#statement-only"):
                statement_only = True
            continue
        if stripped.startswith(("def ", "axiom ")):
            kind, rest = stripped.split(None, 1)
            name = rest.split(":", 1)[0].strip().split()[0]
            entries.append(
                PreludeEntry(
                    name=name,
                    kind=kind,
                    tier=tier or ("core" if covers else "infra"),
                    covers=covers,
                    statement_only=statement_only,
                    line=lineno,
                )
            )
            tier, covers, statement_only = None, None, False
    return entries


def load_prelude(checker: Checker, path: Optional[str] = None) -> list[Diagnostic]:
    """Check the prelude into the given checker; returns its diagnostics."""
    text, actual = read_prelude(path)
    diags = checker.check_source(text, actual)
    linemap = LineMap(text)
    for d in diags:
        d.located(linemap)
    return diags


def verify_prelude(path: Optional[str] = None, depth: int = 8) -> PreludeReport:
    """Full integrity report: entries check, coverage table, tier counts."""
    text, actual = read_prelude(path)
    entries = parse_metadata(text)
    checker = Checker(depth=depth)
    diagnostics = load_prelude(checker, actual)
    report = PreludeReport(entries=entries, diagnostics=diagnostics)

    coverage: dict[str, Optional[str]] = {tag: None for tag in AXIOM_TAGS}
    for entry in entries:
        if entry.covers is not None:
            if entry.covers not in coverage:
                report.problems.append(
                    f"{entry.name} covers unknown principle {entry.covers!r}"
                )
            elif coverage[entry.covers] is not None:
                report.problems.append(
                    f"principle {entry.covers!r} covered twice "
                    f"({coverage[entry.covers]} and {entry.name})"
                )
            else:
                coverage[entry.covers] = entry.name
    for tag, holder in coverage.items():
        if holder is None:
            report.problems.append(f"principle {tag!r} has no covering entry")
    report.coverage = coverage

    for entry in entries:
        report.tier_counts[entry.tier] = report.tier_counts.get(entry.tier, 0) + 1

    if not diagnostics:
        declared = {e.name for e in entries}
        checked = {
            name for name, g in checker.globals.items()
        }
        missing = declared - checked
        for name in sorted(missing):
            report.problems.append(f"entry {name} did not reach the checker")
    return report
