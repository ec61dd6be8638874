"""Corpus harness: run the checked library against its manifest.

Each file is checked in a fresh checker seeded with the prelude and the
file's declared dependencies, so every file is independently re-checkable.
The manifest also records, per file, which definitional anchors it covers;
the harness confirms the union covers the whole in-scope list.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .diagnostics import Diagnostic, LineMap
from .kernel import Checker
from .prelude import load_prelude

# Every definitional anchor the corpus must cover.
REQUIRED_ANCHORS = frozenset(
    {
        "simplex-family", "horn", "boundary", "truncated-disjunction",
        "hom-types", "dependent-hom", "identity-arrow",
        "segal", "composition-long-edge",
        "iso", "rezk", "id-to-iso", "groupoid-int-null",
        "simplicial-predicate", "simplicial-universe",
        "covariant-family", "total-type", "covariant-transport",
        "amazing-covariance", "acov-universe",
        "space-universe", "mor-to-fun", "glue",
        "directed-univalence-statement", "space-segal-statement",
        "space-rezk-statement",
        "full-subcategory", "truncated-spaces", "finset",
        "monoid", "monoid-hom", "naturality-statement",
    }
)


@dataclass
class ManifestEntry:
    file: str
    expect_code: Optional[str]  # None means the file must pass
    expect_line: Optional[int]
    expect_column: Optional[int]
    deps: list[str]
    anchors: list[str]


@dataclass
class Manifest:
    entries: list[ManifestEntry]
    substitution: list[str] = field(default_factory=list)

    def entry(self, name: str) -> ManifestEntry:
        for e in self.entries:
            if e.file == name:
                return e
        raise KeyError(name)

    def anchor_set(self) -> set[str]:
        out: set[str] = set()
        for e in self.entries:
            out.update(e.anchors)
        return out


@dataclass
class FileResult:
    file: str
    expected: str
    actual: str
    ok: bool
    diagnostics: list[Diagnostic] = field(default_factory=list)


@dataclass
class CorpusReport:
    results: list[FileResult]
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results) and not self.problems

    def render(self) -> str:
        lines = []
        for r in self.results:
            status = "ok" if r.ok else "FAIL"
            lines.append(f"{status:4s} {r.file:28s} expected {r.expected}, got {r.actual}")
        for p in self.problems:
            lines.append(f"problem: {p}")
        lines.append(f"corpus: {'ok' if self.ok else 'FAILED'}")
        return "\n".join(lines)


def default_stdlib_dir() -> str:
    return str(resources.files("trikernel") / "stdlib")


def parse_manifest(text: str) -> Manifest:
    entries: list[ManifestEntry] = []
    substitution: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.startswith("!substitution:"):
                substitution = [
                    a.strip() for a in body[len("!substitution:"):].split(",") if a.strip()
                ]
            continue
        if not line:
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4:
            raise ValueError(f"malformed manifest line: {raw!r}")
        file, expect, deps, anchors = parts
        code = line_no = col_no = None
        if expect != "pass":
            bits = expect.split(":")
            code = bits[0]
            if len(bits) >= 3:
                line_no, col_no = int(bits[1]), int(bits[2])
        entries.append(
            ManifestEntry(
                file=file,
                expect_code=code,
                expect_line=line_no,
                expect_column=col_no,
                deps=[d for d in deps.split(",") if d],
                anchors=[a for a in anchors.split(",") if a],
            )
        )
    return Manifest(entries, substitution)


def load_manifest(stdlib_dir: Optional[str] = None) -> Manifest:
    base = stdlib_dir or default_stdlib_dir()
    with open(os.path.join(base, "manifest.txt"), "r", encoding="utf-8") as handle:
        return parse_manifest(handle.read())


def _transitive_deps(manifest: Manifest, entry: ManifestEntry) -> list[str]:
    seen: list[str] = []

    def visit(name: str):
        dep_entry = manifest.entry(name)
        for d in dep_entry.deps:
            visit(d)
        if name not in seen:
            seen.append(name)

    for d in entry.deps:
        visit(d)
    return seen


def check_file(
    manifest: Manifest,
    name: str,
    stdlib_dir: Optional[str] = None,
    prelude_path: Optional[str] = None,
    depth: int = 8,
) -> FileResult:
    base = stdlib_dir or default_stdlib_dir()
    entry = manifest.entry(name)
    checker = Checker(depth=depth)
    diags = load_prelude(checker, prelude_path)
    if diags:
        return FileResult(name, "prelude ok", "prelude failed", False, diags)
    for dep in _transitive_deps(manifest, entry):
        with open(os.path.join(base, dep), "r", encoding="utf-8") as handle:
            dep_diags = checker.check_source(handle.read(), dep)
        if dep_diags:
            return FileResult(name, "dependencies ok", f"dependency {dep} failed",
                              False, dep_diags)
    with open(os.path.join(base, name), "r", encoding="utf-8") as handle:
        text = handle.read()
    diags = checker.check_source(text, name)
    linemap = LineMap(text)
    for d in diags:
        d.located(linemap)

    expected = entry.expect_code or "pass"
    if entry.expect_line is not None:
        expected = f"{entry.expect_code}:{entry.expect_line}:{entry.expect_column}"
    if entry.expect_code is None:
        actual = "pass" if not diags else "; ".join(d.code for d in diags)
        return FileResult(name, expected, actual, not diags, diags)
    if not diags:
        return FileResult(name, expected, "pass", False, [])
    got = diags[0]
    actual = f"{got.code}:{got.line}:{got.column}"
    ok = got.code == entry.expect_code and (
        entry.expect_line is None
        or (got.line == entry.expect_line and got.column == entry.expect_column)
    )
    return FileResult(name, expected, actual, ok, diags)


def run_corpus(
    stdlib_dir: Optional[str] = None,
    prelude_path: Optional[str] = None,
    depth: int = 8,
) -> CorpusReport:
    manifest = load_manifest(stdlib_dir)
    results = [
        check_file(manifest, e.file, stdlib_dir, prelude_path, depth)
        for e in manifest.entries
    ]
    report = CorpusReport(results)

    missing = REQUIRED_ANCHORS - manifest.anchor_set()
    for anchor in sorted(missing):
        report.problems.append(f"anchor {anchor!r} not covered by any corpus file")
    if not manifest.substitution:
        report.problems.append("manifest does not document the statement substitution")
    covered = manifest.anchor_set()
    for anchor in manifest.substitution:
        if anchor not in covered:
            report.problems.append(
                f"documented substitution anchor {anchor!r} is not in the corpus"
            )
    return report
