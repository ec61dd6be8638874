"""Corpus harness tests: manifest expectations, independence, coverage,
the dead-entry lint, the mutation-sensitivity guard, and golden printing."""

import os
import re

import pytest

from trikernel.corpus import (
    REQUIRED_ANCHORS,
    check_file,
    default_stdlib_dir,
    load_manifest,
    run_corpus,
)
from trikernel.kernel import Checker
from trikernel.prelude import load_prelude, parse_metadata, read_prelude
from trikernel.syntax import parse_module, print_decl

STDLIB = default_stdlib_dir()


def read_corpus_file(name):
    with open(os.path.join(STDLIB, name), "r", encoding="utf-8") as handle:
        return handle.read()


def test_full_corpus_passes():
    report = run_corpus()
    assert report.ok, report.render()


def test_every_positive_file_independent():
    manifest = load_manifest()
    for entry in manifest.entries:
        if entry.expect_code is None:
            result = check_file(manifest, entry.file)
            assert result.ok, f"{entry.file}: {result.actual}"


def test_negative_files_exact_codes_and_spans():
    manifest = load_manifest()
    negatives = [e for e in manifest.entries if e.expect_code is not None]
    assert len(negatives) >= 6
    codes = {e.expect_code for e in negatives}
    assert codes == {
        "E-MODALITY", "E-2CELL-BOUNDARY", "E-UNIVERSE",
        "E-CONV", "E-UNBOUND", "E-PARSE",
    }
    for entry in negatives:
        assert entry.expect_line is not None, entry.file
        result = check_file(manifest, entry.file)
        assert result.ok, f"{entry.file}: expected {result.expected}, got {result.actual}"


def test_anchor_coverage_table():
    manifest = load_manifest()
    assert REQUIRED_ANCHORS <= manifest.anchor_set()


def test_statement_substitution_documented():
    manifest = load_manifest()
    assert manifest.substitution, "manifest must document the statement substitution"
    assert "directed-univalence-statement" in manifest.substitution
    assert "naturality-statement" in manifest.substitution
    assert set(manifest.substitution) <= manifest.anchor_set()


def test_empty_manifest_passes_trivially():
    from trikernel.corpus import parse_manifest

    manifest = parse_manifest("# nothing\n# !substitution: x\n")
    assert manifest.entries == []


def test_mutation_sanity_triangle_orientation():
    """Flipping any meet/join in the triangle region must break the file."""
    text = read_corpus_file("simplices.ttt")
    # all lattice connectives in the Delta2 definition and its check lines
    spots = [m.start() for m in re.finditer(r"/\\|\\/", text)]
    assert spots, "simplices.ttt should use explicit lattice connectives"
    flipped_any = 0
    for pos in spots:
        orig = text[pos : pos + 2]
        flip = "\\/" if orig == "/\\" else "/\\"
        mutated = text[:pos] + flip + text[pos + 2 :]
        checker = Checker()
        load_prelude(checker)
        diags = checker.check_source(mutated, "simplices-mutated.ttt")
        assert diags, f"mutation at offset {pos} went undetected"
        flipped_any += 1
    assert flipped_any >= 2


def test_dead_entry_lint():
    """Every prelude entry is consumed downstream unless statement-only."""
    text, _ = read_prelude()
    entries = parse_metadata(text)
    manifest = load_manifest()
    corpus_text = "".join(
        read_corpus_file(e.file)
        for e in manifest.entries
        if e.expect_code is None
    )
    ident = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
    # the declaration text (type and body) of each prelude entry
    bodies: dict[str, str] = {}
    current = None
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith(("def ", "axiom ")):
            current = stripped.split()[1]
            bodies[current] = stripped
        elif current and stripped and not stripped.startswith("--"):
            bodies[current] += " " + stripped
    # liveness: referenced by a corpus file, or by a live prelude entry
    used = {e.name for e in entries if e.name in set(ident.findall(corpus_text))}
    changed = True
    while changed:
        changed = False
        for name in list(used):
            for ref in set(ident.findall(bodies.get(name, ""))) - {name}:
                if ref in bodies and ref not in used:
                    used.add(ref)
                    changed = True
    dead = [e.name for e in entries if e.name not in used and not e.statement_only]
    assert dead == [], f"dead prelude entries: {dead}"


def test_hom_file_golden_print():
    """The printed form of the arrow-type definition is pinned."""
    text = read_corpus_file("hom.ttt")
    module = parse_module(text, "hom.ttt")
    hom_decl = next(d for d in module.decls if d.name == "hom")
    golden = (
        "def hom : (A : U 0) -> A -> A -> U 0 := "
        "fun A x y => (f : Int -> A) * f 0 = x * f 1 = y"
    )
    assert print_decl(hom_decl) == golden
    # and the whole file roundtrips through the printer
    for decl in module.decls:
        assert parse_module(print_decl(decl)).decls[0] == decl
