"""Free bounded distributive lattice over interval atoms.

Canonical forms are irredundant disjunctive normal forms: an antichain of
monomials, each monomial a set of atoms joined by meet.  Two expressions are
equal in the free bounded distributive lattice exactly when their canonical
forms coincide, which the Boolean two-element oracle cross-checks.

Atoms are arbitrary hashable keys interned into an append-only table so that
open kernel terms of interval type can serve as atoms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Optional, Sequence

# A canonical polynomial: sorted tuple of sorted atom-id tuples.
# () inside = the monomial 1; the empty outer tuple = 0.
Poly = tuple[tuple[int, ...], ...]

ZERO: Poly = ()
ONE: Poly = ((),)

ORACLE_ATOM_BUDGET = 20
COUNT_BUDGET = 5
HOM_GENERATOR_BUDGET = 4


class LatticeSizeError(ValueError):
    """Raised when a brute-force budget is exceeded (code E-LATTICE-SIZE)."""

    def __init__(self, message: str):
        super().__init__(message)
        self.code = "E-LATTICE-SIZE"
        self.message = message


class AtomTable:
    """Append-only interning of atom keys; ids give the canonical atom order."""

    def __init__(self) -> None:
        self._ids: dict[Hashable, int] = {}
        self._keys: list[Hashable] = []

    def intern(self, key: Hashable) -> int:
        ident = self._ids.get(key)
        if ident is None:
            ident = len(self._keys)
            self._ids[key] = ident
            self._keys.append(key)
        return ident

    def key(self, ident: int) -> Hashable:
        return self._keys[ident]

    def __len__(self) -> int:
        return len(self._keys)


# ---------------------------------------------------------------------------
# Expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Expr:
    """Lattice expression tree over named atoms."""


@dataclass(frozen=True)
class Atom(Expr):
    name: Hashable


@dataclass(frozen=True)
class Bot(Expr):
    pass


@dataclass(frozen=True)
class Top(Expr):
    pass


@dataclass(frozen=True)
class Meet(Expr):
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class Join(Expr):
    lhs: Expr
    rhs: Expr


def expr_atoms(expr: Expr) -> set[Hashable]:
    match expr:
        case Atom(name):
            return {name}
        case Meet(l, r) | Join(l, r):
            return expr_atoms(l) | expr_atoms(r)
        case _:
            return set()


def eval_expr(expr: Expr, assignment: dict[Hashable, bool]) -> bool:
    """Evaluate in the two-element lattice."""
    match expr:
        case Atom(name):
            return assignment[name]
        case Bot():
            return False
        case Top():
            return True
        case Meet(l, r):
            return eval_expr(l, assignment) and eval_expr(r, assignment)
        case Join(l, r):
            return eval_expr(l, assignment) or eval_expr(r, assignment)
    raise TypeError(f"not a lattice expression: {expr!r}")


def parse_expr(text: str) -> Expr:
    """Parse ``x /\\ (y \\/ z)`` style expressions; atoms are identifiers."""
    tokens = _tokenize(text)
    expr, pos = _parse_join(tokens, 0)
    if pos != len(tokens):
        raise LatticeParseError(f"trailing input at token {tokens[pos][1]!r}")
    return expr


class LatticeParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif text.startswith("/\\", i) or ch == "∧":
            out.append(("meet", "/\\"))
            i += 2 if ch == "/" else 1
        elif text.startswith("\\/", i) or ch == "∨":
            out.append(("join", "\\/"))
            i += 2 if ch == "\\" else 1
        elif ch in "()":
            out.append(("paren", ch))
            i += 1
        elif ch == "0":
            out.append(("bot", ch))
            i += 1
        elif ch == "1":
            out.append(("top", ch))
            i += 1
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            out.append(("atom", text[i:j]))
            i = j
        else:
            raise LatticeParseError(f"unexpected character {ch!r}")
    return out


def _parse_join(tokens: list[tuple[str, str]], pos: int) -> tuple[Expr, int]:
    lhs, pos = _parse_meet(tokens, pos)
    while pos < len(tokens) and tokens[pos][0] == "join":
        rhs, pos = _parse_meet(tokens, pos + 1)
        lhs = Join(lhs, rhs)
    return lhs, pos


def _parse_meet(tokens: list[tuple[str, str]], pos: int) -> tuple[Expr, int]:
    lhs, pos = _parse_atom(tokens, pos)
    while pos < len(tokens) and tokens[pos][0] == "meet":
        rhs, pos = _parse_atom(tokens, pos + 1)
        lhs = Meet(lhs, rhs)
    return lhs, pos


def _parse_atom(tokens: list[tuple[str, str]], pos: int) -> tuple[Expr, int]:
    if pos >= len(tokens):
        raise LatticeParseError("unexpected end of expression")
    kind, text = tokens[pos]
    if kind == "atom":
        return Atom(text), pos + 1
    if kind == "bot":
        return Bot(), pos + 1
    if kind == "top":
        return Top(), pos + 1
    if kind == "paren" and text == "(":
        expr, pos = _parse_join(tokens, pos + 1)
        if pos >= len(tokens) or tokens[pos] != ("paren", ")"):
            raise LatticeParseError("missing closing parenthesis")
        return expr, pos + 1
    raise LatticeParseError(f"unexpected token {text!r}")


def format_expr(expr: Expr) -> str:
    match expr:
        case Atom(name):
            return str(name)
        case Bot():
            return "0"
        case Top():
            return "1"
        case Meet(l, r):
            return f"{_wrap(l, True)} /\\ {_wrap(r, True)}"
        case Join(l, r):
            return f"{_wrap(l, False)} \\/ {_wrap(r, False)}"
    raise TypeError(f"not a lattice expression: {expr!r}")


def _wrap(expr: Expr, in_meet: bool) -> str:
    if in_meet and isinstance(expr, Join):
        return f"({format_expr(expr)})"
    return format_expr(expr)


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------


def _reduce(monomials: Iterable[tuple[int, ...]]) -> Poly:
    """Deduplicate and drop monomials absorbed by a smaller one."""
    sets = {frozenset(m) for m in monomials}
    keep = (m for m in sets if not any(other < m for other in sets))
    return tuple(sorted(tuple(sorted(m)) for m in keep))


def poly_atom(ident: int) -> Poly:
    return ((ident,),)


def poly_meet(p: Poly, q: Poly) -> Poly:
    return _reduce(tuple(sorted(set(m) | set(n))) for m in p for n in q)


def poly_join(p: Poly, q: Poly) -> Poly:
    return _reduce(itertools.chain(p, q))


def canon(expr: Expr, table: Optional[AtomTable] = None) -> Poly:
    """Canonical antichain form; interns atoms into `table` (or a fresh one)."""
    tbl = table if table is not None else AtomTable()

    def go(e: Expr) -> Poly:
        match e:
            case Atom(name):
                return poly_atom(tbl.intern(name))
            case Bot():
                return ZERO
            case Top():
                return ONE
            case Meet(l, r):
                return poly_meet(go(l), go(r))
            case Join(l, r):
                return poly_join(go(l), go(r))
        raise TypeError(f"not a lattice expression: {e!r}")

    return go(expr)


def eq(p: Poly, q: Poly) -> bool:
    return p == q


def leq(p: Poly, q: Poly) -> bool:
    """Lattice order: p <= q iff p /\\ q = p."""
    return poly_meet(p, q) == p


def poly_atoms(p: Poly) -> set[int]:
    out: set[int] = set()
    for m in p:
        out.update(m)
    return out


def eval_poly(p: Poly, assignment: dict[int, bool]) -> bool:
    return any(all(assignment[a] for a in m) for m in p)


def oracle_eq(a: Expr | Poly, b: Expr | Poly) -> bool:
    """Brute-force equality over all two-element-lattice assignments.

    Independent of `canon`: expressions are evaluated directly.  Raises
    LatticeSizeError beyond the atom budget.
    """
    if isinstance(a, Expr) and isinstance(b, Expr):
        names = sorted(expr_atoms(a) | expr_atoms(b), key=repr)
        if len(names) > ORACLE_ATOM_BUDGET:
            raise LatticeSizeError(
                f"oracle over {len(names)} atoms exceeds budget {ORACLE_ATOM_BUDGET}"
            )
        for bits in itertools.product((False, True), repeat=len(names)):
            env = dict(zip(names, bits))
            if eval_expr(a, env) != eval_expr(b, env):
                return False
        return True
    if isinstance(a, Expr) or isinstance(b, Expr):
        raise TypeError("oracle_eq arguments must both be Expr or both Poly")
    idents = sorted(poly_atoms(a) | poly_atoms(b))
    if len(idents) > ORACLE_ATOM_BUDGET:
        raise LatticeSizeError(
            f"oracle over {len(idents)} atoms exceeds budget {ORACLE_ATOM_BUDGET}"
        )
    for bits in itertools.product((False, True), repeat=len(idents)):
        env = dict(zip(idents, bits))
        if eval_poly(a, env) != eval_poly(b, env):
            return False
    return True


def subst(p: Poly, mapping: dict[int, Poly]) -> Poly:
    """Substitute polynomials for atoms; unmapped atoms stay themselves."""
    out = ZERO
    for m in p:
        term = ONE
        for atom in m:
            term = poly_meet(term, mapping.get(atom, poly_atom(atom)))
        out = poly_join(out, term)
    return out


def phoa_endpoints(p: Poly, x: int) -> tuple[Poly, Poly]:
    """Endpoint decomposition at atom x: (p[x:=0], p[x:=1]).

    Satisfies leq(p0, p1) and p = p0 \\/ (x /\\ p1).
    """
    p0 = subst(p, {x: ZERO})
    p1 = subst(p, {x: ONE})
    return p0, p1


def phoa_reconstruct(p0: Poly, p1: Poly, x: int) -> Poly:
    return poly_join(p0, poly_meet(poly_atom(x), p1))


def dualize(p: Poly) -> Poly:
    """De Morgan dual: swap meet/join and 0/1.  An involution."""
    # p is a join of meets; its dual is a meet of joins, re-expanded to DNF.
    out = ONE
    for m in p:
        clause = ZERO
        for atom in m:
            clause = poly_join(clause, poly_atom(atom))
        out = poly_meet(out, clause)
    return out


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def enumerate_canonical(n: int) -> Iterator[Poly]:
    """All canonical forms over atoms 0..n-1 (antichains of subsets)."""
    subsets = [tuple(sorted(s)) for k in range(n + 1) for s in itertools.combinations(range(n), k)]

    def extend(prefix: list[tuple[int, ...]], start: int) -> Iterator[Poly]:
        yield tuple(prefix)
        for i in range(start, len(subsets)):
            cand = frozenset(subsets[i])
            if any(frozenset(m) <= cand or cand <= frozenset(m) for m in prefix):
                continue
            prefix.append(subsets[i])
            yield from extend(prefix, i + 1)
            prefix.pop()

    seen: set[Poly] = set()
    for antichain in extend([], 0):
        sorted_form = tuple(sorted(antichain))
        if sorted_form not in seen:
            seen.add(sorted_form)
            yield sorted_form


def count_free(n: int) -> int:
    """Number of distinct canonical forms over n atoms.

    Equals the number of monotone Boolean functions of n variables.
    """
    if n > COUNT_BUDGET:
        raise LatticeSizeError(f"count_free({n}) exceeds budget {COUNT_BUDGET}")
    if n < 0:
        raise LatticeSizeError("count_free needs n >= 0")
    return sum(1 for _ in enumerate_canonical(n))


def count_monotone_functions(n: int) -> int:
    """Independent oracle: brute force over all maps Bool^n -> Bool.

    Each function is a bitmask over the 2^n points; monotone means the value
    never drops when a single input bit flips on.  Feasible up to n = 4.
    """
    if n > 4:
        raise LatticeSizeError(f"monotone brute force infeasible for n = {n}")
    pairs = [
        (pt, pt | (1 << b))
        for b in range(n)
        for pt in range(1 << n)
        if not pt & (1 << b)
    ]
    total = 0
    for f in range(1 << (1 << n)):
        if all(not (f >> lo) & 1 or (f >> hi) & 1 for lo, hi in pairs):
            total += 1
    return total


@dataclass
class Presentation:
    """A finitely presented interval algebra: generators plus relations."""

    generators: Sequence[str]
    relations: Sequence[tuple[Expr, Expr]] = field(default_factory=tuple)


def fp_algebra_homs(presentation: Presentation) -> list[tuple[int, ...]]:
    """All maps to the interval with atom-free canonical values.

    Brute force over Boolean tuples for the generators, keeping those that
    satisfy every relation; 0/1 in the result stand for the constant forms.
    """
    gens = list(presentation.generators)
    if len(gens) > HOM_GENERATOR_BUDGET:
        raise LatticeSizeError(
            f"{len(gens)} generators exceed budget {HOM_GENERATOR_BUDGET}"
        )
    for lhs, rhs in presentation.relations:
        extra = (expr_atoms(lhs) | expr_atoms(rhs)) - set(gens)
        if extra:
            raise LatticeParseError(f"relation mentions unknown generators {sorted(map(str, extra))!r}")
    out: list[tuple[int, ...]] = []
    for bits in itertools.product((0, 1), repeat=len(gens)):
        env = {g: bool(b) for g, b in zip(gens, bits)}
        if all(eval_expr(l, env) == eval_expr(r, env) for l, r in presentation.relations):
            out.append(bits)
    return out


def format_poly(p: Poly, table: Optional[AtomTable] = None, fmt=str) -> str:
    """Render a canonical form; atom ids resolve through `table` if given."""
    if p == ZERO:
        return "0"
    if p == ONE:
        return "1"

    def atom_name(i: int) -> str:
        return fmt(table.key(i)) if table is not None else f"a{i}"

    parts = []
    for m in p:
        if not m:
            parts.append("1")
        else:
            parts.append(" /\\ ".join(atom_name(a) for a in m))
    if len(parts) == 1:
        return parts[0]
    return " \\/ ".join(f"({q})" if " /\\ " in q else q for q in parts)
