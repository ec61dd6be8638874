"""The checker core: normalization, conversion and bidirectional typing.

Contexts interleave declarations and single-generator locks; a path lock is
the same constructor as an interval hypothesis ``i : Int``, which makes
interval instantiation ordinary substitution and lets ordinary weakening
cross interval binders.  Variable access across locks is mediated by 2-cells
from the declaration's annotation to the composite of the trailing locks.

Interval-typed terms are kept in lattice canonical form by weak-head
normalization, so the lattice equations hold definitionally.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from typing import Optional

from . import lattice, syntax
from .core import (
    App,
    BoolRec,
    BoolT,
    Ctx,
    Const,
    Down,
    FalseC,
    Fst,
    I0,
    I1,
    IdT,
    IntT,
    J,
    JoinT,
    Lam,
    LetMod,
    LiftT,
    MeetT,
    MkMod,
    Modify,
    NatRec,
    NatT,
    Pair,
    Pi,
    Refl,
    Sigma,
    Snd,
    Suc,
    Term,
    TrueC,
    Univ,
    Up,
    Var,
    Zero,
    apply_cell,
    free_in,
    mk_mkmod,
    mk_modify,
    nat_literal,
    npee,
    shift,
    subst,
)
from .diagnostics import Diagnostic, KernelError
from .modality import (
    ModeError,
    TwoCell,
    cell_normalize,
    cell_search,
    cell_vcomp,
    compose,
    format_word,
    generator_cell,
    identity_cell,
    normalize,
)

DEFAULT_SEARCH_DEPTH = 8


@dataclass
class GlobalDef:
    name: str
    kind: str  # "axiom" | "def"
    ty: Term
    body: Optional[Term]


def subst2(body: Term, outer: Term, inner: Term) -> Term:
    """Substitute into a term binding two variables (outer = Var 1)."""
    return subst(subst(body, shift(inner, 1), 0), outer, 0)


def unshift_unused(t: Term) -> Term:
    """Drop an unused innermost binder (Var 0 must not occur)."""
    return subst(t, Refl(), 0)


class Checker:
    """One checking instance: globals, interval atoms, search depth."""

    def __init__(self, depth: int = DEFAULT_SEARCH_DEPTH):
        self.globals: dict[str, GlobalDef] = {}
        self.global_order: list[str] = []
        self.atoms = lattice.AtomTable()
        self.depth = depth
        self.file = "<input>"
        self._spans: list[tuple[int, int]] = []

    # -- diagnostics ---------------------------------------------------------

    def err(self, code: str, message: str, expected: Optional[str] = None,
            actual: Optional[str] = None, span: Optional[tuple[int, int]] = None):
        raise KernelError(
            Diagnostic(
                file=self.file,
                code=code,
                message=message,
                span=span or (self._spans[-1] if self._spans else (0, 0)),
                expected=expected,
                actual=actual,
            )
        )

    # -- weak-head normalization ----------------------------------------------

    def whnf(self, t: Term) -> Term:
        match t:
            case Const(name):
                entry = self.globals.get(name)
                if entry is not None and entry.body is not None:
                    return self.whnf(entry.body)
                return t
            case App(fn, arg):
                fw = self.whnf(fn)
                if isinstance(fw, Lam):
                    return self.whnf(subst(fw.body, arg))
                return App(fw, arg)
            case Fst(p):
                pw = self.whnf(p)
                if isinstance(pw, Pair):
                    return self.whnf(pw.fst)
                return Fst(pw)
            case Snd(p):
                pw = self.whnf(p)
                if isinstance(pw, Pair):
                    return self.whnf(pw.snd)
                return Snd(pw)
            case J(motive, base, eq):
                ew = self.whnf(eq)
                if isinstance(ew, Refl):
                    return self.whnf(base)
                return J(motive, base, ew)
            case NatRec(motive, zcase, scase, scrut):
                nw = self.whnf(scrut)
                if isinstance(nw, Zero):
                    return self.whnf(zcase)
                if isinstance(nw, Suc):
                    rec = NatRec(motive, zcase, scase, nw.arg)
                    return self.whnf(subst2(scase, nw.arg, rec))
                return NatRec(motive, zcase, scase, nw)
            case BoolRec(motive, tcase, fcase, scrut):
                bw = self.whnf(scrut)
                if isinstance(bw, TrueC):
                    return self.whnf(tcase)
                if isinstance(bw, FalseC):
                    return self.whnf(fcase)
                return BoolRec(motive, tcase, fcase, bw)
            case LetMod(frame, word, scrut, body):
                sw = self.whnf(scrut)
                if word == ():
                    return self.whnf(subst(body, sw))
                if isinstance(sw, MkMod) and sw.word == word:
                    return self.whnf(subst(body, sw.body))
                return LetMod(frame, word, sw, body)
            case Down(x):
                xw = self.whnf(x)
                if isinstance(xw, Up):
                    return self.whnf(xw.arg)
                return Down(xw)
            case MeetT(_, _) | JoinT(_, _):
                return self.int_canon(t)
            case _:
                return t

    # -- interval canonical forms ---------------------------------------------

    def _collect_poly(self, t: Term, whnffed: bool = False) -> lattice.Poly:
        match t:
            case I0():
                return lattice.ZERO
            case I1():
                return lattice.ONE
            case MeetT(lhs, rhs):
                return lattice.poly_meet(self._collect_poly(lhs), self._collect_poly(rhs))
            case JoinT(lhs, rhs):
                return lattice.poly_join(self._collect_poly(lhs), self._collect_poly(rhs))
        if whnffed:
            return lattice.poly_atom(self.atoms.intern(t))
        return self._collect_poly(self.whnf(t), True)

    def _poly_term(self, poly: lattice.Poly) -> Term:
        if poly == lattice.ZERO:
            return I0()
        if poly == lattice.ONE:
            return I1()

        def monomial(m: tuple[int, ...]) -> Term:
            if not m:
                return I1()
            parts = [self.atoms.key(a) for a in m]
            out = parts[-1]
            for part in reversed(parts[:-1]):
                out = MeetT(part, out)
            return out

        monos = [monomial(m) for m in poly]
        out = monos[-1]
        for m in reversed(monos[:-1]):
            out = JoinT(m, out)
        return out

    def int_canon(self, t: Term) -> Term:
        """Canonical-form representative of an interval-typed term."""
        return self._poly_term(self._collect_poly(t))

    # -- conversion -------------------------------------------------------------

    def cells_equal(self, c1: Optional[TwoCell], c2: Optional[TwoCell]) -> bool:
        if c1 is None and c2 is None:
            return True
        if c1 is None:
            return cell_normalize(c2).is_identity()
        if c2 is None:
            return cell_normalize(c1).is_identity()
        n1, n2 = cell_normalize(c1), cell_normalize(c2)
        if (n1.src, n1.dst) != (n2.src, n2.dst):
            return False
        return n1.steps == n2.steps

    def conv(self, t: Term, u: Term, ty: Term) -> bool:
        tyw = self.whnf(ty)
        match tyw:
            case Pi(_, _, cod):
                return self.conv(
                    App(shift(t, 1), Var(0)), App(shift(u, 1), Var(0)), cod
                )
            case Sigma(dom, cod):
                if not self.conv(Fst(t), Fst(u), dom):
                    return False
                return self.conv(Snd(t), Snd(u), subst(cod, Fst(t)))
            case IntT():
                return self.int_canon(t) == self.int_canon(u)
            case _:
                return self.conv_str(t, u)

    def conv_str(self, t: Term, u: Term) -> bool:
        tw, uw = self.whnf(t), self.whnf(u)
        # eta for functions and pairs
        if isinstance(tw, Lam) and not isinstance(uw, Lam):
            return self.conv_str(tw.body, App(shift(uw, 1), Var(0)))
        if isinstance(uw, Lam) and not isinstance(tw, Lam):
            return self.conv_str(App(shift(tw, 1), Var(0)), uw.body)
        if isinstance(tw, Pair) and not isinstance(uw, Pair):
            return self.conv_str(tw.fst, Fst(uw)) and self.conv_str(tw.snd, Snd(uw))
        if isinstance(uw, Pair) and not isinstance(tw, Pair):
            return self.conv_str(Fst(tw), uw.fst) and self.conv_str(Snd(tw), uw.snd)
        if type(tw) is not type(uw):
            return False
        if isinstance(tw, Var):
            return tw.ix == uw.ix and self.cells_equal(tw.cell, uw.cell)
        for f in dataclasses.fields(tw):
            va, vb = getattr(tw, f.name), getattr(uw, f.name)
            if isinstance(va, Term):
                if not self.conv_str(va, vb):
                    return False
            elif va != vb:
                return False
        return True

    # -- type levels -------------------------------------------------------------

    def universe_of(self, ctx: Ctx, ty: Term) -> int:
        """Level l such that the (well-formed) type inhabits U l."""
        tyw = self.whnf(ty)
        match tyw:
            case Univ(level):
                return level + 1
            case Pi(word, dom, cod):
                l1 = self.universe_of(ctx.lock(word), dom)
                ctx2 = ctx.extend("_", word, dom, self.is_interval_type(dom, word))
                return max(l1, self.universe_of(ctx2, cod))
            case Sigma(dom, cod):
                l1 = self.universe_of(ctx, dom)
                ctx2 = ctx.extend("_", (), dom, self.is_interval_type(dom, ()))
                return max(l1, self.universe_of(ctx2, cod))
            case IdT(inner, _, _):
                return self.universe_of(ctx, inner)
            case IntT() | NatT() | BoolT():
                return 0
            case Modify(word, inner):
                return self.universe_of(ctx.lock(word), inner)
            case LiftT(inner):
                return self.universe_of(ctx, inner) + 1
            case _:
                nty = self.whnf(self.neutral_type(ctx, tyw))
                if isinstance(nty, Univ):
                    return nty.level
                self.err(
                    "E-CONV",
                    "expected a type",
                    actual=print_core(tyw, ctx.names()),
                )
                raise AssertionError

    def is_interval_type(self, ty: Term, word) -> bool:
        return word == () and isinstance(self.whnf(ty), IntT)

    def neutral_type(self, ctx: Ctx, t: Term) -> Term:
        """Type of a neutral term (spine-directed synthesis)."""
        match t:
            case Var(ix, cell):
                base = ctx.type_of(ix)
                if cell is not None and not cell.is_identity():
                    base = apply_cell(base, cell)
                return base
            case Const(name):
                entry = self.globals.get(name)
                if entry is None:
                    self.err("E-UNBOUND", f"unknown constant {name!r}")
                return entry.ty
            case App(fn, arg):
                fty = self.whnf(self.neutral_type(ctx, fn))
                if not isinstance(fty, Pi):
                    self.err("E-CONV", "application head is not a function")
                return subst(fty.cod, arg)
            case Fst(p):
                pty = self.whnf(self.neutral_type(ctx, p))
                if not isinstance(pty, Sigma):
                    self.err("E-CONV", "projection from a non-pair")
                return pty.dom
            case Snd(p):
                pty = self.whnf(self.neutral_type(ctx, p))
                if not isinstance(pty, Sigma):
                    self.err("E-CONV", "projection from a non-pair")
                return subst(pty.cod, Fst(p))
            case J(motive, _, eq):
                ety = self.whnf(self.neutral_type(ctx, eq))
                if not isinstance(ety, IdT):
                    self.err("E-CONV", "path eliminator on a non-path")
                return subst2(motive, ety.rhs, eq)
            case NatRec(motive, _, _, scrut):
                return subst(motive, scrut)
            case BoolRec(motive, _, _, scrut):
                return subst(motive, scrut)
            case Down(x):
                xty = self.whnf(self.neutral_type(ctx, x))
                if not isinstance(xty, LiftT):
                    self.err("E-CONV", "down on a non-lifted term")
                return xty.ty
            case I0() | I1() | MeetT(_, _) | JoinT(_, _):
                return IntT()
            case Zero() | Suc(_):
                return NatT()
            case TrueC() | FalseC():
                return BoolT()
            case _:
                self.err("E-CONV", "cannot synthesize a type for this term")
                raise AssertionError

    # -- modal variable access ----------------------------------------------------

    def _lock_candidates(self, trailing: list[tuple[str, bool]]):
        """Composites of the trailing locks, each droppable p kept or dropped.

        Yields (subset-of-dropped-positions, word), largest subsets first, so
        ordinary weakening across interval binders is preferred.
        """
        droppable = [i for i, (_, d) in enumerate(trailing) if d]
        seen = set()
        for r in range(len(droppable), -1, -1):
            for combo in itertools.combinations(droppable, r):
                dropped = set(combo)
                word = normalize(
                    tuple(g for i, (g, _) in enumerate(trailing) if i not in dropped)
                )
                if word not in seen:
                    seen.add(word)
                    yield word

    def access_cell(
        self,
        ctx: Ctx,
        ix: int,
        explicit: Optional[TwoCell],
        name: str,
    ) -> Optional[TwoCell]:
        """2-cell mediating the use of Var(ix) under the trailing locks."""
        entry = ctx.decl_at(ix)
        annotation = normalize(entry.word)
        trailing = ctx.trailing(ix)
        candidates = list(self._lock_candidates(trailing))
        if explicit is not None:
            try:
                explicit.validate()
            except ModeError as exc:
                self.err("E-2CELL-BOUNDARY", exc.message)
            src, dst = normalize(explicit.src), normalize(explicit.dst)
            if src != annotation:
                self.err(
                    "E-2CELL-BOUNDARY",
                    f"cell on {name!r} starts at {format_word(src)} but the "
                    f"variable is annotated {format_word(annotation)}",
                )
            if dst not in candidates:
                self.err(
                    "E-2CELL-BOUNDARY",
                    f"cell on {name!r} ends at {format_word(dst)} but the "
                    f"locks compose to {format_word(candidates[-1])}",
                )
            return cell_normalize(explicit)
        if annotation in candidates:
            return None  # identity access
        for target in candidates:
            found = cell_search(annotation, target, self.depth)
            if found is not None:
                return cell_normalize(found)
        self.err(
            "E-MODALITY",
            f"variable {name!r} is annotated {format_word(annotation)} but sits "
            f"under locks {format_word(candidates[-1])} and no mediating 2-cell "
            f"was found (depth {self.depth})",
        )
        raise AssertionError

    # -- surface cell elaboration ----------------------------------------------

    def elab_cell(self, cell: syntax.SCell) -> TwoCell:
        out: Optional[TwoCell] = None
        for factor in cell.factors:
            if factor.gen == "id":
                piece = identity_cell(factor.id_word)
            else:
                piece = generator_cell(factor.gen, factor.left, factor.right)
            if out is None:
                out = piece
            else:
                try:
                    out = cell_vcomp(out, piece)
                except ModeError as exc:
                    self.err("E-2CELL-BOUNDARY", exc.message)
        assert out is not None
        return out

    # -- bidirectional elaboration -----------------------------------------------

    def infer(self, ctx: Ctx, s: syntax.STerm) -> tuple[Term, Term]:
        pushed = s.span != (0, 0)
        if pushed:
            self._spans.append(s.span)
        try:
            return self._infer(ctx, s)
        finally:
            if pushed:
                self._spans.pop()

    def check(self, ctx: Ctx, s: syntax.STerm, ty: Term) -> Term:
        pushed = s.span != (0, 0)
        if pushed:
            self._spans.append(s.span)
        try:
            return self._check(ctx, s, ty)
        finally:
            if pushed:
                self._spans.pop()

    def elab_type(self, ctx: Ctx, s: syntax.STerm) -> tuple[Term, int]:
        tc, tty = self.infer(ctx, s)
        ttyw = self.whnf(tty)
        if isinstance(ttyw, Univ):
            return tc, ttyw.level
        self.err(
            "E-CONV",
            "expected a type",
            actual=print_core(ttyw, ctx.names()),
            span=s.span if s.span != (0, 0) else None,
        )
        raise AssertionError

    def _lookup(self, ctx: Ctx, name: str, cell: Optional[TwoCell]) -> tuple[Term, Term]:
        ix = ctx.find(name)
        if ix is None:
            if cell is None and name in self.globals:
                return Const(name), self.globals[name].ty
            if name in self.globals:
                self.err("E-2CELL-BOUNDARY", f"2-cell action on the constant {name!r}")
            self.err("E-UNBOUND", f"unbound name {name!r}")
        resolved = self.access_cell(ctx, ix, cell, name)
        ty = ctx.type_of(ix)
        if resolved is not None and not resolved.is_identity():
            ty = apply_cell(ty, resolved)
        return Var(ix, resolved), ty

    def _infer(self, ctx: Ctx, s: syntax.STerm) -> tuple[Term, Term]:
        match s:
            case syntax.SVar(name):
                return self._lookup(ctx, name, None)
            case syntax.SCellApp(syntax.SVar(name), cell):
                return self._lookup(ctx, name, self.elab_cell(cell))
            case syntax.SCellApp(_, _):
                self.err(
                    "E-MODALITY",
                    "the 2-cell action elaborates on variables only; "
                    "apply it before compounding the term",
                )
            case syntax.SUniv(level):
                return Univ(level), Univ(level + 1)
            case syntax.SConstT(kw):
                table = {
                    "Int": (IntT(), Univ(0)),
                    "Nat": (NatT(), Univ(0)),
                    "Bool": (BoolT(), Univ(0)),
                    "zero": (Zero(), NatT()),
                    "true": (TrueC(), BoolT()),
                    "false": (FalseC(), BoolT()),
                }
                return table[kw]
            case syntax.SNum(value):
                if value in (0, 1):
                    return (I0() if value == 0 else I1()), IntT()
                return nat_literal(value), NatT()
            case syntax.SSucc(arg):
                ac = self.check(ctx, arg, NatT())
                return Suc(ac), NatT()
            case syntax.SMeet(lhs, rhs):
                lc = self.check(ctx, lhs, IntT())
                rc = self.check(ctx, rhs, IntT())
                return MeetT(lc, rc), IntT()
            case syntax.SJoin(lhs, rhs):
                lc = self.check(ctx, lhs, IntT())
                rc = self.check(ctx, rhs, IntT())
                return JoinT(lc, rc), IntT()
            case syntax.SPi(name, word, dom, cod):
                word = normalize(word)
                if "p" in word:
                    self.err(
                        "E-MODALITY",
                        "path-annotated binders are not supported; "
                        "bind an interval variable instead",
                    )
                dc, l1 = self.elab_type(ctx.lock(word), dom)
                ctx2 = ctx.extend(name, word, dc, self.is_interval_type(dc, word))
                cc, l2 = self.elab_type(ctx2, cod)
                return Pi(word, dc, cc), Univ(max(l1, l2))
            case syntax.SSigma(name, dom, cod):
                dc, l1 = self.elab_type(ctx, dom)
                ctx2 = ctx.extend(name, (), dc, self.is_interval_type(dc, ()))
                cc, l2 = self.elab_type(ctx2, cod)
                return Sigma(dc, cc), Univ(max(l1, l2))
            case syntax.SApp(fn, arg):
                fc, fty = self.infer(ctx, fn)
                ftyw = self.whnf(fty)
                if not isinstance(ftyw, Pi):
                    self.err(
                        "E-CONV",
                        "application of a non-function",
                        actual=print_core(ftyw, ctx.names()),
                    )
                ac = self.check(ctx.lock(ftyw.word), arg, ftyw.dom)
                return App(fc, ac), subst(ftyw.cod, ac)
            case syntax.SFst(arg):
                ac, aty = self.infer(ctx, arg)
                atyw = self.whnf(aty)
                if not isinstance(atyw, Sigma):
                    self.err("E-CONV", "fst of a non-pair",
                             actual=print_core(atyw, ctx.names()))
                return Fst(ac), atyw.dom
            case syntax.SSnd(arg):
                ac, aty = self.infer(ctx, arg)
                atyw = self.whnf(aty)
                if not isinstance(atyw, Sigma):
                    self.err("E-CONV", "snd of a non-pair",
                             actual=print_core(atyw, ctx.names()))
                return Snd(ac), subst(atyw.cod, Fst(ac))
            case syntax.SEq(lhs, rhs):
                lc, lty = self.infer(ctx, lhs)
                rc = self.check(ctx, rhs, lty)
                return IdT(lty, lc, rc), Univ(self.universe_of(ctx, lty))
            case syntax.SJ(motive, base, eq):
                ec, ety = self.infer(ctx, eq)
                etyw = self.whnf(ety)
                if not isinstance(etyw, IdT):
                    self.err("E-CONV", "J eliminates a path; this is not one",
                             actual=print_core(etyw, ctx.names()))
                if not (isinstance(motive, syntax.SLam)
                        and isinstance(motive.body, syntax.SLam)):
                    self.err(
                        "E-CONV",
                        "the J motive must be a literal two-argument function",
                    )
                ctx_m = ctx.extend(
                    motive.name, (), etyw.ty, self.is_interval_type(etyw.ty, ())
                ).extend(
                    motive.body.name,
                    (),
                    IdT(shift(etyw.ty, 1), shift(etyw.lhs, 1), Var(0)),
                )
                mbody, _ = self.elab_type(ctx_m, motive.body.body)
                base_ty = subst2(mbody, etyw.lhs, Refl())
                bc = self.check(ctx, base, base_ty)
                return J(mbody, bc, ec), subst2(mbody, etyw.rhs, ec)
            case syntax.SNatRec(motive, zcase, scase, scrut):
                nc = self.check(ctx, scrut, NatT())
                if not isinstance(motive, syntax.SLam):
                    self.err("E-CONV", "the natrec motive must be a literal function")
                ctx_m = ctx.extend(motive.name, (), NatT())
                mbody, _ = self.elab_type(ctx_m, motive.body)
                zc = self.check(ctx, zcase, subst(mbody, Zero()))
                step_cod = subst(shift(mbody, 2, cutoff=1), Suc(Var(1)), 0)
                step_ty = Pi((), NatT(), Pi((), mbody, step_cod))
                sc = self.check(ctx, scase, step_ty)
                scase_open = App(App(shift(sc, 2), Var(1)), Var(0))
                return NatRec(mbody, zc, scase_open, nc), subst(mbody, nc)
            case syntax.SBoolRec(motive, tcase, fcase, scrut):
                bc = self.check(ctx, scrut, BoolT())
                if not isinstance(motive, syntax.SLam):
                    self.err("E-CONV", "the boolrec motive must be a literal function")
                ctx_m = ctx.extend(motive.name, (), BoolT())
                mbody, _ = self.elab_type(ctx_m, motive.body)
                tc = self.check(ctx, tcase, subst(mbody, TrueC()))
                fc = self.check(ctx, fcase, subst(mbody, FalseC()))
                return BoolRec(mbody, tc, fc, bc), subst(mbody, bc)
            case syntax.SModify(word, body):
                word = normalize(word)
                bc, level = self.elab_type(ctx.lock(word), body)
                return mk_modify(word, bc), Univ(level)
            case syntax.SMkMod(word, body):
                word = normalize(word)
                bc, bty = self.infer(ctx.lock(word), body)
                return mk_mkmod(word, bc), mk_modify(word, bty)
            case syntax.SLetMod(word, name, frame, scrut, body):
                return self._elab_letmod(ctx, s, None)
            case syntax.SInst(arg, index):
                ic = self.check(ctx, index, IntT())
                ctx2 = ctx.lock(("p",))
                ac, aty = self.infer(ctx2, arg)
                return subst(ac, ic), subst(aty, ic)
            case syntax.SCoe(cell, arg):
                return self._elab_coe(ctx, s)
            case syntax.SAnnot(term, ty, word):
                if word:
                    self.err("E-MODALITY", "modal annotation outside a binder")
                tyc, _ = self.elab_type(ctx, ty)
                tc = self.check(ctx, term, tyc)
                return tc, tyc
            case syntax.SLift(arg):
                ac, level = self.elab_type(ctx, arg)
                return LiftT(ac), Univ(level + 1)
            case syntax.SUp(arg):
                ac, aty = self.infer(ctx, arg)
                return Up(ac), LiftT(aty)
            case syntax.SDown(arg):
                ac, aty = self.infer(ctx, arg)
                atyw = self.whnf(aty)
                if not isinstance(atyw, LiftT):
                    self.err("E-CONV", "down of an unlifted term",
                             actual=print_core(atyw, ctx.names()))
                return Down(ac), atyw.ty
            case syntax.SLam(_, _):
                self.err("E-CONV", "cannot infer the type of a bare function; "
                         "annotate it or check it against a type")
            case syntax.SPair(_, _):
                self.err("E-CONV", "cannot infer the type of a bare pair; "
                         "annotate it or check it against a type")
            case syntax.SRefl():
                self.err("E-CONV", "cannot infer the type of refl; "
                         "check it against an equation")
            case _:
                self.err("E-PARSE", f"unsupported term {s!r}")
        raise AssertionError

    def _check(self, ctx: Ctx, s: syntax.STerm, ty: Term) -> Term:
        tyw = self.whnf(ty)
        match s:
            case syntax.SLam(name, body):
                if not isinstance(tyw, Pi):
                    self.err(
                        "E-CONV",
                        "function literal against a non-function type",
                        expected=print_core(tyw, ctx.names()),
                    )
                ctx2 = ctx.extend(
                    name, tyw.word, tyw.dom, self.is_interval_type(tyw.dom, tyw.word)
                )
                bc = self.check(ctx2, body, tyw.cod)
                return Lam(bc)
            case syntax.SPair(a, b):
                if not isinstance(tyw, Sigma):
                    self.err(
                        "E-CONV",
                        "pair literal against a non-pair type",
                        expected=print_core(tyw, ctx.names()),
                    )
                ac = self.check(ctx, a, tyw.dom)
                bc = self.check(ctx, b, subst(tyw.cod, ac))
                return Pair(ac, bc)
            case syntax.SRefl():
                if not isinstance(tyw, IdT):
                    self.err(
                        "E-CONV",
                        "refl against a non-equation type",
                        expected=print_core(tyw, ctx.names()),
                    )
                if not self.conv(tyw.lhs, tyw.rhs, tyw.ty):
                    self.err(
                        "E-CONV",
                        "refl requires definitionally equal sides",
                        expected=print_core(self.whnf(tyw.lhs), ctx.names()),
                        actual=print_core(self.whnf(tyw.rhs), ctx.names()),
                    )
                return Refl()
            case syntax.SNum(value):
                if isinstance(tyw, IntT):
                    if value in (0, 1):
                        return I0() if value == 0 else I1()
                    self.err("E-CONV", f"{value} is not an interval endpoint")
                if isinstance(tyw, NatT):
                    return nat_literal(value)
                return self._check_via_infer(ctx, s, tyw)
            case syntax.SMkMod(word, body):
                word = normalize(word)
                inner, k = _strip_trailing_p(word)
                cur = tyw
                if inner:
                    if not (isinstance(cur, Modify) and cur.word == inner):
                        self.err(
                            "E-CONV",
                            f"modal introduction mod{{{format_word(word)}}} against "
                            "a different type",
                            expected=print_core(cur, ctx.names()),
                        )
                    cur = cur.ty
                for _ in range(k):
                    cur = self.whnf(cur)
                    if not (isinstance(cur, Pi) and isinstance(self.whnf(cur.dom), IntT)):
                        self.err(
                            "E-CONV",
                            "path-modal introduction against a non-path type",
                            expected=print_core(tyw, ctx.names()),
                        )
                    cur = cur.cod
                bc = self.check(ctx.lock(word), body, cur)
                return mk_mkmod(word, bc)
            case syntax.SLetMod(_, _, _, _, _):
                return self._elab_letmod(ctx, s, tyw)
            case _:
                return self._check_via_infer(ctx, s, tyw)

    def _check_via_infer(self, ctx: Ctx, s: syntax.STerm, tyw: Term) -> Term:
        tc, ity = self.infer(ctx, s)
        ityw = self.whnf(ity)
        if self.conv_str(ityw, tyw):
            return tc
        if isinstance(ityw, Univ) and isinstance(tyw, Univ):
            self.err(
                "E-UNIVERSE",
                f"universe level mismatch: U {ityw.level} is not U {tyw.level}",
                expected=print_core(tyw, ctx.names()),
                actual=print_core(ityw, ctx.names()),
            )
        self.err(
            "E-CONV",
            "type mismatch",
            expected=print_core(tyw, ctx.names()),
            actual=print_core(ityw, ctx.names()),
        )
        raise AssertionError

    def _elab_letmod(self, ctx: Ctx, s: syntax.SLetMod, expected: Optional[Term]):
        word = normalize(s.word)
        frame = normalize(s.frame)
        if "p" in word or "p" in frame:
            self.err(
                "E-MODALITY",
                "let-mod over a path modality is not supported; "
                "use interval binders directly",
            )
        sc, sty = self.infer(ctx.lock(frame), s.scrut)
        styw = self.whnf(sty)
        if word == ():
            inner_ty = styw
        elif isinstance(styw, Modify) and styw.word == word:
            inner_ty = styw.ty
        else:
            self.err(
                "E-CONV",
                f"let-mod expects a value in <{format_word(word)}| ->",
                expected=f"<{format_word(word)}| _>",
                actual=print_core(styw, ctx.names()),
            )
            raise AssertionError
        ctx2 = ctx.extend(s.name, compose(frame, word), inner_ty,
                          self.is_interval_type(inner_ty, compose(frame, word)))
        if expected is not None:
            bc = self.check(ctx2, s.body, shift(expected, 1))
            return LetMod(frame, word, sc, bc)
        bc, bty = self.infer(ctx2, s.body)
        if free_in(bty, 0):
            self.err(
                "E-CONV",
                "cannot infer a dependent let-mod; check it against a type",
            )
        return LetMod(frame, word, sc, bc), unshift_unused(bty)

    def _elab_coe(self, ctx: Ctx, s: syntax.SCoe) -> tuple[Term, Term]:
        cell = self.elab_cell(s.cell)
        try:
            cell.validate()
        except ModeError as exc:
            self.err("E-2CELL-BOUNDARY", exc.message)
        src, dst = normalize(cell.src), normalize(cell.dst)
        if "p" in src:
            self.err(
                "E-MODALITY",
                "coercion out of a path modality is not supported",
            )
        tc, tty = self.infer(ctx, s.arg)
        ttyw = self.whnf(tty)
        if src == ():
            inner = ttyw
            term_body = shift(tc, npee(dst))
            if not cell.is_identity():
                term_body = apply_cell(term_body, cell)
            result = mk_mkmod(dst, term_body)
        else:
            if not (isinstance(ttyw, Modify) and ttyw.word == src):
                self.err(
                    "E-CONV",
                    f"coercion along {format_word(src)} => {format_word(dst)} "
                    "expects a matching modal argument",
                    expected=f"<{format_word(src)}| _>",
                    actual=print_core(ttyw, ctx.names()),
                )
            inner = ttyw.ty
            body = Var(npee(dst), cell if not cell.is_identity() else None)
            result = LetMod((), src, tc, mk_mkmod(dst, body))
        ty_inner = shift(inner, npee(dst))
        if not cell.is_identity():
            ty_inner = apply_cell(ty_inner, cell)
        return result, mk_modify(dst, ty_inner)

    # -- declarations ---------------------------------------------------------

    def run_decl(self, decl: syntax.Decl) -> None:
        ctx = Ctx()
        if decl.kind in ("def", "axiom") and decl.name in self.globals:
            self.err("E-PARSE", f"redefinition of {decl.name!r}", span=decl.span)
        if decl.kind == "def":
            tyc, _ = self.elab_type(ctx, decl.ty)
            bodyc = self.check(ctx, decl.body, tyc)
            self.globals[decl.name] = GlobalDef(decl.name, "def", tyc, bodyc)
            self.global_order.append(decl.name)
            return
        if decl.kind == "axiom":
            tyc, _ = self.elab_type(ctx, decl.ty)
            self.globals[decl.name] = GlobalDef(decl.name, "axiom", tyc, None)
            self.global_order.append(decl.name)
            return
        if decl.kind == "check":
            tyc, _ = self.elab_type(ctx, decl.ty)
            self.check(ctx, decl.body, tyc)
            return
        if decl.kind == "fail-check":
            try:
                tyc, _ = self.elab_type(ctx, decl.ty)
                self.check(ctx, decl.body, tyc)
            except KernelError as exc:
                if exc.diagnostic.code == decl.expect_code:
                    return
                exc.diagnostic.message = (
                    f"fail-check expected {decl.expect_code} but failed with "
                    f"{exc.diagnostic.code}: {exc.diagnostic.message}"
                )
                raise
            self.err(
                decl.expect_code or "E-CONV",
                f"fail-check: the term type-checked but {decl.expect_code} "
                "was expected",
                span=decl.span,
            )
            return
        raise ValueError(f"unknown declaration kind {decl.kind}")

    def run_module(self, module: syntax.SurfaceModule) -> list[Diagnostic]:
        old_file = self.file
        self.file = module.path
        try:
            for decl in module.decls:
                self._spans.append(decl.span)
                try:
                    self.run_decl(decl)
                except KernelError as exc:
                    return [exc.diagnostic]
                finally:
                    self._spans.pop()
            return []
        finally:
            self.file = old_file

    def check_source(self, text: str, path: str = "<input>") -> list[Diagnostic]:
        try:
            module = syntax.parse_module(text, path)
        except KernelError as exc:
            return [exc.diagnostic]
        return self.run_module(module)


def _strip_trailing_p(word) -> tuple[tuple, int]:
    k = 0
    w = tuple(word)
    while w and w[-1] == "p":
        w = w[:-1]
        k += 1
    return w, k


# ---------------------------------------------------------------------------
# Core printer (diagnostics only)
# ---------------------------------------------------------------------------


def print_core(t: Term, names: Optional[list[str]] = None) -> str:
    env = list(names or [])

    def fresh(base: str) -> str:
        if base in ("_", "") or base in env:
            i = 0
            while f"x{i}" in env:
                i += 1
            return f"x{i}"
        return base

    def go(u: Term, depth_names: list[str], prec: int) -> str:
        def par(txt: str, level: int) -> str:
            return f"({txt})" if level < prec else txt

        match u:
            case Var(ix, cell):
                if ix < len(depth_names):
                    base = depth_names[-1 - ix] if ix < len(depth_names) else f"@{ix}"
                else:
                    base = f"@{ix}"
                if cell is not None and not cell.is_identity():
                    return f"{base}^{{{cell.describe()}}}"
                return base
            case Const(name):
                return name
            case Univ(level):
                return par(f"U {level}", 5)
            case Pi(word, dom, cod):
                nm = fresh("x")
                ann = f" @ {format_word(word)}" if word else ""
                return par(
                    f"({nm} : {go(dom, depth_names, 0)}{ann}) -> "
                    f"{go(cod, depth_names + [nm], 0)}",
                    0,
                )
            case Sigma(dom, cod):
                nm = fresh("x")
                return par(
                    f"({nm} : {go(dom, depth_names, 0)}) * "
                    f"{go(cod, depth_names + [nm], 1)}",
                    1,
                )
            case Lam(body):
                nm = fresh("x")
                return par(f"fun {nm} => {go(body, depth_names + [nm], 0)}", 0)
            case App(fn, arg):
                return par(f"{go(fn, depth_names, 5)} {go(arg, depth_names, 6)}", 5)
            case Pair(a, b):
                return f"({go(a, depth_names, 0)}, {go(b, depth_names, 0)})"
            case Fst(arg):
                return par(f"fst {go(arg, depth_names, 6)}", 5)
            case Snd(arg):
                return par(f"snd {go(arg, depth_names, 6)}", 5)
            case IdT(_, lhs, rhs):
                return par(
                    f"{go(lhs, depth_names, 3)} = {go(rhs, depth_names, 3)}", 2
                )
            case Refl():
                return "refl"
            case J(motive, base, eq):
                nm, pm = fresh("b"), "q"
                mt = go(motive, depth_names + [nm, pm], 0)
                return f"J(fun {nm} {pm} => {mt}, {go(base, depth_names, 0)}, {go(eq, depth_names, 0)})"
            case NatT():
                return "Nat"
            case Zero():
                return "0"
            case Suc(arg):
                inner = u
                count = 0
                while isinstance(inner, Suc):
                    count += 1
                    inner = inner.arg
                if isinstance(inner, Zero):
                    return str(count)
                return par(f"succ {go(arg, depth_names, 6)}", 5)
            case NatRec(motive, z, s, n):
                nm = fresh("n")
                return (
                    f"natrec(fun {nm} => {go(motive, depth_names + [nm], 0)}, "
                    f"{go(z, depth_names, 0)}, fun k r => {go(s, depth_names + ['k', 'r'], 0)}, "
                    f"{go(n, depth_names, 0)})"
                )
            case BoolT():
                return "Bool"
            case TrueC():
                return "true"
            case FalseC():
                return "false"
            case BoolRec(motive, tc, fc, b):
                nm = fresh("b")
                return (
                    f"boolrec(fun {nm} => {go(motive, depth_names + [nm], 0)}, "
                    f"{go(tc, depth_names, 0)}, {go(fc, depth_names, 0)}, "
                    f"{go(b, depth_names, 0)})"
                )
            case IntT():
                return "Int"
            case I0():
                return "0"
            case I1():
                return "1"
            case MeetT(lhs, rhs):
                return par(f"{go(lhs, depth_names, 5)} /\\ {go(rhs, depth_names, 5)}", 4)
            case JoinT(lhs, rhs):
                return par(f"{go(lhs, depth_names, 4)} \\/ {go(rhs, depth_names, 4)}", 3)
            case Modify(word, ty):
                inner_names = depth_names + [f"i{k}" for k in range(npee(word))]
                return f"<{format_word(word)}| {go(ty, inner_names, 0)}>"
            case MkMod(word, body):
                inner_names = depth_names + [f"i{k}" for k in range(npee(word))]
                return f"mod{{{format_word(word)}}}({go(body, inner_names, 0)})"
            case LetMod(frame, word, scrut, body):
                nm = fresh("x")
                fr = f"[{format_word(frame)}]" if frame else ""
                return par(
                    f"let mod{{{format_word(word)}}}({nm}) ={fr} "
                    f"{go(scrut, depth_names, 0)} in {go(body, depth_names + [nm], 0)}",
                    0,
                )
            case LiftT(ty):
                return par(f"Lift {go(ty, depth_names, 6)}", 5)
            case Up(arg):
                return par(f"up {go(arg, depth_names, 6)}", 5)
            case Down(arg):
                return par(f"down {go(arg, depth_names, 6)}", 5)
        return repr(u)

    return go(t, env, 0)
