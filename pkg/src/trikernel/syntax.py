"""Surface syntax: lexer, position-annotated AST, parser and printer.

The grammar is ASCII-first with unicode aliases; see docs/grammar.ebnf.
Precedence, loosest to tightest:

    ->    function types (right associative; binders ``(x : A @ w) -> B``)
    *     pair types (right associative; binders ``(x : A) * B``)
    =     identity types (non-associative)
    \\/   interval join
    /\\   interval meet
    application (left associative)
    postfix ``^{cell}`` and ``. t`` on atoms

``(x : A)`` parses as an annotation atom and is reinterpreted as a binder
when an arrow or star follows, so no backtracking is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .diagnostics import Diagnostic, KernelError
from .modality import GENERATOR_CELLS, Word, parse_word

KEYWORDS = {
    "def", "axiom", "check", "fun", "let", "mod", "in", "coe",
    "U", "Int", "Nat", "Bool", "zero", "succ", "true", "false",
    "refl", "J", "natrec", "boolrec", "fst", "snd", "Lift", "up", "down",
}

Span = tuple[int, int]


@dataclass
class Token:
    kind: str
    text: str
    span: Span


_PUNCT = [
    (":=", "DEFINE"), ("=>", "FATARROW"), ("->", "ARROW"),
    ("/\\", "MEET"), ("\\/", "JOIN"), ("=", "EQUALS"),
    ("(", "LPAREN"), (")", "RPAREN"), ("[", "LBRACKET"), ("]", "RBRACKET"),
    (",", "COMMA"), (":", "COLON"), ("*", "STAR"), ("^", "HAT"),
    (".", "DOT"), ("<", "LT"), (">", "GT"), ("|", "PIPE"), ("@", "AT"),
]

_UNICODE_ALIASES = {
    "λ": ("KEYWORD", "fun"),
    "∘": ("DOT", "."),
    "⟨": ("LT", "<"),
    "⟩": ("GT", ">"),
    "∧": ("MEET", "/\\"),
    "∨": ("JOIN", "\\/"),
    "→": ("ARROW", "->"),
}


def _parse_error(message: str, span: Span, file: str):
    raise KernelError(Diagnostic(file=file, code="E-PARSE", message=message, span=span))


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _UNICODE_ALIASES:
            kind, canonical = _UNICODE_ALIASES[ch]
            tokens.append(Token(kind, canonical, (i, i + 1)))
            i += 1
            continue
        if ch == "{":
            depth, j = 1, i + 1
            while j < n and depth:
                if text[j] == "{":
                    depth += 1
                elif text[j] == "}":
                    depth -= 1
                j += 1
            if depth:
                _parse_error("unterminated '{'", (i, n), file)
            tokens.append(Token("BRACED", text[i + 1 : j - 1], (i, j)))
            i = j
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] != '"':
                j += 1
            if j >= n:
                _parse_error("unterminated string literal", (i, n), file)
            tokens.append(Token("STRING", text[i + 1 : j], (i, j + 1)))
            i = j + 1
            continue
        if text.startswith("fail-check", i) and not (
            i + 10 < n and (text[i + 10].isalnum() or text[i + 10] == "_")
        ):
            tokens.append(Token("KEYWORD", "fail-check", (i, i + 10)))
            i += 10
            continue
        matched = False
        for lit, kind in _PUNCT:
            if text.startswith(lit, i):
                tokens.append(Token(kind, lit, (i, i + len(lit))))
                i += len(lit)
                matched = True
                break
        if matched:
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("NUMBER", text[i:j], (i, j)))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            word = text[i:j]
            kind = "KEYWORD" if word in KEYWORDS else "IDENT"
            tokens.append(Token(kind, word, (i, j)))
            i = j
            continue
        _parse_error(f"unexpected character {ch!r}", (i, i + 1), file)
    tokens.append(Token("EOF", "", (n, n)))
    return tokens


# ---------------------------------------------------------------------------
# Surface AST
# ---------------------------------------------------------------------------


@dataclass
class STerm:
    span: Span = field(default=(0, 0), compare=False, kw_only=True)


@dataclass
class SVar(STerm):
    name: str


@dataclass
class SUniv(STerm):
    level: int


@dataclass
class SPi(STerm):
    name: str
    word: Word
    dom: STerm
    cod: STerm


@dataclass
class SSigma(STerm):
    name: str
    dom: STerm
    cod: STerm


@dataclass
class SLam(STerm):
    name: str
    body: STerm


@dataclass
class SApp(STerm):
    fn: STerm
    arg: STerm


@dataclass
class SPair(STerm):
    fst: STerm
    snd: STerm


@dataclass
class SFst(STerm):
    arg: STerm


@dataclass
class SSnd(STerm):
    arg: STerm


@dataclass
class SEq(STerm):
    lhs: STerm
    rhs: STerm


@dataclass
class SRefl(STerm):
    pass


@dataclass
class SJ(STerm):
    motive: STerm
    base: STerm
    eq: STerm


@dataclass
class SNum(STerm):
    value: int


@dataclass
class SSucc(STerm):
    arg: STerm


@dataclass
class SMeet(STerm):
    lhs: STerm
    rhs: STerm


@dataclass
class SJoin(STerm):
    lhs: STerm
    rhs: STerm


@dataclass
class SConstT(STerm):
    name: str  # "Int" | "Nat" | "Bool" | "zero" | "true" | "false"


@dataclass
class SNatRec(STerm):
    motive: STerm
    zcase: STerm
    scase: STerm
    scrut: STerm


@dataclass
class SBoolRec(STerm):
    motive: STerm
    tcase: STerm
    fcase: STerm
    scrut: STerm


@dataclass
class SModify(STerm):
    word: Word
    body: STerm


@dataclass
class SMkMod(STerm):
    word: Word
    body: STerm


@dataclass
class SLetMod(STerm):
    word: Word
    name: str
    frame: Word  # outer annotation under which the value is eliminated
    scrut: STerm
    body: STerm


@dataclass
class SCellFactor:
    left: Word
    gen: str  # generator cell name, or "id"
    right: Word
    id_word: Word = ()


@dataclass
class SCell:
    factors: tuple[SCellFactor, ...]


@dataclass
class SCellApp(STerm):
    arg: STerm
    cell: SCell


@dataclass
class SInst(STerm):
    arg: STerm
    index: STerm


@dataclass
class SCoe(STerm):
    cell: SCell
    arg: STerm


@dataclass
class SAnnot(STerm):
    term: STerm
    ty: STerm
    word: Word = ()


@dataclass
class SLift(STerm):
    arg: STerm


@dataclass
class SUp(STerm):
    arg: STerm


@dataclass
class SDown(STerm):
    arg: STerm


@dataclass
class Decl:
    kind: str  # "def" | "axiom" | "check" | "fail-check"
    name: str
    ty: STerm
    body: Optional[STerm]
    expect_code: Optional[str] = None
    span: Span = field(default=(0, 0), compare=False)


@dataclass
class SurfaceModule:
    path: str
    decls: list[Decl]
    source: str = field(default="", compare=False)


# ---------------------------------------------------------------------------
# Cell sub-grammar: "eps_gs", "g*eta_gs*s", "c1 ; c2", "id(w)"
# ---------------------------------------------------------------------------


def parse_cell_text(text: str, span: Span, file: str) -> SCell:
    factors = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            _parse_error("empty 2-cell factor", span, file)
        if chunk.startswith("id(") and chunk.endswith(")"):
            try:
                factors.append(SCellFactor((), "id", (), parse_word(chunk[3:-1])))
            except ValueError as exc:
                _parse_error(str(exc), span, file)
            continue
        parts = [p.strip() for p in chunk.split("*")]
        gen_at = [i for i, p in enumerate(parts) if p in GENERATOR_CELLS]
        if len(gen_at) != 1:
            _parse_error(f"malformed 2-cell {chunk!r}", span, file)
        k = gen_at[0]
        try:
            left = parse_word(".".join(parts[:k])) if k else ()
            right = parse_word(".".join(parts[k + 1 :])) if k + 1 < len(parts) else ()
        except ValueError as exc:
            _parse_error(str(exc), span, file)
        factors.append(SCellFactor(left, parts[k], right))
    return SCell(tuple(factors))


def format_cell(cell: SCell) -> str:
    bits = []
    for f in cell.factors:
        if f.gen == "id":
            bits.append(f"id({'.'.join(f.id_word) or '1'})")
            continue
        core = f.gen
        if f.left:
            core = f"{'.'.join(f.left)}*{core}"
        if f.right:
            core = f"{core}*{'.'.join(f.right)}"
        bits.append(core)
    return " ; ".join(bits)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_KEYWORD_ATOMS = {
    "U", "Int", "Nat", "Bool", "zero", "succ", "true", "false", "refl",
    "J", "natrec", "boolrec", "coe", "fst", "snd", "mod", "Lift", "up", "down",
}


class Parser:
    def __init__(self, text: str, file: str = "<input>"):
        self.file = file
        self.text = text
        self.tokens = tokenize(text, file)
        self.pos = 0

    # -- token helpers ------------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str = "") -> Token:
        tok = self.peek()
        if tok.kind != kind:
            _parse_error(
                f"expected {what or kind} but found {tok.text!r}", tok.span, self.file
            )
        return self.next()

    def expect_kw(self, word: str) -> Token:
        tok = self.peek()
        if tok.kind != "KEYWORD" or tok.text != word:
            _parse_error(f"expected {word!r} but found {tok.text!r}", tok.span, self.file)
        return self.next()

    def at_kw(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "KEYWORD" and tok.text == word

    def parse_word_tokens(self) -> Word:
        parts = []
        span = self.peek().span
        while self.peek().kind in ("IDENT", "NUMBER", "DOT"):
            parts.append(self.next().text)
        try:
            return parse_word("".join(parts) or "?")
        except ValueError as exc:
            _parse_error(str(exc), span, self.file)
            raise

    def braced_word(self, tok: Token) -> Word:
        try:
            return parse_word(tok.text)
        except ValueError as exc:
            _parse_error(str(exc), tok.span, self.file)
            raise

    # -- declarations -------------------------------------------------------

    def parse_module(self) -> SurfaceModule:
        decls: list[Decl] = []
        seen: set[str] = set()
        while self.peek().kind != "EOF":
            decl = self.parse_decl()
            if decl.kind in ("def", "axiom"):
                if decl.name in seen:
                    _parse_error(f"duplicate name {decl.name!r}", decl.span, self.file)
                seen.add(decl.name)
            decls.append(decl)
        return SurfaceModule(self.file, decls, self.text)

    def parse_decl(self) -> Decl:
        tok = self.peek()
        if self.at_kw("def"):
            start = self.next().span
            name = self.expect("IDENT", "a definition name")
            self.expect("COLON")
            ty = self.parse_term()
            self.expect("DEFINE", "':='")
            body = self.parse_term()
            return Decl("def", name.text, ty, body, span=(start[0], body.span[1]))
        if self.at_kw("axiom"):
            start = self.next().span
            name = self.expect("IDENT", "an axiom name")
            self.expect("COLON")
            ty = self.parse_term()
            return Decl("axiom", name.text, ty, None, span=(start[0], ty.span[1]))
        if self.at_kw("check"):
            start = self.next().span
            term = self.parse_term()
            self.expect("COLON")
            ty = self.parse_term()
            return Decl("check", "_", ty, term, span=(start[0], ty.span[1]))
        if self.at_kw("fail-check"):
            start = self.next().span
            code = self.expect("STRING", "an error code string")
            term = self.parse_term()
            self.expect("COLON")
            ty = self.parse_term()
            return Decl(
                "fail-check", "_", ty, term, expect_code=code.text,
                span=(start[0], ty.span[1]),
            )
        _parse_error(
            f"expected a declaration but found {tok.text!r}", tok.span, self.file
        )
        raise AssertionError

    # -- terms --------------------------------------------------------------

    def parse_term(self) -> STerm:
        if self.at_kw("fun"):
            return self.parse_lambda()
        if self.at_kw("let"):
            return self.parse_letmod()
        return self.parse_arrow()

    def parse_lambda(self) -> STerm:
        start = self.expect_kw("fun").span
        names = []
        while self.peek().kind == "IDENT":
            names.append(self.next().text)
        if not names:
            _parse_error("fun needs at least one binder", self.peek().span, self.file)
        self.expect("FATARROW", "'=>'")
        body = self.parse_term()
        out = body
        for name in reversed(names):
            out = SLam(name, out, span=(start[0], body.span[1]))
        return out

    def parse_letmod(self) -> STerm:
        start = self.expect_kw("let").span
        self.expect_kw("mod")
        word = self.braced_word(self.expect("BRACED", "a modality word"))
        self.expect("LPAREN")
        name = self.expect("IDENT", "a variable name")
        self.expect("RPAREN")
        self.expect("EQUALS", "'='")
        frame: Word = ()
        if self.peek().kind == "LBRACKET":
            self.next()
            frame = self.parse_word_tokens()
            self.expect("RBRACKET")
        scrut = self.parse_term()
        self.expect_kw("in")
        body = self.parse_term()
        return SLetMod(word, name.text, frame, scrut, body, span=(start[0], body.span[1]))

    def _binder_names(self, term: STerm) -> Optional[list[str]]:
        names: list[str] = []
        cur = term
        while isinstance(cur, SApp):
            if not isinstance(cur.arg, SVar):
                return None
            names.append(cur.arg.name)
            cur = cur.fn
        if not isinstance(cur, SVar):
            return None
        names.append(cur.name)
        names.reverse()
        return names

    def parse_arrow(self) -> STerm:
        lhs = self.parse_sigma()
        if self.peek().kind == "ARROW":
            self.next()
            cod = self.parse_term()
            if isinstance(lhs, SAnnot):
                names = self._binder_names(lhs.term)
                if names is not None:
                    out = cod
                    for name in reversed(names):
                        out = SPi(name, lhs.word, lhs.ty, out, span=(lhs.span[0], cod.span[1]))
                    return out
            if isinstance(lhs, SAnnot) and lhs.word:
                _parse_error("modal annotation on a non-binder", lhs.span, self.file)
            return SPi("_", (), lhs, cod, span=(lhs.span[0], cod.span[1]))
        if isinstance(lhs, SAnnot) and lhs.word:
            _parse_error("modal annotation outside a binder", lhs.span, self.file)
        return lhs

    def parse_sigma(self) -> STerm:
        lhs = self.parse_equality()
        if self.peek().kind == "STAR":
            self.next()
            rhs = self.parse_sigma()
            if isinstance(lhs, SAnnot) and not lhs.word:
                names = self._binder_names(lhs.term)
                if names is not None:
                    out = rhs
                    for name in reversed(names):
                        out = SSigma(name, lhs.ty, out, span=(lhs.span[0], rhs.span[1]))
                    return out
            return SSigma("_", lhs, rhs, span=(lhs.span[0], rhs.span[1]))
        return lhs

    def parse_equality(self) -> STerm:
        lhs = self.parse_join()
        if self.peek().kind == "EQUALS":
            self.next()
            rhs = self.parse_join()
            return SEq(lhs, rhs, span=(lhs.span[0], rhs.span[1]))
        return lhs

    def parse_join(self) -> STerm:
        lhs = self.parse_meet()
        while self.peek().kind == "JOIN":
            self.next()
            rhs = self.parse_meet()
            lhs = SJoin(lhs, rhs, span=(lhs.span[0], rhs.span[1]))
        return lhs

    def parse_meet(self) -> STerm:
        lhs = self.parse_app()
        while self.peek().kind == "MEET":
            self.next()
            rhs = self.parse_app()
            lhs = SMeet(lhs, rhs, span=(lhs.span[0], rhs.span[1]))
        return lhs

    def at_atom(self) -> bool:
        tok = self.peek()
        if tok.kind == "KEYWORD":
            return tok.text in _KEYWORD_ATOMS
        return tok.kind in ("IDENT", "NUMBER", "LPAREN", "LT")

    def parse_app(self) -> STerm:
        head = self.parse_postfix()
        while self.at_atom():
            arg = self.parse_postfix()
            head = SApp(head, arg, span=(head.span[0], arg.span[1]))
        return head

    def parse_postfix(self) -> STerm:
        term = self.parse_atom()
        while True:
            tok = self.peek()
            if tok.kind == "HAT":
                self.next()
                braced = self.expect("BRACED", "a 2-cell in braces")
                cell = parse_cell_text(braced.text, braced.span, self.file)
                term = SCellApp(term, cell, span=(term.span[0], braced.span[1]))
            elif tok.kind == "DOT":
                self.next()
                idx = self.parse_atom()
                term = SInst(term, idx, span=(term.span[0], idx.span[1]))
            else:
                return term

    def parse_atom(self) -> STerm:
        tok = self.peek()
        if tok.kind == "IDENT":
            self.next()
            return SVar(tok.text, span=tok.span)
        if tok.kind == "NUMBER":
            self.next()
            return SNum(int(tok.text), span=tok.span)
        if tok.kind == "LT":
            self.next()
            word = self.parse_word_tokens()
            self.expect("PIPE", "'|' after the modality word")
            body = self.parse_term()
            end = self.expect("GT", "'>' closing the modal type")
            return SModify(word, body, span=(tok.span[0], end.span[1]))
        if tok.kind == "LPAREN":
            self.next()
            inner = self.parse_term()
            nxt = self.peek()
            if nxt.kind == "COMMA":
                self.next()
                second = self.parse_term()
                end = self.expect("RPAREN")
                return SPair(inner, second, span=(tok.span[0], end.span[1]))
            if nxt.kind == "COLON":
                self.next()
                ty = self.parse_term()
                word: Word = ()
                if self.peek().kind == "AT":
                    self.next()
                    word = self.parse_word_tokens()
                end = self.expect("RPAREN")
                return SAnnot(inner, ty, word, span=(tok.span[0], end.span[1]))
            end = self.expect("RPAREN")
            inner.span = (tok.span[0], end.span[1])
            return inner
        if tok.kind == "KEYWORD" and tok.text in _KEYWORD_ATOMS:
            return self.parse_keyword_atom()
        _parse_error(f"expected a term but found {tok.text!r}", tok.span, self.file)
        raise AssertionError

    def parse_keyword_atom(self) -> STerm:
        tok = self.next()
        kw = tok.text
        if kw == "U":
            num = self.expect("NUMBER", "a universe level")
            return SUniv(int(num.text), span=(tok.span[0], num.span[1]))
        if kw in ("Int", "Nat", "Bool", "zero", "true", "false"):
            return SConstT(kw, span=tok.span)
        if kw == "refl":
            return SRefl(span=tok.span)
        if kw in ("succ", "fst", "snd", "Lift", "up", "down"):
            arg = self.parse_postfix()
            ctor = {
                "succ": SSucc, "fst": SFst, "snd": SSnd,
                "Lift": SLift, "up": SUp, "down": SDown,
            }[kw]
            return ctor(arg, span=(tok.span[0], arg.span[1]))
        if kw == "J":
            args, end = self.parse_paren_args(3, "J")
            return SJ(args[0], args[1], args[2], span=(tok.span[0], end))
        if kw == "natrec":
            args, end = self.parse_paren_args(4, "natrec")
            return SNatRec(*args, span=(tok.span[0], end))
        if kw == "boolrec":
            args, end = self.parse_paren_args(4, "boolrec")
            return SBoolRec(*args, span=(tok.span[0], end))
        if kw == "mod":
            braced = self.expect("BRACED", "a modality word")
            word = self.braced_word(braced)
            self.expect("LPAREN")
            body = self.parse_term()
            end = self.expect("RPAREN")
            return SMkMod(word, body, span=(tok.span[0], end.span[1]))
        if kw == "coe":
            braced = self.expect("BRACED", "a 2-cell")
            cell = parse_cell_text(braced.text, braced.span, self.file)
            self.expect("LPAREN")
            body = self.parse_term()
            end = self.expect("RPAREN")
            return SCoe(cell, body, span=(tok.span[0], end.span[1]))
        _parse_error(f"unexpected keyword {kw!r} in term position", tok.span, self.file)
        raise AssertionError

    def parse_paren_args(self, count: int, what: str) -> tuple[list[STerm], int]:
        self.expect("LPAREN", f"'(' after {what}")
        args = [self.parse_term()]
        while self.peek().kind == "COMMA":
            self.next()
            args.append(self.parse_term())
        end = self.expect("RPAREN")
        if len(args) != count:
            _parse_error(
                f"{what} takes {count} arguments, got {len(args)}", end.span, self.file
            )
        return args, end.span[1]


def parse_module(text: str, file: str = "<input>") -> SurfaceModule:
    return Parser(text, file).parse_module()


def parse_term(text: str, file: str = "<input>") -> STerm:
    parser = Parser(text, file)
    term = parser.parse_term()
    tok = parser.peek()
    if tok.kind != "EOF":
        _parse_error(f"trailing input {tok.text!r}", tok.span, file)
    return term


# ---------------------------------------------------------------------------
# Printer (inverse of the parser up to spans)
# ---------------------------------------------------------------------------

_PREC_ARROW, _PREC_SIGMA, _PREC_EQ, _PREC_JOIN, _PREC_MEET, _PREC_APP, _PREC_ATOM = range(7)


def print_term(t: STerm, prec: int = 0) -> str:
    def par(s: str, inner: int) -> str:
        return f"({s})" if inner < prec else s

    match t:
        case SVar(name):
            return name
        case SUniv(level):
            return par(f"U {level}", _PREC_APP)
        case SPi(name, word, dom, cod):
            if name == "_" and not word:
                body = f"{print_term(dom, _PREC_SIGMA)} -> {print_term(cod, _PREC_ARROW)}"
            else:
                ann = f" @ {'.'.join(word)}" if word else ""
                body = f"({name} : {print_term(dom)}{ann}) -> {print_term(cod, _PREC_ARROW)}"
            return par(body, _PREC_ARROW)
        case SSigma(name, dom, cod):
            if name == "_":
                body = f"{print_term(dom, _PREC_EQ)} * {print_term(cod, _PREC_SIGMA)}"
            else:
                body = f"({name} : {print_term(dom)}) * {print_term(cod, _PREC_SIGMA)}"
            return par(body, _PREC_SIGMA)
        case SLam(name, body):
            names = [name]
            while isinstance(body, SLam):
                names.append(body.name)
                body = body.body
            return par(f"fun {' '.join(names)} => {print_term(body)}", _PREC_ARROW)
        case SApp(fn, arg):
            return par(
                f"{print_term(fn, _PREC_APP)} {print_term(arg, _PREC_ATOM)}", _PREC_APP
            )
        case SPair(a, b):
            return f"({print_term(a)}, {print_term(b)})"
        case SFst(arg):
            return par(f"fst {print_term(arg, _PREC_ATOM)}", _PREC_APP)
        case SSnd(arg):
            return par(f"snd {print_term(arg, _PREC_ATOM)}", _PREC_APP)
        case SEq(lhs, rhs):
            return par(
                f"{print_term(lhs, _PREC_JOIN)} = {print_term(rhs, _PREC_JOIN)}", _PREC_EQ
            )
        case SRefl():
            return "refl"
        case SJ(motive, base, eq_):
            return f"J({print_term(motive)}, {print_term(base)}, {print_term(eq_)})"
        case SNum(value):
            return str(value)
        case SSucc(arg):
            return par(f"succ {print_term(arg, _PREC_ATOM)}", _PREC_APP)
        case SMeet(lhs, rhs):
            return par(
                f"{print_term(lhs, _PREC_APP)} /\\ {print_term(rhs, _PREC_APP)}", _PREC_MEET
            )
        case SJoin(lhs, rhs):
            return par(
                f"{print_term(lhs, _PREC_MEET)} \\/ {print_term(rhs, _PREC_MEET)}",
                _PREC_JOIN,
            )
        case SConstT(name):
            return name
        case SNatRec(motive, z, s, n):
            return (
                f"natrec({print_term(motive)}, {print_term(z)}, "
                f"{print_term(s)}, {print_term(n)})"
            )
        case SBoolRec(motive, tc, fc, b):
            return (
                f"boolrec({print_term(motive)}, {print_term(tc)}, "
                f"{print_term(fc)}, {print_term(b)})"
            )
        case SModify(word, body):
            return f"<{'.'.join(word) or '1'}| {print_term(body)}>"
        case SMkMod(word, body):
            return f"mod{{{'.'.join(word) or '1'}}}({print_term(body)})"
        case SLetMod(word, name, frame, scrut, body):
            fr = f"[{'.'.join(frame)}]" if frame else ""
            return par(
                f"let mod{{{'.'.join(word) or '1'}}}({name}) ={fr} "
                f"{print_term(scrut)} in {print_term(body)}",
                _PREC_ARROW,
            )
        case SCellApp(arg, cell):
            return f"{print_term(arg, _PREC_ATOM)}^{{{format_cell(cell)}}}"
        case SInst(arg, index):
            return f"{print_term(arg, _PREC_ATOM)} . {print_term(index, _PREC_ATOM)}"
        case SCoe(cell, arg):
            return f"coe{{{format_cell(cell)}}}({print_term(arg)})"
        case SAnnot(term, ty, word):
            ann = f" @ {'.'.join(word)}" if word else ""
            return f"({print_term(term)} : {print_term(ty)}{ann})"
        case SLift(arg):
            return par(f"Lift {print_term(arg, _PREC_ATOM)}", _PREC_APP)
        case SUp(arg):
            return par(f"up {print_term(arg, _PREC_ATOM)}", _PREC_APP)
        case SDown(arg):
            return par(f"down {print_term(arg, _PREC_ATOM)}", _PREC_APP)
    raise TypeError(f"cannot print {t!r}")


def print_decl(d: Decl) -> str:
    if d.kind == "def":
        return f"def {d.name} : {print_term(d.ty)} := {print_term(d.body)}"
    if d.kind == "axiom":
        return f"axiom {d.name} : {print_term(d.ty)}"
    if d.kind == "check":
        return f"check {print_term(d.body)} : {print_term(d.ty)}"
    return f'fail-check "{d.expect_code}" {print_term(d.body)} : {print_term(d.ty)}'
