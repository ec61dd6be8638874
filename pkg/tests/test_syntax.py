"""Parser/printer tests: examples, roundtrip property, totality."""

import random
import string

import pytest

from trikernel.diagnostics import KernelError
from trikernel.syntax import (
    Decl,
    SAnnot,
    SApp,
    SCell,
    SCellApp,
    SCellFactor,
    SConstT,
    SEq,
    SFst,
    SInst,
    SJ,
    SJoin,
    SLam,
    SLetMod,
    SLift,
    SMeet,
    SMkMod,
    SModify,
    SNatRec,
    SNum,
    SPair,
    SPi,
    SRefl,
    SSigma,
    SSnd,
    SSucc,
    SUniv,
    SVar,
    parse_module,
    parse_term,
    print_decl,
    print_term,
)


def test_parse_idfun_def():
    mod = parse_module("def idfun : (A : U 0) -> A -> A := fun A a => a")
    assert len(mod.decls) == 1
    d = mod.decls[0]
    assert d.kind == "def" and d.name == "idfun"
    assert d.ty == SPi("A", (), SUniv(0), SPi("_", (), SVar("A"), SVar("A")))
    assert d.body == SLam("A", SLam("a", SVar("a")))


def test_parse_error_position():
    with pytest.raises(KernelError) as err:
        parse_module("def bad : := x")
    diag = err.value.diagnostic
    assert diag.code == "E-PARSE"
    assert diag.span[0] == len("def bad : ")


def test_multi_binder_groups():
    t = parse_term("(x y : Int) -> U 0")
    assert t == SPi("x", (), SConstT("Int"), SPi("y", (), SConstT("Int"), SUniv(0)))
    t = parse_term("(x : Int) * Bool")
    assert t == SSigma("x", SConstT("Int"), SConstT("Bool"))
    t = parse_term("(A : U 0 @ g) -> A")
    assert t == SPi("A", ("g",), SUniv(0), SVar("A"))


def test_modal_forms():
    t = parse_term("<p| Int>")
    assert t == SModify(("p",), SConstT("Int"))
    assert print_term(t) == "<p| Int>"
    t = parse_term("mod{g.s}(x)")
    assert t == SMkMod(("g", "s"), SVar("x"))
    t = parse_term("let mod{g}(x) = y in x")
    assert t == SLetMod(("g",), "x", (), SVar("y"), SVar("x"))
    t = parse_term("let mod{s}(z) =[g] y in z")
    assert t == SLetMod(("s",), "z", ("g",), SVar("y"), SVar("z"))


def test_cell_application():
    t = parse_term("x^{eta_pa}")
    assert t == SCellApp(SVar("x"), SCell((SCellFactor((), "eta_pa", ()),)))
    t = parse_term("(A^{eta_pa}) . i")
    assert t == SInst(
        SCellApp(SVar("A"), SCell((SCellFactor((), "eta_pa", ()),))), SVar("i")
    )
    t = parse_term("x^{g*eta_gs*s ; eps0}")
    assert t == SCellApp(
        SVar("x"),
        SCell((SCellFactor(("g",), "eta_gs", ("s",)), SCellFactor((), "eps0", ()))),
    )


def test_operator_precedence():
    t = parse_term("i /\\ j = i")
    assert t == SEq(SMeet(SVar("i"), SVar("j")), SVar("i"))
    t = parse_term("i \\/ j /\\ k")
    assert t == SJoin(SVar("i"), SMeet(SVar("j"), SVar("k")))
    t = parse_term("A * B -> C")
    assert t == SPi("_", (), SSigma("_", SVar("A"), SVar("B")), SVar("C"))
    t = parse_term("f 0 = a")
    assert t == SEq(SApp(SVar("f"), SNum(0)), SVar("a"))


def test_unicode_aliases():
    assert parse_term("λ x => x") == parse_term("fun x => x")
    assert parse_term("⟨g| A⟩") == parse_term("<g| A>")
    assert parse_term("i ∧ j") == parse_term("i /\\ j")
    assert parse_term("A → B") == parse_term("A -> B")


def test_print_parse_examples_roundtrip():
    samples = [
        "fun A a => a",
        "<p| Int>",
        "let mod{g}(x) = mod{g}(a) in f x",
        "(A : U 0) -> (a : A) -> (b : A) -> a = b -> U 1",
        "(f : Int -> A) * ((f 0 = a) * (f 1 = b))",
        "coe{eps0}(t)",
        "natrec(fun n => U 0, Int, fun n X => Int * X, succ 2)",
        "J(fun b p => P b, d, q)",
        "x^{eta_pa ; a.p*eta_gs}",
        "mod{o}(i /\\ j)",
        "boolrec(fun b => U 0, Int, Bool, true)",
        "(x : Lift A) -> down x = up y",
        "let mod{s}(z) =[g] y in mod{g.s}(z)",
    ]
    for text in samples:
        first = parse_term(text)
        assert parse_term(print_term(first)) == first, text


def _random_name(rng):
    return rng.choice(["x", "y", "z", "f", "A", "B", "P"])


def _random_word(rng):
    return tuple(rng.choice("gsopa") for _ in range(rng.randint(0, 2)))


def _random_cell(rng):
    factors = []
    for _ in range(rng.randint(1, 2)):
        gen = rng.choice(["eps_gs", "eta_gs", "eps_pa", "eta_pa", "eps0", "id"])
        if gen == "id":
            factors.append(SCellFactor((), "id", (), _random_word(rng)))
        else:
            factors.append(SCellFactor(_random_word(rng), gen, _random_word(rng)))
    return SCell(tuple(factors))


def _random_ast(rng, depth):
    if depth == 0:
        return rng.choice(
            [
                SVar(_random_name(rng)),
                SUniv(rng.randint(0, 2)),
                SNum(rng.randint(0, 3)),
                SConstT(rng.choice(["Int", "Nat", "Bool", "zero", "true", "false"])),
                SRefl(),
            ]
        )
    sub = lambda: _random_ast(rng, depth - 1)
    choice = rng.randrange(20)
    if choice == 0:
        return SPi(_random_name(rng), _random_word(rng), sub(), sub())
    if choice == 1:
        return SPi("_", (), sub(), sub())
    if choice == 2:
        return SSigma(_random_name(rng), sub(), sub())
    if choice == 3:
        return SSigma("_", sub(), sub())
    if choice == 4:
        return SLam(_random_name(rng), sub())
    if choice == 5:
        return SApp(sub(), sub())
    if choice == 6:
        return SPair(sub(), sub())
    if choice == 7:
        return SFst(sub())
    if choice == 8:
        return SSnd(sub())
    if choice == 9:
        return SEq(sub(), sub())
    if choice == 10:
        return SJ(sub(), sub(), sub())
    if choice == 11:
        return SMeet(sub(), sub())
    if choice == 12:
        return SJoin(sub(), sub())
    if choice == 13:
        return SNatRec(sub(), sub(), sub(), sub())
    if choice == 14:
        return SModify(_random_word(rng), sub())
    if choice == 15:
        return SMkMod(_random_word(rng), sub())
    if choice == 16:
        return SLetMod(_random_word(rng), _random_name(rng), _random_word(rng), sub(), sub())
    if choice == 17:
        return SCellApp(sub(), _random_cell(rng))
    if choice == 18:
        return SSucc(sub())
    return SLift(sub())


def test_roundtrip_random_asts():
    rng = random.Random(1187)
    for _ in range(400):
        ast = _random_ast(rng, rng.randint(1, 8))
        printed = print_term(ast)
        reparsed = parse_term(printed)
        assert reparsed == ast, printed


def test_parser_totality_fuzz():
    rng = random.Random(99)
    alphabet = string.ascii_letters + string.digits + "(){}[]<>|^.*:=-_/\\ \n\"@,;'"
    for _ in range(500):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 60)))
        try:
            parse_module(text)
        except KernelError as err:
            assert err.diagnostic.code == "E-PARSE"


def test_duplicate_names_rejected():
    with pytest.raises(KernelError):
        parse_module("axiom a : U 0\naxiom a : U 0")


def test_check_and_fail_check_pragmas():
    mod = parse_module(
        'check refl : 0 = 0\n'
        'fail-check "E-CONV" refl : 0 = 1\n'
    )
    assert mod.decls[0].kind == "check"
    assert mod.decls[1].kind == "fail-check"
    assert mod.decls[1].expect_code == "E-CONV"
    for d in mod.decls:
        assert parse_module(print_decl(d)).decls[0] == d


def test_decl_print_roundtrip():
    text = "def c : (A : U 0 @ g) -> <g| A> -> A := fun A x => let mod{g}(y) = x in y"
    mod = parse_module(text)
    assert parse_module(print_decl(mod.decls[0])).decls[0] == mod.decls[0]
