import random

import pytest

from skewgr.evaluate import evaluate, parse_value
from skewgr.field import GF
from skewgr.graded import FreeContext
from skewgr.ore import LambdaSeq, OreRing
from skewgr.syntax import ParseError, parse_expr, to_sexpr, to_text

from randvals import rand_ncpoly, rand_orepoly, rand_ratfn, rand_lambda

PRECEDENCE = [
    ("t0", "field", "t0"),
    ("1 + 2 * 3", "field", "(+ 1 (* 2 3))"),
    ("1 - 2 - 3", "field", "(- (- 1 2) 3)"),
    ("t0 / t1 / t2", "field", "(/ (/ t0 t1) t2)"),
    ("t0 * t1 / t2", "field", "(/ (* t0 t1) t2)"),
    ("t0 / t1 * t2", "field", "(* (/ t0 t1) t2)"),
    ("-t0^2", "field", "(neg (^ t0 2))"),
    ("(-t0)^2", "field", "(^ (neg t0) 2)"),
    ("--t0", "field", "(neg (neg t0))"),
    ("2*-t1", "field", "(* 2 (neg t1))"),
    ("-t0 * t1", "field", "(* (neg t0) t1)"),
    ("t0 - -t1", "field", "(- t0 (neg t1))"),
    ("(t0 + t1)^2 / t2", "field", "(/ (^ (+ t0 t1) 2) t2)"),
    ("t0^2 * t1^3", "field", "(* (^ t0 2) (^ t1 3))"),
    ("x * t0 - t0 * x", "ore", "(- (* x t0) (* t0 x))"),
    ("x^2 * t0 + t1", "ore", "(+ (* (^ x 2) t0) t1)"),
    ("t0 / (t1 + 1) * x", "ore", "(* (/ t0 (+ t1 1)) x)"),
    ("x1 * x2 - x2 * x1 - 1", "free", "(- (- (* x1 x2) (* x2 x1)) 1)"),
    ("x1^2 * x2 / 2", "free", "(/ (* (^ x1 2) x2) 2)"),
    ("((x1))", "free", "x1"),
]


@pytest.mark.parametrize("text,kind,expected", PRECEDENCE)
def test_precedence_fixtures(text, kind, expected):
    ngens = 2 if kind == "free" else None
    tree = parse_expr(text, kind, ngens)
    assert to_sexpr(tree) == expected
    # the fully parenthesized rendering parses to the same tree
    assert parse_expr(to_text(tree), kind, ngens) == tree


@pytest.mark.parametrize(
    "text,kind,column",
    [
        ("t0 t1", "field", 4),
        ("2(t0)", "field", 2),
        ("t0 + ", "field", 6),
        ("t0 $ t1", "field", 4),
        ("(t0 + t1", "field", 9),
        ("t0^-1", "field", 4),
        ("t0^t1", "field", 4),
        ("t0^2^3", "field", 5),
        ("y + 1", "field", 1),
        ("x", "field", 1),
        ("t0 + x2", "ore", 6),
        ("t0 / (x + 1)", "ore", 4),
        ("x1 / x2", "free", 4),
        ("x1 + t0", "free", 6),
        ("x3", "free", 1),
        ("x0", "free", 1),
        ("", "field", 1),
        (")", "field", 1),
    ],
)
def test_error_columns(text, kind, column):
    with pytest.raises(ParseError) as info:
        parse_expr(text, kind, 2)
    assert info.value.column == column
    assert str(info.value).startswith(f"column {column}:")


def test_unknown_kind():
    with pytest.raises(ValueError):
        parse_expr("t0", "matrix")


def test_evaluation_examples():
    F2 = GF(2)
    t0, t1, t2 = F2.t(0), F2.t(1), F2.t(2)
    assert parse_value("(t0+t1)^2/t2", F2) == (t0**2 + t1**2) / t2
    lam = LambdaSeq.parse("2,1;0", 3)
    R = OreRing(lam)
    F3 = R.field
    assert parse_value("x*t0 - t0*x", R) == R(F3.t(1) + 2 * F3.t(0))
    assert parse_value("t0", R) == R.t(0)
    assert parse_value("t0", GF(3)) == F3.t(0)
    ctx = FreeContext((1, 1), 3)
    assert str(parse_value("x1*x2 - x2*x1", ctx)) == "x1*x2 + 2*x2*x1"
    assert parse_value("x1/2", ctx) == ctx.gen(1) * 2


def test_domain_errors_at_evaluation():
    with pytest.raises(ZeroDivisionError):
        parse_value("t0/(t1 - t1)", GF(3))
    with pytest.raises(ZeroDivisionError):
        parse_value("x1/3", FreeContext((1,), 3))


def test_printing_examples():
    F = GF(3)
    assert str(parse_value("1", F)) == "1"
    R = OreRing(LambdaSeq.parse("0", 3))
    assert str(parse_value("t0*x + t1", R)) == "t0*x + t1"
    assert str(parse_value("x*t0", R)) == "t0*x + t1"


def test_noncommutative_fidelity():
    R = OreRing(LambdaSeq.parse("1,2;0", 5))
    for k in range(4):
        a, b = parse_value("x", R), parse_value(f"t{k}", R)
        assert parse_value(f"x*t{k}", R) == a * b
        assert parse_value(f"x*t{k}", R) != parse_value(f"t{k}*x", R)
    ctx = FreeContext((1, 1), 2)
    assert parse_value("x1*x2", ctx) != parse_value("x2*x1", ctx)


def test_shared_subtrees_evaluate_once():
    from skewgr.ore import t_word

    lam = LambdaSeq.parse("1;1", 2)
    R = OreRing(lam)
    assert evaluate(t_word(lam, 12), R) == R.t(12)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_round_trip_field(p):
    F = GF(p)
    rng = random.Random(p)
    for _ in range(150):
        v = rand_ratfn(F, rng, nvars=4, maxdeg=3, poly_bias=0.3)
        assert parse_value(str(v), F) == v


@pytest.mark.parametrize("p", [2, 3])
def test_round_trip_ore(p):
    rng = random.Random(10 + p)
    for _ in range(60):
        R = OreRing(rand_lambda(p, rng))
        v = rand_orepoly(R, rng, fractions=True)
        assert parse_value(str(v), R) == v


@pytest.mark.parametrize("weights", [(1, 1), (1, 2, 2)])
def test_round_trip_free(weights):
    ctx = FreeContext(weights, 5)
    rng = random.Random(len(weights))
    for _ in range(150):
        v = rand_ncpoly(ctx, rng, nterms=4, maxlen=4)
        assert parse_value(str(v), ctx) == v
