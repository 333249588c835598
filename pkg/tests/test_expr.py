from pathlib import Path

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from kappalab.expr import (
    VECTORS,
    Dot,
    EvalError,
    Exp,
    Imag,
    Num,
    ParseError,
    PlaneWave,
    Pow,
    Prod,
    Sum,
    Sym,
    evaluate,
    from_poly,
    parse,
    to_text,
)
from kappalab.poly import Poly, dot, layout_for

GOLDEN = Path(__file__).parent / "golden" / "star_products.txt"


def _golden_texts():
    for line in GOLDEN.read_text().splitlines():
        if not line.startswith("#") and line.strip():
            head, value = line.split("|")
            yield int(head.split()[1]), int(head.split()[2]), value.strip()


# -- examples -----------------------------------------------------------------------


def test_parse_examples():
    assert parse("x0") == Sym("x", 0)
    assert parse("a.k") == Dot("a", "k")
    assert parse("-1/2*i*a0") == Sum((("-", Prod((Num(mpq(1, 2)), Imag(), Sym("a", 0)))),))
    assert parse("(a.a)^2") == Pow(Dot("a", "a"), 2)
    assert parse("x0 − x1") == parse("x0 - x1")
    assert parse(" x0  *x1 ") == Prod((Sym("x", 0), Sym("x", 1)))


def test_printer_examples():
    assert to_text(parse("(a.a)^2 * k.k")) == "(a.a)^2*k.k"
    assert to_text(parse("x0 - (x1 - x2)")) == "x0 - (x1 - x2)"
    assert to_text(parse("(1/2)^3")) == "(1/2)^3"
    assert to_text(parse("exp(i*k.x)")) == "exp(i*k.x)"


def test_evaluate_examples():
    L = layout_for(2)
    x0 = Poly.var(L, 2, "x", 0)
    a0 = Poly.var(L, 2, "a", 0)
    assert evaluate(parse("(x0 + a0)^2"), 2, 2) == x0 * x0 + x0 * a0 * 2 + a0 * a0
    assert evaluate(parse("a.k"), 2, 2) == dot(Poly.vector(L, 2, "a"), Poly.vector(L, 2, "k"))
    assert evaluate(parse("a0^3"), 2, 2).is_zero()
    assert evaluate(parse("i*i"), 2, 2) == Poly.const(L, 2, -1)
    assert evaluate(parse("exp(i*k.x)"), 2, 2) == PlaneWave("k")
    assert evaluate(parse("exp(i*x.q)"), 2, 2) == PlaneWave("q")


@pytest.mark.parametrize(
    "text, pos",
    [("x0 +", 4), ("x0 $", 3), ("y0", 0), ("x0^a", 3), ("(x0", 3), ("", 0), ("x0 x1", 3), ("2^1/2", 2), ("1/0", 0)],
)
def test_parse_errors_report_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.pos == pos
    assert info.value.caret().splitlines()[-1] == " " * pos + "^"


def test_deep_nesting_is_a_parse_error():
    with pytest.raises(ParseError):
        parse("(" * 5000 + "x0" + ")" * 5000)


@pytest.mark.parametrize("text", ["x5", "exp(x0)", "exp(i*k.x)*x0", "(x0 + x1)^200", "2^5000", "exp(i*a.x)"])
def test_evaluation_errors(text):
    with pytest.raises(EvalError):
        evaluate(parse(text), 2, 2)


def test_parse_rejects_non_strings():
    with pytest.raises(TypeError):
        parse(3)


# -- round trips --------------------------------------------------------------------

symbols = st.builds(Sym, st.sampled_from(("x", "a", "d", "k")), st.integers(0, 3))
leaves = st.one_of(
    symbols,
    st.builds(Num, st.fractions(min_value=0, max_value=20, max_denominator=5).map(mpq)),
    st.just(Imag()),
    st.builds(Dot, st.sampled_from(VECTORS), st.sampled_from(VECTORS)),
)


def _extend(children):
    signs = st.sampled_from("+-")
    return st.one_of(
        st.builds(lambda fs: Prod(tuple(fs)), st.lists(children, min_size=2, max_size=3)),
        st.builds(Pow, children, st.integers(0, 4)),
        st.builds(Exp, children),
        st.builds(lambda items: Sum(tuple(items)), st.lists(st.tuples(signs, children), min_size=2, max_size=3)),
        st.builds(lambda t: Sum((("-", t),)), children),
    )


asts = st.recursive(leaves, _extend, max_leaves=12)


@given(asts)
def test_ast_round_trip(node):
    assert parse(to_text(node)) == node


@given(st.text(alphabet="x0123a.k+-*^()/ i", max_size=25))
def test_fuzz_raises_only_documented_errors(text):
    try:
        node = parse(text)
    except ParseError:
        return
    assert parse(to_text(node)) == node
    try:
        evaluate(node, 2, 2)
    except EvalError:
        pass


def test_golden_corpus_round_trip():
    count = 0
    for n, order, text in _golden_texts():
        node = parse(text)
        assert to_text(node) == text
        value = evaluate(node, n, order)
        assert str(value) == text
        assert from_poly(value) == node
        count += 1
    assert count == 65
