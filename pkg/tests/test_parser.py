import random

import pytest

from jetcalc.bigness import l_class
from jetcalc.errors import LevelError, ParseError
from jetcalc.parser import Add, H, Integrate, Mul, Num, Pow, S, Sub, U, evaluate, parse, print_expr
from jetcalc.polyring import MultiPoly
from jetcalc.tower import ChowClass, expand_tower_segre, integrate


def test_precedence():
    assert parse("1 + 2*h^3") == Add(Num(1), Mul(Num(2), Pow(H(), 3)))
    assert parse("(u(1)+h)^2") == Pow(Add(U(1), H()), 2)


def test_positions_on_level_atoms():
    expr = parse("h +\n  u(2)")
    assert expr.right.pos == (2, 3)


def test_integrate_form_on_space_curve(space_curve):
    d1, d2 = MultiPoly.gens(2)
    expr = parse("integrate(1, (u(1)+2*h)^1)", space_curve, 1)
    assert isinstance(expr, Integrate)
    value = evaluate(expr, space_curve, 1)
    assert value == ChowClass.constant(space_curve, 1, d1 * d2 * (d1 + d2 - 2))


def test_empty_power_is_one(surface):
    assert evaluate(parse("h^0", surface, 2), surface, 2) == ChowClass.one(surface, 2)


def test_atoms_evaluate_to_tower_classes(surface):
    assert evaluate(parse("l(1)", surface, 2), surface, 2) == l_class(surface, 1).pullback(2)
    assert evaluate(parse("s(1,2)", surface, 1), surface, 1) == expand_tower_segre(surface, 1, 2)
    d = MultiPoly.gen(1, 1)
    assert evaluate(parse("d1 - 3", surface, 0), surface, 0) == ChowClass.constant(surface, 0, d - 3)


def test_evaluated_expression_integrates(surface):
    d = MultiPoly.gen(1, 1)
    cls = evaluate(parse("(3*u(1) + u(2) + 8*h)^3*h", surface), surface, 2)
    assert integrate(surface, 2, cls) == 36 * d ** 2


@pytest.mark.parametrize(
    "src, atom",
    [("u(3)", "u(3)"), ("h + s(3,1)", "s(3,1)"), ("l(3)", "l(3)"), ("d2", "d2"), ("integrate(3, h)", "integrate(3, ...)")],
)
def test_level_out_of_range(surface, src, atom):
    with pytest.raises(LevelError) as info:
        parse(src, surface, 2)
    assert info.value.atom == atom


def test_integrate_body_uses_inner_level(surface):
    with pytest.raises(LevelError):
        parse("integrate(1, u(2))", surface, 2)


@pytest.mark.parametrize(
    "src, line, column",
    [("u(1", 1, 4), ("h + * h", 1, 5), ("h ?", 1, 3), ("(h +\n h", 2, 3), ("", 1, 1)],
)
def test_syntax_errors_are_positioned(src, line, column):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert (info.value.line, info.value.column) == (line, column)
    assert info.value.expected


def test_expected_tokens_are_readable():
    with pytest.raises(ParseError) as info:
        parse("u(1")
    assert ")" in info.value.expected


def _random_expr(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        pick = rng.randrange(6)
        if pick == 0:
            return U(rng.randint(1, 2))
        if pick == 1:
            return H()
        if pick == 2:
            return S(rng.randint(0, 2), rng.randint(0, 3))
        if pick == 3:
            return Num(rng.randint(0, 20))
        if pick == 4:
            return parse(f"l({rng.randint(1, 2)})")
        return parse(f"d{rng.randint(1, 2)}")
    pick = rng.randrange(5)
    left = _random_expr(rng, depth - 1)
    right = _random_expr(rng, depth - 1)
    if pick == 0:
        return Add(left, right)
    if pick == 1:
        return Sub(left, right)
    if pick == 2:
        return Mul(left, right)
    if pick == 3:
        return Pow(left, rng.randint(0, 3))
    return Integrate(rng.randint(0, 2), left)


def test_round_trip_corpus():
    rng = random.Random(2024)
    for _ in range(50):
        expr = _random_expr(rng, 4)
        text = print_expr(expr)
        assert parse(text) == expr, text
        assert print_expr(parse(text)) == text


def test_printer_keeps_needed_parentheses():
    assert print_expr(parse("h - (h - h)")) == "h - (h - h)"
    assert print_expr(parse("(h - h) - h")) == "h - h - h"
    assert print_expr(parse("(h^2)^3")) == "(h^2)^3"
    assert print_expr(parse("2*(h + u(1))")) == "2*(h + u(1))"
