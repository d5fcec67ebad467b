from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from .bigness import l_class
from .errors import LevelError, ParseError
from .polyring import MultiPoly
from .tower import ChowClass, TowerGeometry, expand_tower_segre, integrate

logger = logging.getLogger(__name__)

GRAMMAR = r"""
?start: expr

?expr: term
     | expr "+" term              -> add
     | expr "-" term              -> sub

?term: factor
     | term "*" factor            -> mul

?factor: atom
       | atom "^" INT             -> pow

?atom: "u" "(" INT ")"            -> u
     | "h"                        -> h
     | "s" "(" INT "," INT ")"    -> s
     | "l" "(" INT ")"            -> l
     | DVAR                       -> dvar
     | INT                        -> number
     | "(" expr ")"
     | "integrate" "(" INT "," expr ")" -> integrate

DVAR: /d[0-9]+/

%import common.INT
%import common.WS
%ignore WS
"""

_lark = Lark(GRAMMAR, parser="lalr", propagate_positions=True)

Position = Optional[Tuple[int, int]]


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class DVar:
    index: int
    pos: Position = field(default=None, compare=False)


@dataclass(frozen=True)
class U:
    level: int
    pos: Position = field(default=None, compare=False)


@dataclass(frozen=True)
class H:
    pass


@dataclass(frozen=True)
class S:
    level: int
    index: int
    pos: Position = field(default=None, compare=False)


@dataclass(frozen=True)
class L:
    level: int
    pos: Position = field(default=None, compare=False)


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Integrate:
    level: int
    body: "Expr"
    pos: Position = field(default=None, compare=False)


Expr = Union[Num, DVar, U, H, S, L, Add, Sub, Mul, Pow, Integrate]


def _pos(meta, token) -> Position:
    if not getattr(meta, "empty", True):
        return (meta.line, meta.column)
    return (token.line, token.column)


class ASTBuilder(Transformer):
    def number(self, children):
        return Num(int(children[0]))

    @v_args(meta=True)
    def dvar(self, meta, children):
        token = children[0]
        return DVar(int(str(token)[1:]), _pos(meta, token))

    @v_args(meta=True)
    def u(self, meta, children):
        return U(int(children[0]), _pos(meta, children[0]))

    def h(self, children):
        return H()

    @v_args(meta=True)
    def s(self, meta, children):
        return S(int(children[0]), int(children[1]), _pos(meta, children[0]))

    @v_args(meta=True)
    def l(self, meta, children):
        return L(int(children[0]), _pos(meta, children[0]))

    def add(self, children):
        return Add(children[0], children[1])

    def sub(self, children):
        return Sub(children[0], children[1])

    def mul(self, children):
        return Mul(children[0], children[1])

    def pow(self, children):
        return Pow(children[0], int(children[1]))

    @v_args(meta=True)
    def integrate(self, meta, children):
        return Integrate(int(children[0]), children[1], _pos(meta, children[0]))


def _describe(names: Iterable[str]) -> list:
    out = []
    for name in names:
        if name == "$END":
            out.append("end of input")
            continue
        try:
            pattern = _lark.get_terminal(name).pattern
        except KeyError:
            out.append(name)
            continue
        out.append(pattern.value if pattern.type == "str" else name)
    return out


def _end_position(src: str) -> Tuple[int, int]:
    lines = src.split("\n")
    return len(lines), len(lines[-1]) + 1


def _parse_error(src: str, exc: UnexpectedInput) -> ParseError:
    if isinstance(exc, UnexpectedCharacters):
        char = src[exc.pos_in_stream] if 0 <= exc.pos_in_stream < len(src) else ""
        return ParseError(
            f"unexpected character {char!r} at line {exc.line}, column {exc.column}",
            exc.line,
            exc.column,
            _describe(exc.allowed or ()),
        )
    if isinstance(exc, UnexpectedToken):
        if exc.token.type == "$END":
            line, column = _end_position(src)
            what = "end of input"
        else:
            line, column = exc.line, exc.column
            what = f"token {str(exc.token)!r}"
        return ParseError(f"unexpected {what} at line {line}, column {column}", line, column, _describe(exc.expected))
    if isinstance(exc, UnexpectedEOF):
        line, column = _end_position(src)
        return ParseError(f"unexpected end of input at line {line}, column {column}", line, column, _describe(exc.expected))
    return ParseError(str(exc), getattr(exc, "line", 1), getattr(exc, "column", 1))


def parse(src: str, geom: Optional[TowerGeometry] = None, level: Optional[int] = None) -> Expr:
    """Parse src; with a geometry the tree is also checked against the declared level."""
    try:
        tree = _lark.parse(src)
    except UnexpectedInput as exc:
        raise _parse_error(src, exc) from None
    expr = ASTBuilder().transform(tree)
    if geom is not None:
        validate(expr, geom, geom.kappa if level is None else level)
    return expr


def _level_error(text: str, pos: Position, message: str) -> LevelError:
    where = f" at line {pos[0]}, column {pos[1]}" if pos else ""
    return LevelError(f"{message}{where}", text, pos)


def validate(expr: Expr, geom: TowerGeometry, level: int) -> None:
    if isinstance(expr, U):
        if not 1 <= expr.level <= level:
            raise _level_error(print_expr(expr), expr.pos, f"u({expr.level}) is outside levels 1..{level}")
    elif isinstance(expr, S):
        if not 0 <= expr.level <= level:
            raise _level_error(print_expr(expr), expr.pos, f"s({expr.level},{expr.index}) is outside levels 0..{level}")
    elif isinstance(expr, L):
        if not 1 <= expr.level <= level:
            raise _level_error(print_expr(expr), expr.pos, f"l({expr.level}) is outside levels 1..{level}")
    elif isinstance(expr, DVar):
        if not 1 <= expr.index <= geom.c:
            raise _level_error(print_expr(expr), expr.pos, f"d{expr.index} is outside d1..d{geom.c}")
    elif isinstance(expr, Integrate):
        if expr.level > level:
            raise _level_error(
                f"integrate({expr.level}, ...)", expr.pos, f"integration level {expr.level} is above level {level}"
            )
        validate(expr.body, geom, expr.level)
    elif isinstance(expr, (Add, Sub, Mul)):
        validate(expr.left, geom, level)
        validate(expr.right, geom, level)
    elif isinstance(expr, Pow):
        validate(expr.base, geom, level)


_PREC = {Add: 1, Sub: 1, Mul: 2, Pow: 3}


def _prec(expr: Expr) -> int:
    return _PREC.get(type(expr), 4)


def _wrap(expr: Expr, minimum: int) -> str:
    text = print_expr(expr)
    return f"({text})" if _prec(expr) < minimum else text


def print_expr(expr: Expr) -> str:
    if isinstance(expr, Num):
        return str(expr.value)
    if isinstance(expr, DVar):
        return f"d{expr.index}"
    if isinstance(expr, U):
        return f"u({expr.level})"
    if isinstance(expr, H):
        return "h"
    if isinstance(expr, S):
        return f"s({expr.level},{expr.index})"
    if isinstance(expr, L):
        return f"l({expr.level})"
    if isinstance(expr, Add):
        return f"{_wrap(expr.left, 1)} + {_wrap(expr.right, 2)}"
    if isinstance(expr, Sub):
        return f"{_wrap(expr.left, 1)} - {_wrap(expr.right, 2)}"
    if isinstance(expr, Mul):
        return f"{_wrap(expr.left, 2)}*{_wrap(expr.right, 3)}"
    if isinstance(expr, Pow):
        return f"{_wrap(expr.base, 4)}^{expr.exponent}"
    if isinstance(expr, Integrate):
        return f"integrate({expr.level}, {print_expr(expr.body)})"
    raise TypeError(f"not an expression node: {expr!r}")


def evaluate(expr: Expr, geom: TowerGeometry, level: int) -> ChowClass:
    if isinstance(expr, Num):
        return ChowClass.constant(geom, level, expr.value)
    if isinstance(expr, DVar):
        return ChowClass.constant(geom, level, MultiPoly.gen(geom.c, expr.index))
    if isinstance(expr, U):
        return ChowClass.u(geom, level, expr.level)
    if isinstance(expr, H):
        return ChowClass.h(geom, level)
    if isinstance(expr, S):
        return expand_tower_segre(geom, expr.level, expr.index).pullback(level)
    if isinstance(expr, L):
        return l_class(geom, expr.level, top=level).pullback(level)
    if isinstance(expr, Add):
        return evaluate(expr.left, geom, level) + evaluate(expr.right, geom, level)
    if isinstance(expr, Sub):
        return evaluate(expr.left, geom, level) - evaluate(expr.right, geom, level)
    if isinstance(expr, Mul):
        return evaluate(expr.left, geom, level) * evaluate(expr.right, geom, level)
    if isinstance(expr, Pow):
        return evaluate(expr.base, geom, level) ** expr.exponent
    if isinstance(expr, Integrate):
        value = integrate(geom, expr.level, evaluate(expr.body, geom, expr.level))
        return ChowClass.constant(geom, level, value)
    raise TypeError(f"not an expression node: {expr!r}")
