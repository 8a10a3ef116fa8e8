"""Plain-text notation for games.

Grammar (whitespace is insignificant)::

    game    := number ['*' [int]] | '*' [int] | '^' ['*'] | 'v' ['*']
             | '+-' '(' game ')' | '+-' primary | 'tiny(' game ')'
             | '{' list '|' list '}'
    number  := ['-'] int ['/' pow2]
    list    := [game (',' game)*]

``^`` is up, ``v`` is down, ``+-G`` is ``{G|-G}`` and ``tiny(G)`` is
``{0|{0|-G}}``. A number followed by a star, such as ``1*`` or ``-1/2*2``,
is the number plus a nimber.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .games import GameArena, GameId, star


class NotationError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = -1):
        if pos >= 0:
            message = f"{message} at position {pos}: {text[:pos]}<here>{text[pos:]}"
        super().__init__(message)
        self.pos = pos


@dataclass(frozen=True)
class Integer:
    n: int


@dataclass(frozen=True)
class Dyadic:
    p: int
    k: int

    def __post_init__(self):
        if self.k < 1 or self.p % 2 == 0:
            raise NotationError(f"dyadic {self.p}/2^{self.k} is not in lowest terms")


@dataclass(frozen=True)
class Nimber:
    k: int


@dataclass(frozen=True)
class NumberStar:
    number: Union[Integer, Dyadic]
    k: int


@dataclass(frozen=True)
class Up:
    pass


@dataclass(frozen=True)
class UpStar:
    pass


@dataclass(frozen=True)
class Down:
    pass


@dataclass(frozen=True)
class DownStar:
    pass


@dataclass(frozen=True)
class PlusMinus:
    game: "GameExpr"


@dataclass(frozen=True)
class Tiny:
    game: "GameExpr"


@dataclass(frozen=True)
class Braces:
    left: tuple
    right: tuple


GameExpr = Union[Integer, Dyadic, Nimber, NumberStar, Up, UpStar, Down,
                 DownStar, PlusMinus, Tiny, Braces]


def _number_expr(value: Fraction) -> Union[Integer, Dyadic]:
    if value.denominator == 1:
        return Integer(value.numerator)
    return Dyadic(value.numerator, value.denominator.bit_length() - 1)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        return NotationError(message, self.text, self.pos if pos is None else pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token: str) -> bool:
        self.skip()
        return self.text.startswith(token, self.pos)

    def accept(self, token: str) -> bool:
        if self.peek(token):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.accept(token):
            raise self.error(f"expected {token!r}")

    def digits(self) -> int | None:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos]) if self.pos > start else None

    def parse(self) -> GameExpr:
        expr = self.game()
        self.skip()
        if self.pos != len(self.text):
            if self.text[self.pos] == "|":
                raise self.error("nested '|' without braces")
            raise self.error("unexpected trailing input")
        return expr

    def game(self) -> GameExpr:
        if self.accept("+-"):
            if self.accept("("):
                inner = self.game()
                self.expect(")")
                return PlusMinus(inner)
            if self.peek("+-"):
                raise self.error("'+-' argument must be parenthesized")
            return PlusMinus(self.primary())
        return self.primary()

    def primary(self) -> GameExpr:
        self.skip()
        if self.accept("{"):
            left = self.options("|")
            self.expect("|")
            right = self.options("}")
            if self.peek("|"):
                raise self.error("nested '|' without braces")
            self.expect("}")
            return Braces(tuple(left), tuple(right))
        if self.accept("tiny"):
            self.expect("(")
            inner = self.game()
            self.expect(")")
            return Tiny(inner)
        if self.accept("*"):
            k = self.digits()
            return Nimber(1 if k is None else k)
        if self.accept("^"):
            return UpStar() if self.accept("*") else Up()
        if self.accept("v"):
            return DownStar() if self.accept("*") else Down()
        if self.peek("-") or (self.pos < len(self.text) and self.text[self.pos].isdigit()):
            return self.number()
        if self.pos >= len(self.text):
            raise self.error("unexpected end of input")
        if self.text[self.pos] == "|":
            raise self.error("nested '|' without braces")
        raise self.error(f"unexpected character {self.text[self.pos]!r}")

    def options(self, closer: str) -> list[GameExpr]:
        if self.peek(closer):
            return []
        out = [self.game()]
        while self.accept(","):
            out.append(self.game())
        return out

    def number(self) -> GameExpr:
        sign = -1 if self.accept("-") else 1
        whole = self.digits()
        if whole is None:
            raise self.error("expected digits")
        value = Fraction(sign * whole)
        if self.accept("/"):
            at = self.pos
            den = self.digits()
            if den is None:
                raise self.error("expected denominator")
            if den & (den - 1) or den == 0:
                raise self.error(f"denominator {den} is not a power of two", at)
            value = Fraction(sign * whole, den)
        num = _number_expr(value)
        if self.accept("*"):
            k = self.digits()
            k = 1 if k is None else k
            if k == 0:
                return num
            return NumberStar(num, k)
        return num


def parse(text: str) -> GameExpr:
    return _Parser(text).parse()


def elaborate(expr: GameExpr, arena: GameArena) -> GameId:
    """Build the canonical game denoted by ``expr`` inside ``arena``."""
    if isinstance(expr, Integer):
        return arena.integer(expr.n)
    if isinstance(expr, Dyadic):
        return _number(arena, Fraction(expr.p, 2 ** expr.k))
    if isinstance(expr, Nimber):
        return star(arena, expr.k)
    if isinstance(expr, NumberStar):
        x = elaborate(expr.number, arena)
        if expr.k == 0:
            return x
        # x + *k = {x + *j | x + *j} for j < k, since *k is not a number
        opts = [x]
        for _ in range(expr.k - 1):
            opts.append(arena.canonicalize(opts, opts))
        return arena.canonicalize(opts, opts)
    zero = arena.zero
    if isinstance(expr, Up):
        return arena.canonicalize([zero], [star(arena)])
    if isinstance(expr, UpStar):
        return arena.canonicalize([zero, star(arena)], [zero])
    if isinstance(expr, Down):
        return arena.canonicalize([star(arena)], [zero])
    if isinstance(expr, DownStar):
        return arena.canonicalize([zero], [zero, star(arena)])
    if isinstance(expr, PlusMinus):
        g = elaborate(expr.game, arena)
        return arena.canonicalize([g], [arena.negate(g)])
    if isinstance(expr, Tiny):
        g = elaborate(expr.game, arena)
        inner = arena.canonicalize([zero], [arena.negate(g)])
        return arena.canonicalize([zero], [inner])
    if isinstance(expr, Braces):
        return arena.canonicalize([elaborate(e, arena) for e in expr.left],
                                  [elaborate(e, arena) for e in expr.right])
    raise TypeError(f"not a game expression: {expr!r}")


def _number(arena: GameArena, value: Fraction) -> GameId:
    if value.denominator == 1:
        return arena.integer(value.numerator)
    step = Fraction(1, value.denominator)
    return arena.canonicalize([_number(arena, value - step)], [_number(arena, value + step)])


def game(text: str, arena: GameArena) -> GameId:
    return elaborate(parse(text), arena)


def _cache(arena: GameArena, name: str) -> dict:
    return arena.derived.setdefault(name, {})


def number_value(arena: GameArena, g: GameId) -> Fraction | None:
    """The value of ``g`` if it is the canonical form of a dyadic rational."""
    cache = _cache(arena, "number")
    if g in cache:
        return cache[g]
    left, right = arena.left(g), arena.right(g)
    value = None
    if not left and not right:
        value = Fraction(0)
    elif len(left) == 1 and not right:
        x = number_value(arena, left[0])
        if x is not None and x.denominator == 1 and x >= 0:
            value = x + 1
    elif not left and len(right) == 1:
        x = number_value(arena, right[0])
        if x is not None and x.denominator == 1 and x <= 0:
            value = x - 1
    elif len(left) == 1 and len(right) == 1:
        a, b = number_value(arena, left[0]), number_value(arena, right[0])
        if a is not None and b is not None:
            mid = (a + b) / 2
            if mid.denominator > 1 and b - a == Fraction(2, mid.denominator):
                value = mid
    cache[g] = value
    return value


def number_star_value(arena: GameArena, g: GameId) -> tuple[Fraction, int] | None:
    """``(x, k)`` if ``g`` is the canonical form of the number x plus ``*k``."""
    cache = _cache(arena, "number_star")
    if g in cache:
        return cache[g]
    value = None
    x = number_value(arena, g)
    if x is not None:
        value = (x, 0)
    elif arena.left(g) and arena.left(g) == arena.right(g):
        parts = [number_star_value(arena, o) for o in arena.left(g)]
        if all(p is not None for p in parts):
            bases = {p[0] for p in parts}
            ks = sorted(p[1] for p in parts)
            if len(bases) == 1 and ks == list(range(len(ks))):
                value = (bases.pop(), len(ks))
    cache[g] = value
    return value


def _number_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_text(arena: GameArena, g: GameId) -> str:
    """Print ``g`` using shorthand where one applies, braces otherwise."""
    cache = _cache(arena, "text")
    cached = cache.get(g)
    if cached is not None:
        return cached
    text = _render(arena, g)
    cache[g] = text
    return text


def _render(arena: GameArena, g: GameId) -> str:
    ns = number_star_value(arena, g)
    if ns is not None:
        x, k = ns
        stars = "" if k == 0 else ("*" if k == 1 else f"*{k}")
        if x == 0:
            return stars or "0"
        return _number_text(x) + stars
    left, right = arena.left(g), arena.right(g)
    zero = arena.zero
    s = star(arena)
    shapes = {
        ((zero,), (s,)): "^",
        (tuple(sorted((zero, s))), (zero,)): "^*",
        ((s,), (zero,)): "v",
        ((zero,), tuple(sorted((zero, s)))): "v*",
    }
    if (left, right) in shapes:
        return shapes[(left, right)]
    if len(left) == 1 and len(right) == 1 and arena.negate(left[0]) == right[0]:
        inner = to_text(arena, left[0])
        if inner.startswith("{") or inner.replace("/", "").isdigit():
            return "+-" + inner
        return f"+-({inner})"
    key = lambda o: sort_key(arena, o)  # noqa: E731
    return ("{" + ",".join(to_text(arena, o) for o in sorted(left, key=key)) + "|"
            + ",".join(to_text(arena, o) for o in sorted(right, key=key)) + "}")


def sort_key(arena: GameArena, g: GameId) -> tuple[int, str]:
    """Canonical total order: birthday, then printed form."""
    return arena.birthday(g), to_text(arena, g)
