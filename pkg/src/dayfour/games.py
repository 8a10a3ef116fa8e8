"""Interned short games under normal play.

Every game lives in a :class:`GameArena` and is referred to by an integer id.
Forms are hash-consed, so two canonical forms are equal as games exactly when
their ids are equal.
"""
from __future__ import annotations

import enum
import threading
from typing import Iterable

GameId = int


class GameError(Exception):
    """Base class for errors raised by the game kernel."""


class UnknownGame(GameError):
    pass


class PreconditionError(GameError, ValueError):
    pass


class Order(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"

    def __str__(self) -> str:
        return self.value


class GameArena:
    """Append-only table of game forms with memoized comparison."""

    def __init__(self) -> None:
        self._left: list[tuple[GameId, ...]] = []
        self._right: list[tuple[GameId, ...]] = []
        self._index: dict[tuple[tuple[GameId, ...], tuple[GameId, ...]], GameId] = {}
        self._leq: dict[tuple[GameId, GameId], bool] = {}
        self._neg: dict[GameId, GameId] = {}
        self._birthday: list[int] = []
        self._lock = threading.Lock()
        # per-id caches owned by other modules (printed text, number values)
        self.derived: dict[str, dict] = {}
        self.zero = self.intern((), ())

    def __len__(self) -> int:
        return len(self._left)

    def _check(self, ids: Iterable[GameId]) -> None:
        n = len(self._left)
        for g in ids:
            if not (isinstance(g, int) and 0 <= g < n):
                raise UnknownGame(f"unknown game id {g!r}")

    def intern(self, left: Iterable[GameId], right: Iterable[GameId]) -> GameId:
        """Store the form ``{left | right}`` as given, without simplifying it."""
        key = (tuple(sorted(set(left))), tuple(sorted(set(right))))
        found = self._index.get(key)
        if found is not None:
            return found
        self._check(key[0])
        self._check(key[1])
        with self._lock:
            found = self._index.get(key)
            if found is not None:
                return found
            g = len(self._left)
            self._left.append(key[0])
            self._right.append(key[1])
            self._birthday.append(
                1 + max((self._birthday[x] for x in key[0] + key[1]), default=-1))
            self._index[key] = g
            return g

    def left(self, g: GameId) -> tuple[GameId, ...]:
        return self._left[g]

    def right(self, g: GameId) -> tuple[GameId, ...]:
        return self._right[g]

    def birthday(self, g: GameId) -> int:
        self._check((g,))
        return self._birthday[g]

    def leq(self, g: GameId, h: GameId) -> bool:
        """``g <= h``: no left option of g is >= h, no right option of h is <= g."""
        if g == h:
            return True
        key = (g, h)
        cached = self._leq.get(key)
        if cached is not None:
            return cached
        self._check(key)
        result = (not any(self.leq(h, gl) for gl in self._left[g])
                  and not any(self.leq(hr, g) for hr in self._right[h]))
        self._leq[key] = result
        return result

    def compare(self, g: GameId, h: GameId) -> Order:
        if g == h:
            self._check((g,))
            return Order.EQUAL
        le, ge = self.leq(g, h), self.leq(h, g)
        if le and ge:
            # only possible for forms interned raw, never for canonical ones
            return Order.EQUAL
        if le:
            return Order.LESS
        if ge:
            return Order.GREATER
        return Order.INCOMPARABLE

    def negate(self, g: GameId) -> GameId:
        cached = self._neg.get(g)
        if cached is not None:
            return cached
        self._check((g,))
        result = self.intern([self.negate(r) for r in self._right[g]],
                             [self.negate(l) for l in self._left[g]])
        self._neg[g] = result
        self._neg[result] = g
        return result

    def canonicalize(self, left: Iterable[GameId], right: Iterable[GameId]) -> GameId:
        """Return the canonical form of ``{left | right}``.

        Options must themselves be canonical. Dominated options are dropped
        and reversible ones bypassed, left side first, until nothing changes.
        """
        lefts, rights = set(left), set(right)
        self._check(lefts)
        self._check(rights)
        le_memo: dict[GameId, bool] = {}
        ge_memo: dict[GameId, bool] = {}
        leq = self.leq

        # Both helpers compare the game being simplified (G) with an interned
        # game y. Simplification keeps the value of G, so the memos stay valid
        # while the option sets change underneath them.
        def g_le(y: GameId) -> bool:
            r = le_memo.get(y)
            if r is None:
                r = (not any(leq(y, a) for a in lefts)
                     and not any(g_ge(yr) for yr in self._right[y]))
                le_memo[y] = r
            return r

        def g_ge(y: GameId) -> bool:
            r = ge_memo.get(y)
            if r is None:
                r = (not any(g_le(yl) for yl in self._left[y])
                     and not any(leq(b, y) for b in rights))
                ge_memo[y] = r
            return r

        while True:
            lefts = {a for a in lefts
                     if not any(b != a and leq(a, b) for b in lefts)}
            rights = {a for a in rights
                      if not any(b != a and leq(b, a) for b in rights)}
            changed = False
            for a in sorted(lefts):
                for ar in self._right[a]:
                    if g_ge(ar):
                        lefts.discard(a)
                        lefts.update(self._left[ar])
                        changed = True
                        break
                if changed:
                    break
            if not changed:
                for b in sorted(rights):
                    for bl in self._left[b]:
                        if g_le(bl):
                            rights.discard(b)
                            rights.update(self._right[bl])
                            changed = True
                            break
                    if changed:
                        break
            if not changed:
                return self.intern(lefts, rights)

    def is_canonical(self, g: GameId) -> bool:
        return self.canonicalize(self._left[g], self._right[g]) == g

    def integer(self, n: int) -> GameId:
        g = self.zero
        for _ in range(abs(n)):
            g = self.intern([g], []) if n > 0 else self.intern([], [g])
        return g

    def is_antichain(self, games: Iterable[GameId]) -> bool:
        games = list(games)
        return all(self.compare(a, b) is Order.INCOMPARABLE
                   for i, a in enumerate(games) for b in games[i + 1:])

    def build_extreme_forms(self, n: int, antichain: Iterable[GameId]
                            ) -> tuple[GameId, GameId, GameId, GameId]:
        """``{n|S}``, ``{S|-n}``, ``{n-1|S}`` and ``{S|-(n-1)}`` for an antichain S.

        Each result is audited: its options must survive canonicalization
        untouched, which is exactly the claim that these forms are canonical.
        """
        if n <= 1:
            raise PreconditionError(f"n must exceed 1, got {n}")
        s = sorted(set(antichain))
        if not s:
            raise PreconditionError("antichain must be nonempty")
        self._check(s)
        late = [g for g in s if self._birthday[g] > n]
        if late:
            raise PreconditionError(f"games {late} are born after day {n}")
        if not self.is_antichain(s):
            raise PreconditionError("options are not pairwise incomparable")
        top, near = self.integer(n), self.integer(n - 1)
        raw = [([top], s), (s, [self.negate(top)]),
               ([near], s), (s, [self.negate(near)])]
        out = []
        for lefts, rights in raw:
            g = self.canonicalize(lefts, rights)
            if self._left[g] != tuple(sorted(lefts)) or self._right[g] != tuple(sorted(rights)):
                raise GameError(f"form {{{lefts}|{rights}}} simplified to #{g}")
            out.append(g)
        return tuple(out)


def star(arena: GameArena, k: int = 1) -> GameId:
    g, opts = arena.zero, []
    for _ in range(k):
        opts.append(g)
        g = arena.intern(opts, opts)
    return g
