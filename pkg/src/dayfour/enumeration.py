"""Generation of the day-n game sets and antichain utilities."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .games import GameArena, GameId, Order
from .notation import game, sort_key, to_text

log = logging.getLogger(__name__)

DAY_CAP = 3
KNOWN_LOWER_DAY4 = "2^94"
FILE_FORMAT = 1


class InfeasibleError(RuntimeError):
    pass


class SizeGuardError(ValueError):
    pass


class Poset:
    """A finite poset given by its elements and a reflexive ``leq`` matrix."""

    def __init__(self, elements: Sequence, leq: np.ndarray):
        self.elements = list(elements)
        self.leq = np.asarray(leq, dtype=bool)
        n = len(self.elements)
        if self.leq.shape != (n, n):
            raise ValueError(f"order matrix has shape {self.leq.shape}, expected {(n, n)}")
        self.index = {e: i for i, e in enumerate(self.elements)}

    @classmethod
    def from_relation(cls, elements: Sequence, leq) -> "Poset":
        elements = list(elements)
        m = np.array([[leq(a, b) for b in elements] for a in elements], dtype=bool)
        return cls(elements, m.reshape(len(elements), len(elements)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e) -> bool:
        return e in self.index

    @property
    def less(self) -> np.ndarray:
        """``less[i, j]`` iff element i is strictly below element j."""
        return self.leq & ~self.leq.T

    @property
    def incomparable(self) -> np.ndarray:
        return ~(self.leq | self.leq.T)

    def relation(self, a, b) -> Order:
        i, j = self.index[a], self.index[b]
        if i == j:
            return Order.EQUAL
        if self.leq[i, j]:
            return Order.EQUAL if self.leq[j, i] else Order.LESS
        return Order.GREATER if self.leq[j, i] else Order.INCOMPARABLE

    def restrict(self, members) -> "Poset":
        idx = sorted(self.index[m] for m in set(members))
        return self._sub(idx)

    def _sub(self, idx: list[int]) -> "Poset":
        return Poset([self.elements[i] for i in idx], self.leq[np.ix_(idx, idx)])

    def is_antichain(self, members) -> bool:
        idx = [self.index[m] for m in members]
        sub = self.leq[np.ix_(idx, idx)]
        return not (sub & ~np.eye(len(idx), dtype=bool)).any()


class GameSet(Poset):
    """An enumerated day together with its full order matrix."""

    def __init__(self, day: int, arena: GameArena, elements: Sequence[GameId],
                 leq: np.ndarray | None = None):
        elements = sorted(set(elements), key=lambda g: sort_key(arena, g))
        if leq is None:
            leq = order_matrix(arena, elements)
        super().__init__(elements, leq)
        self.day = day
        self.arena = arena

    def _sub(self, idx: list[int]) -> "GameSet":
        return GameSet(self.day, self.arena, [self.elements[i] for i in idx],
                       self.leq[np.ix_(idx, idx)])

    def texts(self) -> list[str]:
        return [to_text(self.arena, g) for g in self.elements]

    def dumps(self) -> str:
        lines = [f"# day={self.day} count={len(self)} format={FILE_FORMAT}"]
        lines += self.texts()
        return "\n".join(lines) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")


def order_matrix(arena: GameArena, elements: Sequence[GameId]) -> np.ndarray:
    """``leq`` over a set closed under taking options, computed as a fixpoint.

    ``G <= H`` fails exactly when some left option of G is ``>= H`` or some
    right option of H is ``<= G``. One sweep of that rule over the whole
    matrix fixes every pair whose birthdays sum to less than the sweep count,
    so ``2 * max_birthday + 1`` sweeps settle all pairs.
    """
    n = len(elements)
    pos = {g: i for i, g in enumerate(elements)}
    lopt = np.zeros((n, n), dtype=np.float32)
    ropt = np.zeros((n, n), dtype=np.float32)
    for i, g in enumerate(elements):
        try:
            lopt[i, [pos[x] for x in arena.left(g)]] = 1
            ropt[i, [pos[x] for x in arena.right(g)]] = 1
        except KeyError as exc:
            raise ValueError(f"set is not closed under options: {exc}") from None
    leq = np.zeros((n, n), dtype=bool)
    sweeps = 2 * max((arena.birthday(g) for g in elements), default=0) + 1
    for _ in range(sweeps):
        f = leq.astype(np.float32)
        left_beats = (lopt @ f.T) > 0.5   # [g, h]: some g^L >= h
        right_below = (ropt @ f) > 0.5    # [h, g]: some h^R <= g
        leq = ~left_beats & ~right_below.T
    return leq


def antichains(poset: Poset, max_size: int = 24) -> Iterator[tuple]:
    """Yield every antichain once, empty first, lexicographic in element order."""
    n = len(poset)
    if n > max_size:
        raise SizeGuardError(f"refusing to iterate antichains of {n} elements (guard {max_size})")
    inc = poset.incomparable
    elements = poset.elements

    def extend(chosen: list[int], allowed: np.ndarray, start: int):
        yield tuple(elements[i] for i in chosen)
        for j in range(start, n):
            if allowed[j]:
                chosen.append(j)
                yield from extend(chosen, allowed & inc[j], j + 1)
                chosen.pop()

    yield from extend([], np.ones(n, dtype=bool), 0)


def count_antichains(poset: Poset, method: str = "dfs", max_size: int = 24) -> int:
    if method == "dfs":
        return sum(1 for _ in antichains(poset, max_size))
    if method == "brute":
        return _brute_count(poset, max_size)
    raise ValueError(f"unknown method {method!r}")


def _brute_count(poset: Poset, max_size: int) -> int:
    """Scan all ``2^n`` subsets and reject those holding a comparable pair."""
    n = len(poset)
    if n > max_size:
        raise SizeGuardError(f"refusing brute force over 2^{n} subsets (guard {max_size})")
    comparable = ~poset.incomparable
    pairs = [(1 << i) | (1 << j) for i in range(n) for j in range(i + 1, n)
             if comparable[i, j]]
    total = 0
    chunk = 1 << 20
    for lo in range(0, 1 << n, chunk):
        masks = np.arange(lo, min(lo + chunk, 1 << n), dtype=np.int64)
        ok = np.ones(len(masks), dtype=bool)
        for p in pairs:
            ok &= (masks & p) != p
        total += int(ok.sum())
    return total


def enumerate_day(n: int, arena: GameArena | None = None, *, cap: int = DAY_CAP,
                  threads: int = 1) -> GameSet:
    """All canonical forms born by day ``n``.

    Day k is built from day k-1: every canonical form has antichains as its
    option sets, so canonicalizing each pair of antichains covers the day.
    """
    if n < 0:
        raise ValueError("day must be nonnegative")
    if n > cap:
        raise InfeasibleError(
            f"day {n} exceeds the enumeration cap of {cap}; day 4 alone holds more "
            f"than {KNOWN_LOWER_DAY4} canonical forms")
    if n > DAY_CAP:
        log.warning("enumerating day %d; expect more than %s games", n, KNOWN_LOWER_DAY4)
    arena = arena or GameArena()
    current = GameSet(0, arena, [arena.zero])
    for day in range(1, n + 1):
        sides = list(antichains(current, max_size=max(24, len(current))))
        found = set(current.elements)
        jobs = [(l, r) for l in sides for r in sides]
        if threads > 1:
            with ThreadPoolExecutor(threads) as pool:
                found.update(pool.map(lambda lr: arena.canonicalize(*lr), jobs,
                                      chunksize=256))
        else:
            found.update(arena.canonicalize(l, r) for l, r in jobs)
        log.info("day %d: %d antichains, %d candidates, %d games",
                 day, len(sides), len(jobs), len(found))
        current = GameSet(day, arena, found)
    return current


def load(path: str | Path, arena: GameArena | None = None) -> GameSet:
    text = Path(path).read_text(encoding="utf-8")
    return loads(text, arena)


def loads(text: str, arena: GameArena | None = None) -> GameSet:
    arena = arena or GameArena()
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing game-set header")
    header = dict(f.split("=", 1) for f in lines[0][1:].split())
    if int(header.get("format", -1)) != FILE_FORMAT:
        raise ValueError(f"unsupported game-set format {header.get('format')!r}")
    day, count = int(header["day"]), int(header["count"])
    games = [game(line, arena) for line in lines[1:] if line.strip()]
    if len(games) != count:
        raise ValueError(f"header promises {count} games, file holds {len(games)}")
    late = [g for g in games if arena.birthday(g) > day]
    if late:
        raise ValueError(f"{len(late)} games are born after day {day}")
    return GameSet(day, arena, games)
