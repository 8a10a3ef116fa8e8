"""Exact lower and upper bounds on the number of games born by the next day.

All bound values are Python integers (or exact fractions where an input is
itself a decimal estimate). The ``log10`` figures in a report are derived
from the exact value and never feed back into a bound.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations
from typing import Sequence, Union

import numpy as np

from .enumeration import GameSet, Poset, enumerate_day
from .games import GameArena
from .notation import game
from .poset import (ChainDivision, InvariantViolation, Stratification,
                    chain_division, stratify, width_certificate)

Exact = Union[int, Fraction]


def log10(value: Exact) -> float:
    if value <= 0:
        return float("-inf")
    if isinstance(value, Fraction):
        return math.log10(value.numerator) - math.log10(value.denominator)
    return math.log10(value)


def exact_text(value: Exact) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


@dataclass
class BoundEntry:
    name: str
    kind: str  # "lower", "upper", "count" or "term"
    formula: str
    value: Exact
    provenance: str

    @property
    def log10(self) -> float:
        return log10(self.value)

    def to_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind, "formula": self.formula,
                "value": exact_text(self.value), "log10": round(self.log10, 6),
                "provenance": self.provenance}


@dataclass
class BoundReport:
    name: str
    entries: list[BoundEntry] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, name, kind, formula, value, provenance) -> BoundEntry:
        entry = BoundEntry(name, kind, formula, value, provenance)
        self.entries.append(entry)
        return entry

    def __getitem__(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(e.name == name for e in self.entries)

    def extend(self, other: "BoundReport", prefix: str = "") -> None:
        for e in other.entries:
            self.entries.append(BoundEntry(prefix + e.name, e.kind, e.formula,
                                           e.value, e.provenance))

    def check_order(self) -> None:
        lowers = [e for e in self.entries if e.kind == "lower"]
        uppers = [e for e in self.entries if e.kind == "upper"]
        for lo in lowers:
            for up in uppers:
                if lo.value > up.value:
                    raise InvariantViolation(f"lower bound {lo.name} exceeds upper bound {up.name}")

    def to_dict(self) -> dict:
        return {"report": self.name, "entries": [e.to_dict() for e in self.entries],
                "meta": self.meta}


def load_fixture(name: str) -> dict:
    text = resources.files("dayfour").joinpath("fixtures", name).read_text(encoding="utf-8")
    return json.loads(text)


# -- classical recurrences -------------------------------------------------

def classical_upper(gn: int, gn1: int) -> tuple[int, int, int]:
    """Three upper bounds on the next day's count from the last two counts."""
    if gn < 1 or gn1 < 1:
        raise ValueError("counts must be positive")
    first = 2 ** (gn + 1) + gn
    second = gn + 2 ** gn + 2
    coeff = Fraction(gn1 ** 2) + Fraction(5 * gn1, 2) + 2
    third = gn + math.floor(coeff * Fraction(2) ** (gn - 2 * gn1))
    return first, second, third


def _floor_pow2(num: int, den: int) -> int:
    """``floor(2 ** (num / den))`` for nonnegative num, exactly."""
    if num % den == 0:
        return 2 ** (num // den)
    x = 2 ** (num // den)
    hi = 2 ** (num // den + 1)
    target = 2 ** num
    while hi - x > 1:  # bisect for the largest x with x**den <= 2**num
        mid = (x + hi) // 2
        if mid ** den <= target:
            x = mid
        else:
            hi = mid
    return x


def classical_lower(gn: int, gn1: int, exponent: str = "root") -> tuple[int, int]:
    """Two lower bounds on the next day's count.

    Both formulas raise 2 to a fractional power. ``exponent="root"`` takes the
    floor of the power itself; ``exponent="floor"`` floors the exponent
    first, which is weaker.
    """
    if gn < 1 or gn1 < 1:
        raise ValueError("counts must be positive")
    if exponent == "root":
        power = _floor_pow2
    elif exponent == "floor":
        def power(num, den):
            return 2 ** (num // den)
    else:
        raise ValueError(f"unknown exponent rule {exponent!r}")
    first = power(gn, 2 * gn1)
    second = (8 * gn1 - 4) * (power(gn - 2, 2 * gn1 - 1) - 1)
    return first, second


def classical_report(gn: int, gn1: int) -> BoundReport:
    report = BoundReport("classical", meta={"gn": gn, "gn1": gn1})
    u1, u2, u3 = classical_upper(gn, gn1)
    src = f"counts {gn}, {gn1}"
    report.add("classical_upper_1", "upper", "2^(g+1) + g", u1, src)
    report.add("classical_upper_2", "upper", "g + 2^g + 2", u2, src)
    report.add("classical_upper_3", "upper", "g + (h^2 + 5h/2 + 2) 2^(g-2h)", u3, src)
    l1, l2 = classical_lower(gn, gn1)
    report.add("classical_lower_1", "lower", "floor(2^(g/2h))", l1, src)
    report.add("classical_lower_2", "lower", "(8h-4)(floor(2^((g-2)/(2h-1))) - 1)", l2, src)
    f1, f2 = classical_lower(gn, gn1, exponent="floor")
    report.add("classical_lower_1_floor_exponent", "lower", "2^floor(g/2h)", f1, src)
    report.add("classical_lower_2_floor_exponent", "lower",
               "(8h-4)(2^floor((g-2)/(2h-1)) - 1)", f2, src)
    return report


# -- lower bounds from antichains -----------------------------------------

def extreme_forms_lower(width: int) -> int:
    """Each antichain S of the middle layer yields four distinct canonical forms."""
    if width < 0:
        raise ValueError("width must be nonnegative")
    return 4 * 2 ** width


@dataclass
class DegreeProfile:
    layer: int
    histogram: dict[int, int]  # comparable middle elements -> number of games
    degrees: dict = field(repr=False, default_factory=dict)


def _middle(strat: Stratification) -> int:
    sizes = strat.sizes
    if sizes.count(max(sizes)) != 1:
        raise ValueError("the largest layer is not unique")
    return strat.middle


def _neighbours(strat: Stratification, layer: int) -> dict:
    """For each game of ``layer``, the set of middle games comparable to it."""
    c = _middle(strat)
    if abs(layer - c) != 1:
        raise ValueError(f"layer {layer} is not adjacent to the middle layer {c}")
    poset = strat.poset
    less = poset.less
    middle = strat.layer(c)
    out = {}
    for u in strat.layer(layer):
        i = poset.index[u]
        for v in middle:
            j = poset.index[v]
            if (less[i, j] if layer < c else less[j, i]):
                raise InvariantViolation(f"middle game {v} lies beyond neighbour {u}")
        out[u] = frozenset(v for v in middle
                           if (less[poset.index[v], i] if layer < c else less[i, poset.index[v]]))
    return out


def middle_degree_profile(strat: Stratification, layer: int) -> DegreeProfile:
    nbrs = _neighbours(strat, layer)
    hist: dict[int, int] = {}
    for u, n in nbrs.items():
        hist[len(n)] = hist.get(len(n), 0) + 1
    return DegreeProfile(layer, dict(sorted(hist.items())), {u: len(n) for u, n in nbrs.items()})


def middle_lower(strat: Stratification) -> BoundReport:
    """Count antichains made of the middle layer plus at most two neighbours.

    For each neighbouring layer it counts antichains with one neighbour game
    and with two, in two ways: exactly (union of comparable middle games) and
    by the grouping that pretends the comparable sets are disjoint, which can
    only undercount.
    """
    c = _middle(strat)
    width = len(strat.layer(c))
    report = BoundReport("middle_lower", meta={"middle_layer": c, "width": width})
    report.add("middle_subsets", "term", "2^|U_c|", 2 ** width, "stratification")
    totals = {"exact": 2 ** width, "grouped": 2 ** width}
    for side, layer in (("above", c - 1), ("below", c + 1)):
        nbrs = _neighbours(strat, layer)
        singles = sum(2 ** (width - len(n)) for n in nbrs.values())
        exact = grouped = 0
        for a, b in combinations(nbrs.values(), 2):
            exact += 2 ** (width - len(a | b))
            # a pair is itself an antichain, so each term is at least 2^0
            grouped += 2 ** max(width - len(a) - len(b), 0)
        if grouped > exact:
            raise InvariantViolation("grouped pair count exceeds the exact count")
        src = f"stratification layers {layer} and {c}"
        report.add(f"singles_{side}", "term", "sum 2^(|U_c| - d(u))", singles, src)
        report.add(f"pairs_exact_{side}", "term", "sum 2^(|U_c| - |N(u) u N(u')|)", exact, src)
        report.add(f"pairs_grouped_{side}", "term", "sum 2^(|U_c| - d(u) - d(u'))", grouped, src)
        totals["exact"] += singles + exact
        totals["grouped"] += singles + grouped
    report.add("antichains_grouped", "count", "middle + singles + grouped pairs",
               totals["grouped"], "stratification")
    report.add("antichains_exact", "count", "middle + singles + exact pairs",
               totals["exact"], "stratification")
    report.add("lower_grouped", "lower", "4 * antichains_grouped", 4 * totals["grouped"],
               "stratification")
    report.add("lower_exact", "lower", "4 * antichains_exact", 4 * totals["exact"],
               "stratification")
    headline = 1 << ((4 * totals["grouped"]).bit_length() - 1)
    report.add("lower_headline", "lower", "largest power of two <= lower_grouped",
               headline, "stratification")
    return report


# -- upper bounds from chain divisions ------------------------------------

def _lengths(division: Union[ChainDivision, Sequence[int]]) -> list[int]:
    if isinstance(division, ChainDivision):
        return division.lengths
    return [int(x) for x in division]


def simple_upper(division: Union[ChainDivision, Sequence[int]]) -> int:
    """Option sets pick at most one game per chain, on each side."""
    return math.prod(n + 1 for n in _lengths(division)) ** 2


def tail_product(division: Union[ChainDivision, Sequence[int]], prefix: int) -> int:
    """Product of ``|T_j| + 1`` over the chains after the first ``prefix``."""
    lengths = _lengths(division)
    if not 0 <= prefix <= len(lengths):
        raise ValueError(f"prefix {prefix} outside 0..{len(lengths)}")
    return math.prod(n + 1 for n in lengths[prefix:])


def incomparability_table(poset: Poset, division: ChainDivision) -> np.ndarray:
    """``table[i, j]``: most games of chain j incomparable to a single game of chain i."""
    w = len(division)
    member = np.zeros((len(poset), w), dtype=np.int64)
    for j, chain in enumerate(division.chains):
        member[[poset.index[e] for e in chain], j] = 1
    counts = poset.incomparable.astype(np.int64) @ member
    table = np.zeros((w, w), dtype=np.int64)
    for i, chain in enumerate(division.chains):
        table[i] = counts[[poset.index[e] for e in chain]].max(axis=0)
    return table


def first_chain_counts(poset: Poset, division: ChainDivision) -> list[int]:
    """Upper bound on antichains whose first chain (in division order) is chain i."""
    table = incomparability_table(poset, division)
    lengths = division.lengths
    w = len(lengths)
    return [lengths[i] * math.prod(int(table[i, j]) + 1 for j in range(i + 1, w))
            for i in range(w)]


def refined_upper(poset: Poset, division: ChainDivision, prefix: Union[int, str] = "auto"
                  ) -> BoundReport:
    """``(sum of the first K first-chain counts + tail product after K) ** 2``."""
    division.validate(poset)
    counts = first_chain_counts(poset, division)
    w = len(counts)

    def bound(k: int) -> int:
        return (sum(counts[:k]) + tail_product(division, k)) ** 2

    if prefix == "auto":
        k = min(range(w + 1), key=lambda k: (bound(k), k))
    else:
        k = int(prefix)
        if not 0 <= k <= w:
            raise ValueError(f"prefix {k} outside 0..{w}")
    report = BoundReport("refined_upper", meta={"prefix": k, "chains": w})
    for i, s in enumerate(counts, 1):
        report.add(f"first_chain_{i}", "term", "|T_i| prod_(j>i) (t_ij + 1)", s, "chain division")
    report.add("tail_product", "term", "prod_(j>K) (|T_j| + 1)", tail_product(division, k),
               "chain division")
    report.add("upper_refined", "upper", "(sum_(i<=K) S_i + tail)^2", bound(k), "chain division")
    return report


def fixture_upper() -> BoundReport:
    """Upper-bound arithmetic on the published chain lengths and prefix estimates."""
    lengths = load_fixture("table2.json")["chain_lengths"]
    estimates = [Fraction(s) for s in load_fixture("table3.json")["prefix_counts_upper"]]
    k = len(estimates)
    report = BoundReport("fixture_upper", meta={"prefix": k, "chains": len(lengths)})
    report.add("fixture_simple", "upper", "(prod (|T_i| + 1))^2", simple_upper(lengths),
               "fixtures/table2.json")
    tail = tail_product(lengths, k)
    report.add("fixture_tail_product", "term", "prod_(j>K) (|T_j| + 1)", tail,
               "fixtures/table2.json")
    report.add("fixture_prefix_sum", "term", "sum of published prefix estimates",
               sum(estimates), "fixtures/table3.json")
    report.add("fixture_refined", "upper", "(sum estimates + tail)^2",
               (sum(estimates) + tail) ** 2, "fixtures/table2.json, fixtures/table3.json")
    return report


def fixture_division(arena: GameArena, name: str = "fig4_chains.json") -> ChainDivision:
    chains = load_fixture(name)["chains"]
    return ChainDivision([tuple(game(t, arena) for t in chain) for chain in chains])


# -- pipelines --------------------------------------------------------------

def analyse(gameset: GameSet, division: ChainDivision | None = None) -> BoundReport:
    """Every bound on the following day that the data of ``gameset`` supports."""
    strat = stratify(gameset)
    own = chain_division(strat)
    width, _, _ = width_certificate(gameset, strat, own)
    division = division or own
    division.validate(gameset)
    report = BoundReport(f"day{gameset.day + 1}",
                         meta={"day": gameset.day + 1, "games": len(gameset),
                               "layers": len(strat), "width": width,
                               "chain_lengths": division.lengths})
    report.add("lower_extreme_forms", "lower", "4 * 2^width", extreme_forms_lower(width),
               "width certificate")
    report.extend(middle_lower(strat))
    report.add("upper_simple", "upper", "(prod (|T_i| + 1))^2", simple_upper(division),
               "chain division")
    refined = refined_upper(gameset, division)
    report.meta["prefix"] = refined.meta["prefix"]
    report.extend(refined)
    return report


def day4_report(gameset: GameSet | None = None, division: ChainDivision | None = None,
                fixtures: bool = True) -> BoundReport:
    gameset = gameset or enumerate_day(3)
    report = analyse(gameset, division)
    if fixtures:
        report.extend(fixture_upper())
    report.check_order()
    return report


def verify_day3(arena: GameArena | None = None) -> BoundReport:
    """Run the day-4 method one day earlier, where the true count is known."""
    arena = arena or GameArena()
    day2 = enumerate_day(2, arena)
    report = analyse(day2)
    published = fixture_division(arena)
    published.validate(day2)
    report.add("fixture_upper_simple", "upper", "(prod (|T_i| + 1))^2", simple_upper(published),
               "fixtures/fig4_chains.json")
    report.add("fixture_upper_refined", "upper", "(sum S_i + 1)^2",
               refined_upper(day2, published, len(published))["upper_refined"].value,
               "fixtures/fig4_chains.json")
    truth = len(enumerate_day(3, arena))
    report.add("truth", "count", "|games born by day 3|", truth, "enumeration")
    report.check_order()
    for e in report.entries:
        if (e.kind == "lower" and e.value > truth) or (e.kind == "upper" and e.value < truth):
            raise InvariantViolation(f"{e.name} = {e.value} does not bound {truth}")
    report.meta["sandwich"] = True
    return report
