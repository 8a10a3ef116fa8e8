"""Stratification, layer matchings and chain division of a finite poset."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .enumeration import GameSet, Poset


class InvariantViolation(AssertionError):
    """A structural property that the analysis relies on does not hold."""


class ChainDivisionFailure(InvariantViolation):
    def __init__(self, layer: int, size: int, needed: int):
        super().__init__(
            f"matching between layers {layer} and {layer + 1} has size {size}, "
            f"but {needed} is needed to saturate the smaller layer")
        self.layer = layer
        self.size = size
        self.needed = needed


@dataclass
class Stratification:
    poset: Poset
    layers: list[tuple]

    def __len__(self) -> int:
        return len(self.layers)

    def layer(self, i: int) -> tuple:
        """Layer ``i`` counted from 1 at the top."""
        return self.layers[i - 1]

    @property
    def sizes(self) -> list[int]:
        return [len(u) for u in self.layers]

    def layer_of(self) -> dict:
        return {e: i for i, layer in enumerate(self.layers, 1) for e in layer}

    @property
    def middle(self) -> int:
        """Index of the largest layer, the first one on ties."""
        sizes = self.sizes
        return sizes.index(max(sizes)) + 1


def stratify(poset: Poset) -> Stratification:
    """Peel off maximal elements repeatedly; each peel is one layer."""
    less = poset.less
    remaining = np.ones(len(poset), dtype=bool)
    layers = []
    while remaining.any():
        below_something = (less[:, remaining]).any(axis=1)
        top = remaining & ~below_something
        layers.append(tuple(poset.elements[i] for i in np.flatnonzero(top)))
        remaining &= ~top
    return Stratification(poset, layers)


def check_symmetry(strat: Stratification) -> bool:
    """Negation maps layer i onto layer m+1-i."""
    poset = strat.poset
    if not isinstance(poset, GameSet):
        raise TypeError("symmetry needs a game set")
    where = strat.layer_of()
    m = len(strat)
    for g, i in where.items():
        j = where.get(poset.arena.negate(g))
        if j != m + 1 - i:
            return False
    return True


@dataclass
class LayerGraph:
    """Bipartite graph between layer i (upper) and layer i+1 (lower)."""
    index: int
    upper: tuple
    lower: tuple
    edges: dict = field(repr=False)

    @classmethod
    def between(cls, strat: Stratification, i: int) -> "LayerGraph":
        if not 1 <= i < len(strat):
            raise IndexError(f"layer graph index {i} outside 1..{len(strat) - 1}")
        poset = strat.poset
        upper, lower = strat.layer(i), strat.layer(i + 1)
        less = poset.less
        edges = {u: [v for v in lower if less[poset.index[v], poset.index[u]]]
                 for u in upper}
        return cls(i, upper, lower, edges)

    def edge_count(self) -> int:
        return sum(len(vs) for vs in self.edges.values())


@dataclass
class Matching:
    graph: LayerGraph
    pairs: dict  # upper vertex -> lower vertex

    @property
    def size(self) -> int:
        return len(self.pairs)

    def validate(self) -> None:
        lowers = list(self.pairs.values())
        if len(set(lowers)) != len(lowers):
            raise InvariantViolation("matching reuses a lower vertex")
        for u, v in self.pairs.items():
            if v not in self.graph.edges.get(u, ()):
                raise InvariantViolation(f"matched pair ({u}, {v}) is not an edge")


def maximum_matching(left: Sequence[Hashable], adj: dict) -> dict:
    """Maximum bipartite matching by greedy start plus augmenting paths.

    Vertices and neighbours are scanned in the given order, so the result is
    deterministic.
    """
    match_l: dict = {}
    match_r: dict = {}
    for u in left:
        for v in adj.get(u, ()):
            if v not in match_r:
                match_l[u], match_r[v] = v, u
                break

    def augment(u, seen: set) -> bool:
        for v in adj.get(u, ()):
            if v in seen:
                continue
            seen.add(v)
            if v not in match_r or augment(match_r[v], seen):
                match_l[u], match_r[v] = v, u
                return True
        return False

    for u in left:
        if u not in match_l:
            augment(u, set())
    return match_l


def has_augmenting_path(left: Sequence[Hashable], adj: dict, pairs: dict) -> bool:
    """Breadth-first search for an alternating path between two free vertices."""
    match_r = {v: u for u, v in pairs.items()}
    frontier = deque(u for u in left if u not in pairs)
    seen_l = set(frontier)
    while frontier:
        u = frontier.popleft()
        for v in adj.get(u, ()):
            if pairs.get(u) == v:
                continue
            w = match_r.get(v)
            if w is None:
                return True
            if w not in seen_l:
                seen_l.add(w)
                frontier.append(w)
    return False


def layer_matching(strat: Stratification, i: int) -> Matching:
    graph = LayerGraph.between(strat, i)
    return Matching(graph, maximum_matching(graph.upper, graph.edges))


@dataclass
class ChainDivision:
    chains: list[tuple]  # each sorted from largest to smallest

    def __len__(self) -> int:
        return len(self.chains)

    @property
    def lengths(self) -> list[int]:
        return [len(c) for c in self.chains]

    def validate(self, poset: Poset) -> None:
        seen = [e for c in self.chains for e in c]
        if len(seen) != len(set(seen)):
            raise InvariantViolation("chains overlap")
        if set(seen) != set(poset.elements):
            raise InvariantViolation("chains do not cover the poset")
        less = poset.less
        for c in self.chains:
            idx = [poset.index[e] for e in c]
            for a, b in zip(idx, idx[1:]):
                if not less[b, a]:
                    raise InvariantViolation(f"{poset.elements[b]} is not below {poset.elements[a]}")


def chain_division(strat: Stratification) -> ChainDivision:
    """Glue layer matchings into chains that each pass through the middle layer.

    Above the middle layer every element is matched into the layer below it,
    below the middle layer every element is matched into the layer above it,
    so following matched edges from each middle element traces one chain.
    """
    c = strat.middle
    m = len(strat)
    up: dict = {}    # lower -> upper, for layers above the middle
    down: dict = {}  # upper -> lower, for layers below the middle
    for i in range(1, m):
        match = layer_matching(strat, i)
        match.validate()
        upper, lower = match.graph.upper, match.graph.lower
        if i < c:
            needed = len(upper)
            if match.size != needed:
                raise ChainDivisionFailure(i, match.size, needed)
            up.update({v: u for u, v in match.pairs.items()})
        else:
            needed = len(lower)
            if match.size != needed:
                raise ChainDivisionFailure(i, match.size, needed)
            down.update(match.pairs)
    chains = []
    for mid in strat.layer(c):
        head = []
        v = mid
        while v in up:
            v = up[v]
            head.append(v)
        tail = []
        v = mid
        while v in down:
            v = down[v]
            tail.append(v)
        chains.append((tuple(reversed(head)) + (mid,) + tuple(tail), mid))
    # shortest chains first, ties by middle game
    order = strat.poset.index
    chains.sort(key=lambda cm: (len(cm[0]), order[cm[1]]))
    return ChainDivision([ch for ch, _ in chains])


def width_certificate(poset: Poset, strat: Stratification, division: ChainDivision
                      ) -> tuple[int, tuple, ChainDivision]:
    """Dilworth certificate: an antichain and a chain cover of equal size."""
    antichain = strat.layer(strat.middle)
    division.validate(poset)
    if not poset.is_antichain(antichain):
        raise InvariantViolation("middle layer is not an antichain")
    if len(antichain) != len(division):
        raise InvariantViolation(
            f"antichain of {len(antichain)} vs cover of {len(division)} chains")
    return len(antichain), antichain, division
