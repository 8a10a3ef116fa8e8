import random

import numpy as np
import pytest

from dayfour.enumeration import (InfeasibleError, Poset, SizeGuardError, antichains,
                                 count_antichains, enumerate_day, load, loads, order_matrix)


@pytest.mark.parametrize("n, count", [(0, 1), (1, 4), (2, 22)])
def test_small_day_counts(n, count):
    assert len(enumerate_day(n)) == count


def test_day3_count(day3):
    assert len(day3) == 1474


def test_days_embed(arena, day2, day3):
    assert set(enumerate_day(1, arena).elements) <= set(day2.elements) <= set(day3.elements)


def test_closed_under_options_and_negation(arena, day3):
    members = set(day3.elements)
    for x in day3.elements:
        assert set(arena.left(x)) <= members and set(arena.right(x)) <= members
        assert arena.negate(x) in members
        assert arena.birthday(x) <= 3


def test_deterministic_and_file_round_trip(day2, tmp_path):
    other = enumerate_day(2)
    assert other.texts() == day2.texts()
    path = tmp_path / "day2.txt"
    day2.save(path)
    back = load(path)
    assert back.texts() == day2.texts()
    assert (back.leq == day2.leq).all()
    assert path.read_text().splitlines()[0] == "# day=2 count=22 format=1"


def test_threads_give_same_set():
    assert enumerate_day(2, threads=4).texts() == enumerate_day(2).texts()


@pytest.mark.parametrize("text, message", [
    ("0\n", "header"),
    ("# day=1 count=4 format=9\n", "format"),
    ("# day=1 count=3 format=1\n0\n*\n", "promises"),
    ("# day=0 count=1 format=1\n*\n", "born after"),
])
def test_loads_rejects(text, message):
    with pytest.raises(ValueError, match=message):
        loads(text)


def test_day_cap():
    with pytest.raises(InfeasibleError, match="2\\^94"):
        enumerate_day(4)


def test_matrix_matches_recursive_leq(arena, day2, day3):
    for i, a in enumerate(day2.elements):
        for j, b in enumerate(day2.elements):
            assert day2.leq[i, j] == arena.leq(a, b)
    rng = random.Random(3)
    for _ in range(5000):
        i, j = rng.randrange(len(day3)), rng.randrange(len(day3))
        assert day3.leq[i, j] == arena.leq(day3.elements[i], day3.elements[j])


def test_matrix_needs_closed_set(arena, day2):
    top = max(day2.elements, key=arena.birthday)
    with pytest.raises(ValueError, match="closed"):
        order_matrix(arena, [top])


def chain(k):
    return Poset(range(k), np.array([[i >= j for j in range(k)] for i in range(k)]))


def test_antichain_examples():
    assert count_antichains(chain(2)) == 3
    assert count_antichains(chain(3)) == 4
    flat = Poset(range(3), np.eye(3, dtype=bool))
    assert count_antichains(flat) == 8
    assert next(antichains(flat)) == ()


def test_antichains_of_day2(day2):
    sides = list(antichains(day2))
    assert len(sides) == 98
    assert len(set(sides)) == 98
    assert all(day2.is_antichain(s) for s in sides)


def test_dfs_matches_brute_force_day2(day2):
    assert count_antichains(day2, "brute") == count_antichains(day2, "dfs") == 98


def test_day1_antichains(arena):
    assert count_antichains(enumerate_day(1, arena)) == 6


def test_size_guard(day3):
    with pytest.raises(SizeGuardError):
        next(antichains(day3))
    with pytest.raises(ValueError):
        count_antichains(chain(2), "other")


def test_poset_relation_helpers(arena, day2):
    from dayfour.games import Order
    from dayfour.notation import game
    up, star = game("^", arena), game("*", arena)
    assert day2.relation(up, star) is Order.INCOMPARABLE
    assert day2.relation(arena.zero, up) is Order.LESS
    sub = day2.restrict([up, star, arena.zero])
    assert len(sub) == 3 and sub.is_antichain([up, star])


def test_bad_matrix_shape():
    with pytest.raises(ValueError, match="shape"):
        Poset([1, 2], np.eye(3, dtype=bool))
