import random

import pytest

from tamlab.engine import (
    attach,
    black_set,
    check_directed,
    enumerate_producible,
    frontier,
    run_to_quiescence,
)
from tamlab.errors import BudgetExceeded, IllegalAttachment, SeedOutsideWindow
from tamlab.fixtures import fixture_system
from tamlab.model import (
    Assembly,
    Glue,
    NULL_GLUE,
    Placement,
    TileAssemblySystem,
    TileType,
    Window,
    is_tau_stable,
)


def glue(label, strength=1):
    return Glue(label, strength)


def one_tile_system(**kwargs):
    """A single tile type that is also the seed."""
    t = TileType("a", **kwargs)
    return TileAssemblySystem([t], Assembly([Placement((0, 0), t)]), 1)


def east_row_system():
    start = TileType("start", east=glue("g"))
    cell = TileType("cell", west=glue("g"), east=glue("g"))
    return TileAssemblySystem(
        [start, cell], Assembly([Placement((0, 0), start)]), 1
    )


class TestFrontier:
    def test_no_glues_empty(self):
        s = one_tile_system()
        assert frontier(s, s.seed) == []

    def test_single_east_option(self):
        s = east_row_system()
        f = frontier(s, s.seed)
        assert [(pl.pos, pl.tile.name) for pl in f] == [((1, 0), "cell")]

    def test_sierpinski_corner_rule_tile(self):
        s = fixture_system("sierpinski")
        a = s.seed
        a = attach(s, a, (1, 0), s.tile("edge_e"))
        a = attach(s, a, (2, 0), s.tile("edge_e"))
        a = attach(s, a, (0, 1), s.tile("edge_n"))
        a = attach(s, a, (0, 2), s.tile("edge_n"))
        f = {(pl.pos, pl.tile.name) for pl in frontier(s, a)}
        # growth tips plus exactly one rule tile at the inner corner
        assert f == {((3, 0), "edge_e"), ((0, 3), "edge_n"), ((1, 1), "r11")}
        rule_entries = {e for e in f if e[1].startswith("r")}
        assert rule_entries == {((1, 1), "r11")}


class TestAttach:
    def test_empty_frontier_raises(self):
        s = one_tile_system()
        with pytest.raises(IllegalAttachment):
            attach(s, s.seed, (1, 0), s.tile("a"))

    def test_grows_by_one_and_preserves_input(self):
        s = east_row_system()
        before = s.seed
        after = attach(s, before, (1, 0), s.tile("cell"))
        assert len(after) == len(before) + 1
        assert len(before) == 1

    def test_random_growth_stays_stable(self):
        rng = random.Random(5)
        s = fixture_system("sierpinski")
        for _ in range(20):
            a = s.seed
            for _ in range(rng.randint(1, 12)):
                f = frontier(s, a)
                if not f:
                    break
                pl = rng.choice(f)
                a = attach(s, a, pl.pos, pl.tile)
                assert is_tau_stable(a, s.temperature)

    def test_frontier_never_reoffers_filled_position(self):
        rng = random.Random(9)
        s = fixture_system("sierpinski")
        a = s.seed
        for _ in range(15):
            f = frontier(s, a)
            if not f:
                break
            pl = rng.choice(f)
            a = attach(s, a, pl.pos, pl.tile)
            assert all(entry.pos != pl.pos for entry in frontier(s, a))


class TestRunToQuiescence:
    def test_no_growth(self):
        s = one_tile_system()
        a, exhausted = run_to_quiescence(s, Window(0, 0, 5, 5))
        assert a == s.seed and not exhausted

    def test_row_fills_window(self):
        s = east_row_system()
        a, exhausted = run_to_quiescence(s, Window(0, 0, 9, 0))
        assert len(a) == 10 and not exhausted
        assert a.positions() == {(x, 0) for x in range(10)}

    def test_budget_exhaustion(self):
        s = east_row_system()
        a, exhausted = run_to_quiescence(s, Window(0, 0, 9, 0), step_budget=3)
        assert len(a) == 4 and exhausted

    def test_seed_outside_window(self):
        s = east_row_system()
        with pytest.raises(SeedOutsideWindow):
            run_to_quiescence(s, Window(5, 5, 9, 9))

    @pytest.mark.parametrize("name", ["row", "comb", "two_arm", "sierpinski"])
    def test_tie_break_irrelevant_for_directed_fixtures(self, name):
        s = fixture_system(name)
        w = Window(0, 0, 11, 11)
        a1, _ = run_to_quiescence(s, w, tie_break="lex")
        a2, _ = run_to_quiescence(s, w, tie_break="revlex")
        assert a1 == a2

    def test_sierpinski_window_count(self):
        s = fixture_system("sierpinski")
        a, exhausted = run_to_quiescence(s, Window(0, 0, 15, 15))
        assert len(a) == 256 and not exhausted


class TestBlackSet:
    def test_all_black_gives_domain(self):
        s = fixture_system("row")
        a, _ = run_to_quiescence(s, Window(0, 0, 7, 0))
        assert black_set(a) == a.positions()

    def test_no_black_tiles(self):
        t = TileType("a", east=glue("g"), west=glue("g"))
        s = TileAssemblySystem([t], Assembly([Placement((0, 0), t)]), 1)
        a, _ = run_to_quiescence(s, Window(0, 0, 5, 0))
        assert black_set(a) == frozenset()

    def test_sierpinski_matches_bit_test(self):
        s = fixture_system("sierpinski")
        a, _ = run_to_quiescence(s, Window(0, 0, 15, 15))
        oracle = {(x, y) for x in range(16) for y in range(16) if x & y == 0}
        assert black_set(a) == oracle


class TestEnumerateProducible:
    def test_seed_only(self):
        s = one_tile_system()
        assert list(enumerate_producible(s, Window(0, 0, 3, 3))) == [s.seed]

    def test_two_symmetric_positions(self):
        seed = TileType("s", east=glue("g"), west=glue("h"))
        t = TileType("t", west=glue("g"), east=glue("h"))
        s = TileAssemblySystem([seed, t], Assembly([Placement((0, 0), seed)]), 1)
        got = list(enumerate_producible(s, Window(-1, 0, 1, 0), max_size=2))
        assert len(got) == 3

    def test_row_one_per_length(self):
        s = east_row_system()
        got = list(enumerate_producible(s, Window(0, 0, 4, 0), max_size=5))
        assert sorted(len(a) for a in got) == [1, 2, 3, 4, 5]

    def test_each_assembly_once_and_stable(self):
        s = fixture_system("sierpinski")
        got = list(enumerate_producible(s, Window(0, 0, 2, 2), max_size=6))
        keys = {a.canonical_key() for a in got}
        assert len(keys) == len(got)
        assert all(is_tau_stable(a, s.temperature) for a in got)

    def test_dedup_cap(self):
        s = east_row_system()
        with pytest.raises(BudgetExceeded):
            list(enumerate_producible(s, Window(0, 0, 9, 0), dedup_cap=3))


def _replay(system, trace):
    a = system.seed
    for pos, name in trace:
        a = attach(system, a, pos, system.tile(name))
    return a


class TestCheckDirected:
    def test_row_directed(self):
        v = check_directed(fixture_system("row"), Window(0, 0, 9, 0))
        assert v.kind == "directed"

    def test_two_choice_conflict_with_replayable_traces(self):
        s = fixture_system("two_choice")
        v = check_directed(s, Window(0, 0, 3, 3))
        assert v.kind == "conflict" and v.pos == (1, 0)
        assert {v.tile_a, v.tile_b} == {"pick_a", "pick_b"}
        a = _replay(s, v.trace_a)
        b = _replay(s, v.trace_b)
        assert a[v.pos].name == v.tile_a and b[v.pos].name == v.tile_b
        assert a[v.pos] != b[v.pos]

    def test_temperature_two_conflict(self):
        seed = TileType("s", east=glue("g", 2))
        x = TileType("x", west=glue("g", 2))
        y = TileType("y", west=glue("g", 2))
        s = TileAssemblySystem([seed, x, y], Assembly([Placement((0, 0), seed)]), 2)
        v = check_directed(s, Window(0, 0, 2, 0))
        assert v.kind == "conflict" and v.pos == (1, 0)
        assert {v.tile_a, v.tile_b} == {"x", "y"}
        assert _replay(s, v.trace_a)[v.pos].name == v.tile_a
        assert _replay(s, v.trace_b)[v.pos].name == v.tile_b

    def test_loop_back_placement_is_not_a_conflict(self):
        # S's output points back at P's cell, but every support chain for
        # the competing type runs through that very cell, so the system is
        # directed; the naive reachability relation alone would flag it
        seed = TileType("seed", east=glue("a"))
        p = TileType("p", west=glue("a"), east=glue("b"))
        q = TileType("q", west=glue("b"), north=glue("c"))
        r = TileType("r", south=glue("c"), west=glue("d"))
        t = TileType("t", east=glue("d"), south=glue("e"))
        z = TileType("z", north=glue("e"))
        s = TileAssemblySystem(
            [seed, p, q, r, t, z], Assembly([Placement((0, 0), seed)]), 1
        )
        v = check_directed(s, Window(0, 0, 4, 4))
        assert v.kind == "directed"

    def test_sierpinski_directed(self):
        v = check_directed(fixture_system("sierpinski"), Window(0, 0, 15, 15))
        assert v.kind == "directed"

    def test_comb_and_two_arm_directed(self):
        assert check_directed(fixture_system("comb"), Window(0, 0, 9, 9)).kind == "directed"
        assert check_directed(fixture_system("two_arm"), Window(0, 0, 9, 9)).kind == "directed"

    def test_tiny_budget_inconclusive(self):
        s = fixture_system("sierpinski")
        v = check_directed(s, Window(0, 0, 127, 127), budget=500)
        assert v.kind == "inconclusive"
        assert v.reason
