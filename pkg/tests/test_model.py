import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamlab.errors import OccupiedPosition, UnknownTileType
from tamlab.model import (
    Assembly,
    DIRECTIONS,
    Direction,
    Glue,
    NULL_GLUE,
    Placement,
    TileAssemblySystem,
    TileType,
    Window,
    attach_strength,
    can_attach,
    interaction_strength,
    is_tau_stable,
)


def tile(name, n=None, e=None, s=None, w=None, black=False):
    def g(spec):
        if spec is None:
            return NULL_GLUE
        label, strength = spec
        return Glue(label, strength)

    return TileType(name, north=g(n), east=g(e), south=g(s), west=g(w), black=black)


class TestGlue:
    def test_null_glue(self):
        assert NULL_GLUE.is_null and NULL_GLUE.strength == 0

    def test_null_with_strength_rejected(self):
        with pytest.raises(ValueError):
            Glue(None, 1)

    def test_labeled_needs_strength(self):
        with pytest.raises(ValueError):
            Glue("g", 0)

    def test_label_token_rules(self):
        with pytest.raises(ValueError):
            Glue("", 1)
        with pytest.raises(ValueError):
            Glue("a b", 1)


def test_direction_opposite_involution():
    for d in DIRECTIONS:
        assert d.opposite.opposite is d
    assert Direction.NORTH.opposite is Direction.SOUTH
    assert Direction.EAST.opposite is Direction.WEST


class TestInteraction:
    def test_exact_match(self):
        a = tile("a", e=("g", 1))
        b = tile("b", w=("g", 1))
        assert interaction_strength(a, b, Direction.EAST) == 1

    def test_label_mismatch(self):
        a = tile("a", e=("g", 1))
        b = tile("b", w=("h", 1))
        assert interaction_strength(a, b, Direction.EAST) == 0

    def test_strength_mismatch_contributes_nothing(self):
        a = tile("a", e=("g", 1))
        b = tile("b", w=("g", 2))
        assert interaction_strength(a, b, Direction.EAST) == 0

    def test_null_side(self):
        a = tile("a")
        b = tile("b", w=("g", 1))
        assert interaction_strength(a, b, Direction.EAST) == 0


_glues = st.one_of(
    st.none(),
    st.tuples(st.sampled_from(["g", "h", "k"]), st.integers(1, 3)),
)


def _random_tile(name, draw4):
    n, e, s, w = draw4
    return tile(name, n=n, e=e, s=s, w=w)


@given(
    a4=st.tuples(_glues, _glues, _glues, _glues),
    b4=st.tuples(_glues, _glues, _glues, _glues),
    d=st.sampled_from(DIRECTIONS),
)
def test_interaction_symmetry(a4, b4, d):
    a = _random_tile("a", a4)
    b = _random_tile("b", b4)
    assert interaction_strength(a, b, d) == interaction_strength(b, a, d.opposite)


class TestAttachStrength:
    def test_no_neighbors(self):
        t = tile("t", e=("g", 1))
        assert attach_strength(Assembly(), (3, 4), t) == 0

    def test_single_strength_two_bond(self):
        seed = tile("s", e=("g", 2))
        t = tile("t", w=("g", 2))
        a = Assembly([Placement((0, 0), seed)])
        assert attach_strength(a, (1, 0), t) == 2

    def test_two_bonds_add(self):
        west = tile("w", e=("g", 1))
        south = tile("s", n=("h", 1))
        t = tile("t", w=("g", 1), s=("h", 1))
        a = Assembly([Placement((0, 1), west), Placement((1, 0), south)])
        assert attach_strength(a, (1, 1), t) == 2

    def test_occupied_position(self):
        t = tile("t")
        a = Assembly([Placement((0, 0), t)])
        with pytest.raises(OccupiedPosition):
            attach_strength(a, (0, 0), t)

    def test_monotone_in_assembly(self):
        rng = random.Random(7)
        pool = [
            tile("a", e=("g", 1), w=("g", 1), n=("h", 1), s=("h", 1)),
            tile("b", e=("g", 1), n=("h", 1)),
            tile("c", w=("g", 1), s=("h", 1)),
        ]
        for _ in range(200):
            placements = {}
            pos = (0, 0)
            for _ in range(rng.randint(1, 8)):
                placements[pos] = rng.choice(pool)
                d = rng.choice(DIRECTIONS)
                pos = d.step(pos)
            a = Assembly(placements)
            target = pos if pos not in placements else (99, 99)
            t = rng.choice(pool)
            base = attach_strength(a, target, t)
            extra = rng.choice(DIRECTIONS).step(target)
            if extra in placements or extra == target:
                continue
            bigger = Assembly({**placements, extra: rng.choice(pool)})
            assert attach_strength(bigger, target, t) >= base


class TestCanAttach:
    def setup_method(self):
        self.seed = tile("seed", e=("g", 1), n=("g", 1))
        self.t = tile("t", w=("g", 1), s=("g", 1))

    def _system(self, temperature):
        return TileAssemblySystem(
            [self.seed, self.t], Assembly([Placement((0, 0), self.seed)]), temperature
        )

    def test_cooperation_required_at_temperature_two(self):
        s = self._system(2)
        assert not can_attach(s, s.seed, (1, 0), self.t)

    def test_two_bonds_cooperate(self):
        s = self._system(2)
        partial = Assembly([Placement((0, 0), self.seed), Placement((1, 0), self.seed)])
        # only the south bond reaches (1, 1): strength 1 < 2
        assert not can_attach(s, partial, (1, 1), self.t)
        corner = Assembly(
            [
                Placement((0, 0), self.seed),
                Placement((1, 0), self.seed),
                Placement((0, 1), self.seed),
            ]
        )
        assert can_attach(s, corner, (1, 1), self.t)

    def test_single_bond_suffices_at_temperature_one(self):
        s = self._system(1)
        assert can_attach(s, s.seed, (1, 0), self.t)

    def test_unknown_tile(self):
        s = self._system(1)
        with pytest.raises(UnknownTileType):
            can_attach(s, s.seed, (1, 0), tile("stranger", w=("g", 1)))


def _brute_min_cut(assembly):
    """Minimum over all bipartitions of the total crossing bond strength."""
    nodes = sorted(assembly.positions())
    n = len(nodes)
    index = {p: i for i, p in enumerate(nodes)}
    edges = []
    for p in nodes:
        tp = assembly[p]
        for d in (Direction.EAST, Direction.NORTH):
            q = d.step(p)
            if q in assembly:
                s = interaction_strength(tp, assembly[q], d)
                if s:
                    edges.append((index[p], index[q], s))
    if n <= 1:
        return None
    # node 0 is pinned to one side; bit k-1 of the subset gives node k's side
    subsets = np.arange(0, 1 << (n - 1))
    subsets = subsets[subsets != 0] if n > 1 else subsets
    cut = np.zeros(len(subsets), dtype=np.int64)
    for i, j, s in edges:
        side_i = (subsets >> (i - 1)) & 1 if i != 0 else np.zeros_like(subsets)
        side_j = (subsets >> (j - 1)) & 1 if j != 0 else np.zeros_like(subsets)
        cut += s * (side_i != side_j)
    return int(cut.min())


def _random_assembly(rng, max_tiles=12):
    pool = []
    for name in "abcd":
        sides = {}
        for key in "nesw":
            if rng.random() < 0.6:
                sides[key] = (rng.choice("gh"), rng.randint(1, 2))
            else:
                sides[key] = None
        pool.append(tile(name, **sides))
    placements = {}
    pos = (0, 0)
    for _ in range(rng.randint(1, max_tiles)):
        placements.setdefault(pos, rng.choice(pool))
        pos = rng.choice(DIRECTIONS).step(pos)
    return Assembly(placements)


class TestTauStable:
    def test_singleton_always_stable(self):
        a = Assembly([Placement((0, 0), tile("t"))])
        assert is_tau_stable(a, 2)

    def test_empty_stable(self):
        assert is_tau_stable(Assembly(), 5)

    def test_single_bond_row(self):
        a = tile("a", e=("g", 1))
        b = tile("b", w=("g", 1))
        asm = Assembly([Placement((0, 0), a), Placement((1, 0), b)])
        assert is_tau_stable(asm, 1)
        # min cut over the single bipartition is 1 < 2
        assert not is_tau_stable(asm, 2)

    def test_matches_brute_force_cuts(self):
        rng = random.Random(42)
        checked = 0
        for _ in range(1000):
            asm = _random_assembly(rng)
            cut = _brute_min_cut(asm)
            if cut is None:
                continue
            checked += 1
            assert is_tau_stable(asm, 1) == (cut >= 1)
            assert is_tau_stable(asm, 2) == (cut >= 2)
        assert checked > 800

    def test_temperature_one_is_connectivity(self):
        rng = random.Random(11)
        for _ in range(1000):
            asm = _random_assembly(rng)
            positions = asm.positions()
            # connectivity of the binding graph by plain search
            adj = {p: [] for p in positions}
            for p in positions:
                for d in DIRECTIONS:
                    q = d.step(p)
                    if q in positions and interaction_strength(asm[p], asm[q], d) >= 1:
                        adj[p].append(q)
            start = next(iter(positions))
            seen = {start}
            stack = [start]
            while stack:
                cur = stack.pop()
                for q in adj[cur]:
                    if q not in seen:
                        seen.add(q)
                        stack.append(q)
            assert is_tau_stable(asm, 1) == (len(seen) == len(positions))


class TestAssembly:
    def test_with_placement_leaves_original(self):
        t = tile("t")
        a = Assembly([Placement((0, 0), t)])
        b = a.with_placement((1, 0), t)
        assert len(a) == 1 and len(b) == 2
        with pytest.raises(OccupiedPosition):
            b.with_placement((1, 0), t)

    def test_equality_is_extensional(self):
        t = tile("t")
        a = Assembly({(0, 0): t, (1, 0): t})
        b = Assembly([Placement((1, 0), t), Placement((0, 0), t)])
        assert a == b and hash(a) == hash(b)


class TestWindow:
    def test_count_and_contains(self):
        w = Window(-1, -1, 2, 3)
        assert w.count == 4 * 5
        assert w.contains((2, 3)) and not w.contains((3, 3))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Window(1, 0, 0, 0)

    def test_nesting(self):
        assert Window(0, 0, 9, 9).contains_window(Window(1, 1, 8, 8))
        assert not Window(1, 1, 8, 8).contains_window(Window(0, 0, 9, 9))


class TestSystemValidation:
    def test_duplicate_names_rejected(self):
        t = tile("t")
        with pytest.raises(ValueError):
            TileAssemblySystem([t, tile("t")], Assembly([Placement((0, 0), t)]), 1)

    def test_seed_tile_must_be_known(self):
        t = tile("t")
        with pytest.raises(UnknownTileType):
            TileAssemblySystem([t], Assembly([Placement((0, 0), tile("x"))]), 1)

    def test_seed_must_be_connected(self):
        t = tile("t")
        seed = Assembly([Placement((0, 0), t), Placement((2, 0), t)])
        with pytest.raises(ValueError):
            TileAssemblySystem([t], seed, 1)

    def test_seed_must_be_stable(self):
        a = tile("a", e=("g", 1))
        b = tile("b", w=("g", 1))
        seed = Assembly([Placement((0, 0), a), Placement((1, 0), b)])
        TileAssemblySystem([a, b], seed, 1)
        with pytest.raises(ValueError):
            TileAssemblySystem([a, b], seed, 2)

    def test_temperature_positive(self):
        t = tile("t")
        with pytest.raises(ValueError):
            TileAssemblySystem([t], Assembly([Placement((0, 0), t)]), 0)
