import itertools
import math

import numpy as np
import pytest

import oracles
from altpaths.constructions import (
    BlockSpec,
    ChainFamily,
    auto_blockspec,
    block_coloring,
    build_chain,
    complete_blockspec,
    complete_colorings,
    make_rng,
    matching_chain_paths,
    odd_path_coloring,
    random_coloring,
    theorem31_coloring,
)
from altpaths.core import BLUE, RED, ColoringMatrix, codegree_table, validate
from altpaths.counting import count_alt_paths_exact


def check_family(coloring, u, v, paths, length):
    for p in paths:
        assert p.validate(coloring) == []
        assert p.length == length
        assert p.vertices[0] == u and p.vertices[-1] == v
    inner = [p.internal() for p in paths]
    union = frozenset().union(*inner) if inner else frozenset()
    assert len(union) == sum(len(s) for s in inner)


def test_random_coloring_determinism_and_frequencies():
    assert random_coloring(20, 30, 3, 7) == random_coloring(20, 30, 3, 7)
    assert random_coloring(20, 30, 3, 7) != random_coloring(20, 30, 3, 8)
    c = random_coloring(1000, 1000, 2, 0)
    red = int((c.colors == RED).sum())
    sigma = math.sqrt(1e6 / 4)
    assert abs(red - 5e5) <= 3 * sigma
    assert validate(c) == []
    with pytest.raises(ValueError):
        random_coloring(2, 2, 1, 0)
    with pytest.raises(ValueError):
        random_coloring(2, 2, 2, None)


def test_streams_are_independent_of_order():
    a = [make_rng(5, t).integers(0, 10**9) for t in range(4)]
    b = [make_rng(5, t).integers(0, 10**9) for t in reversed(range(4))]
    assert a == b[::-1]
    assert len(set(a)) == 4


def test_block_coloring():
    assert block_coloring(2, 2).colors.tolist() == [[RED, BLUE], [BLUE, RED]]
    c = block_coloring(5, 4)
    assert c.colors[:3, :2].tolist() == [[RED] * 2] * 3
    assert (c.colors[3:, 2:] == RED).all()
    assert (c.colors[:3, 2:] == BLUE).all() and (c.colors[3:, :2] == BLUE).all()
    assert ((c.colors == RED) | (c.colors == BLUE)).all()


def test_block_coloring_three_paths_small():
    c = block_coloring(8, 8)
    t = c.colors.tolist()
    for a in range(8):
        for b in range(8):
            got = count_alt_paths_exact(c, a, b, 3, a_side="M")
            assert got == len(oracles.sequences(t, ("M", a), ("N", b), 3))


def test_theorem31_coloring():
    split = theorem31_coloring(10, 16, 2, 3)
    c = split.coloring
    assert split.n_prime == tuple(range(10)) and split.n_double_prime == tuple(range(10, 16))
    for v in split.n_double_prime:
        deg = c.degrees("N")[v]
        assert deg[0] == deg[1] == 5
        assert c.vector(v) == split.shared_vector
    for u, v in itertools.combinations(split.n_double_prime, 2):
        assert (c.colors[:, u] == c.colors[:, v]).all()
    big = theorem31_coloring(300, 300, 2, 0).coloring
    red = int((big.colors == RED).sum())
    assert abs(red - 300**2 / 2) <= 3 * math.sqrt(300**2 / 4)
    with pytest.raises(ValueError, match="balanced"):
        theorem31_coloring(9, 10, 2, 0)
    with pytest.raises(ValueError):
        theorem31_coloring(10, 8, 2, 0)
    with pytest.raises(ValueError):
        theorem31_coloring(2, 8, 2, 0)


def test_odd_path_coloring():
    c = odd_path_coloring(3, 4)
    deg_m, deg_n = c.degrees("M"), c.degrees("N")
    assert (deg_m[:, 0] == 1).all() and (deg_n[:, 0] <= 1).all()
    assert int((c.colors == RED).sum()) == 3
    t = c.colors.tolist()
    found = 0
    for a in range(3):
        for b in range(4):
            n3 = count_alt_paths_exact(c, a, b, 3, a_side="M")
            assert n3 == len(oracles.sequences(t, ("M", a), ("N", b), 3))
            found += n3 > 0
    assert found > 0
    with pytest.raises(ValueError):
        odd_path_coloring(4, 3)


def test_complete_colorings():
    k = complete_colorings(30, 3, 4)
    assert k == complete_colorings(30, 3, 4)
    assert validate(k) == []
    k = complete_colorings(200, 2, 9)
    rng = make_rng(9, 1)
    for _ in range(20):
        u, v = (int(x) for x in rng.choice(200, 2, replace=False))
        t = codegree_table(k, u, v)
        assert (np.abs(t.counts - 0.25 * 200) <= 5 * math.sqrt(200)).all()


# ---------------------------------------------------------------------------
# chain builder


def test_k1_chain_is_two_path_selection():
    rng = make_rng(51)
    for _ in range(30):
        c = random_coloring(7, 6, 2, rng)
        u, v = (int(x) for x in rng.choice(6, 2, replace=False))
        spec = auto_blockspec(c, u, v, 1)
        paths = matching_chain_paths(c, u, v, spec)
        middles = {p.vertices[1] for p in paths}
        expect = {w for w in range(7) if c.colors[w, u] != c.colors[w, v]}
        assert middles == expect and len(paths) == len(expect)
        check_family(c, u, v, paths, 2)


def test_all_red_spec():
    c = ColoringMatrix(np.full((8, 8), RED))
    spec = auto_blockspec(c, 0, 1, 2, scheme="pair")
    assert all(f.label != "BR/RR" for f in spec.families)
    assert matching_chain_paths(c, 0, 1, spec) == []


def test_blockspec_balanced_and_disjoint():
    split = theorem31_coloring(80, 160, 2, 2)
    c = split.coloring
    spec = auto_blockspec(c, 0, 1, 2, y_pool=split.n_prime)
    assert spec.target_size == 20
    assert len(spec.families) == 2
    for sizes in spec.block_sizes:
        assert all(10 <= s <= 20 for s in sizes)
    seen = {}
    for fam in spec.families:
        for i, block in enumerate(fam.blocks):
            bucket = seen.setdefault(fam.block_side(i), set())
            assert not bucket & set(block)
            bucket.update(block)
    assert 0 not in seen["N"] and 1 not in seen["N"]


@pytest.mark.parametrize("k", [2, 3])
def test_chain_paths_valid_and_size_law(k):
    split = theorem31_coloring(60, 120, k, 6)
    c = split.coloring
    rng = make_rng(6, 1)
    for pool in (split.n_prime, split.n_double_prime):
        for _ in range(5):
            u, v = (int(pool[i]) for i in rng.choice(len(pool), 2, replace=False))
            spec = auto_blockspec(c, u, v, k, y_pool=split.n_prime)
            paths = matching_chain_paths(c, u, v, spec)
            check_family(c, u, v, paths, 2 * k)
            total = 0
            for fam in spec.families:
                res = build_chain(c, u, v, fam)
                assert len(res.paths) == min(res.stage_sizes) == res.stage_sizes[-1]
                assert len(res.paths) <= fam.achieved_size
                total += len(res.paths)
            assert total == len(paths)


def test_shared_vectors_use_one_family():
    split = theorem31_coloring(40, 60, 2, 1)
    u, v = split.n_double_prime[:2]
    spec = auto_blockspec(split.coloring, u, v, 2, y_pool=split.n_prime)
    assert len(spec.families) == 1 and spec.target_size == 20
    paths = matching_chain_paths(split.coloring, u, v, spec)
    check_family(split.coloring, u, v, paths, 4)
    assert len(paths) >= 15


def test_spec_errors():
    c = random_coloring(10, 10, 2, 3)
    blue_u = [w for w in range(10) if c.colors[w, 0] == BLUE]
    red_u = [w for w in range(10) if c.colors[w, 0] == RED]
    bad = BlockSpec((ChainFamily((tuple(red_u[:1]),), BLUE),), 1)
    with pytest.raises(ValueError, match="not joined to u"):
        matching_chain_paths(c, 0, 1, bad)
    overlap = BlockSpec((ChainFamily((tuple(blue_u[:1]), (2,), tuple(blue_u[:1])), BLUE),), 1)
    with pytest.raises(ValueError, match="overlap"):
        matching_chain_paths(c, 0, 1, overlap)
    endpoint = BlockSpec((ChainFamily((tuple(blue_u[:1]), (0,), (5,)), BLUE),), 1)
    with pytest.raises(ValueError, match="endpoint"):
        matching_chain_paths(c, 0, 1, endpoint)
    with pytest.raises(ValueError):
        auto_blockspec(random_coloring(4, 4, 3, 0), 0, 1, 2)


@pytest.mark.parametrize("length", [3, 4, 5, 6])
def test_complete_chain(length):
    k = complete_colorings(120, 2, length)
    u, v = 0, 1
    spec = complete_blockspec(k, u, v, length)
    assert spec.target_size == 120 // (2 * (length - 1))
    paths = matching_chain_paths(k, u, v, spec)
    check_family(k, u, v, paths, length)
    assert len(paths) > 0


def test_complete_chain_small_exact():
    k = complete_colorings(8, 2, 2)
    t = k.colors.tolist()
    for length in (3, 4):
        spec = complete_blockspec(k, 0, 1, length)
        paths = matching_chain_paths(k, 0, 1, spec)
        allowed = set(oracles.complete_sequences(t, 0, 1, length))
        assert all(p.vertices in allowed for p in paths)
