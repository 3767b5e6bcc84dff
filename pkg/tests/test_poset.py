"""Dominance order machinery: antichains, chain covers, decomposition."""

from fractions import Fraction

import pytest

from geopricer import (
    InputError,
    SeedStream,
    decompose_chains_antichains,
    decomposition_problems,
    max_antichain,
    min_chain_cover,
)
from geopricer.poset import dominance_matrix
from geopricer.ratmath import ceil_rat_pow

from conftest import (
    exhaustive_max_antichain_size,
    exhaustive_min_chain_cover_size,
    pairwise_below,
    rand_point,
)

F = Fraction


def test_dominance_matrix_tie_break():
    # equal points are chained by index, never mutually incomparable
    pts = [(F(1), F(1)), (F(1), F(1)), (F(0), F(2))]
    m = dominance_matrix(pts)
    assert m[0][1] and not m[1][0]
    assert not m[0][2] and not m[2][0]
    assert m[0][0] is False


def test_dominance_matrix_agrees_with_reference():
    for seed in range(50):
        rng = SeedStream(seed)
        pts = [rand_point(rng, 2, 3) for _ in range(6)]
        assert dominance_matrix(pts) == pairwise_below(pts)


def test_max_antichain_frozen():
    # anti-diagonal of 4 points
    pts = [(F(i), F(3 - i)) for i in range(4)]
    assert max_antichain(pts) == [0, 1, 2, 3]
    assert len(min_chain_cover(pts)) == 4
    # a single chain
    pts = [(F(i), F(i)) for i in range(5)]
    assert len(max_antichain(pts)) == 1
    cover = min_chain_cover(pts)
    assert len(cover) == 1 and sorted(cover[0]) == [0, 1, 2, 3, 4]


def test_equal_points_form_chains():
    pts = [(F(2), F(2))] * 4
    assert len(max_antichain(pts)) == 1
    assert len(min_chain_cover(pts)) == 1


def test_chain_cover_chains_are_chains():
    for seed in range(60):
        rng = SeedStream(seed)
        n = rng.rand_int(0, 8)
        pts = [rand_point(rng, rng.rand_int(1, 3), 4) for _ in range(n)]
        pts = [p + (F(0),) * (3 - len(p)) for p in pts]  # pad to common d
        below = pairwise_below(pts)
        cover = min_chain_cover(pts)
        assert sorted(i for ch in cover for i in ch) == list(range(n))
        for chain in cover:
            for a, b in zip(chain, chain[1:]):
                assert below[a][b]


def test_dilworth_duality_against_oracles():
    for seed in range(150):
        rng = SeedStream(seed)
        n = rng.rand_int(0, 8)
        d = rng.rand_int(1, 4)
        pts = [rand_point(rng, d, 3) for _ in range(n)]
        anti = max_antichain(pts)
        cover = min_chain_cover(pts)
        want = exhaustive_max_antichain_size(pts)
        assert len(anti) == want, seed
        below = pairwise_below(pts)
        for x in range(len(anti)):
            for y in range(x + 1, len(anti)):
                a, b = anti[x], anti[y]
                assert not below[a][b] and not below[b][a]
        assert len(cover) == want, seed
        if n <= 7:
            assert exhaustive_min_chain_cover_size(pts) == want, seed


def test_decompose_structure_random():
    for seed in range(40):
        rng = SeedStream(seed)
        n = rng.rand_int(0, 12)
        pts = [rand_point(rng, 2, 5) for _ in range(n)]
        eps = [F(1), F(1, 2), F(1, 4)][seed % 3]
        dec = decompose_chains_antichains(pts, eps)
        assert decomposition_problems(pts, dec.antichains, dec.chains, eps) == []
        assert dec.threshold == ceil_rat_pow(
            n, 4 * eps.denominator - eps.numerator, 4 * eps.denominator
        )


def test_decompose_peels_large_antichains():
    # 9 points on the anti-diagonal, eps = 1: threshold = ceil(9^(3/4)) = 6,
    # so the single maximum antichain of size 9 must be peeled
    pts = [(F(i), F(8 - i)) for i in range(9)]
    dec = decompose_chains_antichains(pts, F(1))
    assert dec.threshold == 6
    assert len(dec.antichains) == 1 and len(dec.antichains[0]) == 9
    assert dec.chains == []


def test_decompose_chain_only():
    pts = [(F(i), F(i)) for i in range(7)]
    dec = decompose_chains_antichains(pts, F(1, 2))
    assert dec.antichains == []
    assert len(dec.chains) == 1


def test_decompose_epsilon_domain():
    with pytest.raises(InputError):
        decompose_chains_antichains([], F(0))
    with pytest.raises(InputError):
        decompose_chains_antichains([], F(3, 2))


def test_decomposition_problems_reports_faults():
    pts = [(F(0), F(1)), (F(1), F(0)), (F(2), F(2))]
    # index 2 missing
    assert decomposition_problems(pts, [[0, 1]], []) != []
    # comparable pair labelled an antichain
    assert decomposition_problems(pts, [[0, 2]], [[1]]) != []
    # incomparable pair labelled a chain
    assert decomposition_problems(pts, [], [[0, 1], [2]]) != []
    assert decomposition_problems(pts, [[0, 1]], [[2]]) == []
