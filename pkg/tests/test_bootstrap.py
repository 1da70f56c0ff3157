import itertools
import random

import pytest

import hqperc.bootstrap as bootstrap
from hqperc import (
    DomainError,
    SearchAborted,
    VertexSet,
    catalog_seed,
    closure,
    layer,
    percolates,
    reference_closure,
    search_percolating_set,
    seed_r2,
    step,
    trace,
    weight,
)
from hqperc.bootstrap import _unrank_combination, closure_rounds


def even_weight(d):
    return VertexSet.of(d, [v for v in range(1 << d) if weight(v) % 2 == 0])


def test_closure_of_empty_is_empty():
    for d in range(1, 6):
        for r in range(1, d + 1):
            assert closure(VertexSet.empty(d), r) == VertexSet.empty(d)


def test_closure_of_full_is_full():
    for d in range(1, 6):
        assert closure(VertexSet.full(d), d) == VertexSet.full(d)


def test_even_weight_q3_percolates_in_one_round():
    history = trace(even_weight(3), 3)
    assert history.percolated
    assert len(history.rounds) == 2
    assert history.rounds[1] == VertexSet.full(3)


def test_pair_seed_percolates_at_two():
    assert percolates(seed_r2(4), 2)


def test_single_vertex_floods_at_one():
    for d in (1, 3, 5, 8):
        assert percolates(VertexSet.of(d, [(1 << d) - 1]), 1)


def test_seeds_below_threshold_never_percolate():
    # exhaustive over all (r-1)-subsets for d <= 5, r <= 4
    for d in range(1, 6):
        for r in range(2, min(4, d) + 1):
            for members in itertools.combinations(range(1 << d), r - 1):
                assert not percolates(VertexSet.of(d, members), r)


def test_trace_of_fixed_point_has_length_one():
    assert len(trace(VertexSet.full(3), 3).rounds) == 1


def test_trace_rounds_are_monotone_and_bounded():
    rng = random.Random(5)
    for _ in range(100):
        d = rng.randint(1, 8)
        r = rng.randint(1, d)
        history = trace(VertexSet(d, rng.getrandbits(1 << d)), r)
        for earlier, later in zip(history.rounds, history.rounds[1:]):
            assert earlier.issubset(later) and earlier != later
        assert len(history.rounds) <= 1 << d
        assert history.rounds[-1] == closure(history.rounds[0], r)
        assert history.percolated == history.rounds[-1].is_full()


def test_trace_of_catalog_seed_reaches_full():
    history = trace(catalog_seed(4), 4)
    assert history.rounds[-1] == VertexSet.full(4)


def test_closure_rounds_matches_trace():
    rng = random.Random(17)
    for _ in range(50):
        d = rng.randint(1, 7)
        r = rng.randint(1, d)
        seed = VertexSet(d, rng.getrandbits(1 << d))
        closed, rounds = closure_rounds(seed, r)
        history = trace(seed, r)
        assert closed == history.rounds[-1]
        assert rounds == len(history.rounds) - 1


def test_step_is_one_round_of_trace():
    seed = even_weight(3)
    assert step(seed, 3) == trace(seed, 3).rounds[1]


def test_threshold_validation():
    with pytest.raises(DomainError):
        closure(VertexSet.empty(3), 4)
    with pytest.raises(DomainError):
        closure(VertexSet.empty(3), 0)
    with pytest.raises(DomainError):
        percolates(VertexSet.empty(3), -1)


def test_engines_agree_exhaustively_small():
    for d in range(1, 4):
        for seed_bits in range(1 << (1 << d)):
            seed = VertexSet(d, seed_bits)
            for r in range(1, d + 1):
                assert closure(seed, r) == reference_closure(seed, r)


def test_engines_agree_randomized_d4():
    rng = random.Random(23)
    for _ in range(10_000):
        seed = VertexSet(4, rng.getrandbits(16))
        r = rng.randint(1, 4)
        assert closure(seed, r) == reference_closure(seed, r)


def test_engines_agree_on_sparse_and_clustered_seeds():
    # uniform random seeds mostly close in a round or two; sparse seeds and
    # balls around a centre drive long, partial infections instead
    rng = random.Random(37)
    for _ in range(1500):
        d = rng.randint(1, 8)
        r = rng.randint(1, d)
        n = 1 << d
        if rng.random() < 0.5:
            seed = VertexSet.of(d, rng.sample(range(n), rng.randint(0, max(1, n // 4))))
        else:
            centre = rng.randrange(n)
            radius = rng.randint(0, d)
            seed = VertexSet.of(
                d,
                [
                    v
                    for v in range(n)
                    if weight(v ^ centre) <= radius and rng.random() < 0.6
                ],
            )
        assert closure(seed, r) == reference_closure(seed, r)


def test_closure_extensive_idempotent_monotone():
    rng = random.Random(29)
    for _ in range(200):
        d = rng.randint(1, 10)
        r = rng.randint(1, d)
        a = VertexSet(d, rng.getrandbits(1 << d))
        b = a | VertexSet(d, rng.getrandbits(1 << d))
        ca = closure(a, r)
        assert a.issubset(ca)
        assert closure(ca, r) == ca
        assert ca.issubset(closure(b, r))
        if r >= 2:
            assert ca.issubset(closure(a, r - 1))


def test_infected_neighbour_counting_against_popcount_oracle():
    # one synchronous round vs a per-vertex popcount over explicit neighbourhoods
    rng = random.Random(31)
    for _ in range(300):
        d = rng.randint(1, 8)
        r = rng.randint(1, d)
        a = VertexSet(d, rng.getrandbits(1 << d))
        expected = set(a) | {
            v
            for v in range(1 << d)
            if sum(1 for i in range(d) if (v ^ (1 << i)) in a) >= r
        }
        assert step(a, r) == VertexSet.of(d, expected)


def test_search_no_triple_percolates_q3():
    assert search_percolating_set(3, 3, 3) is None


def test_search_no_seven_vertex_seed_q4():
    assert search_percolating_set(4, 4, 7) is None


def test_search_q2_finds_the_diagonal_first():
    # pairs in lexicographic order: {0,1} and {0,2} fail; {0,3} is the witness
    witness = search_percolating_set(2, 2, 2)
    assert witness == VertexSet.of(2, [0, 3])


def test_search_no_singleton_percolates_q2():
    assert search_percolating_set(2, 2, 1) is None


def test_search_finds_full_set():
    assert search_percolating_set(2, 2, 4) == VertexSet.full(2)


def test_search_budget_aborts_loudly():
    with pytest.raises(SearchAborted) as err:
        search_percolating_set(4, 4, 7, budget=100)
    assert "budget" in str(err.value)
    with pytest.raises(SearchAborted):
        search_percolating_set(5, 4, 13)  # C(32,13) blows the default budget


def test_search_size_validation():
    with pytest.raises(DomainError):
        search_percolating_set(3, 3, 9)
    with pytest.raises(DomainError):
        search_percolating_set(3, 3, -1)
    with pytest.raises(DomainError):
        search_percolating_set(3, 3, 3, budget=0)


def test_unrank_combination_matches_enumeration():
    for n, k in ((6, 3), (7, 1), (5, 5), (8, 4)):
        combos = list(itertools.combinations(range(n), k))
        for rank, combo in enumerate(combos):
            assert tuple(_unrank_combination(n, k, rank)) == combo


def test_search_parallel_path_matches_sequential(monkeypatch):
    monkeypatch.setattr(bootstrap, "_PARALLEL_MIN", 10)
    sequential = search_percolating_set(3, 2, 2, workers=1)
    parallel = search_percolating_set(3, 2, 2, workers=2)
    assert sequential == parallel
    assert search_percolating_set(3, 3, 3, workers=2) is None


def test_trace_json_shape():
    payload = trace(even_weight(3), 3).to_json()
    assert payload["d"] == 3 and payload["r"] == 3 and payload["percolated"] is True
    assert payload["rounds"][0] == ["000", "110", "101", "011"]
    assert len(payload["rounds"]) == 2


def test_layer_seed_example_closure():
    # even-weight vertices reach everything at threshold 3 in Q_3
    assert closure(layer(3, 0) | layer(3, 2), 3) == VertexSet.full(3)
