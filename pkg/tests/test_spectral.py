"""Tests for exact ranks and eigenvalue multiplicities."""

import math
import random
from fractions import Fraction

import pytest

import qshuffle.spectral as spectral
from qshuffle.hecke import HeckeElt, mul, tau
from qshuffle.spectral import (
    _PREPASS_PRIMES,
    multiplicity,
    rank,
    rank_mod,
    tau_matrix,
    verify_multiplicities,
)
from qshuffle.symgroup import enumerate_perms


def test_rank_frozen_cases():
    assert rank([]) == 0
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 2, 3], [4, 5, 6]]) == 2
    assert rank([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 2
    assert rank([[-3], [6], [0]]) == 1
    assert rank([[2, -1], [-4, 2], [6, -3]]) == 1


def test_rank_input_validation():
    with pytest.raises(ValueError):
        rank([[1, 2], [3]])
    with pytest.raises(TypeError):
        rank([[1.0, 2.0]])


def test_rank_does_not_mutate():
    m = [[2, 4], [1, 3]]
    rank(m)
    assert m == [[2, 4], [1, 3]]


def _rank_oracle(matrix):
    """Gaussian elimination over Q with exact fractions."""
    a = [[Fraction(x) for x in row] for row in matrix]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        a[r] = [x / a[r][col] for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def test_rank_matches_fraction_oracle_randomized():
    rng = random.Random(20260816)
    for _ in range(120):
        nrows = rng.randint(1, 5)
        ncols = rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(ncols)] for _ in range(nrows)]
        assert rank(m) == _rank_oracle(m), m


def test_rank_on_constructed_low_rank():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 5)
        r = rng.randint(1, n - 1)
        us = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(r)]
        vs = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(r)]
        m = [
            [sum(us[k][i] * vs[k][j] for k in range(r)) for j in range(n)]
            for i in range(n)
        ]
        got = rank(m)
        assert got == _rank_oracle(m)
        assert got <= r


def test_rank_mod_agrees_on_small_entries():
    rng = random.Random(11)
    for _ in range(60):
        nrows = rng.randint(1, 5)
        ncols = rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(ncols)] for _ in range(nrows)]
        exact = rank(m)
        for p in _PREPASS_PRIMES:
            # entries are tiny next to these primes, so no rank drop
            assert rank_mod(m, p) == exact


def test_tau_matrix_rank_two_frozen():
    for q0 in (1, 2, 3, 5):
        assert tau_matrix(2, q0) == ((1, q0), (1, q0))


def test_tau_matrix_validates():
    with pytest.raises(ValueError):
        tau_matrix(2, 0)


def test_tau_matrix_columns_are_products():
    perms = enumerate_perms(3)
    index = {w: i for i, w in enumerate(perms)}
    for q0 in (1, 2):
        m = tau_matrix(3, q0)
        for j, w in enumerate(perms):
            prod = mul(tau(3), HeckeElt.basis(w)).specialize(q0)
            col = {index[u]: c for u, c in prod.items()}
            for i in range(6):
                assert m[i][j] == col.get(i, 0)


def test_multiplicity_frozen_small():
    for q0 in (1, 2, 3):
        assert [multiplicity(2, k, q0) for k in (0, 1, 2)] == [1, 0, 1]
        assert [multiplicity(3, k, q0) for k in (0, 1, 2, 3)] == [2, 3, 0, 1]
        assert [multiplicity(4, k, q0) for k in range(5)] == [9, 8, 6, 0, 1]


def test_multiplicity_skips_k_n_minus_one():
    for n in (2, 3, 4):
        for q0 in (1, 2):
            assert multiplicity(n, n - 1, q0) == 0


def test_multiplicities_sum_to_group_order():
    for n in (2, 3, 4):
        assert sum(multiplicity(n, k, 2) for k in range(n + 1)) == math.factorial(n)


def test_multiplicity_validates_k():
    with pytest.raises(ValueError):
        multiplicity(3, 4, 2)
    with pytest.raises(ValueError):
        multiplicity(3, -1, 2)


def test_full_rank_at_absent_eigenvalue():
    # [2]_1 = 2 is not an eigenvalue at n = 3, so the shift has full rank
    m = [list(row) for row in tau_matrix(3, 1)]
    for i in range(6):
        m[i][i] -= 2
    assert rank(m) == 6


def test_verify_multiplicities():
    result = verify_multiplicities(3)
    assert result.passed
    assert result.params == {"n": 3, "q0": [1, 2, 3]}
    # one row per (q0, k) plus one sum row per q0
    assert len(result.details) == 3 * (4 + 1)


def test_large_n_gate():
    with pytest.raises(ValueError, match="allow_large"):
        multiplicity(6, 0, 2)


def test_modular_prepass_matches_exact(monkeypatch):
    # force the consensus path on a size where exact answers are known
    multiplicity.cache_clear()
    monkeypatch.setattr(spectral, "_EXACT_N_CEILING", 2)
    try:
        got = [multiplicity(3, k, 2, allow_large=True) for k in range(4)]
    finally:
        multiplicity.cache_clear()
    assert got == [2, 3, 0, 1]
