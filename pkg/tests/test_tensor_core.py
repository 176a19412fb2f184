import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tetradgauge import tensor_core as tc


@pytest.mark.parametrize("idx, expected", [
    ((0, 1, 2, 3), 1),
    ((1, 0, 2, 3), -1),
    ((0, 0, 2, 3), 0),
])
def test_levi_civita_examples(idx, expected):
    assert tc.levi_civita(*idx) == expected


@pytest.mark.parametrize("mu, nu, expected", [((0), 0, -1), (2, 2, 1), (0, 1, 0)])
def test_eta_examples(mu, nu, expected):
    assert tc.eta(mu, nu) == expected


def test_eta_is_involutive():
    assert np.array_equal(tc.ETA @ tc.ETA, np.eye(4))
    assert np.count_nonzero(tc.ETA - np.diag(np.diag(tc.ETA))) == 0


def test_levi_civita_total_antisymmetry_exhaustive():
    transpositions = [(a, b) for a, b in itertools.combinations(range(4), 2)]
    for idx in itertools.product(range(4), repeat=4):
        base = tc.levi_civita(*idx)
        assert tc.LEVI_CIVITA[idx] == base
        for a, b in transpositions:
            swapped = list(idx)
            swapped[a], swapped[b] = swapped[b], swapped[a]
            assert tc.levi_civita(*swapped) == -base


@pytest.mark.parametrize("idx, expected", [
    ((0, 1, 0, 1), 2),
    ((0, 1, 1, 0), -2),
    ((0, 1, 2, 3), 0),
])
def test_epsilon_pair_contraction_examples(idx, expected):
    assert tc.epsilon_pair_contraction(*idx) == expected


def test_epsilon_pair_contraction_delta_identity_exhaustive():
    d = np.eye(4, dtype=int)
    for x, h, l, s in itertools.product(range(4), repeat=4):
        want = 2 * (d[x, l] * d[h, s] - d[x, s] * d[h, l])
        assert tc.epsilon_pair_contraction(x, h, l, s) == want


@pytest.mark.parametrize("pair, expected", [((0, 1), (0, 1)), ((1, 0), (0, -1)), ((2, 3), (5, 1))])
def test_pair_encode_examples(pair, expected):
    assert tc.pair_encode(*pair) == expected


def test_pair_encode_degenerate():
    with pytest.raises(ValueError, match="degenerate pair"):
        tc.pair_encode(2, 2)


def test_pair_roundtrip_all_codes():
    for code in range(6):
        a, b = tc.pair_decode(code)
        assert a < b
        assert tc.pair_encode(a, b) == (code, 1)
        assert tc.pair_encode(b, a) == (code, -1)


@pytest.mark.parametrize("bad", [-1, 4, 1.5, True])
def test_index_range_checked(bad):
    with pytest.raises((ValueError, TypeError)):
        tc.levi_civita(bad, 0, 1, 2)


@given(st.lists(st.floats(-10, 10), min_size=6, max_size=6))
def test_expand_compress_roundtrip(values):
    stored = np.array(values)
    full = tc.expand_pairs(stored, 0)
    assert np.array_equal(full, -full.T)
    assert np.array_equal(tc.compress_pairs(full, 0), stored)


def test_expand_pairs_inner_axis(rng):
    stored = rng.normal(size=(3, 6, 2))
    full = tc.expand_pairs(stored, 1)
    assert full.shape == (3, 4, 4, 2)
    for code, (a, b) in enumerate(tc.PAIRS):
        assert np.array_equal(full[:, a, b], stored[:, code])
        assert np.array_equal(full[:, b, a], -stored[:, code])
    assert np.array_equal(tc.compress_pairs(full, 1), stored)


def test_contract_matches_plain_einsum(rng):
    a = rng.normal(size=(4, 4, 4, 4))
    got = tc.contract("ijkl,klmn,mnij->", a, tc.LEVI_CIVITA, a)
    assert got == pytest.approx(np.einsum("ijkl,klmn,mnij->", a, tc.LEVI_CIVITA, a), rel=1e-12)
