import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import antisym, concurrence_sq_purity, eof_bruteforce, partial_trace_b, density
from pure_eof import projections as P
from pure_eof import states as S
from pure_eof.errors import DegenerateBlockError, DimensionError, InvalidBasisError

LAM = [0.5, 0.3, 0.2]
dims = st.integers(2, 4).flatmap(lambda m: st.tuples(st.just(m), st.integers(m, 5)))
seeds = st.integers(0, 2**32 - 1)


def test_enumerate_pairs_counts():
    assert [(a.as_tuple(), b.as_tuple()) for a, b in P.enumerate_pairs(2, 2)] == [((1, 2), (1, 2))]
    assert len(P.enumerate_pairs(3, 3, "rect")) == 9
    assert len(P.enumerate_pairs(2, 3, "rect")) == 3
    assert len(P.enumerate_pairs(2, 3, "paper")) == 1
    assert len(P.enumerate_pairs(3, 5, "paper")) == 9
    assert len(P.enumerate_pairs(3, 5, "rect")) == 30


def test_enumerate_pairs_lexicographic():
    pairs = P.enumerate_pairs(3, 4)
    keys = [(a.as_tuple(), b.as_tuple()) for a, b in pairs]
    assert keys == sorted(keys)


def test_generator_index_validation():
    with pytest.raises(DimensionError):
        P.GeneratorIndex(2, 2)
    with pytest.raises(DimensionError):
        P.block_extract(S.bell(), (1, 3), (1, 2))


def _nonzero(mat):
    return {(i + 1, j + 1): mat[i, j] for i, j in zip(*np.nonzero(np.abs(mat) > 1e-15))}


@pytest.mark.parametrize(
    "alpha, beta, expected",
    [
        # case iv: both Schmidt terms survive
        ((1, 2), (1, 2), {(1, 1): math.sqrt(0.3), (2, 2): math.sqrt(0.5)}),
        # case ii: a = c = 1, b = 2 differs from d = 3
        ((1, 2), (1, 3), {(2, 3): math.sqrt(0.5)}),
        # case v: b = c = 2
        ((1, 2), (2, 3), {(1, 3): -math.sqrt(0.3)}),
        # case vi: a = d = 2
        ((2, 3), (1, 2), {(3, 1): -math.sqrt(0.3)}),
        # case iii: b = d = 3
        ((1, 3), (2, 3), {(1, 2): math.sqrt(0.2)}),
    ],
)
def test_apply_projection_cases(alpha, beta, expected):
    out = P.apply_projection(S.schmidt_diag(LAM), alpha, beta)
    got = _nonzero(out)
    assert got.keys() == expected.keys()
    for key, val in expected.items():
        assert got[key] == pytest.approx(val, abs=1e-15)


def test_apply_projection_case_i_vanishes():
    st_ = S.schmidt_diag([0.4, 0.3, 0.2, 0.1])
    assert np.all(P.apply_projection(st_, (1, 2), (3, 4)) == 0)


def test_apply_projection_matches_kron():
    st_ = S.haar_random(3, 4, seed=9)
    for alpha, beta in P.enumerate_pairs(3, 4):
        op = np.kron(antisym(3, *alpha.as_tuple()), antisym(4, *beta.as_tuple()))
        np.testing.assert_allclose(
            P.apply_projection(st_, alpha, beta).reshape(-1), op @ st_.vector, atol=1e-15
        )


def test_block_extract_examples():
    b = P.block_extract(S.bell(), (1, 2), (1, 2))
    np.testing.assert_allclose(b.block, [2**-0.5, 0, 0, 2**-0.5], atol=1e-15)
    assert b.weight_T == pytest.approx(1.0, abs=1e-15)
    assert b.c_const == pytest.approx(1.0, abs=1e-15)

    prod = S.new_pure_state(3, 3, np.eye(1, 9).ravel())
    z = P.block_extract(prod, (2, 3), (2, 3))
    assert z.weight_T == 0 and z.c_const is None
    with pytest.raises(DegenerateBlockError):
        P.block_concurrence(z)

    d = P.block_extract(S.schmidt_diag(LAM), (1, 2), (1, 2))
    np.testing.assert_allclose(d.block, [math.sqrt(0.5), 0, 0, math.sqrt(0.3)], atol=1e-15)
    assert d.weight_T == pytest.approx(0.8, abs=1e-15)
    assert d.c_const == pytest.approx(1.25, abs=1e-14)


def test_block_concurrence_values():
    assert P.block_concurrence(P.block_extract(S.bell(), (1, 2), (1, 2))) == pytest.approx(1.0)
    d = P.block_from_amplitudes((1, 2), (1, 2), [math.sqrt(0.5), 0, 0, math.sqrt(0.3)])
    # 2 sqrt(0.5 * 0.3) / 0.8
    assert P.block_concurrence(d) == pytest.approx(0.9682458365518543, abs=1e-12)
    p = P.block_from_amplitudes((1, 2), (1, 2), [math.sqrt(0.5), math.sqrt(0.5), 0, 0])
    assert P.block_concurrence(p) == 0.0


@pytest.mark.parametrize("c, expected", [(1.0, 1.0), (0.0, 0.0), (0.6, 0.4689955935892812)])
def test_eof_from_concurrence(c, expected):
    # C = 0.6 -> h(0.9) = -0.9 log2 0.9 - 0.1 log2 0.1
    assert -0.9 * math.log2(0.9) - 0.1 * math.log2(0.1) == pytest.approx(0.4689955935892812)
    assert P.eof_from_concurrence(c) == pytest.approx(expected, abs=1e-12)


def test_eof_from_concurrence_tiny_c_accurate():
    c = 1e-9
    lam = c * c / 4
    expected = -lam * math.log2(lam) - (1 - lam) * math.log1p(-lam) / math.log(2)
    assert P.eof_from_concurrence(c) == pytest.approx(expected, rel=1e-6)


@pytest.mark.parametrize(
    "state, mode, mult",
    [
        (S.schmidt_diag([0.5, 0.3, 0.2]), "paper", 4),
        (S.schmidt_diag([0.5, 0.3, 0.2]), "rect", 4),
        (S.schmidt_diag([0.7, 0.3], n=3), "rect", 2),
        (S.schmidt_diag([0.7, 0.3]), "rect", 1),
    ],
)
def test_spectrum_census_examples(state, mode, mult):
    assert set(P.spectrum_census(state, mode).values()) == {mult}


def test_spectrum_census_bruteforce_2x3():
    # enumerate every block with full matrices and match eigenvalues by value
    lam = [0.7, 0.3]
    st_ = S.schmidt_diag(lam, n=3)
    counts = {1: 0, 2: 0}
    rho = density(st_.vector)
    for (i, j) in [(1, 2)]:
        for (k, l) in [(1, 2), (1, 3), (2, 3)]:
            op = np.kron(antisym(2, i, j), antisym(3, k, l))
            mu = np.linalg.eigvalsh(partial_trace_b(op @ rho @ op.T, 2, 3))
            for v in mu[mu > 1e-12]:
                counts[1 + int(np.argmin(np.abs(np.array(lam) - v)))] += 1
    assert counts == {1: 2, 2: 2}
    assert P.spectrum_census(st_, "rect") == counts


def test_spectrum_census_requires_schmidt_basis():
    with pytest.raises(InvalidBasisError):
        P.spectrum_census(S.haar_random(3, 3, seed=1))


@settings(max_examples=40, deadline=None)
@given(dims, seeds)
def test_weight_identities(dims, seed):
    m, n = dims
    st_ = S.haar_random(m, n, seed)
    for alpha, beta in P.enumerate_pairs(m, n):
        b = P.block_extract(st_, alpha, beta)
        assert abs(b.weight_T - np.sum(np.abs(b.block) ** 2)) <= 1e-12
        assert abs(b.weight_T - P.local_weight(st_, alpha, beta)) <= 1e-12
        proj = P.apply_projection(st_, alpha, beta)
        assert abs(np.sum(np.abs(proj) ** 2) - b.weight_T) <= 1e-12
        if b.defined:
            assert abs(b.c_const * b.weight_T - 1) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(dims, seeds)
def test_block_concurrence_matches_purity_oracle(dims, seed):
    m, n = dims
    st_ = S.haar_random(m, n, seed)
    for alpha, beta in P.enumerate_pairs(m, n):
        b = P.block_extract(st_, alpha, beta)
        c2 = concurrence_sq_purity(b.block)
        assert abs(P.block_concurrence(b) ** 2 - c2) <= 1e-10
        assert abs(P.block_eof(b) - eof_bruteforce(b.block, 2, 2)) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(seeds, st.floats(0.1, 10), st.floats(0, 2 * math.pi))
def test_block_scale_invariance(seed, scale, phase):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    x /= np.linalg.norm(x) * 2
    b1 = P.block_from_amplitudes((1, 2), (1, 2), x)
    b2 = P.block_from_amplitudes((1, 2), (1, 2), x * scale * np.exp(1j * phase))
    assert abs(P.block_concurrence(b1) - P.block_concurrence(b2)) <= 1e-12
    assert abs(P.block_eof(b1) - P.block_eof(b2)) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(dims, seeds)
def test_census_totals(dims, seed):
    m, n = dims
    lam = np.random.default_rng(seed).dirichlet(np.ones(m))
    lam = np.sort(lam)[::-1]
    st_ = S.schmidt_diag(lam / lam.sum(), n)
    for mode in ("paper", "rect"):
        counts = P.spectrum_census(st_, mode)
        expected = (m - 1) ** 2 if mode == "paper" else (m - 1) * (n - 1)
        assert set(counts.values()) == {expected}
        total_weight = sum(b.weight_T for b in (P.block_extract(st_, a, c) for a, c in P.enumerate_pairs(m, n, mode)))
        census_weight = sum(counts[k] * lam[k - 1] for k in counts)
        assert abs(total_weight - census_weight) <= 1e-10
