import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pincohom import linalg
from pincohom.errors import NoSolution

MODULI = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)]


@st.composite
def small_matrix(draw, max_rows=3, max_cols=3):
    p, e = draw(st.sampled_from(MODULI))
    q = p**e
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    vals = draw(st.lists(st.integers(0, q - 1), min_size=r * c, max_size=r * c))
    return np.array(vals, dtype=np.int64).reshape(r, c), p, e


def brute_kernel(M, q):
    return {x for x in itertools.product(range(q), repeat=M.shape[1]) if not (M @ np.array(x) % q).any()}


def span(gens, exps, p, q, n):
    out = set()
    for coeffs in itertools.product(*[range(p**k) for k in exps]):
        v = np.zeros(n, dtype=np.int64)
        for c, g in zip(coeffs, gens):
            v = (v + c * g) % q
        out.add(tuple(int(x) for x in v))
    return out


def test_factor_prime_powers():
    assert linalg.factor_prime_powers(360) == [(2, 3), (3, 2), (5, 1)]
    assert linalg.factor_prime_powers(2) == [(2, 1)]
    assert linalg.factor_prime_powers(97) == [(97, 1)]


def test_bits_roundtrip():
    v = np.array([1, 0, 1, 1, 0])
    assert linalg.bits_from_vector(v) == 0b01101
    assert list(linalg.vector_from_bits(0b01101, 5)) == list(v)


def test_valuation():
    assert linalg.valuation(0, 2, 3) == 3
    assert linalg.valuation(4, 2, 3) == 2
    assert linalg.valuation(6, 3, 2) == 1


@given(small_matrix())
def test_local_kernel_matches_enumeration(data):
    M, p, e = data
    q = p**e
    gens, exps = linalg.local_kernel(M, p, e)
    for g, k in zip(gens, exps):
        assert not (M @ g % q).any()
        assert not (p**k * g % q).any() and (p ** (k - 1) * g % q).any()
    # internal direct sum: size of the span equals the product of the orders
    assert span(gens, exps, p, q, M.shape[1]) == brute_kernel(M, q)
    assert p ** sum(exps) == len(brute_kernel(M, q))


@given(small_matrix())
def test_local_snf_factorization(data):
    M, p, e = data
    q = p**e
    snf = linalg.local_snf(M, p, e, left=True)
    D = snf.U @ M % q @ snf.V % q
    expected = np.zeros_like(D)
    for i, v in enumerate(snf.vals):
        expected[i, i] = p**v
    assert np.array_equal(D % q, expected)
    assert np.array_equal(snf.V @ snf.Vinv % q, np.eye(M.shape[1], dtype=np.int64))
    assert np.array_equal(snf.U @ snf.Uinv % q, np.eye(M.shape[0], dtype=np.int64))
    assert snf.vals == sorted(snf.vals)


@given(small_matrix(), st.data())
def test_local_solve(data, draw):
    M, p, e = data
    q = p**e
    x = np.array(draw.draw(st.lists(st.integers(0, q - 1), min_size=M.shape[1], max_size=M.shape[1])))
    b = M @ x % q
    y = linalg.local_solve(M, b, p, e)
    assert np.array_equal(M @ y % q, b)


def test_local_solve_no_solution():
    with pytest.raises(NoSolution):
        linalg.local_solve([[2, 0], [0, 2]], [1, 0], 2, 2)


@given(st.lists(st.integers(0, 2**6 - 1), max_size=8))
def test_gf2_kernel_matches_local_path(rows):
    ncols = 6
    ker = linalg.gf2_kernel(rows, ncols)
    M = np.array([linalg.vector_from_bits(r, ncols) for r in rows] or np.zeros((0, ncols)), dtype=np.int64).reshape(-1, ncols)
    for v in ker:
        assert not (M @ linalg.vector_from_bits(v, ncols) % 2).any()
    assert len(ker) == ncols - linalg.gf2_rank(rows)
    assert linalg.gf2_rank(ker) == len(ker)
    if M.shape[0]:
        gens, exps = linalg.local_kernel(M, 2, 1)
        assert len(gens) == len(ker)
    assert linalg.gf2_rank(rows) == linalg.local_snf(M if M.shape[0] else np.zeros((1, ncols), dtype=np.int64), 2, 1).rank


def test_echelon_tags_track_combinations():
    ech = linalg.GF2Echelon()
    inputs = [0b1100, 0b0110, 0b1010]
    for k, r in enumerate(inputs):
        ech.insert(r, 1 << k)
    assert len(ech) == 2
    rest, tag = ech.reduce(0b1010)
    assert rest == 0
    combo = 0
    for k in range(3):
        if (tag >> k) & 1:
            combo ^= inputs[k]
    assert combo == 0b1010
