from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spreadcodes.channel import ErasurePattern, apply_cec, sample_pattern
from spreadcodes.count import gaussian_binomial, hybrid_counts
from spreadcodes.errors import DeletionsUnsupportedError, InconsistentObservationError, UndecodableError
from spreadcodes.gf import GF
from spreadcodes.hybrid import (
    HybridCode,
    grs_erasure_decode,
    hybrid_decode_cec,
    hybrid_encode,
    interpolate,
    random_subspace,
)
from spreadcodes.linalg import MatFq, Subspace, random_matrix, vec_mat

CODE = HybridCode.from_spec("hybrid:q=7,n=6,np=4,k=2")


def test_spec_and_validation():
    assert CODE.spec() == "hybrid:q=7,n=6,np=4,k=2"
    for args in ((7, 6, 2, 2), (7, 6, 6, 2), (5, 6, 4, 2), (6, 5, 4, 2)):
        with pytest.raises(ValueError):
            HybridCode(*args)


def test_generator_is_vandermonde_at_first_indices():
    F = CODE.field
    G = CODE.generator
    assert G.shape == (4, 6)
    for i, row in enumerate(G.rows):
        assert row == tuple(F.pow(x, i) for x in range(6))
    assert G.rows[0] == (1,) * 6


def test_encode_identity_subspace_gives_first_generator_rows():
    F = CODE.field
    U = MatFq.from_rows(F, [[1, 0, 0, 0], [0, 1, 0, 0]])
    assert hybrid_encode(CODE, U) == CODE.generator.select_rows([0, 1])
    with pytest.raises(ValueError):
        hybrid_encode(CODE, MatFq.from_rows(F, [[1, 0, 0, 0]]))


def test_codebook_size_is_gaussian_binomial():
    assert gaussian_binomial(4, 2, 7) == 2850
    # brute force count of 2-dim subspaces of F_3^4
    F = GF(3)
    seen = set()
    vecs = list(itertools.product(range(3), repeat=4))
    for a, b in itertools.combinations(vecs[1:], 2):
        S = Subspace.from_matrix(MatFq.from_rows(F, [a, b]))
        if S.dim == 2:
            seen.add(S)
    assert len(seen) == gaussian_binomial(4, 2, 3)


@pytest.mark.parametrize("q", [7, 8, 9, 11])
def test_interpolation_reproduces_rows(q):
    rng = random.Random(q)
    F = GF(q)
    for _ in range(100):
        npr = rng.randint(1, q - 1)
        xs = rng.sample(range(q), npr)
        coeffs = [rng.randrange(q) for _ in range(npr)]
        ys = [0] * npr
        for i, x in enumerate(xs):
            acc = 0
            for c in reversed(coeffs):
                acc = F.add(F.mul(acc, x), c)
            ys[i] = acc
        assert interpolate(F, xs, ys) == coeffs


def test_all_ones_codeword():
    row = [1] * 6
    for erased in itertools.combinations(range(6), 2):
        obs = [None if j in erased else x for j, x in enumerate(row)]
        assert grs_erasure_decode(CODE, obs) == (1, 0, 0, 0)


def test_grs_worst_case_erasures():
    rng = random.Random(2)
    F = CODE.field
    for _ in range(1000):
        msg = [rng.randrange(7) for _ in range(4)]
        row = vec_mat(F, msg, CODE.generator)
        erased = set(rng.sample(range(6), 2))
        assert grs_erasure_decode(CODE, [None if j in erased else x for j, x in enumerate(row)]) == tuple(msg)


def test_grs_rejections():
    row = list(vec_mat(CODE.field, [1, 2, 3, 4], CODE.generator))
    with pytest.raises(UndecodableError):
        grs_erasure_decode(CODE, [None, None, None] + row[3:])
    row[5] = (row[5] + 1) % 7
    with pytest.raises(InconsistentObservationError):
        grs_erasure_decode(CODE, row)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2 ** 32), st.sampled_from(["hybrid:q=7,n=6,np=4,k=2", "hybrid:q=8,n=8,np=5,k=2", "hybrid:q=11,n=10,np=6,k=3"]))
def test_hybrid_cec_round_trip(seed, spec):
    code = HybridCode.from_spec(spec)
    rng = random.Random(seed)
    U = random_subspace(code, rng)
    X = hybrid_encode(code, U)
    A = random_matrix(code.field, code.k, code.k, rng=rng)
    E = sample_pattern(code.k, code.n, rng.randint(0, code.n - code.n_prime), "worst_cec", rng)
    assert hybrid_decode_cec(code, apply_cec(X, A, E)) == U
    assert Subspace.from_matrix(A @ X) == Subspace.from_matrix(X)


def test_hybrid_too_many_erasures_and_deletions():
    rng = random.Random(3)
    U = random_subspace(CODE, rng)
    X = hybrid_encode(CODE, U)
    E = ErasurePattern.from_positions(2, 6, [(0, 0), (0, 1), (1, 2)])
    with pytest.raises(UndecodableError):
        hybrid_decode_cec(CODE, apply_cec(X, MatFq.identity(CODE.field, 2), E))
    A = random_matrix(CODE.field, 2, 2, rank=1, rng=rng)
    with pytest.raises(DeletionsUnsupportedError):
        hybrid_decode_cec(CODE, apply_cec(X, A, ErasurePattern.zero(2, 6)))


def test_correctable_pattern_count_by_enumeration():
    """Patterns touching at most n - n' columns, counted directly."""
    k, n = CODE.k, CODE.n
    total = sum(1 for bits in range(1 << (k * n)) if len(ErasurePattern(k, n, bits).erased_columns()) <= n - CODE.n_prime)
    assert total == hybrid_counts(7, 6, 4, 2)[0] == 154
