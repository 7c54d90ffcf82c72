from __future__ import annotations

import itertools
import random

import pytest

from spreadcodes.channel import ErasurePattern, apply_cec, apply_rec, sample_pattern
from spreadcodes.decode import (
    GabidulinCode,
    decode_cec,
    decode_cec_report,
    decode_cec_with_deletions,
    decode_cec_with_deletions_report,
    decode_rec,
    rank_metric_erasure_decode,
)
from spreadcodes.errors import (
    DecodingError,
    InconsistentObservationError,
    UndecodableError,
    UnderdeterminedError,
)
from spreadcodes.gf import ExtField
from spreadcodes.linalg import ErasableMatrix, MatFq, parse_matrix, random_matrix
from spreadcodes.oracle import matrices_of_rank
from spreadcodes.spread import SpreadCode, encode, enumerate_points, nonzero_blocks, random_point

EXAMPLE_T = SpreadCode.from_spec("spread:q=2,k=4,m=2,p=x^4+x+1,orient=T")
RECEIVED = """
1 0 0 1 | 1 1 1 ?
1 0 0 0 | 1 0 1 ?
1 0 0 1 | 1 1 1 ?
0 0 0 1 | 0 1 0 ?
"""


# --- REC ----------------------------------------------------------------------------

def test_rec_single_row():
    R = MatFq.from_rows(EXAMPLE_T.field, [[1, 0, 0, 0, 1, 0, 1, 1]])
    assert decode_rec(EXAMPLE_T, R) == EXAMPLE_T.point(["1", "1+a^2+a^3"])


def test_rec_any_row_gives_the_same_point():
    rng = random.Random(0)
    code = SpreadCode.create(3, 2, 3, transposed=True)
    for _ in range(100):
        u = random_point(code, rng)
        R = random_matrix(code.field, 2, 2, rng=rng) @ encode(code, u)
        for row in R.rows:
            assert decode_rec(code, MatFq(code.field, (row,), code.n)) == u


def test_rec_round_trip_sampled():
    rng = random.Random(1)
    for k in (2, 3, 4):
        code = SpreadCode.create(2, k, 3, transposed=True)
        for _ in range(300):
            u = random_point(code, rng)
            A = random_matrix(code.field, k, k, rng=rng)
            E = sample_pattern(k, code.n, rng.randint(0, k - 1), "worst_rec", rng)
            assert decode_rec(code, apply_rec(encode(code, u), A, E)) == u


def test_rec_rejects():
    with pytest.raises(UndecodableError):
        decode_rec(EXAMPLE_T, MatFq(EXAMPLE_T.field, (), 8))
    with pytest.raises(UndecodableError):
        decode_rec(EXAMPLE_T, MatFq.zeros(EXAMPLE_T.field, 2, 8))
    with pytest.raises(ValueError):
        decode_rec(SpreadCode.create(2, 4, 2), MatFq.zeros(EXAMPLE_T.field, 1, 8))


# --- rank-metric erasures ---------------------------------------------------------------

def test_gabidulin_block_from_example():
    ext = EXAMPLE_T.ext
    S = MatFq.from_rows(ext.base, [[1, 0, 0, 0], [0, 0, 0, 1]])
    gab = GabidulinCode(ext, S)
    assert gab.generator == (ext.one, ext.alpha ** 3)
    R = ErasableMatrix.from_rows(ext.base, [[1, 0, 1, None], [0, 1, 0, None]])
    assert rank_metric_erasure_decode(gab, R).rows == ((1, 0, 1, 1), (0, 1, 0, 0))


def test_gabidulin_rejects_rank_deficient_selection():
    ext = EXAMPLE_T.ext
    with pytest.raises(ValueError):
        GabidulinCode(ext, MatFq.from_rows(ext.base, [[1, 0, 0, 0], [1, 0, 0, 0]]))


def test_rank_metric_no_erasures_is_consistency_check():
    ext = ExtField(2, "x^4+x+1")
    gab = GabidulinCode.full(ext)
    B = gab.codeword(ext.parse_element("a+a^3"))
    assert rank_metric_erasure_decode(gab, B) == B
    bad = MatFq(B.field, ((1 - B.rows[0][0],) + B.rows[0][1:],) + B.rows[1:], 4)
    with pytest.raises(InconsistentObservationError):
        rank_metric_erasure_decode(gab, bad)


@pytest.mark.parametrize("transposed", [True, False])
def test_rank_metric_exhaustive_small_budget(transposed):
    ext = ExtField(2, "x^4+x+1")
    gab = GabidulinCode.full(ext, transposed)
    for b in ext.elements():
        B = gab.codeword(b)
        for r in range(4):
            for c in range(4 - r):
                for rows in itertools.combinations(range(4), r):
                    for cols in itertools.combinations(range(4), c):
                        R = ErasableMatrix(
                            ext.base,
                            tuple(tuple(None if i in rows or j in cols else x for j, x in enumerate(row))
                                  for i, row in enumerate(B.rows)),
                            4,
                        )
                        assert rank_metric_erasure_decode(gab, R) == B


def test_rank_metric_underdetermined():
    ext = ExtField(2, "x^4+x+1")
    gab = GabidulinCode.full(ext)
    R = ErasableMatrix.from_rows(ext.base, [[None] * 4] * 4)
    with pytest.raises(UnderdeterminedError):
        rank_metric_erasure_decode(gab, R)


# --- CEC --------------------------------------------------------------------------------

def test_cec_trivial_example():
    code = SpreadCode.create(2, 2, 2, "x^2+x+1")
    U = encode(code, code.point(["1", "a"]))
    assert U == MatFq.identity(code.field, 2).hstack(code.ext.P)
    assert decode_cec(code, U) == code.point(["1", "a"])
    A = MatFq.from_rows(code.field, [[1, 1], [0, 1]])
    E = ErasurePattern.from_positions(2, 4, [(0, 2)])
    assert decode_cec(code, apply_cec(U, A, E)) == code.point(["1", "a"])


def test_cec_refuses_non_decodable_example():
    code = SpreadCode.create(2, 3, 2, "x^3+x^2+1")
    F = code.field
    A1 = MatFq.from_rows(F, [[1, 1, 1], [0, 1, 1], [1, 1, 0]])
    A2 = MatFq.from_rows(F, [[1, 1, 0], [0, 1, 1], [1, 0, 0]])
    u1, u2 = code.point(["1", "a^3"]), code.point(["1", "a^5"])
    bad = ErasurePattern.from_positions(3, 6, [(0, 1), (0, 2), (0, 5)])
    for u, A in ((u1, A1), (u2, A2)):
        with pytest.raises(UndecodableError):
            decode_cec(code, apply_cec(encode(code, u), A, bad))
    good = ErasurePattern.from_positions(3, 6, [(0, 1), (0, 2)])
    assert decode_cec(code, apply_cec(encode(code, u1), A1, good)) == u1
    assert decode_cec(code, apply_cec(encode(code, u2), A2, good)) == u2


@pytest.mark.parametrize("q", [2, 3])
def test_cec_exhaustive_k2_m2(q):
    """Every codeword, every A in GL_2, every column set within the decoding guarantee.

    The observation depends only on the set of touched columns, so column sets
    stand in for the patterns producing them.
    """
    code = SpreadCode.create(q, 2, 2)
    for u in enumerate_points(code):
        U = encode(code, u)
        for A in matrices_of_rank(q, 2, 2):
            for cols in itertools.product(range(-1, 2), repeat=2):
                erased = [b * 2 + c for b, c in enumerate(cols) if c >= 0]
                if not any(cols[b] < 0 for b in nonzero_blocks(u)):
                    continue
                E = ErasurePattern.from_positions(2, 4, [(0, j) for j in erased])
                assert decode_cec(code, apply_cec(U, A, E)) == u


def test_cec_reference_block_choice_does_not_matter():
    rng = random.Random(3)
    code = SpreadCode.create(2, 3, 3)
    for _ in range(200):
        u = random_point(code, rng)
        nz = nonzero_blocks(u)
        if len(nz) < 2:
            continue
        results = set()
        for keep in nz:
            # erase one column in every other nonzero block so `keep` becomes the reference
            E = ErasurePattern.from_positions(3, 9, [(0, b * 3) for b in nz if b != keep])
            A = random_matrix(code.field, 3, 3, rng=rng)
            rep = decode_cec_report(code, apply_cec(encode(code, u), A, E))
            assert rep.reference_block == keep
            results.add(rep.point)
        assert results == {u}


def test_cec_rejects_wrong_orientation_and_too_many_erasures():
    code = SpreadCode.create(2, 2, 2)
    with pytest.raises(ValueError):
        decode_cec(SpreadCode.create(2, 2, 2, transposed=True), MatFq.zeros(code.field, 2, 4))
    U = encode(code, code.point([1, 1]))
    E = ErasurePattern.from_positions(2, 4, [(0, 2), (0, 3)])
    with pytest.raises(UndecodableError):
        decode_cec(code, apply_cec(U, MatFq.identity(code.field, 2), E))


def test_cec_refuses_rank_deficient_channel():
    rng = random.Random(4)
    code = SpreadCode.create(2, 3, 2)
    for _ in range(100):
        u = random_point(code, rng)
        A = random_matrix(code.field, 3, 3, rank=2, rng=rng)
        with pytest.raises(DecodingError):
            decode_cec(code, apply_cec(encode(code, u), A, ErasurePattern.zero(3, 6)))


# --- CEC with deletions -------------------------------------------------------------------

def test_deletions_worked_example():
    R = parse_matrix(RECEIVED, EXAMPLE_T.field)
    rep = decode_cec_with_deletions_report(EXAMPLE_T, R)
    assert rep.point == EXAMPLE_T.point(["1", "1+a^2+a^3"])
    assert rep.point.coefficient_form() == "[1 0 0 0],[1 0 1 1]"
    assert rep.deletions == 2 and rep.reference_block == 0
    assert encode(EXAMPLE_T, rep.point).rows == (
        (1, 0, 0, 0, 1, 0, 1, 1),
        (0, 1, 0, 0, 1, 0, 0, 1),
        (0, 0, 1, 0, 1, 0, 0, 0),
        (0, 0, 0, 1, 0, 1, 0, 0),
    )


def test_deletions_without_erasures_matches_rec():
    rng = random.Random(5)
    code = SpreadCode.create(2, 4, 2, transposed=True)
    for _ in range(100):
        u = random_point(code, rng)
        R = random_matrix(code.field, 4, 4, rng=rng) @ encode(code, u)
        assert decode_cec_with_deletions(code, R) == decode_rec(code, R) == u


def test_deletions_agree_with_cec_when_r_is_zero():
    rng = random.Random(6)
    P = SpreadCode.create(2, 3, 3)
    T = SpreadCode.create(2, 3, 3, transposed=True)
    for _ in range(200):
        u = random_point(P, rng)
        A = random_matrix(P.field, 3, 3, rng=rng)
        E = sample_pattern(3, 9, rng.randint(0, 6), "per_block", rng, keep_block=rng.choice(nonzero_blocks(u)))
        ut = T.point(list(u.coords))
        assert decode_cec(P, apply_cec(encode(P, u), A, E)) == u
        assert decode_cec_with_deletions(T, apply_cec(encode(T, ut), A, E)) == ut


@pytest.mark.parametrize("k,r", [(3, 1), (4, 1), (4, 2), (4, 3)])
def test_deletions_round_trip_sampled(k, r):
    rng = random.Random(k * 10 + r)
    code = SpreadCode.create(2, k, 3, transposed=True)
    limit = k - r - 1
    for _ in range(150):
        u = random_point(code, rng)
        A = random_matrix(code.field, k, k, rank=k - r, rng=rng)
        cap = 2 * limit * k
        E = sample_pattern(k, code.n, rng.randint(0, cap), "per_block", rng, limit=limit,
                           keep_block=rng.choice(nonzero_blocks(u)))
        rep = decode_cec_with_deletions_report(code, apply_cec(encode(code, u), A, E))
        assert rep.point == u and rep.deletions == r


def test_deletions_rejects():
    code = EXAMPLE_T
    with pytest.raises(UndecodableError):
        decode_cec_with_deletions(code, MatFq.zeros(code.field, 4, 8))
    with pytest.raises(ValueError):
        decode_cec_with_deletions(SpreadCode.create(2, 4, 2), MatFq.zeros(code.field, 4, 8))
    # rank 2 leaves room for one erased column per block; two is too many
    R = parse_matrix(RECEIVED.replace("1 1 1 ?", "1 1 ? ?").replace("1 0 1 ?", "1 0 ? ?").replace("0 1 0 ?", "0 1 ? ?"), code.field)
    with pytest.raises(UndecodableError):
        decode_cec_with_deletions(code, R)
