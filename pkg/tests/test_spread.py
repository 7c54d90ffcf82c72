from __future__ import annotations

import itertools
import random

import pytest

from reference import rank_prime
from spreadcodes.errors import BudgetExceededError
from spreadcodes.linalg import MatFq, Subspace, rank, rref, subspace_distance
from spreadcodes.spread import (
    GrassmannPoint,
    SpreadCode,
    encode,
    enumerate_codewords,
    enumerate_points,
    identify,
    point_from_index,
    point_index,
    random_point,
)

EXAMPLE_T = SpreadCode.from_spec("spread:q=2,k=4,m=2,p=x^4+x+1,orient=T")


def test_spec_round_trip():
    code = SpreadCode.from_spec("spread:q=3,k=2,m=3,orient=T")
    assert code.transposed and code.n == 6 and code.size == (3 ** 6 - 1) // 8
    assert SpreadCode.from_spec(code.spec()) == code
    with pytest.raises(ValueError):
        SpreadCode.from_spec("spread:q=2,k=2,m=2,orient=X")
    with pytest.raises(ValueError):
        SpreadCode.from_spec("spread:q=2,k=2,m=2,foo=1")


def test_encode_zero_then_identity():
    code = SpreadCode.create(2, 3, 2)
    U = code.encode(code.point([0, 1]))
    assert U == MatFq.zeros(code.field, 3, 3).hstack(MatFq.identity(code.field, 3))


def test_encode_blocks_are_powers_of_P():
    code = SpreadCode.create(2, 3, 2, "x^3+x^2+1")
    P = code.ext.P
    U = code.encode(code.point(["1", "a^3"]))
    assert U == MatFq.identity(code.field, 3).hstack(P @ P @ P)


def test_encode_deletions_example_codeword():
    u = EXAMPLE_T.point(["1", "1+a^2+a^3"])
    expected = MatFq.from_rows(
        EXAMPLE_T.field,
        [[1, 0, 0, 0, 1, 0, 1, 1], [0, 1, 0, 0, 1, 0, 0, 1], [0, 0, 1, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 1, 0, 0]],
    )
    assert encode(EXAMPLE_T, u) == expected
    assert rref(expected).matrix == expected


def test_identify_examples():
    assert identify(EXAMPLE_T, (1, 0, 0, 0, 1, 0, 1, 1)) == EXAMPLE_T.point(["1", "1+a^2+a^3"])
    assert identify(EXAMPLE_T, (1, 0, 0, 0, 0, 0, 0, 0)) == EXAMPLE_T.point([1, 0])
    with pytest.raises(ValueError):
        identify(EXAMPLE_T, (0,) * 8)
    with pytest.raises(ValueError):
        identify(SpreadCode.create(2, 4, 2), (1,) + (0,) * 7)


def test_identify_every_vector_of_random_codewords():
    rng = random.Random(1)
    for spec in ("spread:q=2,k=3,m=3,orient=T", "spread:q=3,k=2,m=3,orient=T", "spread:q=4,k=2,m=2,orient=T"):
        code = SpreadCode.from_spec(spec)
        for _ in range(60):
            u = random_point(code, rng)
            U = encode(code, u)
            for coeffs in itertools.islice(itertools.product(range(code.q), repeat=code.k), 1, None):
                v = [0] * code.n
                for c, row in zip(coeffs, U.rows):
                    v = [code.field.add(x, code.field.mul(c, y)) for x, y in zip(v, row)]
                assert identify(code, v) == u


@pytest.mark.parametrize("q,k,m,size", [(2, 3, 2, 9), (2, 2, 2, 5), (2, 2, 3, 21), (3, 2, 2, 10)])
def test_enumeration_is_a_spread(q, k, m, size):
    code = SpreadCode.create(q, k, m, transposed=(k == 2))
    words = list(enumerate_codewords(code))
    assert len(words) == size == code.size
    subspaces = [Subspace.from_matrix(U) for U in words]
    assert len(set(subspaces)) == size
    for U in words:
        assert rref(U).matrix == U
        for b in range(m):
            blk = U.block(b, k)
            assert blk.is_zero() or rank(blk) == k
    for a, b in itertools.combinations(words, 2):
        assert rank_prime(a.vstack(b).rows, q) == 2 * k
    for a, b in itertools.combinations(subspaces, 2):
        assert subspace_distance(a, b) == 2 * k
    # covering: every nonzero vector in exactly one codeword
    assert size * (q ** k - 1) + 1 == q ** (k * m)


def test_enumeration_order_and_indexing():
    code = SpreadCode.create(3, 2, 3)
    pts = list(enumerate_points(code))
    assert pts == sorted(pts)
    assert pts[0] == code.point([0, 0, 1])
    for i, u in enumerate(pts):
        assert point_index(code, u) == i
        assert point_from_index(code, i) == u
    with pytest.raises(ValueError):
        point_from_index(code, code.size)


def test_enumeration_budget():
    code = SpreadCode.create(2, 2, 12)
    with pytest.raises(BudgetExceededError):
        next(enumerate_codewords(code, budget=1000))


def test_grassmann_point_normalization():
    code = SpreadCode.create(2, 2, 2)
    a = code.ext.alpha
    u = GrassmannPoint.normalize([a, a * a])
    assert u.coords[0] == code.ext.one and u.coords[1] == a
    with pytest.raises(ValueError):
        GrassmannPoint((a, a))
    with pytest.raises(ValueError):
        GrassmannPoint.normalize([code.ext.zero, code.ext.zero])
    assert u.coefficient_form() == "[1 0],[0 1]"


def test_both_orientations_span_the_same_codeword_set_sizes():
    P = SpreadCode.create(2, 3, 2)
    T = SpreadCode.create(2, 3, 2, transposed=True)
    sp = {Subspace.from_matrix(U) for U in enumerate_codewords(P)}
    st = {Subspace.from_matrix(U) for U in enumerate_codewords(T)}
    assert len(sp) == len(st) == 9
