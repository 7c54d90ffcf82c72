"""Brute-force decodability oracles for tiny parameters.

Nothing here uses the structure the decoders rely on: the CEC oracle compares
the observations ``gamma(A U + E)`` of every codeword under every admissible
channel matrix, and the REC oracle enumerates every pattern as a bitmask.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from spreadcodes.channel import ErasurePattern, apply_cec, apply_rec, sample_pattern
from spreadcodes.errors import BudgetExceededError, DecodingError
from spreadcodes.gf import GF, is_prime_power
from spreadcodes.linalg import MatFq, as_rng, rank, reduced_basis
from spreadcodes.spread import GrassmannPoint, SpreadCode, encode, enumerate_points, nonzero_blocks

MAX_PATTERN_BITS = 24
MATRIX_BUDGET = 1 << 20
_CHUNK = 1 << 20


# --- REC --------------------------------------------------------------------------

def _rec_chunk(args: tuple[int, int, int, int]) -> int:
    k, n, start, stop = args
    x = np.arange(start, stop, dtype=np.int64)
    row_mask = (1 << n) - 1
    ok = np.zeros(x.shape, dtype=bool)
    for i in range(k):
        ok |= ((x >> (i * n)) & row_mask) == 0
    return int(ok.sum())


def oracle_rec_count(q: int, k: int, n: int, *, max_bits: int = MAX_PATTERN_BITS, workers: int = 1) -> int:
    """Count REC-correctable patterns in {0,?}^{k x n} by enumeration.

    With a full-rank channel matrix every row of ``A U`` is a nonzero vector of
    the sent codeword, so a pattern is correctable iff at least one row survives.
    """
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    bits = k * n
    if bits > max_bits:
        raise BudgetExceededError(f"2^{bits} patterns exceed the budget 2^{max_bits}")
    total = 1 << bits
    jobs = [(k, n, s, min(s + _CHUNK, total)) for s in range(0, total, _CHUNK)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            return sum(pool.map(_rec_chunk, jobs))
    return sum(map(_rec_chunk, jobs))


def rec_correctable(E: ErasurePattern) -> bool:
    return len(E.erased_rows()) < E.k


# --- CEC --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def matrices_of_rank(q: int, k: int, r: int, budget: int = MATRIX_BUDGET) -> tuple[MatFq, ...]:
    """All k x k matrices over F_q of rank r (r = k gives GL_k)."""
    if q ** (k * k) > budget:
        raise BudgetExceededError(f"{q}^{k * k} matrices exceed the budget {budget}")
    F = GF(q)
    out = []
    for entries in itertools.product(range(q), repeat=k * k):
        M = MatFq(F, tuple(tuple(entries[i * k:(i + 1) * k]) for i in range(k)), k)
        if rank(M) == r:
            out.append(M)
    return tuple(out)


@dataclass(frozen=True)
class Witness:
    """``gamma(A U + E) == gamma(A' V + E)`` with rowsp(U) != rowsp(V)."""

    U: MatFq
    A: MatFq
    V: MatFq
    A_prime: MatFq


@dataclass(frozen=True)
class OracleVerdict:
    pattern: ErasurePattern
    codeword: GrassmannPoint | None
    correctable: bool
    witness: Witness | None = None

    def __post_init__(self):
        if (self.witness is None) != self.correctable:
            raise ValueError("a witness is present exactly when the pattern is not correctable")


@dataclass
class _CodeTable:
    points: list[GrassmannPoint]
    matrices: list[MatFq]
    index: dict[tuple, int]


@lru_cache(maxsize=None)
def _code_table(code: SpreadCode, budget: int) -> _CodeTable:
    points = list(enumerate_points(code, budget))
    mats = [encode(code, u) for u in points]
    index = {reduced_basis(M).rows: i for i, M in enumerate(mats)}
    return _CodeTable(points, mats, index)


@lru_cache(maxsize=None)
def _ambiguity(code: SpreadCode, kept: tuple[int, ...], deletions: int, budget: int) -> dict[int, Witness]:
    """Codewords (by index) whose observation on ``kept`` columns collides with
    another codeword's, each with one colliding pair."""
    table = _code_table(code, budget)
    chans = matrices_of_rank(code.q, code.k, code.k - deletions)
    if len(table.matrices) * len(chans) > budget:
        raise BudgetExceededError(f"{len(table.matrices)} codewords x {len(chans)} channels exceed the budget {budget}")
    seen: dict[tuple, dict[int, MatFq]] = {}
    for ci, U in enumerate(table.matrices):
        Uk = U.columns(kept)
        for A in chans:
            seen.setdefault((A @ Uk).rows, {}).setdefault(ci, A)
    out: dict[int, Witness] = {}
    for holders in seen.values():
        if len(holders) < 2:
            continue
        items = list(holders.items())
        for ci, A in items:
            if ci in out:
                continue
            cj, B = next((cj, B) for cj, B in items if cj != ci)
            out[ci] = Witness(table.matrices[ci], A, table.matrices[cj], B)
    return out


def _codeword_index(code: SpreadCode, U: GrassmannPoint | MatFq, budget: int) -> int:
    table = _code_table(code, budget)
    if isinstance(U, GrassmannPoint):
        U = encode(code, U)
    try:
        return table.index[reduced_basis(U).rows]
    except KeyError:
        raise ValueError("matrix does not span a codeword of this spread") from None


def _kept(E: ErasurePattern) -> tuple[int, ...]:
    mask = E.column_mask()
    return tuple(j for j in range(E.n) if not mask >> j & 1)


def oracle_cec_correctable(
    code: SpreadCode,
    U: GrassmannPoint | MatFq,
    E: ErasurePattern,
    deletions: int = 0,
    *,
    budget: int = MATRIX_BUDGET,
) -> OracleVerdict:
    """Is ``E`` correctable for ``U`` in the CEC with a rank-(k - deletions) channel?"""
    if (E.k, E.n) != (code.k, code.n):
        raise ValueError(f"pattern must be {code.k}x{code.n}")
    if not 0 <= deletions < code.k:
        raise ValueError(f"need 0 <= deletions < k, got {deletions}")
    ci = _codeword_index(code, U, budget)
    table = _code_table(code, budget)
    witness = _ambiguity(code, _kept(E), deletions, budget).get(ci)
    return OracleVerdict(E, table.points[ci], witness is None, witness)


def observations_equal(U: MatFq, A: MatFq, V: MatFq, A_prime: MatFq, E: ErasurePattern) -> bool:
    return apply_cec(U, A, E) == apply_cec(V, A_prime, E)


@dataclass(frozen=True)
class CodewordCount:
    point: GrassmannPoint
    ell: int
    count: int


def oracle_cec_counts(code: SpreadCode, deletions: int = 0, *, budget: int = MATRIX_BUDGET) -> list[CodewordCount]:
    """Per-codeword number of correctable patterns.

    The observation depends only on the set C of touched columns, and exactly
    ``(2^rows - 1)^|C|`` patterns touch C (rows = k - deletions, the rows of the
    reduced observation), so every column set is tested once and weighted.
    """
    table = _code_table(code, budget)
    rows = code.k - deletions
    counts = [0] * len(table.points)
    for mask in range(1 << code.n):
        kept = tuple(j for j in range(code.n) if not mask >> j & 1)
        weight = (2 ** rows - 1) ** (code.n - len(kept))
        bad = _ambiguity(code, kept, deletions, budget)
        for ci in range(len(counts)):
            if ci not in bad:
                counts[ci] += weight
    return [CodewordCount(u, len(nonzero_blocks(u)) - 1, c) for u, c in zip(table.points, counts)]


def average_count(counts: list[CodewordCount]) -> Fraction:
    return Fraction(sum(c.count for c in counts), len(counts))


# --- decoder agreement ---------------------------------------------------------------

@dataclass
class AgreementReport:
    model: str
    checked: int = 0
    decoded: int = 0
    refused: int = 0
    wrong: int = 0
    missed: int = 0
    bound_violations: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.wrong == 0 and self.missed == 0 and self.bound_violations == 0


def within_preconditions(model: str, code: SpreadCode, u: GrassmannPoint, E: ErasurePattern, deletions: int = 0) -> bool:
    """The decoder's guarantee: some row survives (REC), or some nonzero block is
    erasure-free and no block has more than k - r - 1 erased columns (CEC)."""
    if model == "rec":
        return rec_correctable(E)
    per_block = E.columns_per_block(code.k)
    if max(per_block) > code.k - deletions - 1:
        return False
    return any(per_block[b] == 0 for b in nonzero_blocks(u))


def _decode(model: str, code: SpreadCode, U: MatFq, A: MatFq, E: ErasurePattern) -> GrassmannPoint:
    from spreadcodes.decode import decode_cec, decode_cec_with_deletions, decode_rec

    if model == "rec":
        return decode_rec(code, apply_rec(U, A, E))
    if model == "cec":
        return decode_cec(code, apply_cec(U, A, E))
    if model == "cec-del":
        return decode_cec_with_deletions(code, apply_cec(U, A, E))
    raise ValueError(f"unknown model {model!r}")


def _check_one(report: AgreementReport, model, code, u, U, A, E, deletions, use_oracle) -> None:
    report.checked += 1
    inside = within_preconditions(model, code, u, E, deletions)
    if model == "rec":
        oracle_ok = rec_correctable(E)
    elif use_oracle:
        oracle_ok = oracle_cec_correctable(code, u, E, deletions).correctable
    else:
        oracle_ok = inside
    if inside and not oracle_ok:
        report.bound_violations += 1
        report.failures.append(f"guarantee violated: u={u} E={E.bits:#x}")
    try:
        got = _decode(model, code, U, A, E)
    except DecodingError:
        report.refused += 1
        if inside:
            report.missed += 1
            report.failures.append(f"decoder refused a correctable input: u={u} E={E.bits:#x}")
        return
    if got == u:
        report.decoded += 1
    else:
        report.wrong += 1
        report.failures.append(f"silent wrong answer: sent {u}, got {got}, E={E.bits:#x}")


def oracle_decoder_agreement(
    code: SpreadCode,
    model: str,
    *,
    deletions: int = 0,
    trials: int | None = None,
    seed: int = 0,
    use_oracle: bool = True,
    budget: int = MATRIX_BUDGET,
) -> AgreementReport:
    """Compare a decoder with the oracle.

    ``trials=None`` is exhaustive over codewords x channel matrices x all
    2^{kn} patterns; otherwise ``trials`` random triples are drawn, half of the
    patterns inside the decoder's preconditions and half uniformly.
    """
    report = AgreementReport(model)
    k, n = code.k, code.n
    chans = matrices_of_rank(code.q, k, k - deletions, budget)
    table = _code_table(code, budget)
    if trials is None:
        if k * n > MAX_PATTERN_BITS or len(table.points) * len(chans) << (k * n) > 50 * budget:
            raise BudgetExceededError("exhaustive agreement check is too large; pass trials=")
        for u, U in zip(table.points, table.matrices):
            for A in chans:
                for bits in range(1 << (k * n)):
                    _check_one(report, model, code, u, U, A, ErasurePattern(k, n, bits), deletions, use_oracle)
        return report
    rng = as_rng(seed)
    for t in range(trials):
        ci = rng.randrange(len(table.points))
        u, U = table.points[ci], table.matrices[ci]
        A = chans[rng.randrange(len(chans))]
        E = _sample_for(model, code, u, deletions, rng, inside=t % 2 == 0)
        _check_one(report, model, code, u, U, A, E, deletions, use_oracle)
    return report


def _sample_for(model: str, code: SpreadCode, u: GrassmannPoint, deletions: int, rng: random.Random, inside: bool) -> ErasurePattern:
    k, n = code.k, code.n
    if not inside:
        return ErasurePattern(k, n, rng.getrandbits(k * n))
    if model == "rec":
        return sample_pattern(k, n, rng.randint(0, k - 1), "worst_rec", rng)
    limit = k - deletions - 1
    capacity = (code.m - 1) * limit * k
    return sample_pattern(
        k, n, rng.randint(0, capacity), "per_block", rng,
        limit=limit, width=k, keep_block=rng.choice(nonzero_blocks(u)),
    )
