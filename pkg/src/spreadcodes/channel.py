"""Row erasure (REC) and column erasure (CEC) channel models.

Both models take a transmitted basis ``U`` (k x n), a channel matrix ``A``
(k x k) and an erasure pattern ``E`` in {0, ?}^{k x n}.  Erasures are assumed to
propagate as far as possible: in the REC any row touched by ``E`` is discarded, in
the CEC any column touched by ``E`` is fully erased.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from spreadcodes.linalg import ErasableMatrix, MatFq, as_rng

PLACEMENTS = ("uniform", "worst_rec", "worst_cec", "per_block")
MODELS = ("rec", "cec", "cec-del", "hybrid-cec")


@dataclass(frozen=True)
class ErasurePattern:
    """k x n mask; bit ``i*n + j`` set means entry (i, j) is erased."""

    k: int
    n: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> (self.k * self.n):
            raise ValueError("pattern bits exceed the k x n mask")

    @classmethod
    def zero(cls, k: int, n: int) -> ErasurePattern:
        return cls(k, n, 0)

    @classmethod
    def from_positions(cls, k: int, n: int, positions: Iterable[tuple[int, int]]) -> ErasurePattern:
        bits = 0
        for i, j in positions:
            if not (0 <= i < k and 0 <= j < n):
                raise ValueError(f"position {(i, j)} outside a {k}x{n} pattern")
            bits |= 1 << (i * n + j)
        return cls(k, n, bits)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> ErasurePattern:
        """From rows over {0, ?}; ``None`` or ``"?"`` marks an erasure."""
        k, n = len(rows), len(rows[0])
        pos = []
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("ragged pattern rows")
            for j, x in enumerate(r):
                if x is None or x == "?":
                    pos.append((i, j))
                elif x not in (0, "0"):
                    raise ValueError(f"pattern entries must be 0 or ?, got {x!r}")
        return cls.from_positions(k, n, pos)

    @classmethod
    def parse(cls, text: str) -> ErasurePattern:
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].replace("|", " ").strip()
            if line:
                rows.append(line.split())
        return cls.from_rows(rows)

    def is_erased(self, i: int, j: int) -> bool:
        return bool(self.bits >> (i * self.n + j) & 1)

    def positions(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.k) for j in range(self.n) if self.is_erased(i, j)]

    @property
    def weight(self) -> int:
        return bin(self.bits).count("1")

    def erased_rows(self) -> list[int]:
        row_mask = (1 << self.n) - 1
        return [i for i in range(self.k) if self.bits >> (i * self.n) & row_mask]

    def erased_columns(self) -> list[int]:
        return [j for j in range(self.n) if any(self.is_erased(i, j) for i in range(self.k))]

    def column_mask(self) -> int:
        """Bit j set iff column j is touched."""
        row_mask = (1 << self.n) - 1
        mask = 0
        for i in range(self.k):
            mask |= self.bits >> (i * self.n) & row_mask
        return mask

    def columns_per_block(self, width: int) -> list[int]:
        cols = self.erased_columns()
        return [sum(1 for j in cols if j // width == b) for b in range(self.n // width)]

    def to_matrix(self, field) -> ErasableMatrix:
        return ErasableMatrix(
            field,
            tuple(tuple(None if self.is_erased(i, j) else 0 for j in range(self.n)) for i in range(self.k)),
            self.n,
        )

    def __str__(self) -> str:
        return "\n".join(
            " ".join("?" if self.is_erased(i, j) else "0" for j in range(self.n)) for i in range(self.k)
        )


@dataclass(frozen=True)
class ChannelOutcome:
    observation: MatFq | ErasableMatrix
    channel_matrix: MatFq
    pattern: ErasurePattern
    model: str


def _check_shapes(U: MatFq, A: MatFq, E: ErasurePattern) -> None:
    k, n = U.shape
    if A.shape != (k, k):
        raise ValueError(f"channel matrix must be {k}x{k}, got {A.shape}")
    if (E.k, E.n) != (k, n):
        raise ValueError(f"erasure pattern must be {k}x{n}, got {E.k}x{E.n}")


def apply_rec(U: MatFq, A: MatFq, E: ErasurePattern) -> MatFq:
    """rho(A U + E): rows of A U not touched by ``E``; may have zero rows."""
    _check_shapes(U, A, E)
    received = A @ U
    dropped = set(E.erased_rows())
    return MatFq(U.field, tuple(r for i, r in enumerate(received.rows) if i not in dropped), U.ncols)


def apply_cec(U: MatFq, A: MatFq, E: ErasurePattern) -> ErasableMatrix:
    """gamma(A U + E): every column touched by ``E`` becomes all-erased."""
    _check_shapes(U, A, E)
    received = A @ U
    cols = set(E.erased_columns())
    return ErasableMatrix(
        U.field,
        tuple(tuple(None if j in cols else x for j, x in enumerate(r)) for r in received.rows),
        U.ncols,
    )


def transmit(model: str, U: MatFq, A: MatFq, E: ErasurePattern) -> ChannelOutcome:
    if model == "rec":
        obs = apply_rec(U, A, E)
    elif model in ("cec", "cec-del", "hybrid-cec"):
        obs = apply_cec(U, A, E)
    else:
        raise ValueError(f"unknown channel model {model!r}; expected one of {MODELS}")
    return ChannelOutcome(obs, A, E, model)


def sample_pattern(
    k: int,
    n: int,
    weight: int,
    placement: str = "uniform",
    rng: random.Random | int | None = None,
    *,
    limit: int | None = None,
    width: int | None = None,
    keep_block: int | None = None,
) -> ErasurePattern:
    """Draw an erasure pattern with exactly ``weight`` erased entries.

    ``per_block`` keeps at most ``limit`` (default k-1) erased columns in each
    block of ``width`` (default k) columns and leaves ``keep_block`` (default: a
    random block) untouched.
    """
    rng = as_rng(rng)
    if not 0 <= weight <= k * n:
        raise ValueError(f"weight {weight} impossible for a {k}x{n} pattern")
    if placement == "uniform":
        cells = rng.sample(range(k * n), weight)
        return ErasurePattern(k, n, sum(1 << c for c in cells))
    if placement == "worst_rec":
        if weight > k:
            raise ValueError(f"cannot place {weight} erasures in distinct rows of a {k}-row pattern")
        rows = rng.sample(range(k), weight)
        return ErasurePattern.from_positions(k, n, [(i, rng.randrange(n)) for i in rows])
    if placement == "worst_cec":
        if weight > n:
            raise ValueError(f"cannot place {weight} erasures in distinct columns of a {n}-column pattern")
        cols = rng.sample(range(n), weight)
        return ErasurePattern.from_positions(k, n, [(rng.randrange(k), j) for j in cols])
    if placement == "per_block":
        return _sample_per_block(k, n, weight, rng, k - 1 if limit is None else limit, width or k, keep_block)
    raise ValueError(f"unknown placement {placement!r}; expected one of {PLACEMENTS}")


def _sample_per_block(k, n, weight, rng, limit, width, keep_block) -> ErasurePattern:
    if n % width:
        raise ValueError(f"n={n} is not a multiple of the block width {width}")
    m = n // width
    if keep_block is None:
        keep_block = rng.randrange(m)
    if not 0 <= keep_block < m:
        raise ValueError(f"keep_block {keep_block} outside 0..{m - 1}")
    capacity = (m - 1) * max(limit, 0) * k
    if weight > capacity:
        raise ValueError(f"weight {weight} exceeds the per-block capacity {capacity}")
    erased: set[tuple[int, int]] = set()
    cols_used = [set() for _ in range(m)]
    for _ in range(weight):
        allowed = [
            (i, j)
            for j in range(n)
            if j // width != keep_block and (j in cols_used[j // width] or len(cols_used[j // width]) < limit)
            for i in range(k)
            if (i, j) not in erased
        ]
        i, j = rng.choice(allowed)
        erased.add((i, j))
        cols_used[j // width].add(j)
    return ErasurePattern.from_positions(k, n, erased)
