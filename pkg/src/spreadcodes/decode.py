"""Decoders for Desarguesian spread codes in the REC and the CEC.

* :func:`decode_rec` - any nonzero received row identifies the codeword
  (P^T orientation).
* :func:`decode_cec` - normalize by an erasure-free nonzero block, then read each
  block off a single unerased column (P orientation, no deletions).
* :func:`decode_cec_with_deletions` - row reduce, erasure-decode every block in
  the Gabidulin code spanned by the reference block, then finish as in the REC
  (P^T orientation).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from spreadcodes.errors import (
    InconsistentObservationError,
    SingularMatrixError,
    UndecodableError,
    UnderdeterminedError,
)
from spreadcodes.gf import ExtField, ExtFieldElem
from spreadcodes.linalg import ErasableMatrix, MatFq, invert, mat_vec, rank, rref_rows
from spreadcodes.spread import GrassmannPoint, SpreadCode, identify


@dataclass(frozen=True)
class DecodeReport:
    point: GrassmannPoint
    reference_block: int | None
    erased_per_block: tuple[int, ...]
    deletions: int = 0


@dataclass(frozen=True)
class GabidulinCode:
    """The matrix code ``{S B : B in F_q[P^T]}`` (or ``F_q[P]``).

    Under ``bar_psi`` this is the dimension-1 Gabidulin code with generator
    ``bar_psi(S)``; its minimum rank distance equals the number of rows of S.
    """

    ext: ExtField
    selection: MatFq
    transposed: bool = True

    def __post_init__(self):
        if self.selection.ncols != self.ext.k:
            raise ValueError(f"selection must have {self.ext.k} columns")
        if rank(self.selection) != self.selection.nrows:
            raise ValueError("selection matrix must have full row rank")

    @classmethod
    def full(cls, ext: ExtField, transposed: bool = True) -> GabidulinCode:
        return cls(ext, MatFq.identity(ext.base, ext.k), transposed)

    @property
    def length(self) -> int:
        return self.selection.nrows

    @property
    def generator(self) -> tuple[ExtFieldElem, ...]:
        return self.ext.bar_psi(self.selection)

    @cached_property
    def basis(self) -> tuple[MatFq, ...]:
        """``S X^i`` for ``X`` = P^T (or P), i = 0..k-1."""
        ext = self.ext
        a = ext.one
        out = []
        for _ in range(ext.k):
            out.append(self.selection @ ext.phi(a, transposed=self.transposed))
            a = a * ext.alpha
        return tuple(out)

    def codeword(self, b: ExtFieldElem) -> MatFq:
        return self.selection @ self.ext.phi(b, transposed=self.transposed)

    def erasure_decode(self, R: ErasableMatrix | MatFq) -> MatFq:
        return rank_metric_erasure_decode(self, R)


def _solve(F, equations: list[list[int]], nvars: int) -> list[int]:
    """Solve an augmented system ``[coeffs | rhs]``; the solution must be unique."""
    rows = [list(e) for e in equations]
    pivots = rref_rows(F, rows, nvars)
    for r in rows[len(pivots):]:
        if r[nvars]:
            raise InconsistentObservationError("observation is not consistent with any codeword")
    if len(pivots) < nvars:
        raise UnderdeterminedError(
            f"{len(pivots)} independent equations for {nvars} unknowns: too many erasures"
        )
    sol = [0] * nvars
    for r, c in zip(rows, pivots):
        sol[c] = r[nvars]
    return sol


def rank_metric_erasure_decode(gab: GabidulinCode, R: ErasableMatrix | MatFq) -> MatFq:
    """Recover ``S B`` from a partially erased observation.

    Every unerased entry gives one linear equation in the coefficients
    ``b_0..b_{k-1}`` of ``B = sum b_i X^i``.  Missing rows are passed as all-erased
    rows.  Unique whenever (erased rows) + (erased columns) < rows of S.
    """
    if R.shape != gab.selection.shape:
        raise ValueError(f"observation shape {R.shape} != code shape {gab.selection.shape}")
    F, k = gab.ext.base, gab.ext.k
    basis = gab.basis
    eqs = []
    for a, row in enumerate(R.rows):
        for c, x in enumerate(row):
            if x is not None:
                eqs.append([B.rows[a][c] for B in basis] + [x])
    b = _solve(F, eqs, k)
    return gab.codeword(gab.ext.element(b))


def decode_rec(code: SpreadCode, R: MatFq) -> GrassmannPoint:
    """Decode the surviving rows of a REC observation."""
    if not code.transposed:
        raise ValueError("REC decoding requires a spread in P^T orientation")
    if R.ncols != code.n:
        raise ValueError(f"observation has {R.ncols} columns, code length is {code.n}")
    row = next((r for r in R.rows if any(r)), None)
    if row is None:
        raise UndecodableError("observation has no nonzero row")
    return identify(code, row)


def _as_erasable(code: SpreadCode, R) -> ErasableMatrix:
    if isinstance(R, MatFq):
        R = ErasableMatrix.from_exact(R)
    if R.ncols != code.n:
        raise ValueError(f"observation has {R.ncols} columns, code length is {code.n}")
    return R


def decode_cec_report(code: SpreadCode, R: ErasableMatrix | MatFq) -> DecodeReport:
    if code.transposed:
        raise ValueError("CEC decoding without deletions requires a spread in P orientation")
    R = _as_erasable(code, R)
    k, m, ext = code.k, code.m, code.ext
    if R.nrows != k:
        raise ValueError(f"observation must have {k} rows")
    erased = set(R.erased_columns())
    erased_per_block = tuple(sum(1 for j in range(b * k, (b + 1) * k) if j in erased) for b in range(m))
    if max(erased_per_block) > k - 1:
        raise UndecodableError(f"a block has more than {k - 1} erased columns")

    zero = []
    for b in range(m):
        cols = [j for j in range(b * k, (b + 1) * k) if j not in erased]
        zero.append(any(not any(r[j] for r in R.rows) for j in cols))
    ref = next((b for b in range(m) if not zero[b] and erased_per_block[b] == 0), None)
    if ref is None:
        raise UndecodableError("no nonzero block is free of erasures")
    R_ref = R.block(ref, k).to_exact()
    try:
        R_inv = invert(R_ref)
    except SingularMatrixError:
        raise UndecodableError("reference block is singular (rank deficient channel?)") from None

    F = code.field
    coords = []
    for b in range(m):
        cols = [j for j in range(b * k, (b + 1) * k) if j not in erased]
        if zero[b]:
            if any(r[j] for r in R.rows for j in cols):
                raise InconsistentObservationError(f"block {b} has a zero column but is not zero")
            coords.append(ext.zero)
            continue
        j = cols[0]
        h = ext.element(mat_vec(F, R_inv, [r[j] for r in R.rows]))
        u = h * ext.alpha ** -(j - b * k)
        # the block must agree with phi(u) on every unerased column
        expected = ext.phi(u)
        for jj in cols:
            col = mat_vec(F, R_inv, [r[jj] for r in R.rows])
            if col != tuple(row[jj - b * k] for row in expected.rows):
                raise InconsistentObservationError(f"block {b} is not in F_q[P] after normalization")
        coords.append(u)
    return DecodeReport(GrassmannPoint.normalize(coords), ref, erased_per_block)


def decode_cec(code: SpreadCode, R: ErasableMatrix | MatFq) -> GrassmannPoint:
    """Decode a CEC observation (full-rank channel matrix)."""
    return decode_cec_report(code, R).point


def decode_cec_with_deletions_report(code: SpreadCode, R: ErasableMatrix | MatFq) -> DecodeReport:
    if not code.transposed:
        raise ValueError("CEC decoding with deletions requires a spread in P^T orientation")
    R = _as_erasable(code, R)
    k, m, ext, F = code.k, code.m, code.ext, code.field
    erased = set(R.erased_columns())
    kept = [j for j in range(code.n) if j not in erased]
    rows = [[r[j] for j in kept] for r in R.rows]
    rho = len(rref_rows(F, rows, len(kept)))
    if rho == 0:
        raise UndecodableError("observation has rank 0 on its unerased columns")
    r = k - rho
    if r < 0:
        raise InconsistentObservationError("observation rank exceeds k")

    # reduced rows with the erased columns carried along
    reduced = []
    for row in rows[:rho]:
        full: list[int | None] = [None] * code.n
        for j, x in zip(kept, row):
            full[j] = x
        reduced.append(tuple(full))
    R_bar = ErasableMatrix(F, tuple(reduced), code.n)

    erased_per_block = tuple(sum(1 for j in range(b * k, (b + 1) * k) if j in erased) for b in range(m))
    budget = k - r - 1
    if max(erased_per_block) > budget:
        raise UndecodableError(f"a block has more than {budget} erased columns ({r} deletions)")
    ref = next(
        (b for b in range(m) if erased_per_block[b] == 0 and not R_bar.block(b, k).to_exact().is_zero()),
        None,
    )
    if ref is None:
        raise UndecodableError("no nonzero block is free of erasures")
    S = R_bar.block(ref, k).to_exact()
    if rank(S) != rho:
        raise UndecodableError("reference block does not span the received space")
    gab = GabidulinCode(ext, S, transposed=True)
    blocks = [gab.erasure_decode(R_bar.block(b, k)) for b in range(m)]
    completed = blocks[0].hstack(*blocks[1:])
    return DecodeReport(decode_rec(code, completed), ref, erased_per_block, r)


def decode_cec_with_deletions(code: SpreadCode, R: ErasableMatrix | MatFq) -> GrassmannPoint:
    """Decode a CEC observation whose channel matrix may be rank deficient."""
    return decode_cec_with_deletions_report(code, R).point
