"""Dense matrices over F_q and over F_q with the erasure symbol.

Base-field elements are the integer indices used by :class:`spreadcodes.gf.BaseField`.
An erased entry is ``None`` (printed as ``?``).  Arithmetic with erasures follows

    0 * ? = 0,   x * ? = ?   (x != 0),   y + ? = ?,   ? + ? = ? * ? = ?
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, NamedTuple, Sequence

from spreadcodes.errors import SingularMatrixError

if TYPE_CHECKING:
    from spreadcodes.gf import BaseField

ERASED = None

Row = tuple


def as_rng(rng: random.Random | int | None) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    return random.Random(rng)


@dataclass(frozen=True)
class MatFq:
    """Immutable matrix with entries in a base field."""

    field: BaseField
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, field: BaseField, rows: Iterable[Sequence[int]], ncols: int | None = None) -> MatFq:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        q = field.order
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
            for x in r:
                if not 0 <= x < q:
                    raise ValueError(f"entry {x} is not an element of F_{q}")
        return cls(field, rows, ncols)

    @classmethod
    def identity(cls, field: BaseField, size: int) -> MatFq:
        return cls(field, tuple(tuple(int(i == j) for j in range(size)) for i in range(size)), size)

    @classmethod
    def zeros(cls, field: BaseField, nrows: int, ncols: int) -> MatFq:
        return cls(field, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    @property
    def T(self) -> MatFq:
        return MatFq(self.field, tuple(zip(*self.rows)) if self.rows else tuple(() for _ in range(self.ncols)), self.nrows)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __add__(self, other: MatFq) -> MatFq:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        add = self.field.add
        return MatFq(self.field, tuple(tuple(map(add, a, b)) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: MatFq) -> MatFq:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        sub = self.field.sub
        return MatFq(self.field, tuple(tuple(map(sub, a, b)) for a, b in zip(self.rows, other.rows)), self.ncols)

    def scale(self, c: int) -> MatFq:
        mul = self.field.mul
        return MatFq(self.field, tuple(tuple(mul(c, x) for x in r) for r in self.rows), self.ncols)

    def columns(self, cols: Sequence[int]) -> MatFq:
        return MatFq(self.field, tuple(tuple(r[j] for j in cols) for r in self.rows), len(cols))

    def select_rows(self, idx: Sequence[int]) -> MatFq:
        return MatFq(self.field, tuple(self.rows[i] for i in idx), self.ncols)

    def block(self, index: int, width: int) -> MatFq:
        """Return the ``index``-th block of ``width`` consecutive columns."""
        return self.columns(range(index * width, (index + 1) * width))

    def hstack(self, *others: MatFq) -> MatFq:
        rows = list(self.rows)
        ncols = self.ncols
        for o in others:
            if o.nrows != len(rows):
                raise ValueError("row count mismatch in hstack")
            rows = [a + b for a, b in zip(rows, o.rows)]
            ncols += o.ncols
        return MatFq(self.field, tuple(rows), ncols)

    def vstack(self, *others: MatFq) -> MatFq:
        rows = list(self.rows)
        for o in others:
            if o.ncols != self.ncols:
                raise ValueError("column count mismatch in vstack")
            rows.extend(o.rows)
        return MatFq(self.field, tuple(rows), self.ncols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def rref(self) -> RREF:
        return rref(self)

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> MatFq:
        return invert(self)

    def __str__(self) -> str:
        return format_matrix(self)


@dataclass(frozen=True)
class ErasableMatrix:
    """Matrix over F_q extended by the erasure symbol (``None``)."""

    field: BaseField
    rows: tuple[tuple[int | None, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, field: BaseField, rows: Iterable[Sequence[int | None]], ncols: int | None = None) -> ErasableMatrix:
        rows = tuple(tuple(None if x is None else int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
            for x in r:
                if x is not None and not 0 <= x < field.order:
                    raise ValueError(f"entry {x} is not an element of F_{field.order}")
        return cls(field, rows, ncols)

    @classmethod
    def from_exact(cls, m: MatFq) -> ErasableMatrix:
        return cls(m.field, m.rows, m.ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __rmatmul__(self, other):
        return mat_mul(other, self)

    def has_erasures(self) -> bool:
        return any(x is None for r in self.rows for x in r)

    def erased_columns(self) -> list[int]:
        """Columns containing at least one erasure."""
        return [j for j in range(self.ncols) if any(r[j] is None for r in self.rows)]

    def unerased_columns(self) -> list[int]:
        return [j for j in range(self.ncols) if all(r[j] is not None for r in self.rows)]

    def erased_rows(self) -> list[int]:
        return [i for i, r in enumerate(self.rows) if any(x is None for x in r)]

    def columns(self, cols: Sequence[int]) -> ErasableMatrix:
        return ErasableMatrix(self.field, tuple(tuple(r[j] for j in cols) for r in self.rows), len(cols))

    def block(self, index: int, width: int) -> ErasableMatrix:
        return self.columns(range(index * width, (index + 1) * width))

    def to_exact(self) -> MatFq:
        if self.has_erasures():
            raise ValueError("matrix contains erasures")
        return MatFq(self.field, self.rows, self.ncols)

    def __str__(self) -> str:
        return format_matrix(self)


def _check_field(a, b) -> None:
    if a.field != b.field:
        raise ValueError("matrices are over different fields")


def mat_mul(a: MatFq | ErasableMatrix, b: MatFq | ErasableMatrix) -> MatFq | ErasableMatrix:
    """Matrix product; erasures propagate when either operand is erasable."""
    _check_field(a, b)
    if a.ncols != b.nrows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    field = a.field
    cols = list(zip(*b.rows)) if b.rows else [() for _ in range(b.ncols)]
    if isinstance(a, MatFq) and isinstance(b, MatFq):
        return MatFq(field, _mul_rows(field, a.rows, cols), b.ncols)
    add, mul = field.add, field.mul
    out = []
    for r in a.rows:
        new = []
        for c in cols:
            acc = 0
            for x, y in zip(r, c):
                if x is None or y is None:
                    if x == 0 or y == 0:
                        continue
                    acc = None
                    break
                if x and y:
                    acc = add(acc, mul(x, y))
            new.append(acc)
        out.append(tuple(new))
    return ErasableMatrix(field, tuple(out), b.ncols)


def _mul_rows(field, arows, bcols) -> tuple[tuple[int, ...], ...]:
    if field.order == 2:
        # pack into bitmasks; a dot product is the parity of the AND
        am = [int("".join(map(str, r)) or "0", 2) for r in arows]
        bm = [int("".join(map(str, c)) or "0", 2) for c in bcols]
        return tuple(tuple((x & y).bit_count() & 1 for y in bm) for x in am)
    add, mul = field.add, field.mul
    out = []
    for r in arows:
        new = []
        for c in bcols:
            acc = 0
            for x, y in zip(r, c):
                if x and y:
                    acc = add(acc, mul(x, y))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def vec_mat(field: BaseField, v: Sequence[int], m: MatFq) -> tuple[int, ...]:
    """Row vector times matrix."""
    return _mul_rows(field, (tuple(v),), list(zip(*m.rows)))[0]


def mat_vec(field: BaseField, m: MatFq, v: Sequence[int]) -> tuple[int, ...]:
    """Matrix times column vector."""
    return tuple(x[0] for x in _mul_rows(field, m.rows, [tuple(v)]))


def rref_rows(field: BaseField, rows: list[list[int]], ncols: int) -> list[int]:
    """Row-reduce ``rows`` in place; return the pivot columns.

    Pivoting is deterministic: columns are scanned left to right and the topmost
    candidate row is taken.
    """
    inv, mul, sub = field.inv, field.mul, field.sub
    binary = field.order == 2
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = r
        while piv < nrows and not rows[piv][c]:
            piv += 1
        if piv == nrows:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        if pr[c] != 1:
            f = inv(pr[c])
            pr = [mul(f, x) for x in pr]
            rows[r] = pr
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    if binary:
                        rows[i] = [a ^ b for a, b in zip(rows[i], pr)]
                    else:
                        rows[i] = [sub(a, mul(f, b)) for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return pivots


class RREF(NamedTuple):
    matrix: MatFq
    rank: int
    pivots: tuple[int, ...]
    # transform @ original == matrix
    transform: MatFq


def rref(m: MatFq) -> RREF:
    """Reduced row echelon form together with the row-operation record."""
    n = m.nrows
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m.rows)]
    # pivots are searched only among the original columns
    pivots = _rref_augmented(m.field, aug, m.ncols)
    red = MatFq(m.field, tuple(tuple(r[: m.ncols]) for r in aug), m.ncols)
    transform = MatFq(m.field, tuple(tuple(r[m.ncols:]) for r in aug), n)
    return RREF(red, len(pivots), tuple(pivots), transform)


def _rref_augmented(field, rows, ncols):
    inv, mul, sub = field.inv, field.mul, field.sub
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        f = inv(rows[r][c])
        rows[r] = [mul(f, x) for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                g = rows[i][c]
                rows[i] = [sub(a, mul(g, b)) for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: MatFq) -> int:
    rows = [list(r) for r in m.rows]
    return len(rref_rows(m.field, rows, m.ncols))


def invert(m: MatFq) -> MatFq:
    """Gauss-Jordan inverse; raises :class:`SingularMatrixError` if singular."""
    if m.nrows != m.ncols:
        raise ValueError(f"cannot invert a non-square {m.shape} matrix")
    res = rref(m)
    if res.rank < m.nrows:
        raise SingularMatrixError("matrix is singular")
    return res.transform


def reduced_basis(m: MatFq) -> MatFq:
    """Nonzero rows of the RREF of ``m``."""
    rows = [list(r) for r in m.rows]
    piv = rref_rows(m.field, rows, m.ncols)
    return MatFq(m.field, tuple(tuple(r) for r in rows[: len(piv)]), m.ncols)


def row_space_equal(a: MatFq, b: MatFq) -> bool:
    return a.ncols == b.ncols and reduced_basis(a).rows == reduced_basis(b).rows


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n stored by its canonical RREF basis."""

    basis: MatFq

    @classmethod
    def from_matrix(cls, m: MatFq) -> Subspace:
        return cls(reduced_basis(m))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def ambient(self) -> int:
        return self.basis.ncols

    def contains(self, v: Sequence[int]) -> bool:
        stacked = self.basis.vstack(MatFq(self.basis.field, (tuple(v),), self.ambient))
        return rank(stacked) == self.dim


def subspace_distance(u: Subspace, v: Subspace) -> int:
    """dim(U + V) - dim(U cap V)."""
    if u.ambient != v.ambient:
        raise ValueError("subspaces live in different ambient spaces")
    return 2 * rank(u.basis.vstack(v.basis)) - u.dim - v.dim


def random_matrix(
    field: BaseField,
    nrows: int,
    ncols: int,
    rank: int | None = None,
    rng: random.Random | int | None = None,
) -> MatFq:
    """Uniformly random matrix of the given rank (default: full rank)."""
    rng = as_rng(rng)
    full = min(nrows, ncols)
    if rank is None:
        rank = full
    if not 0 <= rank <= full:
        raise ValueError(f"rank {rank} impossible for a {nrows}x{ncols} matrix")
    if rank == 0:
        return MatFq.zeros(field, nrows, ncols)
    if rank == full:
        return _random_full_rank(field, nrows, ncols, rng)
    left = _random_full_rank(field, nrows, nrows, rng)
    right = _random_full_rank(field, ncols, ncols, rng)
    proj = MatFq(field, tuple(tuple(int(i == j and i < rank) for j in range(ncols)) for i in range(nrows)), ncols)
    return left @ proj @ right


def _random_full_rank(field, nrows, ncols, rng) -> MatFq:
    q = field.order
    target = min(nrows, ncols)
    while True:
        rows = [[rng.randrange(q) for _ in range(ncols)] for _ in range(nrows)]
        work = [list(r) for r in rows]
        if len(rref_rows(field, work, ncols)) == target:
            return MatFq(field, tuple(tuple(r) for r in rows), ncols)


# --- text format -----------------------------------------------------------

def parse_matrix(text: str, field: BaseField) -> MatFq | ErasableMatrix:
    """Parse the whitespace separated matrix format.

    One row per line, ``?`` for erasures, ``|`` block separators are ignored and
    ``#`` starts a comment.  Returns an :class:`ErasableMatrix` when any entry is
    erased, a :class:`MatFq` otherwise.
    """
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].replace("|", " ").strip()
        if not line:
            continue
        rows.append([None if tok == "?" else int(tok) for tok in line.split()])
    if not rows:
        raise ValueError("empty matrix text")
    erm = ErasableMatrix.from_rows(field, rows)
    return erm if erm.has_erasures() else erm.to_exact()


def format_matrix(m: MatFq | ErasableMatrix, block: int | None = None) -> str:
    lines = []
    for r in m.rows:
        toks = ["?" if x is None else str(x) for x in r]
        if block:
            toks = [" ".join(toks[i:i + block]) for i in range(0, len(toks), block)]
            lines.append(" | ".join(toks))
        else:
            lines.append(" ".join(toks))
    return "\n".join(lines)
