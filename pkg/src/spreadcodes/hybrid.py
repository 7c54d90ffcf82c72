"""Hybrid codes: subspaces of F_q^{n'} pushed through an [n, n'] GRS generator.

The GRS code is evaluation of polynomials of degree < n' at the field elements
with indices ``0..n-1`` (all column multipliers 1), so the generator is the
Vandermonde matrix ``G[i][j] = x_j^i``.  A row ``vG`` is the evaluation vector of
the polynomial with coefficient vector ``v``; column erasures are undone by
interpolation through any n' surviving coordinates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from spreadcodes.errors import DeletionsUnsupportedError, InconsistentObservationError, UndecodableError
from spreadcodes.gf import GF, BaseField
from spreadcodes.linalg import ErasableMatrix, MatFq, Subspace, as_rng, random_matrix


@dataclass(frozen=True)
class HybridCode:
    q: int
    n: int
    n_prime: int
    k: int

    def __post_init__(self):
        if not self.k < self.n_prime < self.n:
            raise ValueError(f"need k < n' < n, got k={self.k}, n'={self.n_prime}, n={self.n}")
        if self.q < self.n:
            raise ValueError(f"GRS code of length {self.n} needs q >= n, got q={self.q}")
        GF(self.q)

    @classmethod
    def from_spec(cls, spec: str) -> HybridCode:
        """Parse ``"hybrid:q=7,n=6,np=4,k=2"``."""
        body = spec.strip()
        if body.startswith("hybrid:"):
            body = body[len("hybrid:"):]
        elif ":" in body:
            raise ValueError(f"not a hybrid code spec: {spec!r}")
        parts = dict(p.split("=", 1) for p in body.replace(" ", "").split(",") if p)
        return cls(int(parts["q"]), int(parts["n"]), int(parts["np"]), int(parts["k"]))

    def spec(self) -> str:
        return f"hybrid:q={self.q},n={self.n},np={self.n_prime},k={self.k}"

    @property
    def field(self) -> BaseField:
        return GF(self.q)

    @property
    def points(self) -> tuple[int, ...]:
        return tuple(range(self.n))

    @cached_property
    def generator(self) -> MatFq:
        F = self.field
        return MatFq(F, tuple(tuple(F.pow(x, i) for x in self.points) for i in range(self.n_prime)), self.n)

    def encode(self, U: Subspace | MatFq) -> MatFq:
        return hybrid_encode(self, U)


def hybrid_encode(code: HybridCode, U: Subspace | MatFq) -> MatFq:
    """RREF basis of U (a k-dim subspace of F_q^{n'}) times the GRS generator."""
    if isinstance(U, MatFq):
        U = Subspace.from_matrix(U)
    if U.ambient != code.n_prime or U.dim != code.k:
        raise ValueError(f"need a {code.k}-dim subspace of F_q^{code.n_prime}, got dim {U.dim} in F_q^{U.ambient}")
    return U.basis @ code.generator


def interpolate(F: BaseField, xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    """Coefficients (lowest first) of the unique polynomial of degree < len(xs)."""
    n = len(xs)
    add, sub, mul = F.add, F.sub, F.mul
    # master = prod (x - x_i)
    master = [1]
    for x in xs:
        nxt = [0] * (len(master) + 1)
        for i, c in enumerate(master):
            nxt[i + 1] = add(nxt[i + 1], c)
            nxt[i] = sub(nxt[i], mul(c, x))
        master = nxt
    out = [0] * n
    for xi, yi in zip(xs, ys):
        # synthetic division master / (x - xi)
        quot = [0] * n
        carry = 0
        for d in range(n, 0, -1):
            carry = add(master[d], mul(carry, xi))
            quot[d - 1] = carry
        denom = 0
        for c in reversed(quot):
            denom = add(mul(denom, xi), c)
        scale = F.div(yi, denom)
        if scale:
            for i, c in enumerate(quot):
                out[i] = add(out[i], mul(scale, c))
    return out


def _evaluate(F: BaseField, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def grs_erasure_decode(code: HybridCode, row: Sequence[int | None]) -> tuple[int, ...]:
    """Message vector of length n' from an erased GRS codeword."""
    if len(row) != code.n:
        raise ValueError(f"row length {len(row)} != n = {code.n}")
    F = code.field
    known = [(x, y) for x, y in zip(code.points, row) if y is not None]
    if len(known) < code.n_prime:
        raise UndecodableError(f"{len(known)} unerased coordinates, need {code.n_prime}")
    base = known[: code.n_prime]
    coeffs = interpolate(F, [x for x, _ in base], [y for _, y in base])
    for x, y in known[code.n_prime:]:
        if _evaluate(F, coeffs, x) != y:
            raise InconsistentObservationError("row is not a GRS codeword")
    return tuple(coeffs)


def hybrid_decode_cec(code: HybridCode, R: ErasableMatrix | MatFq) -> Subspace:
    """Recover the sent subspace of F_q^{n'} from a CEC observation."""
    if isinstance(R, MatFq):
        R = ErasableMatrix.from_exact(R)
    if R.shape != (code.k, code.n):
        raise ValueError(f"observation must be {code.k}x{code.n}, got {R.shape}")
    erased = R.erased_columns()
    if len(erased) > code.n - code.n_prime:
        raise UndecodableError(f"{len(erased)} erased columns, the code corrects {code.n - code.n_prime}")
    messages = MatFq(code.field, tuple(grs_erasure_decode(code, r) for r in R.rows), code.n_prime)
    U = Subspace.from_matrix(messages)
    if U.dim < code.k:
        raise DeletionsUnsupportedError(f"received dimension {U.dim} < k = {code.k}")
    return U


def random_subspace(code: HybridCode, rng: random.Random | int | None = None) -> Subspace:
    rng = as_rng(rng)
    return Subspace.from_matrix(random_matrix(code.field, code.k, code.n_prime, rng=rng))
