"""Desarguesian spread codes S_q(m, k, P) and S_q(m, k, P^T).

Codewords are identified with points of the projective line-Grassmannian over
F_{q^k}: a normalized vector ``(u_1, ..., u_m)`` (first nonzero entry 1) maps to
the row space of ``(phi(u_1) | ... | phi(u_m))``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from spreadcodes.errors import BudgetExceededError
from spreadcodes.gf import GF, ExtField, ExtFieldElem
from spreadcodes.linalg import MatFq, as_rng

DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class GrassmannPoint:
    """Normalized nonzero vector in F_{q^k}^m."""

    coords: tuple[ExtFieldElem, ...]

    def __post_init__(self):
        lead = next((c for c in self.coords if c), None)
        if lead is None:
            raise ValueError("the zero vector is not a Grassmann point")
        if lead != lead.field.one:
            raise ValueError("Grassmann point is not normalized; use GrassmannPoint.normalize")

    @classmethod
    def normalize(cls, coords: Sequence[ExtFieldElem]) -> GrassmannPoint:
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise ValueError("the zero vector is not a Grassmann point")
        inv = lead.inverse()
        return cls(tuple(c * inv for c in coords))

    @property
    def m(self) -> int:
        return len(self.coords)

    @property
    def field(self) -> ExtField:
        return self.coords[0].field

    def key(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coords)

    def __lt__(self, other: GrassmannPoint) -> bool:
        return self.key() < other.key()

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def coefficient_form(self) -> str:
        return ",".join("[" + " ".join(map(str, c.coeffs)) + "]" for c in self.coords)


@dataclass(frozen=True)
class SpreadCode:
    ext: ExtField
    m: int
    transposed: bool = False

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")

    @classmethod
    def create(cls, q: int, k: int, m: int, poly=None, transposed: bool = False) -> SpreadCode:
        return cls(ExtField(GF(q), poly, k=k), m, transposed)

    @classmethod
    def from_spec(cls, spec: str) -> SpreadCode:
        """Parse ``"spread:q=2,k=4,m=2,p=x^4+x+1,orient=T"``."""
        body = spec.strip()
        if body.startswith("spread:"):
            body = body[len("spread:"):]
        elif ":" in body:
            raise ValueError(f"not a spread code spec: {spec!r}")
        parts = dict(p.split("=", 1) for p in body.replace(" ", "").split(",") if p)
        unknown = set(parts) - {"q", "k", "m", "p", "orient"}
        if unknown:
            raise ValueError(f"unknown spread parameters: {sorted(unknown)}")
        orient = parts.get("orient", "P").upper()
        if orient not in ("P", "T", "PT"):
            raise ValueError(f"orient must be P or T, got {orient!r}")
        return cls.create(int(parts["q"]), int(parts["k"]), int(parts["m"]), parts.get("p"), orient != "P")

    def spec(self) -> str:
        return f"spread:q={self.q},k={self.k},m={self.m},p={self.ext.poly},orient={'T' if self.transposed else 'P'}"

    @property
    def q(self) -> int:
        return self.ext.q

    @property
    def k(self) -> int:
        return self.ext.k

    @property
    def n(self) -> int:
        return self.m * self.ext.k

    @property
    def field(self):
        return self.ext.base

    @property
    def size(self) -> int:
        Q = self.ext.order
        return (Q ** self.m - 1) // (Q - 1)

    @property
    def block_generator(self) -> MatFq:
        """P, or P^T for the transposed orientation."""
        return self.ext.P.T if self.transposed else self.ext.P

    def point(self, coords: Sequence[ExtFieldElem | str | int]) -> GrassmannPoint:
        """Normalized point from elements, strings like ``"1+a^2"`` or integer indices."""
        elems = []
        for c in coords:
            if isinstance(c, ExtFieldElem):
                elems.append(c)
            elif isinstance(c, int):
                elems.append(self.ext.from_int(c))
            else:
                elems.append(self.ext.parse_element(c))
        if len(elems) != self.m:
            raise ValueError(f"expected {self.m} coordinates, got {len(elems)}")
        return GrassmannPoint.normalize(elems)

    def encode(self, u: GrassmannPoint) -> MatFq:
        return encode(self, u)

    def identify(self, v: Sequence[int]) -> GrassmannPoint:
        return identify(self, v)


def encode(code: SpreadCode, u: GrassmannPoint) -> MatFq:
    """Canonical codeword matrix ``(0 | ... | 0 | I | B_{i+1} | ... | B_m)``."""
    if u.m != code.m:
        raise ValueError(f"point has {u.m} coordinates, code expects {code.m}")
    if u.field != code.ext:
        raise ValueError("point lives over a different extension field")
    blocks = [code.ext.phi(c, transposed=code.transposed) for c in u.coords]
    return blocks[0].hstack(*blocks[1:])


def identify(code: SpreadCode, v: Sequence[int]) -> GrassmannPoint:
    """The codeword containing the nonzero vector ``v`` (P^T orientation only).

    Every vector of ``rowsp(phi^T(u_1) | ... )`` maps block-wise under psi to a
    scalar multiple of ``(u_1, ..., u_m)``.
    """
    if not code.transposed:
        raise ValueError("identify needs the P^T orientation; rows of P-form codewords are not psi-multiples")
    if len(v) != code.n:
        raise ValueError(f"vector length {len(v)} != n = {code.n}")
    if not any(v):
        raise ValueError("the zero vector lies in every codeword")
    k = code.k
    return GrassmannPoint.normalize([code.ext.element(v[i * k:(i + 1) * k]) for i in range(code.m)])


def point_from_index(code: SpreadCode, index: int) -> GrassmannPoint:
    """Inverse of :func:`point_index` (canonical message indexing)."""
    if not 0 <= index < code.size:
        raise ValueError(f"index {index} outside 0..{code.size - 1}")
    Q, m, ext = code.ext.order, code.m, code.ext
    lead = m - 1
    while True:
        count = Q ** (m - lead - 1)
        if index < count:
            break
        index -= count
        lead -= 1
    tail = []
    for _ in range(m - lead - 1):
        index, d = divmod(index, Q)
        tail.append(d)
    tail.reverse()
    coords = [ext.zero] * lead + [ext.one] + [ext.from_int(t) for t in tail]
    return GrassmannPoint(tuple(coords))


def point_index(code: SpreadCode, u: GrassmannPoint) -> int:
    """Position of ``u`` in the lexicographic enumeration of the code."""
    Q, m = code.ext.order, code.m
    key = u.key()
    lead = next(i for i, c in enumerate(key) if c)
    offset = sum(Q ** (m - l - 1) for l in range(lead + 1, m))
    value = 0
    for c in key[lead + 1:]:
        value = value * Q + c
    return offset + value


def enumerate_points(code: SpreadCode, budget: int = DEFAULT_BUDGET) -> Iterator[GrassmannPoint]:
    if code.size > budget:
        raise BudgetExceededError(f"spread has {code.size} codewords, budget is {budget}")
    for i in range(code.size):
        yield point_from_index(code, i)


def enumerate_codewords(code: SpreadCode, budget: int = DEFAULT_BUDGET) -> Iterator[MatFq]:
    """Every codeword matrix exactly once, ordered by Grassmann point."""
    for u in enumerate_points(code, budget):
        yield encode(code, u)


def random_point(code: SpreadCode, rng: random.Random | int | None = None) -> GrassmannPoint:
    return point_from_index(code, as_rng(rng).randrange(code.size))


def nonzero_blocks(u: GrassmannPoint) -> list[int]:
    return [i for i, c in enumerate(u.coords) if c]
