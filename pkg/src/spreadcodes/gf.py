"""Finite fields F_q (table based) and extensions F_{q^k} = F_q[alpha].

Base-field elements are integers ``0..q-1``.  For ``q = p^d`` with ``d > 1`` the
integer is the base-p encoding ``c_0 + c_1 p + ...`` of the coefficient vector of
the element modulo the defining polynomial of F_q over F_p.

Extension elements are coefficient vectors ``(v_0, ..., v_{k-1})`` meaning
``sum v_i alpha^i``; they are reduced modulo a monic irreducible ``p(x)``.
"""

from __future__ import annotations

import dataclasses
import operator
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from spreadcodes.linalg import MatFq

MAX_BASE_ORDER = 1 << 16


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, d)`` with ``q = p**d``; raise if q is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    d, rest = 0, q
    while rest % p == 0:
        rest //= p
        d += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, d


def is_prime_power(q: int) -> bool:
    try:
        factor_prime_power(q)
    except ValueError:
        return False
    return True


def smallest_prime_power_at_least(n: int) -> int:
    q = max(n, 2)
    while not is_prime_power(q):
        q += 1
    return q


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over a field object (lists, lowest degree first) ------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(F, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    add, mul = F.add, F.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return _trim(out)


def poly_divmod(F, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _trim(list(a))
    if len(rem) < len(b):
        return [], rem
    quot = [0] * (len(rem) - len(b) + 1)
    lead_inv = F.inv(b[-1])
    sub, mul = F.sub, F.mul
    while len(rem) >= len(b):
        c = mul(rem[-1], lead_inv)
        shift = len(rem) - len(b)
        quot[shift] = c
        for i, y in enumerate(b):
            if y:
                rem[shift + i] = sub(rem[shift + i], mul(c, y))
        _trim(rem)
    return _trim(quot), rem


def poly_sub(F, a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([F.sub(x, y) for x, y in zip(a, b)])


def poly_gcd(F, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Monic gcd."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    if not a:
        return a
    c = F.inv(a[-1])
    return [F.mul(c, x) for x in a]


def poly_powmod(F, base: Sequence[int], e: int, mod: Sequence[int]) -> list[int]:
    result = [1]
    base = poly_divmod(F, base, mod)[1]
    while e:
        if e & 1:
            result = poly_divmod(F, poly_mul(F, result, base), mod)[1]
        e >>= 1
        if e:
            base = poly_divmod(F, poly_mul(F, base, base), mod)[1]
    return result


def rabin_irreducible(F, f: Sequence[int]) -> bool:
    """Rabin's irreducibility test for a monic ``f`` over the field ``F``."""
    f = _trim(list(f))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    q = F.order
    x = [0, 1]
    # frob[i] = x^(q^i) mod f
    frob = [poly_divmod(F, x, f)[1]]
    for _ in range(k):
        frob.append(poly_powmod(F, frob[-1], q, f))
    if poly_sub(F, frob[k], frob[0]):
        return False
    for t in _prime_factors(k):
        g = poly_gcd(F, poly_sub(F, frob[k // t], x), f)
        if len(g) != 1:
            return False
    return True


# --- base field --------------------------------------------------------------

class BaseField:
    """The finite field F_q, q = p^d <= 2^16, with exp/log tables.

    >>> F = BaseField(7)
    >>> F.mul(3, 5)
    1
    """

    def __init__(self, q: int, modulus: Sequence[int] | None = None):
        p, d = factor_prime_power(q)
        if q > MAX_BASE_ORDER:
            raise ValueError(f"q={q} exceeds the supported maximum {MAX_BASE_ORDER}")
        self.order = q
        self.char = p
        self.degree = d
        if d == 1:
            self.modulus: tuple[int, ...] | None = None
        else:
            prime = GF(p)
            if modulus is None:
                modulus = find_irreducible(prime, d).full_coeffs()
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != d + 1 or modulus[-1] != 1 or not rabin_irreducible(prime, modulus):
                raise ValueError(f"{modulus} is not a monic irreducible polynomial of degree {d} over F_{p}")
            self.modulus = modulus
        self._setup_addition()
        self._setup_tables()

    # addition -----------------------------------------------------------
    def _setup_addition(self) -> None:
        p, q = self.char, self.order
        if p == 2:
            self.add = operator.xor
            self.sub = operator.xor
            self.neg = lambda a: a
            return
        if self.degree == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
            return
        neg_table = [self._from_digits([(-c) % p for c in self._digits(a)]) for a in range(q)]
        self.neg = neg_table.__getitem__
        if q <= 256:
            table = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]
            self.add = lambda a, b: table[a][b]
            self.sub = lambda a, b: table[a][neg_table[b]]
        else:
            self.add = self._add_digits
            self.sub = lambda a, b: self._add_digits(a, neg_table[b])

    def _digits(self, a: int) -> list[int]:
        p = self.char
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _from_digits(self, digits: Sequence[int]) -> int:
        v = 0
        for c in reversed(digits):
            v = v * self.char + c
        return v

    def _add_digits(self, a: int, b: int) -> int:
        p = self.char
        return self._from_digits([(x + y) % p for x, y in zip(self._digits(a), self._digits(b))])

    # multiplication -----------------------------------------------------
    def _mul_slow(self, a: int, b: int) -> int:
        p, d = self.char, self.degree
        if d == 1:
            return a * b % p
        if p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> d & 1:
                    a ^= self._mod_int
            return r
        prime = GF(p)
        prod = poly_mul(prime, self._digits(a), self._digits(b))
        rem = poly_divmod(prime, prod, self.modulus)[1]
        return self._from_digits(rem + [0] * (d - len(rem)))

    def _setup_tables(self) -> None:
        q = self.order
        if self.modulus is not None and self.char == 2:
            self._mod_int = sum(c << i for i, c in enumerate(self.modulus))
        if q == 2:
            self.generator = 1
            self.exp = [1, 1]
            self.log = [None, 0]
            self.mul = operator.and_
            self.inv = self._inv_binary
            return
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._mul_slow(x, g)
            if len(exp) == q - 1:
                break
        self.generator = g
        log: list[int | None] = [None] * q
        for i, v in enumerate(exp):
            log[v] = i
        self.exp = exp + exp
        self.log = log
        ex, lg, n = self.exp, log, q - 1

        def mul(a: int, b: int) -> int:
            if a == 0 or b == 0:
                return 0
            return ex[lg[a] + lg[b]]

        def inv(a: int) -> int:
            if a == 0:
                raise ZeroDivisionError("inverse of zero in a finite field")
            return ex[n - lg[a]]

        self.mul = mul
        self.inv = inv

    @staticmethod
    def _inv_binary(a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return 1

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.order - 1)]

    def elements(self) -> range:
        return range(self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, BaseField) and (self.order, self.modulus) == (other.order, other.modulus)

    def __hash__(self) -> int:
        return hash((self.order, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.order})"


@lru_cache(maxsize=None)
def GF(q: int, modulus: tuple[int, ...] | None = None) -> BaseField:
    """Cached :class:`BaseField` constructor."""
    return BaseField(q, modulus)


def base_arith(field: BaseField, a: int, b: int | None, op: str) -> int:
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "inv":
        return field.inv(a)
    raise ValueError(f"unknown operation {op!r}")


# --- monic polynomials ---------------------------------------------------------

_TERM = re.compile(r"^(\d*)\*?(?:([xX])(?:\^(\d+))?)?$")


@dataclass(frozen=True)
class MonicPoly:
    """Monic ``x^k + p_{k-1} x^{k-1} + ... + p_0``; ``coeffs = (p_0, ..., p_{k-1})``."""

    field: BaseField
    coeffs: tuple[int, ...]
    irreducible: bool = dataclasses.field(default=False, compare=False)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def full_coeffs(self) -> tuple[int, ...]:
        return self.coeffs + (1,)

    def checked(self) -> MonicPoly:
        """Copy with the irreducibility flag set after running the test."""
        if not rabin_irreducible(self.field, self.full_coeffs()):
            raise ValueError(f"{self} is reducible over F_{self.field.order}")
        return dataclasses.replace(self, irreducible=True)

    @classmethod
    def from_coeffs(cls, field: BaseField, coeffs: Sequence[int]) -> MonicPoly:
        """Build from the full coefficient list, lowest degree first, leading 1 included."""
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError("coefficient list must end with the leading coefficient 1")
        return cls(field, tuple(coeffs[:-1]))

    @classmethod
    def parse(cls, field: BaseField, text: str | Sequence[int]) -> MonicPoly:
        """Parse ``"x^3+x+1"``, ``"2x^2+1"`` or a coefficient list such as ``"1,1,0,1"``."""
        if not isinstance(text, str):
            return cls.from_coeffs(field, text)
        s = text.replace(" ", "")
        if re.fullmatch(r"\d+(,\d+)+", s):
            return cls.from_coeffs(field, [int(c) for c in s.split(",")])
        terms: dict[int, int] = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
            m = _TERM.match(body)
            if not m or (not m.group(1) and not m.group(2)):
                raise ValueError(f"cannot parse polynomial term {body!r} in {text!r}")
            c = int(m.group(1)) if m.group(1) else 1
            if c >= field.order:
                raise ValueError(f"coefficient {c} is not an element of F_{field.order}")
            e = 0 if not m.group(2) else int(m.group(3) or 1)
            if sign == "-":
                c = field.neg(c)
            terms[e] = field.add(terms.get(e, 0), c)
        deg = max(terms)
        full = [terms.get(i, 0) for i in range(deg + 1)]
        return cls.from_coeffs(field, full)

    def __str__(self) -> str:
        parts = []
        for e in range(self.degree, -1, -1):
            c = 1 if e == self.degree else self.coeffs[e]
            if c == 0:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                mono = "x" if e == 1 else f"x^{e}"
                parts.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(parts)


def find_irreducible(field: BaseField | int, k: int) -> MonicPoly:
    """Monic irreducible of degree k whose coefficients ``(p_0, ..., p_{k-1})``,
    read as the base-q integer ``sum p_i q^i``, are minimal."""
    if isinstance(field, int):
        field = GF(field)
    if k < 1:
        raise ValueError("degree must be at least 1")
    q = field.order
    for value in range(q ** k):
        coeffs = []
        v = value
        for _ in range(k):
            v, c = divmod(v, q)
            coeffs.append(c)
        if k > 1 and coeffs[0] == 0:
            continue
        if rabin_irreducible(field, coeffs + [1]):
            return MonicPoly(field, tuple(coeffs), irreducible=True)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


def companion(poly: MonicPoly) -> MatFq:
    """Companion matrix: ones on the subdiagonal, last column ``-p_0, ..., -p_{k-1}``."""
    F, k = poly.field, poly.degree
    rows = []
    for i in range(k):
        row = [0] * k
        if i > 0:
            row[i - 1] = 1
        row[k - 1] = F.add(row[k - 1], F.neg(poly.coeffs[i]))
        rows.append(tuple(row))
    return MatFq(F, tuple(rows), k)


# --- extension field -----------------------------------------------------------

class ExtField:
    """F_{q^k} realised as F_q[alpha] with p(alpha) = 0."""

    def __init__(self, base: BaseField | int, poly: MonicPoly | str | Sequence[int] | None = None, k: int | None = None):
        if isinstance(base, int):
            base = GF(base)
        if poly is None:
            if k is None:
                raise ValueError("either a defining polynomial or the degree k is required")
            poly = find_irreducible(base, k)
        elif not isinstance(poly, MonicPoly):
            poly = MonicPoly.parse(base, poly)
        if poly.field != base:
            raise ValueError("defining polynomial is over a different field")
        if k is not None and poly.degree != k:
            raise ValueError(f"polynomial {poly} does not have degree {k}")
        if not poly.irreducible:
            poly = poly.checked()
        self.base = base
        self.poly = poly
        self.k = poly.degree
        self.q = base.order
        self.order = self.q ** self.k
        self._neg_p = tuple(base.neg(c) for c in poly.coeffs)
        self.P = companion(poly)
        self.zero = ExtFieldElem(self, (0,) * self.k)
        self.one = ExtFieldElem(self, (1,) + (0,) * (self.k - 1))
        self.alpha = ExtFieldElem(self, ((0, 1) + (0,) * (self.k - 2)) if self.k > 1 else (self._neg_p[0],))

    @classmethod
    def from_spec(cls, spec: str) -> ExtField:
        """Parse ``"q=2,k=3,p=x^3+x^2+1"``; ``p`` is optional."""
        fields = dict(part.split("=", 1) for part in spec.replace(" ", "").split(",") if part)
        q, k = int(fields["q"]), int(fields["k"])
        return cls(GF(q), fields.get("p"), k=k)

    def spec(self) -> str:
        return f"q={self.q},k={self.k},p={self.poly}"

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtField) and self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def __repr__(self) -> str:
        return f"ExtField({self.spec()})"

    # raw arithmetic on coefficient tuples ----------------------------------
    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        F, k = self.base, self.k
        add, mul = F.add, F.mul
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = add(prod[i + j], mul(x, y))
        neg_p = self._neg_p
        for e in range(2 * k - 2, k - 1, -1):
            c = prod[e]
            if c:
                base = e - k
                for i, pc in enumerate(neg_p):
                    if pc:
                        prod[base + i] = add(prod[base + i], mul(c, pc))
        return tuple(prod[:k])

    def _times_alpha(self, a: tuple[int, ...]) -> tuple[int, ...]:
        F = self.base
        top = a[-1]
        shifted = (0,) + a[:-1]
        if not top:
            return shifted
        return tuple(F.add(s, F.mul(top, pc)) for s, pc in zip(shifted, self._neg_p))

    def _inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        F = self.base
        if not any(a):
            raise ZeroDivisionError("inverse of zero in an extension field")
        # extended Euclid: track s with s*a = r (mod p)
        r0, r1 = list(self.poly.full_coeffs()), _trim(list(a))
        s0, s1 = [], [1]
        while len(r1) > 1:
            quo, rem = poly_divmod(F, r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, poly_sub(F, s0, poly_mul(F, quo, s1))
        c = F.inv(r1[0])
        s = poly_divmod(F, [F.mul(c, x) for x in s1], self.poly.full_coeffs())[1]
        return tuple(s + [0] * (self.k - len(s)))

    # element construction ---------------------------------------------------
    def element(self, coeffs: Sequence[int]) -> ExtFieldElem:
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(coeffs)}")
        if any(not 0 <= c < self.q for c in coeffs):
            raise ValueError("coefficient outside the base field")
        return ExtFieldElem(self, coeffs)

    def from_int(self, index: int) -> ExtFieldElem:
        """Element whose coefficients are the base-q digits of ``index`` (v_0 least significant)."""
        if not 0 <= index < self.order:
            raise ValueError(f"index {index} outside F_{self.q}^{self.k}")
        coeffs = []
        for _ in range(self.k):
            index, c = divmod(index, self.q)
            coeffs.append(c)
        return ExtFieldElem(self, tuple(coeffs))

    def elements(self) -> Iterator[ExtFieldElem]:
        return (self.from_int(i) for i in range(self.order))

    def parse_element(self, text: str) -> ExtFieldElem:
        """Parse ``"1+a^2+a^3"`` (``a`` or ``alpha`` for the root) or ``"[1 0 1 1]"``."""
        s = text.strip()
        if s.startswith("["):
            return self.element(int(t) for t in s.strip("[]").replace(",", " ").split())
        s = s.replace("alpha", "x").replace("a", "x").replace("α", "x")
        poly = [0] * self.k
        F = self.base
        for sign, body in re.findall(r"([+-]?)([^+-]+)", s.replace(" ", "")):
            m = _TERM.match(body)
            if not m or (not m.group(1) and not m.group(2)):
                raise ValueError(f"cannot parse field element {text!r}")
            c = int(m.group(1)) if m.group(1) else 1
            e = 0 if not m.group(2) else int(m.group(3) or 1)
            term = self.alpha ** e * ExtFieldElem(self, (c % self.q,) + (0,) * (self.k - 1))
            if sign == "-":
                term = -term
            poly = [F.add(x, y) for x, y in zip(poly, term.coeffs)]
        return ExtFieldElem(self, tuple(poly))

    # representation maps -----------------------------------------------------
    def psi(self, v: Sequence[int]) -> ExtFieldElem:
        """(v_0, ..., v_{k-1}) -> sum v_i alpha^i."""
        if len(v) != self.k:
            raise ValueError(f"psi expects a vector of length {self.k}, got {len(v)}")
        return self.element(v)

    def psi_inv(self, a: ExtFieldElem) -> tuple[int, ...]:
        return a.coeffs

    def bar_psi(self, m: MatFq) -> tuple[ExtFieldElem, ...]:
        """Apply psi to every row of an l x k matrix."""
        if m.ncols != self.k:
            raise ValueError(f"bar_psi expects width {self.k}, got {m.ncols}")
        return tuple(ExtFieldElem(self, r) for r in m.rows)

    def bar_psi_inv(self, elems: Sequence[ExtFieldElem]) -> MatFq:
        return MatFq(self.base, tuple(e.coeffs for e in elems), self.k)

    def phi(self, a: ExtFieldElem, transposed: bool = False) -> MatFq:
        """sum v_i P^i, or sum v_i (P^T)^i when ``transposed``.

        Column j of sum v_i P^i holds the coefficients of ``a * alpha^j``.
        """
        vecs = [a.coeffs]
        for _ in range(self.k - 1):
            vecs.append(self._times_alpha(vecs[-1]))
        m = MatFq(self.base, tuple(vecs), self.k)
        return m if transposed else m.T

    def phi_inv(self, m: MatFq, transposed: bool = False) -> ExtFieldElem:
        """Read back the element: first column (P form) or first row (P^T form)."""
        if m.shape != (self.k, self.k):
            raise ValueError(f"phi_inv expects a {self.k}x{self.k} matrix")
        if transposed:
            return ExtFieldElem(self, m.rows[0])
        return ExtFieldElem(self, tuple(r[0] for r in m.rows))


class ExtFieldElem:
    """Immutable element of an :class:`ExtField`."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtField, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other) -> ExtFieldElem:
        if isinstance(other, ExtFieldElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different extension fields")
            return other
        if isinstance(other, int):
            c = other % self.field.q if self.field.base.degree == 1 else other
            return ExtFieldElem(self.field, (c,) + (0,) * (self.field.k - 1))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        add = self.field.base.add
        return ExtFieldElem(self.field, tuple(map(add, self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        sub = self.field.base.sub
        return ExtFieldElem(self.field, tuple(map(sub, self.coeffs, other.coeffs)))

    def __neg__(self):
        neg = self.field.base.neg
        return ExtFieldElem(self.field, tuple(map(neg, self.coeffs)))

    def __mul__(self, other):
        other = self._coerce(other)
        return ExtFieldElem(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> ExtFieldElem:
        return ExtFieldElem(self.field, self.field._inv(self.coeffs))

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, e: int) -> ExtFieldElem:
        base = self
        if e < 0:
            base, e = self.inverse(), -e
        result = self.field.one
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self._coerce(other)
        return isinstance(other, ExtFieldElem) and self.coeffs == other.coeffs and self.field == other.field

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __int__(self) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.field.q + c
        return v

    def __lt__(self, other: ExtFieldElem) -> bool:
        return int(self) < int(other)

    def __str__(self) -> str:
        parts = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if e == 0 else ("a" if e == 1 else f"a^{e}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"ExtFieldElem({self})"


def ext_arith(a: ExtFieldElem, b: ExtFieldElem | int | None, op: str) -> ExtFieldElem:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")
