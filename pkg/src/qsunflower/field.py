"""Finite fields GF(q) = GF(p^t) and extensions GF(q^e).

Elements of every field are plain ``int`` codes.  A code is the base-``r``
positional encoding of the coefficient vector over the immediately lower
field (``r = p`` for GF(q), ``r = q`` for GF(q^e)), constant coefficient
in the least significant digit.  Because every level uses a polynomial
basis, addition in any field of the tower is digit-wise addition mod p
of the code written in base p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

MAX_BASE_ORDER = 16
MAX_EXT_ORDER = 1 << 20
LOG_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split a prime power ``q`` into ``(p, t)`` with ``q == p**t``."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    t, r = 0, q
    while r % p == 0:
        r //= p
        t += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, t


def _factor(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _padd(a: int, b: int, p: int) -> int:
    if p == 2:
        return a ^ b
    out, place = 0, 1
    while a or b:
        out += ((a % p + b % p) % p) * place
        a //= p
        b //= p
        place *= p
    return out


def _pneg(a: int, p: int) -> int:
    if p == 2:
        return a
    out, place = 0, 1
    while a:
        out += ((-(a % p)) % p) * place
        a //= p
        place *= p
    return out


# -- polynomials over a field, coefficient lists with constant term first ----


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mul(F, f: Sequence[int], g: Sequence[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return _trim(out)


def _poly_rem(F, f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Remainder of f modulo g (g nonzero)."""
    r = _trim(list(f))
    g = _trim(list(g))
    dg = len(g) - 1
    lead_inv = F.inv(g[-1])
    while len(r) - 1 >= dg and r:
        c = F.mul(r[-1], lead_inv)
        shift = len(r) - 1 - dg
        for j, b in enumerate(g):
            if b:
                r[shift + j] = F.sub(r[shift + j], F.mul(c, b))
        _trim(r)
    return r


def is_irreducible(F, poly: Sequence[int]) -> bool:
    """Irreducibility by trial division over all monic divisors of low degree."""
    poly = _trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if poly[0] == 0:
        return False
    for dd in range(1, deg // 2 + 1):
        for low in itertools.product(range(F.order), repeat=dd):
            if not _poly_rem(F, poly, list(low) + [1]):
                return False
    return True


def find_irreducible(F, degree: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of ``degree`` over ``F``.

    Candidates are ordered lexicographically on ``(c_0, c_1, ..., c_{deg-1})``
    with the constant term most significant and coefficients compared by
    integer code.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    for low in itertools.product(range(F.order), repeat=degree):
        cand = list(low) + [1]
        if is_irreducible(F, cand):
            return tuple(cand)
    raise AssertionError("unreachable: irreducibles exist in every degree")


class _FieldOps:
    """Arithmetic shared by both levels of the tower."""

    p: int
    order: int

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.order)

    def add(self, a: int, b: int) -> int:
        return _padd(a, b, self.p)

    def neg(self, a: int) -> int:
        return _pneg(a, self.p)

    def sub(self, a: int, b: int) -> int:
        return _padd(a, _pneg(b, self.p), self.p)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.order - 1
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def _check(self, a: int) -> None:
        if not 0 <= a < self.order:
            raise ValueError(f"{a} is not an element of a field of order {self.order}")


@dataclass(frozen=True)
class FieldSpec(_FieldOps):
    """GF(q) for q = p^t, with full addition/multiplication tables.

    For ``t == 1`` the modulus is ``x`` and arithmetic is plain mod ``p``.
    """

    p: int
    t: int = 1
    modulus: tuple[int, ...] | None = None
    q: int = field(init=False)
    add_table: tuple = field(init=False, repr=False, compare=False)
    mul_table: tuple = field(init=False, repr=False, compare=False)
    neg_table: tuple = field(init=False, repr=False, compare=False)
    inv_table: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        p, t = self.p, self.t
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if t < 1:
            raise ValueError("base degree must be >= 1")
        q = p**t
        if q > MAX_BASE_ORDER:
            raise ValueError(f"q = {q} exceeds the desk-scale cap {MAX_BASE_ORDER}")
        object.__setattr__(self, "q", q)
        if t == 1:
            modulus = (0, 1)
        elif self.modulus is None:
            modulus = find_irreducible(FieldSpec(p), t)
        else:
            modulus = tuple(self.modulus)
            if len(modulus) != t + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree t")
            if not is_irreducible(FieldSpec(p), modulus):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        object.__setattr__(self, "modulus", modulus)

        if t == 1:
            mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            prime = FieldSpec(p)
            digits = [_digits(a, p, t) for a in range(q)]
            mul = [[0] * q for _ in range(q)]
            for a in range(q):
                for b in range(a, q):
                    r = _poly_rem(prime, _poly_mul(prime, digits[a], digits[b]), modulus)
                    mul[a][b] = mul[b][a] = _undigits(r, p)
        add = [[_padd(a, b, p) for b in range(q)] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)
        object.__setattr__(self, "add_table", tuple(tuple(r) for r in add))
        object.__setattr__(self, "mul_table", tuple(tuple(r) for r in mul))
        object.__setattr__(self, "neg_table", tuple(_pneg(a, p) for a in range(q)))
        object.__setattr__(self, "inv_table", tuple(inv))

    @classmethod
    def of_order(cls, q: int) -> "FieldSpec":
        return _field_of_order(q)

    @property
    def order(self) -> int:
        return self.q

    @property
    def degree(self) -> int:
        return self.t

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.inv_table[a]

    def to_dict(self) -> dict:
        return {"p": self.p, "t": self.t, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, d: dict) -> "FieldSpec":
        mod = d.get("modulus")
        spec = _field_of_order(d["p"] ** d.get("t", 1))
        if mod is not None and tuple(mod) != spec.modulus:
            return cls(d["p"], d.get("t", 1), tuple(mod))
        return spec


@lru_cache(maxsize=None)
def _field_of_order(q: int) -> FieldSpec:
    p, t = prime_power(q)
    return FieldSpec(p, t)


def _digits(a: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        out.append(a % base)
        a //= base
    return out


def _undigits(ds: Sequence[int], base: int) -> int:
    out = 0
    for d in reversed(ds):
        out = out * base + d
    return out


@dataclass(frozen=True)
class ExtFieldSpec(_FieldOps):
    """GF(q^e) as a degree-``e`` extension of a :class:`FieldSpec`.

    Multiplication goes through log/antilog tables up to 2^16 elements and
    schoolbook polynomial arithmetic above that.
    """

    base: FieldSpec
    e: int
    ext_modulus: tuple[int, ...] | None = None
    _log: tuple | None = field(init=False, repr=False, compare=False, default=None)
    _exp: tuple | None = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        if self.e < 1:
            raise ValueError("extension degree must be >= 1")
        order = self.base.q**self.e
        if order > MAX_EXT_ORDER:
            raise ValueError(f"q^e = {order} exceeds the desk-scale cap {MAX_EXT_ORDER}")
        if self.ext_modulus is None:
            mod = find_irreducible(self.base, self.e)
        else:
            mod = tuple(self.ext_modulus)
            if len(mod) != self.e + 1 or mod[-1] != 1:
                raise ValueError("extension modulus must be monic of degree e")
            if not is_irreducible(self.base, mod):
                raise ValueError(f"extension modulus {mod} is reducible")
        object.__setattr__(self, "ext_modulus", mod)
        if order <= LOG_TABLE_LIMIT and order > 2:
            self._build_logs(order)

    def _build_logs(self, order: int) -> None:
        n = order - 1
        primes = _factor(n)
        for g in range(2, order):
            if all(self._mul_schoolbook_pow(g, n // r) != 1 for r in primes):
                break
        else:  # pragma: no cover - a primitive element always exists
            raise AssertionError("no primitive element found")
        exp = [0] * (2 * n)
        log = [0] * order
        x = 1
        for i in range(n):
            exp[i] = exp[i + n] = x
            log[x] = i
            x = self._mul_schoolbook(x, g)
        object.__setattr__(self, "_exp", tuple(exp))
        object.__setattr__(self, "_log", tuple(log))

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def order(self) -> int:
        return self.base.q**self.e

    @property
    def degree(self) -> int:
        return self.e

    def _mul_schoolbook(self, a: int, b: int) -> int:
        B = self.base
        prod = _poly_mul(B, _digits(a, B.q, self.e), _digits(b, B.q, self.e))
        return _undigits(_poly_rem(B, prod, self.ext_modulus), B.q)

    def _mul_schoolbook_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_schoolbook(result, a)
            a = self._mul_schoolbook(a, a)
            e >>= 1
        return result

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_schoolbook(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self._log is not None:
            n = self.order - 1
            return self._exp[(n - self._log[a]) % n]
        return self.pow(a, self.order - 2)

    def frobenius(self, a: int, i: int = 1) -> int:
        """``a ** (q ** i)``."""
        if i < 0:
            raise ValueError("frobenius power must be >= 0")
        return self.pow(a, self.q ** (i % self.e))

    def expand(self, a: int) -> tuple[int, ...]:
        """Coordinates of ``a`` over GF(q) in the basis 1, alpha, ..., alpha^(e-1)."""
        return tuple(_digits(a, self.q, self.e))

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != self.e:
            raise ValueError("coordinate vector has the wrong length")
        return _undigits(coords, self.q)

    def to_dict(self) -> dict:
        d = self.base.to_dict()
        d.update(ext_degree=self.e, ext_modulus=list(self.ext_modulus))
        return d


def iter_vectors(F, length: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(F.order), repeat=length)
