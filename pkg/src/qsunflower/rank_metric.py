"""Gabidulin codes and their lifts to constant-dimension subspace codes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import BudgetExceeded, ParameterError
from .field import ExtFieldSpec, FieldSpec
from .geometry import Subspace
from .linalg import Matrix, rank, transpose

DEFAULT_CODE_CAP = 10**6


@lru_cache(maxsize=None)
def extension(F: FieldSpec, e: int) -> ExtFieldSpec:
    return ExtFieldSpec(F, e)


@dataclass(frozen=True)
class GabidulinCode:
    """Evaluation code of linearized polynomials ``sum_{i<k} a_i x^(q^i)``.

    The evaluation points are alpha^0, ..., alpha^(length-1) in the polynomial
    basis of GF(q^e), which are GF(q)-independent whenever length <= e.
    """

    ext: ExtFieldSpec
    length: int
    dimension: int
    points: tuple[int, ...] = field(init=False)
    _frob: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        e, q = self.ext.e, self.ext.q
        if not 0 <= self.length <= e:
            raise ParameterError(f"length {self.length} must lie in [0, {e}]")
        if not 0 <= self.dimension <= self.length:
            raise ParameterError(f"dimension {self.dimension} must lie in [0, {self.length}]")
        points = tuple(q**j for j in range(self.length))
        if rank(self.ext.base, [self.ext.expand(g) for g in points], e) != self.length:
            raise AssertionError("evaluation points are not GF(q)-independent")
        object.__setattr__(self, "points", points)
        frob = tuple(tuple(self.ext.frobenius(g, i) for g in points) for i in range(self.dimension))
        object.__setattr__(self, "_frob", frob)

    @classmethod
    def over(cls, F: FieldSpec, e: int, length: int, dimension: int) -> "GabidulinCode":
        return cls(extension(F, e), length, dimension)

    @property
    def size(self) -> int:
        return self.ext.order**self.dimension

    def encode(self, message: Sequence[int]) -> tuple[int, ...]:
        if len(message) != self.dimension:
            raise ValueError(f"message length {len(message)} != code dimension {self.dimension}")
        E = self.ext
        out = []
        for j in range(self.length):
            acc = 0
            for i, a in enumerate(message):
                if a:
                    acc = E.add(acc, E.mul(a, self._frob[i][j]))
            out.append(acc)
        return tuple(out)

    def codewords(self) -> Iterator[tuple[int, ...]]:
        for msg in itertools.product(range(self.ext.order), repeat=self.dimension):
            yield self.encode(msg)

    def to_matrix(self, codeword: Sequence[int]) -> Matrix:
        """``length x e`` matrix over GF(q) whose row i expands ``codeword[i]``."""
        if len(codeword) != self.length:
            raise ValueError("codeword has the wrong length")
        return tuple(self.ext.expand(c) for c in codeword)

    def rank_distance(self, u: Sequence[int], v: Sequence[int]) -> int:
        E = self.ext
        diff = [E.sub(a, b) for a, b in zip(u, v)]
        return rank(E.base, self.to_matrix(diff), E.e)

    def min_rank_distance(self, cap: int = DEFAULT_CODE_CAP) -> int:
        """Minimum rank weight over nonzero codewords, by enumeration."""
        if self.dimension < 1:
            raise ParameterError("minimum distance needs dimension >= 1")
        if self.size > cap:
            raise BudgetExceeded(f"code of size {self.size} exceeds the cap {cap}")
        F, e = self.ext.base, self.ext.e
        best = self.length
        for msg in itertools.product(range(self.ext.order), repeat=self.dimension):
            if not any(msg):
                continue
            best = min(best, rank(F, self.to_matrix(self.encode(msg)), e))
            if best == 1:
                break
        return best


def codeword_to_matrix(code: GabidulinCode, codeword: Sequence[int]) -> Matrix:
    return code.to_matrix(codeword)


def gabidulin_encode(code: GabidulinCode, message: Sequence[int]) -> tuple[int, ...]:
    return code.encode(message)


def min_rank_distance(code: GabidulinCode, cap: int = DEFAULT_CODE_CAP) -> int:
    return code.min_rank_distance(cap)


@dataclass(frozen=True)
class LiftedMrdCode:
    """Row spaces of ``[I_m | A]`` for ``A`` ranging over a rank-metric code.

    Every member meets ``avoided`` (the span of the last n-m coordinates)
    trivially.  ``D`` is the guaranteed minimum subspace distance.
    """

    field: FieldSpec
    n: int
    m: int
    D: int
    d: int | None
    tall: bool
    avoided: Subspace
    members: tuple[Subspace, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def predicted_size(self) -> int:
        return lifted_mrd_size(self.n, self.m, self.D, self.field.q) if self.d is None else cover_free_size(
            self.n, self.m, self.d, self.field.q
        )


def lifted_mrd_size(n: int, m: int, D: int, q: int) -> int:
    lo, hi = min(m, n - m), max(m, n - m)
    if lo == 0:
        return 1
    return q ** (hi * (lo - D // 2 + 1))


def cover_free_size(n: int, m: int, d: int, q: int) -> int:
    if n >= 2 * m:
        return q ** (d * (n - m))
    return q ** (m * (n - 2 * m + d))


def _lift(F: FieldSpec, n: int, m: int, matrices: Iterator[Matrix]) -> tuple[Subspace, ...]:
    ident = [tuple(1 if j == i else 0 for j in range(m)) for i in range(m)]
    members = {Subspace(F, n, tuple(ident[i] + tuple(A[i]) for i in range(m))) for A in matrices}
    return tuple(sorted(members, key=Subspace.key))


def _code_matrices(F: FieldSpec, n: int, m: int, D: int) -> Iterator[Matrix]:
    if n >= 2 * m:
        code = GabidulinCode.over(F, n - m, m, m - D // 2 + 1)
        for c in code.codewords():
            yield code.to_matrix(c)
    else:
        code = GabidulinCode.over(F, m, n - m, (n - m) - D // 2 + 1)
        for c in code.codewords():
            yield transpose(code.to_matrix(c), m)


def _zero_matrix(m: int, w: int) -> Matrix:
    return tuple((0,) * w for _ in range(m))


def lifted_mrd(n: int, D: int, m: int, F: FieldSpec, cap: int = DEFAULT_CODE_CAP) -> LiftedMrdCode:
    """Lifted Gabidulin code: an ``(n, D; m)`` subspace code avoiding a fixed (n-m)-space."""
    if not n >= m >= 0:
        raise ParameterError(f"need n >= m >= 0, got n={n}, m={m}")
    if D % 2:
        raise ParameterError(f"D = {D} must be even")
    lo = min(m, n - m)
    if D > 2 * lo:
        raise ParameterError(f"D = {D} exceeds 2*min(m, n-m) = {2 * lo}")
    if lo > 0 and D < 2:
        raise ParameterError("distinct m-spaces are at distance >= 2; need D >= 2")
    size = lifted_mrd_size(n, m, D, F.q)
    if size > cap:
        raise BudgetExceeded(f"lifted code of size {size} exceeds the cap {cap}")
    mats = iter([_zero_matrix(m, n - m)]) if lo == 0 else _code_matrices(F, n, m, D)
    members = _lift(F, n, m, mats)
    avoided = Subspace.coordinate(F, n, range(m, n))
    return LiftedMrdCode(F, n, m, D, None, n >= 2 * m, avoided, members)


@lru_cache(maxsize=256)
def cover_free_code(n: int, m: int, d: int, F: FieldSpec, cap: int = DEFAULT_CODE_CAP) -> LiftedMrdCode:
    """m-spaces of V(n, q) avoiding a fixed (n-m)-space, no d-space in two of them.

    Equivalently, distinct members meet in dimension at most d - 1.
    """
    if not n >= m >= d >= 0:
        raise ParameterError(f"need n >= m >= d >= 0, got n={n}, m={m}, d={d}")
    if n < 2 * m and n - 2 * m + d < 0:
        raise ParameterError(f"n - 2m + d = {n - 2 * m + d} < 0 with n < 2m")
    size = cover_free_size(n, m, d, F.q)
    if size > cap:
        raise BudgetExceeded(f"cover-free code of size {size} exceeds the cap {cap}")
    D = 2 * (m - d + 1)
    avoided = Subspace.coordinate(F, n, range(m, n))
    w = n - m
    if d == 0 or min(m, w) == 0 or (n < 2 * m and n - 2 * m + d == 0):
        mats: Iterator[Matrix] = iter([_zero_matrix(m, w)])
    elif d == m:
        mats = (
            tuple(tuple(vals[i * w : (i + 1) * w]) for i in range(m))
            for vals in itertools.product(range(F.q), repeat=m * w)
        )
    else:
        mats = _code_matrices(F, n, m, D)
    members = _lift(F, n, m, mats)
    return LiftedMrdCode(F, n, m, D, d, n >= 2 * m, avoided, members)
