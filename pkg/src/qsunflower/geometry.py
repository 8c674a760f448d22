"""Subspaces of V(n, q) in canonical RREF form and the lattice operations on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded
from .field import FieldSpec
from .gaussian import gaussian
from .linalg import Matrix, Row, combine, pack, rank, rank_packed, rref

DEFAULT_ENUMERATION_CAP = 10**7


@dataclass(frozen=True)
class Subspace:
    """A subspace of V(n, q) stored as its unique RREF basis.

    Two subspaces are equal exactly when their basis matrices are equal, so
    instances hash and deduplicate exactly.
    """

    field: FieldSpec
    n: int
    basis: Matrix

    @classmethod
    def from_rows(cls, F: FieldSpec, n: int, rows: Iterable[Sequence[int]]) -> "Subspace":
        rows = list(rows)
        return cls(F, n, rref(F, rows, n)[0])

    @classmethod
    def zero(cls, F: FieldSpec, n: int) -> "Subspace":
        return cls(F, n, ())

    @classmethod
    def full(cls, F: FieldSpec, n: int) -> "Subspace":
        return cls.coordinate(F, n, range(n))

    @classmethod
    def coordinate(cls, F: FieldSpec, n: int, coords: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors ``e_j`` for ``j`` in ``coords``."""
        rows = []
        for j in sorted(set(coords)):
            r = [0] * n
            r[j] = 1
            rows.append(tuple(r))
        return cls(F, n, tuple(rows))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    @cached_property
    def packed(self) -> tuple[int, ...]:
        """Basis rows as bit-packed ints (GF(2) fast path)."""
        return tuple(pack(r) for r in self.basis)

    def _joint_rank(self, other: "Subspace") -> int:
        if self.field.q == 2:
            return rank_packed(self.packed + other.packed)
        return rank(self.field, self.basis + other.basis, self.n)

    def key(self) -> tuple:
        return (len(self.basis), self.basis)

    def _compatible(self, other: "Subspace") -> None:
        if self.n != other.n or (self.field is not other.field and self.field != other.field):
            raise ValueError("subspaces live in different ambient spaces")

    def contains_vector(self, v: Sequence[int]) -> bool:
        return rank(self.field, self.basis + (tuple(v),), self.n) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        self._compatible(other)
        if self.dim > other.dim:
            return False
        return other._joint_rank(self) == other.dim

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def join(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        return Subspace.from_rows(self.field, self.n, self.basis + other.basis)

    def meet(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        if not self.dim or not other.dim:
            return Subspace.zero(self.field, self.n)
        n = self.n
        zeros = (0,) * n
        rows = [r + r for r in self.basis] + [r + zeros for r in other.basis]
        R, pivots = rref(self.field, rows, 2 * n)
        inter = [r[n:] for r, pc in zip(R, pivots) if pc >= n]
        return Subspace.from_rows(self.field, n, inter)

    def meet_dim(self, other: "Subspace") -> int:
        self._compatible(other)
        return self.dim + other.dim - self._joint_rank(other)

    def distance(self, other: "Subspace") -> int:
        return self.dim + other.dim - 2 * self.meet_dim(other)

    def to_record(self) -> dict:
        return {"n": self.n, "dim": self.dim, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_record(cls, F: FieldSpec, rec: dict) -> "Subspace":
        S = cls.from_rows(F, rec["n"], rec["basis"])
        if "dim" in rec and rec["dim"] != S.dim:
            raise ValueError("record dim does not match its basis")
        return S

    def __repr__(self) -> str:
        return f"Subspace(q={self.field.q}, n={self.n}, basis={[list(r) for r in self.basis]})"


def subspace_from_rows(F: FieldSpec, n: int, rows: Iterable[Sequence[int]]) -> Subspace:
    return Subspace.from_rows(F, n, rows)


def meet(S: Subspace, U: Subspace) -> Subspace:
    return S.meet(U)


def join(S: Subspace, U: Subspace) -> Subspace:
    return S.join(U)


def subspace_distance(S: Subspace, U: Subspace) -> int:
    return S.distance(U)


def span(spaces: Sequence[Subspace]) -> Subspace:
    if not spaces:
        raise ValueError("span of an empty list needs an ambient space")
    F, n = spaces[0].field, spaces[0].n
    for S in spaces[1:]:
        spaces[0]._compatible(S)
    return Subspace.from_rows(F, n, [r for S in spaces for r in S.basis])


def span_dim(spaces: Sequence[Subspace]) -> int:
    F, n = spaces[0].field, spaces[0].n
    return rank(F, [r for S in spaces for r in S.basis], n)


def in_general_position(spaces: Sequence[Subspace]) -> bool:
    """True iff the joint span has dimension equal to the sum of the dimensions."""
    if not spaces:
        return True
    for S in spaces[1:]:
        spaces[0]._compatible(S)
    return span_dim(spaces) == sum(S.dim for S in spaces)


def complement(V: Subspace, S: Subspace) -> Subspace:
    """A complement of ``S`` inside ``V``, picked greedily from V's RREF rows in order."""
    if not S <= V:
        raise ValueError("S is not contained in V")
    F, n = V.field, V.n
    cur = list(S.basis)
    chosen = []
    r0 = len(cur)
    for row in V.basis:
        if len(cur) == V.dim:
            break
        if rank(F, cur + [row], n) > r0:
            cur.append(row)
            chosen.append(row)
            r0 += 1
    return Subspace.from_rows(F, n, chosen)


@dataclass(frozen=True)
class QuotientMap:
    """The projection ``V -> V/T`` with a fixed section.

    Quotient coordinates are coefficients with respect to ``section``, a basis
    of a complement of ``T`` in ``V`` lying in the ambient space.
    """

    ambient: Subspace
    modulus: Subspace
    section: Matrix
    _pivots: tuple[int, ...] = field(repr=False, compare=False, default=())
    _coords: Matrix = field(repr=False, compare=False, default=())

    @property
    def dim(self) -> int:
        return len(self.section)

    def project_vector(self, x: Sequence[int]) -> Row:
        F = self.ambient.field
        z = [x[p] for p in self._pivots]
        y = combine(F, z, self._coords, self.ambient.dim)
        return y[: self.dim]

    def lift_vector(self, y: Sequence[int]) -> Row:
        return combine(self.ambient.field, y, self.section, self.ambient.n)

    def push(self, A: Subspace) -> Subspace:
        """``(A + T) / T`` in quotient coordinates."""
        if not A <= self.ambient:
            raise ValueError("subspace is not contained in the quotient's ambient")
        F = A.field
        return Subspace.from_rows(F, self.dim, [self.project_vector(r) for r in A.basis])

    def pull(self, B: Subspace) -> Subspace:
        """Full preimage of ``B``; always contains ``T``."""
        if B.n != self.dim:
            raise ValueError("subspace does not live in the quotient space")
        F = self.ambient.field
        rows = [self.lift_vector(r) for r in B.basis] + list(self.modulus.basis)
        return Subspace.from_rows(F, self.ambient.n, rows)

    def pull_rows(self, rows: Sequence[Sequence[int]]) -> Subspace:
        """Preimage of the span of quotient-coordinate ``rows`` (not necessarily RREF)."""
        F = self.ambient.field
        lifted = [self.lift_vector(r) for r in rows] + list(self.modulus.basis)
        return Subspace.from_rows(F, self.ambient.n, lifted)


def quotient(V: Subspace, T: Subspace, section: Sequence[Sequence[int]] | None = None) -> QuotientMap:
    """Quotient map ``V -> V/T``.

    Without an explicit ``section`` the complement from :func:`complement`
    is used.  An explicit section must be an ordered basis of a complement of
    ``T`` in ``V``; its order fixes the quotient coordinates.
    """
    if not T <= V:
        raise ValueError("T is not contained in V")
    F, n = V.field, V.n
    if section is None:
        section = complement(V, T).basis
    section = tuple(tuple(r) for r in section)
    B = list(section) + list(T.basis)
    if len(B) != V.dim or rank(F, B, n) != V.dim or not Subspace.from_rows(F, n, B) == V:
        raise ValueError("section is not a complement of T in V")
    nv = V.dim
    aug = [tuple(b) + tuple(1 if j == i else 0 for j in range(nv)) for i, b in enumerate(B)]
    R, pivots = rref(F, aug, n + nv)
    coords = tuple(r[n:] for r in R)
    return QuotientMap(V, T, section, tuple(pivots), coords)


def quotient_push(qmap: QuotientMap, A: Subspace) -> Subspace:
    return qmap.push(A)


def quotient_pull(qmap: QuotientMap, B: Subspace) -> Subspace:
    return qmap.pull(B)


def _colex_combinations(n: int, m: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), m), key=lambda c: c[::-1])


def enumerate_subspaces(
    n: int, m: int, F: FieldSpec, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[Subspace]:
    """Every m-subspace of V(n, q) exactly once, as canonical RREF matrices.

    Pivot sets come in colexicographic order; within a pivot set the free
    entries (row-major) count upward with the last entry fastest.
    """
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    total = gaussian(n, m, F.q)
    if total > cap:
        raise BudgetExceeded(f"{total} subspaces of dimension {m} in V({n},{F.q}) exceed the cap {cap}")
    return _enumerate(n, m, F)


def _enumerate(n: int, m: int, F: FieldSpec) -> Iterator[Subspace]:
    for piv in _colex_combinations(n, m):
        pset = set(piv)
        slots = [(r, j) for r, p in enumerate(piv) for j in range(p + 1, n) if j not in pset]
        for vals in itertools.product(range(F.q), repeat=len(slots)):
            rows = [[0] * n for _ in range(m)]
            for r, p in enumerate(piv):
                rows[r][p] = 1
            for (r, j), v in zip(slots, vals):
                rows[r][j] = v
            yield Subspace(F, n, tuple(tuple(r) for r in rows))


def subspaces_in(V: Subspace, m: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Subspace]:
    """Every m-subspace of the subspace ``V`` (in ambient coordinates)."""
    F = V.field
    for S in enumerate_subspaces(V.dim, m, F, cap):
        yield Subspace.from_rows(F, V.n, [combine(F, r, V.basis, V.n) for r in S.basis])
