"""Dense exact linear algebra over GF(q).

Matrices are sequences of row tuples of field codes.  GF(2) gets a bit-packed
fast path; every other field goes through the precomputed tables of
:class:`~qsunflower.field.FieldSpec`.
"""

from __future__ import annotations

from typing import Sequence

from .field import FieldSpec

Row = tuple[int, ...]
Matrix = tuple[Row, ...]


def pack(row: Sequence[int]) -> int:
    v = 0
    for x in row:
        v = (v << 1) | x
    return v


def _unpack(v: int, ncols: int) -> Row:
    return tuple((v >> (ncols - 1 - j)) & 1 for j in range(ncols))


def _rref_gf2(rows: Sequence[Sequence[int]], ncols: int) -> tuple[Matrix, tuple[int, ...]]:
    vs = [pack(r) for r in rows]
    vs = [v for v in vs if v]
    out: list[int] = []
    pivots: list[int] = []
    for c in range(ncols):
        bit = 1 << (ncols - 1 - c)
        for i, v in enumerate(vs):
            if v & bit:
                piv = vs.pop(i)
                break
        else:
            continue
        vs = [v ^ piv if v & bit else v for v in vs]
        out = [v ^ piv if v & bit else v for v in out]
        out.append(piv)
        pivots.append(c)
        if not vs:
            break
    return tuple(_unpack(v, ncols) for v in out), tuple(pivots)


def rref(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped.

    Returns ``(rows, pivots)``; the rank is ``len(rows)``.
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)} in a matrix with {ncols} columns")
    if F.q == 2:
        return _rref_gf2(rows, ncols)

    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    M = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    top = 0
    for c in range(ncols):
        if top == len(M):
            break
        for i in range(top, len(M)):
            if M[i][c]:
                break
        else:
            continue
        M[top], M[i] = M[i], M[top]
        prow = M[top]
        if prow[c] != 1:
            s = inv[prow[c]]
            prow = M[top] = [mul[s][x] for x in prow]
        for j, row in enumerate(M):
            if j != top and row[c]:
                f = mul[neg[row[c]]]
                M[j] = [add[a][f[b]] for a, b in zip(row, prow)]
        pivots.append(c)
        top += 1
    return tuple(tuple(r) for r in M[:top]), tuple(pivots)


def rank_packed(vs) -> int:
    """GF(2) rank of rows given as packed ints."""
    basis: list[int] = []
    for v in vs:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def rank(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    if F.q == 2:
        return rank_packed(pack(r) for r in rows)
    return len(rref(F, rows, ncols)[0])


def kernel(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (in RREF) of the right null space ``{x : M x^T = 0}``."""
    R, pivots = rref(F, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, pc in zip(R, pivots):
            x[pc] = F.neg(r[f])
        basis.append(x)
    return rref(F, basis, ncols)[0]


def combine(F: FieldSpec, coeffs: Sequence[int], rows: Sequence[Sequence[int]], ncols: int) -> Row:
    """Linear combination ``sum_i coeffs[i] * rows[i]``."""
    add, mul = F.add_table, F.mul_table
    out = [0] * ncols
    for c, r in zip(coeffs, rows):
        if c == 0:
            continue
        if c == 1:
            out = [add[a][b] for a, b in zip(out, r)]
        else:
            m = mul[c]
            out = [add[a][m[b]] for a, b in zip(out, r)]
    return tuple(out)


def matmul(F: FieldSpec, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], ncols: int) -> Matrix:
    return tuple(combine(F, row, B, ncols) for row in A)


def transpose(A: Sequence[Sequence[int]], ncols: int) -> Matrix:
    return tuple(tuple(row[j] for row in A) for j in range(ncols))


def mat_vec(F: FieldSpec, A: Sequence[Sequence[int]], x: Sequence[int]) -> Row:
    """``A x^T`` as a tuple."""
    add, mul = F.add_table, F.mul_table
    out = []
    for row in A:
        s = 0
        for a, b in zip(row, x):
            s = add[s][mul[a][b]]
        out.append(s)
    return tuple(out)
