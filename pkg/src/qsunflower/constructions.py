"""Sunflower-free families of k-spaces built by nesting lifted MRD codes.

All coordinates are fixed deterministically: tower spaces are spans of
initial standard coordinates and every nested family is built in a quotient
frame derived from greedy complements, so repeated runs give identical
families.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .bounds import exponent_A, exponent_B
from .errors import ParameterError
from .field import FieldSpec
from .gaussian import gauss_bracket
from .geometry import Subspace, complement, enumerate_subspaces, quotient, subspaces_in
from .rank_metric import cover_free_code, extension


@dataclass(frozen=True)
class FamilySpec:
    """Parameters of an (m, d; V, Sigma, T)-family.

    Members are m-spaces of ``V`` meeting ``sigma_space`` exactly in ``T``,
    and no d-space disjoint from ``T`` lies in two of them.
    """

    m: int
    d: int
    V: Subspace
    sigma_space: Subspace
    T: Subspace

    @property
    def n(self) -> int:
        return self.V.dim

    @property
    def sigma(self) -> int:
        return self.sigma_space.dim

    @property
    def tau(self) -> int:
        return self.T.dim

    @property
    def tall(self) -> bool:
        return self.n - self.tau >= 2 * (self.m - self.tau)

    def validate(self) -> None:
        n, m, d, s, t = self.n, self.m, self.d, self.sigma, self.tau
        if not (self.T <= self.sigma_space and self.sigma_space <= self.V):
            raise ParameterError("need T <= Sigma <= V")
        if not 0 <= t <= m <= n:
            raise ParameterError(f"need tau <= m <= n, got tau={t}, m={m}, n={n}")
        if not 0 <= d <= m - t:
            raise ParameterError(f"need 0 <= d <= m - tau, got d={d}, m - tau={m - t}")
        if s - t > n - m:
            raise ParameterError(f"need sigma - tau <= n - m, got {s - t} > {n - m}")
        if not self.tall and n - 2 * m + t + d < 0:
            raise ParameterError(f"n - 2m + tau + d = {n - 2 * m + t + d} < 0")

    @property
    def size_exponent(self) -> int:
        return family_exponent(self.n, self.m, self.d, self.tau)


def family_exponent(n: int, m: int, d: int, tau: int) -> int:
    """Exponent of q in the realized family size."""
    if n - tau >= 2 * (m - tau):
        return d * (n - m)
    return (m - tau) * (n - 2 * m + tau + d)


def build_family(spec: FamilySpec) -> list[Subspace]:
    """Realize an (m, d; V, Sigma, T)-family.

    The cover-free lifted code is built in V/T with its avoided space placed
    over Sigma/T, and every member is pulled back to an m-space of V
    containing T.
    """
    spec.validate()
    V, S, T = spec.V, spec.sigma_space, spec.T
    # quotient coordinates: complement of Sigma first, then Sigma/T last
    section = complement(V, S).basis + complement(S, T).basis
    qmap = quotient(V, T, section)
    code = cover_free_code(spec.n - spec.tau, spec.m - spec.tau, spec.d, V.field)
    members = [qmap.pull_rows(C.basis) for C in code.members]
    return sorted(members, key=Subspace.key)


@dataclass(frozen=True)
class FamilyLevel:
    """One level C_i of a nested construction, as used inside its parent."""

    label: int
    m: int
    d: int
    parent_dim: int
    sigma: int
    tau: int

    @property
    def exponent(self) -> int:
        return family_exponent(self.parent_dim, self.m, self.d, self.tau)

    @property
    def pairwise_bound(self) -> int:
        """Largest allowed dimension of the meet of two distinct siblings."""
        return self.tau + self.d - 1


@dataclass(frozen=True)
class NestingParams:
    tag: str
    s: int
    k: int
    table: tuple[tuple[int, int, int], ...]  # (i, m_i, d_i)
    tower: tuple[tuple[int, int], ...]  # (i, dim T_i)
    families: tuple[FamilyLevel, ...]  # bottom to top

    @property
    def n(self) -> int:
        return self.s * self.k - 1

    @property
    def depth(self) -> int:
        return len(self.families)

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "s": self.s,
            "k": self.k,
            "n": self.n,
            "levels": [{"i": i, "m": m, "d": d} for i, m, d in self.table],
            "tower": [{"i": i, "dim": t} for i, t in self.tower],
        }


def params_A(s: int, k: int) -> NestingParams:
    if not s >= k + 1 >= 3:
        raise ParameterError(f"construction A needs s >= k + 1 >= 3, got s={s}, k={k}")
    m = [k - 1 + i * (s - 1) for i in range(k + 1)]
    assert m[k] == s * k - 1
    table = tuple((i, m[i], k - i) for i in range(1, k))
    tower = tuple((i, m[i - 1]) for i in range(1, k))
    for i, dim in tower:
        assert dim == 2 * m[i] - m[i + 1]
    tdim = dict(tower)
    fams = [FamilyLevel(0, k, k, m[1], tdim[1], 0)]
    for i in range(1, k):
        sigma = tdim[i + 1] if i < k - 1 else tdim[k - 1]
        fams.append(FamilyLevel(i, m[i], k - i, m[i + 1], sigma, tdim[i]))
    return NestingParams("A", s, k, table, tower, tuple(fams))


def params_B(s: int, k: int) -> NestingParams:
    if not 3 <= s <= k:
        raise ParameterError(f"construction B needs 3 <= s <= k, got s={s}, k={k}")
    m = {i: i * k - 1 for i in range(1, s + 1)}
    d = {i: (s - 1 - i) * k // (s - 1) + 1 for i in range(1, s)}
    table = tuple((i, m[i], d[i]) for i in range(1, s))
    tower = tuple((i, m[i - 1]) for i in range(2, s))
    for i, dim in tower:
        assert dim == 2 * m[i] - m[i + 1]
    tdim = dict(tower)
    fams = [FamilyLevel(1, k, d[1], m[2], tdim[2], 0)]
    for i in range(2, s):
        sigma = tdim[i + 1] if i < s - 1 else tdim[s - 1]
        fams.append(FamilyLevel(i, m[i], d[i], m[i + 1], sigma, tdim[i]))
    return NestingParams("B", s, k, table, tower, tuple(fams))


@dataclass(frozen=True)
class SizePrediction:
    q: int
    exponents: tuple[int, ...]  # bottom to top
    bound_exponent: int

    @property
    def total_exponent(self) -> int:
        return sum(self.exponents)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(self.q**e for e in self.exponents)

    @property
    def total(self) -> int:
        return self.q**self.total_exponent

    @property
    def bound(self) -> int:
        return self.q**self.bound_exponent


def predicted_sizes(params: NestingParams, q: int) -> SizePrediction:
    exps = tuple(f.exponent for f in params.families)
    bound = exponent_A(params.s, params.k) if params.tag == "A" else exponent_B(params.s, params.k)
    if sum(exps) < bound:
        raise ArithmeticError(f"level exponents {exps} fall below the bound exponent {bound}")
    return SizePrediction(q, exps, bound)


@dataclass(frozen=True)
class FamilyNode:
    member: Subspace
    children: tuple["FamilyNode", ...] = ()


@dataclass(frozen=True)
class FamilyTree:
    params: NestingParams
    field: FieldSpec
    tower: tuple[Subspace, ...]
    roots: tuple[FamilyNode, ...]

    def leaves_with_paths(self) -> Iterator[tuple[tuple[int, ...], Subspace]]:
        stack = [((i,), node) for i, node in reversed(list(enumerate(self.roots)))]
        while stack:
            path, node = stack.pop()
            if not node.children:
                yield path, node.member
            else:
                for j in range(len(node.children) - 1, -1, -1):
                    stack.append((path + (j,), node.children[j]))

    def leaves(self) -> list[Subspace]:
        return [S for _, S in self.leaves_with_paths()]

    def level_sizes(self) -> tuple[int, ...]:
        """Sibling-family size at each level, bottom to top.

        Raises if siblings at one level come in different sizes.
        """
        sizes: list[set[int]] = [set() for _ in range(self.params.depth)]
        top = self.params.depth - 1
        sizes[top].add(len(self.roots))
        frontier = list(self.roots)
        for level in range(top - 1, -1, -1):
            nxt = []
            for node in frontier:
                sizes[level].add(len(node.children))
                nxt.extend(node.children)
            frontier = nxt
        out = []
        for s in sizes:
            if len(s) != 1:
                raise ValueError(f"non-uniform sibling family sizes {sorted(s)}")
            out.append(s.pop())
        return tuple(out)

    @property
    def leaf_count(self) -> int:
        count = 1
        for s in self.level_sizes():
            count *= s
        return count


def _tower_space(F: FieldSpec, n: int, dim: int) -> Subspace:
    return Subspace.coordinate(F, n, range(dim))


def _children(params: NestingParams, F: FieldSpec, member: Subspace, level: int) -> tuple[FamilyNode, ...]:
    """Subtree below ``member``, which belongs to the family at index ``level``."""
    if level == 0:
        return ()
    fam = params.families[level - 1]
    spec = FamilySpec(
        fam.m, fam.d, member, _tower_space(F, params.n, fam.sigma), _tower_space(F, params.n, fam.tau)
    )
    return tuple(FamilyNode(C, _children(params, F, C, level - 1)) for C in build_family(spec))


def _subtree_job(args: tuple) -> tuple[FamilyNode, ...]:
    params, F, member = args
    return _children(params, F, member, params.depth - 1)


def _construct(params: NestingParams, F: FieldSpec, workers: int) -> FamilyTree:
    n = params.n
    top = params.families[-1]
    V = Subspace.full(F, n)
    spec = FamilySpec(top.m, top.d, V, _tower_space(F, n, top.sigma), _tower_space(F, n, top.tau))
    roots = build_family(spec)
    if workers > 1 and len(roots) > 1:
        jobs = [(params, F, C) for C in roots]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            subtrees = list(pool.map(_subtree_job, jobs))
        nodes = tuple(FamilyNode(C, sub) for C, sub in zip(roots, subtrees))
    else:
        nodes = tuple(FamilyNode(C, _children(params, F, C, params.depth - 1)) for C in roots)
    tower = tuple(_tower_space(F, n, dim) for _, dim in params.tower)
    return FamilyTree(params, F, tower, nodes)


def construct_A(s: int, k: int, F: FieldSpec, workers: int = 1) -> FamilyTree:
    """Nested construction for s >= k + 1 in V(sk - 1, q)."""
    return _construct(params_A(s, k), F, workers)


def construct_B(s: int, k: int, F: FieldSpec, workers: int = 1) -> FamilyTree:
    """Nested construction for 3 <= s <= k in V(sk - 1, q); only s - 1 levels."""
    return _construct(params_B(s, k), F, workers)


def construct_partite(s: int, k: int, F: FieldSpec) -> list[Subspace]:
    """k-spaces of V(k(s-1), q) meeting each of k coordinate (s-1)-spaces in a point."""
    if s < 3 or k < 1:
        raise ParameterError(f"partite family needs s >= 3 and k >= 1, got s={s}, k={k}")
    w = s - 1
    n = k * w
    points = [S.basis[0] for S in enumerate_subspaces(w, 1, F)]
    members = set()
    for choice in itertools.product(points, repeat=k):
        rows = []
        for i, p in enumerate(choice):
            row = [0] * n
            row[i * w : (i + 1) * w] = p
            rows.append(row)
        members.add(Subspace.from_rows(F, n, rows))
    assert len(members) == gauss_bracket(w, F.q) ** k
    return sorted(members, key=Subspace.key)


def construct_G(s: int, k: int, F: FieldSpec) -> list[Subspace]:
    """k-spaces of V((s+1)k/2 - 1, q) in which no (k/2 + 1)-space lies in two members."""
    if k % 2 or k < 2 or s < 4:
        raise ParameterError(f"family G needs even k >= 2 and s >= 4, got s={s}, k={k}")
    n = (s + 1) * k // 2 - 1
    if n < k:
        raise ParameterError(f"ambient dimension {n} is smaller than k = {k}")
    return list(cover_free_code(n, k, k // 2 + 1, F).members)


def example1_spread(F: FieldSpec) -> tuple[Subspace, list[Subspace]]:
    """The point T = <e_0> of V(5, q) and the q^2 + 1 solids through it.

    The solids are preimages of a line spread of V(4, q) = V(5, q)/T obtained
    by expanding the points of V(2, q^2) over GF(q).
    """
    E = extension(F, 2)
    alpha = F.q  # code of the residue of x
    reps = [(1, x) for x in range(E.order)] + [(0, 1)]
    n = 5
    T = Subspace.coordinate(F, n, [0])
    solids = []
    for v in reps:
        rows = [(1,) + (0,) * 4]
        for lam in (1, alpha):
            rows.append((0,) + E.expand(E.mul(lam, v[0])) + E.expand(E.mul(lam, v[1])))
        solids.append(Subspace.from_rows(F, n, rows))
    solids.sort(key=Subspace.key)
    return T, solids


def construct_example1(F: FieldSpec) -> list[Subspace]:
    """A maximal 3-sunflower-free family of 2-spaces in V(5, q), size q^4 + q^2 + q + 1."""
    T, solids = example1_spread(F)
    members = set(subspaces_in(solids[0], 2))
    for P in solids[1:]:
        members.update(L for L in subspaces_in(P, 2) if L.meet_dim(T) == 0)
    return sorted(members, key=Subspace.key)
