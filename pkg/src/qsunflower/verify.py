"""Sunflower search, family-condition checks and machine-checkable certificates."""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .constructions import FamilySpec, FamilyTree, NestingParams
from .errors import BudgetExceeded
from .field import FieldSpec
from .gaussian import gaussian
from .geometry import Subspace, enumerate_subspaces, span_dim, subspaces_in

GENERAL = "general"
SETLIKE = "setlike"
SUBSET_ORACLE_THRESHOLD = 30


def family_hash(members: Sequence[Subspace]) -> str:
    payload = json.dumps(sorted([list(map(list, S.basis)) for S in members]), separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True)
class SunflowerWitness:
    indices: tuple[int, ...]
    kernel: Subspace
    span_dim: int
    added: Subspace | None = None  # a candidate outside the family, when checking maximality

    @property
    def kernel_dim(self) -> int:
        return self.kernel.dim

    def revalidate(self, family: Sequence[Subspace], mode: str = GENERAL) -> bool:
        members = [family[i] for i in self.indices]
        if self.added is not None:
            members.append(self.added)
        check = sunflower_kernel if mode == GENERAL else set_like_kernel
        found = check(members)
        return found is not None and found[0] == self.kernel

    def to_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "kernel": self.kernel.to_record(),
            "kernel_dim": self.kernel_dim,
            "span_dim": self.span_dim,
            "added": None if self.added is None else self.added.to_record(),
        }


@dataclass
class Certificate:
    """Outcome of one verification run.

    ``status == "exhaustive"`` means a negative outcome is a proof for the
    family at hand; ``"budgeted"`` means the search stopped early.
    """

    kind: str
    family_hash: str
    family_size: int
    status: str
    outcome: str
    s: int | None = None
    mode: str | None = None
    counts: dict[str, int] = field(default_factory=dict)
    witnesses: list[SunflowerWitness] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    bounds: dict[str, str] | None = None

    @property
    def exhaustive(self) -> bool:
        return self.status == "exhaustive"

    @property
    def passed(self) -> bool:
        return self.outcome in ("sunflower-free", "pass", "maximal") and self.exhaustive

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "family_hash": self.family_hash,
            "family_size": self.family_size,
            "s": self.s,
            "mode": self.mode,
            "status": self.status,
            "outcome": self.outcome,
            "counts": dict(self.counts),
            "witnesses": [w.to_dict() for w in self.witnesses],
            "violations": list(self.violations),
            "bounds": self.bounds,
        }


def _check_members(members: Sequence[Subspace]) -> None:
    if len(members) < 2:
        raise ValueError("need at least two members")
    k = members[0].dim
    for S in members[1:]:
        members[0]._compatible(S)
        if S.dim != k:
            raise ValueError("members have different dimensions")
    if len(set(members)) != len(members):
        raise ValueError("members are not distinct")


def set_like_kernel(members: Sequence[Subspace]) -> tuple[Subspace, int] | None:
    """The common pairwise meet, if all pairwise meets coincide."""
    _check_members(members)
    K = members[0].meet(members[1])
    for A, B in itertools.combinations(members, 2):
        if A.meet(B) != K:
            return None
    return K, K.dim


def sunflower_kernel(members: Sequence[Subspace]) -> tuple[Subspace, int] | None:
    """Kernel of a general-position sunflower: equal pairwise meets and span d + s(k - d)."""
    found = set_like_kernel(members)
    if found is None:
        return None
    K, d = found
    k, s = members[0].dim, len(members)
    if span_dim(list(members)) != d + s * (k - d):
        return None
    return found


class _Search:
    """Shared state for an s-sunflower search over a fixed family."""

    def __init__(self, family: Sequence[Subspace], s: int, mode: str):
        self.family = list(family)
        self.s = s
        self.mode = mode
        self.k = family[0].dim if family else 0
        self._meets: dict[tuple[int, int], Subspace] = {}

    def meet(self, i: int, j: int) -> Subspace:
        key = (i, j) if i < j else (j, i)
        M = self._meets.get(key)
        if M is None:
            M = self._meets[key] = self.family[key[0]].meet(self.family[key[1]])
        return M

    def spans_ok(self, idx: Sequence[int], d: int) -> bool:
        if self.mode != GENERAL:
            return True
        return span_dim([self.family[i] for i in idx]) == d + len(idx) * (self.k - d)


def _subset_search(search: _Search, budget: int, counts: dict) -> tuple[SunflowerWitness | None, bool]:
    n, s = len(search.family), search.s
    checked = 0
    for idx in itertools.combinations(range(n), s):
        if checked >= budget:
            counts["subsets_checked"] = checked
            return None, False
        checked += 1
        K = search.meet(idx[0], idx[1])
        if all(search.meet(a, b) == K for a, b in itertools.combinations(idx, 2)) and search.spans_ok(idx, K.dim):
            counts["subsets_checked"] = checked
            return SunflowerWitness(idx, K, span_dim([search.family[i] for i in idx])), True
    counts["subsets_checked"] = checked
    return None, True


def _clique_search(search: _Search, budget_pairs: int, budget_nodes: int, counts: dict) -> tuple[SunflowerWitness | None, bool]:
    n, s = len(search.family), search.s
    total_pairs = comb(n, 2)
    if total_pairs > budget_pairs:
        counts["pairs_checked"] = 0
        return None, False
    buckets: dict[Subspace, dict[int, set[int]]] = {}
    for i, j in itertools.combinations(range(n), 2):
        adj = buckets.setdefault(search.meet(i, j), {})
        adj.setdefault(i, set()).add(j)
        adj.setdefault(j, set()).add(i)
    counts["pairs_checked"] = total_pairs
    counts["kernel_buckets"] = len(buckets)
    nodes = 0
    cliques = 0

    for K in sorted(buckets, key=Subspace.key):
        adj = buckets[K]
        d = K.dim
        if len(adj) < s:
            continue
        stack: list[tuple[tuple[int, ...], list[int]]] = [
            ((v,), sorted(u for u in adj[v] if u > v)) for v in sorted(adj, reverse=True)
        ]
        while stack:
            clique, cand = stack.pop()
            nodes += 1
            if nodes > budget_nodes:
                counts["clique_nodes"] = nodes - 1
                counts["cliques_checked"] = cliques
                return None, False
            if len(clique) > 1 and not search.spans_ok(clique, d):
                continue
            if len(clique) == s:
                cliques += 1
                counts["clique_nodes"] = nodes
                counts["cliques_checked"] = cliques
                return SunflowerWitness(clique, K, span_dim([search.family[i] for i in clique])), True
            if len(clique) + len(cand) < s:
                continue
            for pos in range(len(cand) - 1, -1, -1):
                v = cand[pos]
                nxt = [u for u in cand[pos + 1 :] if u in adj[v]]
                stack.append((clique + (v,), nxt))
    counts["clique_nodes"] = nodes
    counts["cliques_checked"] = cliques
    return None, True


def find_sunflower(
    family: Sequence[Subspace],
    s: int,
    mode: str = GENERAL,
    budget_pairs: int = 10**7,
    budget_subsets: int = 10**8,
    method: str = "auto",
) -> Certificate:
    """Search ``family`` for an s-sunflower.

    ``method="subsets"`` enumerates every s-subset; ``"cliques"`` buckets
    pairs by their meet and searches s-cliques inside each bucket, pruning
    partial cliques whose span is already too small.  ``"auto"`` uses the
    subset enumeration for at most 30 members.
    """
    if mode not in (GENERAL, SETLIKE):
        raise ValueError(f"unknown mode {mode!r}")
    if s < 2:
        raise ValueError("s must be >= 2")
    family = list(family)
    cert = Certificate("sunflower-search", family_hash(family), len(family), "exhaustive", "sunflower-free", s, mode)
    if len(family) < s:
        cert.counts["subsets_checked"] = 0
        return cert
    _check_members(family)
    if method == "auto":
        method = "subsets" if len(family) <= SUBSET_ORACLE_THRESHOLD else "cliques"
    search = _Search(family, s, mode)
    if method == "subsets":
        witness, complete = _subset_search(search, budget_subsets, cert.counts)
    elif method == "cliques":
        witness, complete = _clique_search(search, budget_pairs, budget_subsets, cert.counts)
    else:
        raise ValueError(f"unknown method {method!r}")
    cert.counts["method_" + method] = 1
    if witness is not None:
        cert.outcome = "witness"
        cert.witnesses.append(witness)
    elif not complete:
        cert.status = "budgeted"
        cert.outcome = "inconclusive"
    return cert


def verify_family_conditions(
    members: Sequence[Subspace], spec: FamilySpec, cross_validate: bool = False, budget: int = 10**5
) -> Certificate:
    """Check both defining conditions of an (m, d; V, Sigma, T)-family."""
    members = list(members)
    cert = Certificate("family-conditions", family_hash(members), len(members), "exhaustive", "pass")
    V, S, T = spec.V, spec.sigma_space, spec.T
    for i, C in enumerate(members):
        if C.dim != spec.m or not C <= V:
            cert.violations.append(f"member {i} is not an {spec.m}-space of V")
            break
        if C.meet(S) != T:
            cert.violations.append(f"member {i}: Sigma meet C != T")
            break
    bound = spec.tau + spec.d - 1
    pairs = 0
    for i, j in itertools.combinations(range(len(members)), 2):
        pairs += 1
        dim = members[i].meet_dim(members[j])
        if dim > bound:
            cert.violations.append(f"members {i},{j} meet in dimension {dim} > tau + d - 1 = {bound}")
            break
    cert.counts["pairs_checked"] = pairs
    if cross_validate:
        total = gaussian(V.dim, spec.d, V.field.q)
        if total > budget:
            cert.status = "budgeted"
        else:
            checked = 0
            for X in subspaces_in(V, spec.d):
                if X.meet_dim(T):
                    continue
                checked += 1
                hits = [i for i, C in enumerate(members) if X <= C]
                if len(hits) > 1:
                    cert.violations.append(f"a {spec.d}-space disjoint from T lies in members {hits[0]},{hits[1]}")
                    break
            cert.counts["dspaces_checked"] = checked
    if cert.violations:
        cert.outcome = "fail"
    return cert


def _level_checks(
    params: NestingParams, F: FieldSpec, parent: Subspace | None, nodes, level: int, recurse: bool = True
) -> tuple[dict, list[str]]:
    """Per-node checks for ``nodes`` (a sibling family at ``level``) and, optionally, everything below."""
    fam = params.families[level]
    n = params.n
    Sigma = Subspace.coordinate(F, n, range(fam.sigma))
    T = Subspace.coordinate(F, n, range(fam.tau))
    counts = {"nodes": 1, "sibling_pairs": 0, "members": 0}
    violations: list[str] = []
    members = [nd.member for nd in nodes]
    for i, C in enumerate(members):
        counts["members"] += 1
        if C.dim != fam.m or C.n != n:
            violations.append(f"level {fam.label}: member {i} has dimension {C.dim} != {fam.m}")
        if parent is not None and not C <= parent:
            violations.append(f"level {fam.label}: member {i} is not inside its parent")
        if not (T <= C and C.meet_dim(Sigma) == fam.tau):
            violations.append(f"level {fam.label}: member {i} does not meet Sigma exactly in T")
    for i, j in itertools.combinations(range(len(members)), 2):
        counts["sibling_pairs"] += 1
        dim = members[i].meet_dim(members[j])
        if dim > fam.pairwise_bound:
            violations.append(f"level {fam.label}: siblings {i},{j} meet in dimension {dim} > {fam.pairwise_bound}")
    if recurse and level > 0:
        for nd in nodes:
            c, v = _level_checks(params, F, nd.member, nd.children, level - 1)
            for key, val in c.items():
                counts[key] = counts.get(key, 0) + val
            violations.extend(v)
    return counts, violations


def _subtree_checks(args) -> tuple[dict, list[str]]:
    params, F, idx, nd = args
    counts, violations = _level_checks(params, F, nd.member, nd.children, params.depth - 2)
    return counts, [f"root {idx}: {v}" for v in violations]


def sunflower_span_argument(tree: FamilyTree) -> list[tuple[int, int, int]]:
    """For each level: (label, smallest span of an s-sunflower across siblings, parent dimension).

    Sibling leaves meet in dimension at most d - 1, so an s-sunflower whose
    petals lie under distinct siblings spans at least (d-1) + s(k-(d-1)).
    """
    s, k = tree.params.s, tree.params.k
    out = []
    for fam in tree.params.families:
        kmax = fam.d - 1
        out.append((fam.label, kmax + s * (k - kmax), fam.parent_dim))
    return out


def verify_nesting(tree: FamilyTree, leaf_pairs: int = 10**5, seed: int = 0, workers: int = 1) -> Certificate:
    """Check every sibling family of a nested construction and the cross-branch leaf bound.

    Leaf pairs are checked exhaustively when there are at most ``leaf_pairs``
    of them and otherwise sampled with a fixed seed.
    """
    leaves = list(tree.leaves_with_paths())
    cert = Certificate(
        "nesting", family_hash([S for _, S in leaves]), len(leaves), "exhaustive", "pass", tree.params.s, GENERAL
    )
    depth = tree.params.depth
    counts, violations = _level_checks(tree.params, tree.field, None, tree.roots, depth - 1, recurse=False)
    if depth > 1:
        jobs = [(tree.params, tree.field, i, nd) for i, nd in enumerate(tree.roots)]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_subtree_checks, jobs))
        else:
            results = [_subtree_checks(j) for j in jobs]
        for c, v in results:
            for key, val in c.items():
                counts[key] = counts.get(key, 0) + val
            violations.extend(v)

    k = tree.params.k
    for i, (_, S) in enumerate(leaves):
        if S.dim != k:
            violations.append(f"leaf {i} has dimension {S.dim} != {k}")
            break
    if len({S for _, S in leaves}) != len(leaves):
        violations.append("leaves are not pairwise distinct")

    L = len(leaves)
    total = comb(L, 2)
    if total <= leaf_pairs:
        pairs = itertools.combinations(range(L), 2)
        cert.counts["leaf_pairs_exhaustive"] = 1
    else:
        rng = random.Random(seed)

        def sampled():
            for _ in range(leaf_pairs):
                a, b = rng.sample(range(L), 2)
                yield (a, b) if a < b else (b, a)

        pairs = sampled()
    checked = 0
    for a, b in pairs:
        pa, Sa = leaves[a]
        pb, Sb = leaves[b]
        j = next(t for t in range(depth) if pa[t] != pb[t])
        fam = tree.params.families[depth - 1 - j]
        checked += 1
        dim = Sa.meet_dim(Sb)
        if dim > fam.d - 1:
            violations.append(f"leaves {pa} and {pb} meet in dimension {dim} > {fam.d - 1}")
            break
    counts["leaf_pairs_checked"] = checked

    for label, min_span, parent_dim in sunflower_span_argument(tree):
        if not min_span > parent_dim:
            violations.append(f"level {label}: sunflower span {min_span} fits in dimension {parent_dim}")
    counts["span_arguments_checked"] = depth

    cert.counts.update(counts)
    cert.violations = violations
    if violations:
        cert.outcome = "fail"
    return cert


def is_maximal(
    family: Sequence[Subspace], s: int, n: int, k: int, budget: int = 10**5, mode: str = GENERAL
) -> Certificate:
    """Check that adding any k-space of V(n, q) outside ``family`` creates an s-sunflower."""
    family = list(family)
    if not family:
        raise ValueError("cannot infer the field of an empty family")
    F = family[0].field
    total = gaussian(n, k, F.q)
    if total > budget:
        raise BudgetExceeded(f"{total} candidate {k}-spaces exceed the maximality budget {budget}")
    for S in family:
        if S.n != n or S.dim != k:
            raise ValueError("family members must be k-spaces of V(n, q)")
    cert = Certificate("maximality", family_hash(family), len(family), "exhaustive", "maximal", s, mode)
    present = set(family)
    search = _Search(family, s, mode)
    N = len(family)
    candidates = extendable = 0
    for X in enumerate_subspaces(n, k, F):
        if X in present:
            continue
        candidates += 1
        witness = _sunflower_through(search, X)
        if witness is None:
            extendable += 1
            if len(cert.violations) < 10:
                cert.violations.append(f"can add {[list(r) for r in X.basis]}")
        elif len(cert.witnesses) < 10:
            cert.witnesses.append(witness)
    cert.counts.update(candidates=candidates, extendable=extendable, family_size=N)
    if extendable:
        cert.outcome = "extendable"
    return cert


def _sunflower_through(search: _Search, X: Subspace) -> SunflowerWitness | None:
    """An s-sunflower consisting of ``X`` and s-1 family members, if any."""
    fam = search.family
    buckets: dict[Subspace, list[int]] = {}
    for i, S in enumerate(fam):
        buckets.setdefault(X.meet(S), []).append(i)
    need = search.s - 1
    for K in sorted(buckets, key=Subspace.key):
        idx = buckets[K]
        if len(idx) < need:
            continue
        d = K.dim
        for combo in itertools.combinations(idx, need):
            if not all(search.meet(a, b) == K for a, b in itertools.combinations(combo, 2)):
                continue
            members = [X] + [fam[i] for i in combo]
            sd = span_dim(members)
            if search.mode == GENERAL and sd != d + search.s * (search.k - d):
                continue
            return SunflowerWitness(combo, K, sd, added=X)
    return None
