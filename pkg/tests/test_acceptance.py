"""The eleven acceptance criteria, each at its stated size and time limit.

Every test records a PASS/FAIL line shown in the pytest terminal summary.
"""

import itertools
import subprocess
import sys
import time
from math import comb

from qsunflower.bounds import bound_sandwich, floor_sum, lower_bound, upper_bound
from qsunflower.constructions import (
    construct_A,
    construct_B,
    construct_example1,
    construct_G,
    construct_partite,
)
from qsunflower.field import FieldSpec
from qsunflower.gaussian import check_bracket_sandwich, gauss_bracket, gaussian
from qsunflower.geometry import enumerate_subspaces
from qsunflower.rank_metric import GabidulinCode, lifted_mrd
from qsunflower.verify import find_sunflower, is_maximal, sunflower_span_argument, verify_nesting

F2, F3 = FieldSpec(2), FieldSpec(3)


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def test_c01_gaussian_enumeration(criterion):
    bad = []
    with Timer() as t:
        for q in (2, 3):
            F = FieldSpec.of_order(q)
            for n in range(0, 7):
                for m in range(0, n + 1):
                    count = sum(1 for _ in enumerate_subspaces(n, m, F))
                    if count != gaussian(n, m, q):
                        bad.append((n, m, q))
    spot = gaussian(4, 2, 2) == 35 and gaussian(5, 2, 2) == 155
    ok = not bad and spot and t.elapsed < 10
    criterion(1, ok, f"enumeration = gaussian for n<=6, q in {{2,3}}; mismatches {bad}; {t.elapsed:.2f}s")


def test_c02_bracket_sandwich(criterion):
    with Timer() as t:
        ok = all(check_bracket_sandwich(m, q) for m in range(2, 21) for q in (2, 3, 4, 5, 7, 8, 9))
    criterion(2, ok and t.elapsed < 1, f"(1+1/q)q^(m-1) <= [m] < (1+1/(q-1))q^(m-1), m 2..20; {t.elapsed:.3f}s")


def test_c03_lifted_mrd_and_gabidulin(criterion):
    with Timer() as t:
        code = lifted_mrd(4, 4, 2, F2)
        members = code.members
        ok_lift = (
            len(members) == 4
            and all(A.distance(B) == 4 for A, B in itertools.combinations(members, 2))
            and all(S.meet_dim(code.avoided) == 0 for S in members)
        )
        grid = 0
        bad = []
        for q in (2, 3, 4):
            F = FieldSpec.of_order(q)
            for e in range(1, 7):
                for length in range(1, e + 1):
                    for k in range(1, length + 1):
                        if q ** (e * k) > 2**12:
                            continue
                        grid += 1
                        if GabidulinCode.over(F, e, length, k).min_rank_distance() != length - k + 1:
                            bad.append((q, e, length, k))
    ok = ok_lift and not bad and t.elapsed < 5
    criterion(3, ok, f"lifted_mrd(4,4,2) 4 members at distance 4 avoiding W; {grid} Gabidulin codes MRD; {t.elapsed:.2f}s")


def test_c04_example1(criterion):
    with Timer() as t:
        details = []
        ok = True
        for F in (F2, F3):
            q = F.q
            fam = construct_example1(F)
            cert = find_sunflower(fam, 3, method="subsets")
            ok &= len(fam) == q**4 + q**2 + q + 1
            ok &= cert.passed and cert.counts["subsets_checked"] == comb(len(fam), 3)
            details.append(f"q={q}: {len(fam)} members, {cert.counts['subsets_checked']} triples")
        maxi = is_maximal(construct_example1(F2), 3, 5, 2)
        ok &= maxi.outcome == "maximal" and maxi.exhaustive and maxi.counts["candidates"] == 132
    ok &= t.elapsed < 120
    criterion(4, ok, "; ".join(details) + f"; maximal over {maxi.counts['candidates']} additions; {t.elapsed:.1f}s")


def test_c05_construction_A_small(criterion):
    with Timer() as t:
        ok = True
        details = []
        for F in (F2, F3):
            q = F.q
            leaves = construct_A(3, 2, F).leaves()
            cert = find_sunflower(leaves, 3, method="subsets")
            ok &= len(leaves) == q**4 == lower_bound(3, 2, q)
            ok &= cert.passed and cert.counts["subsets_checked"] == comb(q**4, 3)
            details.append(f"q={q}: {len(leaves)} leaves free")
    criterion(5, ok and t.elapsed < 60, "A(3,2): " + ", ".join(details) + f"; {t.elapsed:.1f}s")


def test_c06_construction_A_structural(criterion):
    with Timer() as t:
        tree = construct_A(4, 3, F2, workers=4)
        sizes = tree.level_sizes()
        cert = verify_nesting(tree, leaf_pairs=10**5, workers=4)
        spans = sunflower_span_argument(tree)
    ok = (
        tree.leaf_count == 2**15
        and sizes == (2**6, 2**6, 2**3)
        and cert.passed
        and cert.counts["leaf_pairs_checked"] == 10**5
        and all(span > parent for _, span, parent in spans)
        and t.elapsed < 300
    )
    criterion(
        6,
        ok,
        f"A(4,3,2): 2^15 leaves, levels top->bottom {sizes[::-1]}, {cert.counts['sibling_pairs']} sibling pairs, "
        f"{cert.counts['leaf_pairs_checked']} sampled leaf pairs, violations {len(cert.violations)}; {t.elapsed:.1f}s",
    )


def test_c07_construction_B_small(criterion):
    with Timer() as t:
        tree = construct_B(3, 3, F2)
        leaves = tree.leaves()
        cert = find_sunflower(leaves, 3, method="subsets")
    ok = (
        len(leaves) >= 8
        and tree.params.n == 8
        and all(S.n == 8 and S.dim == 3 for S in leaves)
        and cert.passed
        and cert.counts["subsets_checked"] == comb(len(leaves), 3)
        and t.elapsed < 60
    )
    criterion(7, ok, f"B(3,3,2): {len(leaves)} leaves (bound 8) in V(8,2), {comb(len(leaves), 3)} triples free; {t.elapsed:.1f}s")


def test_c08_G_and_partite(criterion):
    with Timer() as t:
        G = construct_G(4, 2, F2)
        cg = find_sunflower(G, 4, method="subsets")
        P = construct_partite(3, 2, F2)
        cp = find_sunflower(P, 3, method="subsets")
    ok = (
        len(G) == 16
        and cg.passed
        and cg.counts["subsets_checked"] == 1820
        and len(P) == 9
        and cp.passed
        and cp.counts["subsets_checked"] == comb(9, 3)
        and t.elapsed < 10
    )
    criterion(8, ok, f"G(4,2,2) 16 members 4-free over 1820 quadruples; partite(3,2,2) 9 members 3-free; {t.elapsed:.2f}s")


def test_c09_bounds_sandwich(criterion):
    with Timer() as t:
        chain = all(
            bound_sandwich(s, k, q).holds for s in (3, 4, 5) for k in (2, 3, 4) for q in (2, 3)
        )
    spot = upper_bound(3, 2, 2) == 45
    # realized families against their own stated lower bound and the product upper bound
    sizes = [
        ("example1 q=2", len(construct_example1(F2)), lower_bound(3, 2, 2), upper_bound(3, 2, 2)),
        ("example1 q=3", len(construct_example1(F3)), lower_bound(3, 2, 3), upper_bound(3, 2, 3)),
        ("A(3,2,2)", construct_A(3, 2, F2).leaf_count, lower_bound(3, 2, 2), upper_bound(3, 2, 2)),
        ("A(3,2,3)", construct_A(3, 2, F3).leaf_count, lower_bound(3, 2, 3), upper_bound(3, 2, 3)),
        ("A(4,3,2)", 2**15, lower_bound(4, 3, 2), upper_bound(4, 3, 2)),
        ("B(3,3,2)", construct_B(3, 3, F2).leaf_count, lower_bound(3, 3, 2), upper_bound(3, 3, 2)),
        ("G(4,2,2)", len(construct_G(4, 2, F2)), 2 ** (3 * 4 // 4 + 2 * 2 // 2 - 1), upper_bound(4, 2, 2)),
        ("partite(3,2,2)", len(construct_partite(3, 2, F2)), gauss_bracket(2, 2) ** 2, upper_bound(3, 2, 2)),
    ]
    inside = [name for name, size, lo, hi in sizes if not lo <= size <= hi]
    ok = chain and spot and not inside and t.elapsed < 1
    criterion(9, ok, f"lower <= product <= cap on 18-point grid; upper_bound(3,2,2)=45; families outside [lower, product]: {inside}; {t.elapsed:.3f}s")


def test_c10_floor_sum(criterion):
    with Timer() as t:
        ok = all(
            floor_sum(mu, nu) == sum(kappa * mu // nu for kappa in range(1, nu))
            for mu in range(1, 31)
            for nu in range(1, 31)
        )
    criterion(10, ok and t.elapsed < 1, f"floor-sum closed form = direct sum for 1 <= mu, nu <= 30; {t.elapsed:.3f}s")


CONSTRUCT_COMMANDS = [
    ("a", 3, 2, 2),
    ("a", 3, 2, 3),
    ("a", 4, 3, 2),
    ("b", 3, 3, 2),
    ("g", 4, 2, 2),
    ("partite", 3, 2, 2),
    ("example1", 3, 2, 2),
    ("example1", 3, 2, 3),
]


def test_c11_cli_determinism(criterion, tmp_path):
    differing = []
    with Timer() as t:
        for kind, s, k, q in CONSTRUCT_COMMANDS:
            blobs = []
            for run, workers in enumerate((1, 1, 4, 4)):
                out = tmp_path / f"{kind}-{s}-{k}-{q}-{run}.json"
                argv = [sys.executable, "-m", "qsunflower", "construct", "--type", kind, "--q", str(q),
                        "--workers", str(workers), "--out", str(out)]
                if kind != "example1":
                    argv += ["--s", str(s), "--k", str(k)]
                proc = subprocess.run(argv, capture_output=True, check=False)
                blobs.append((proc.returncode, proc.stdout, out.read_bytes() if out.exists() else b""))
            if any(b != blobs[0] for b in blobs) or blobs[0][0] != 0:
                differing.append(f"{kind}({s},{k},{q})")
    ok = not differing and t.elapsed < 300
    criterion(11, ok, f"{len(CONSTRUCT_COMMANDS)} construct commands byte-identical over 2 runs x workers {{1,4}}; "
              f"differing {differing}; {t.elapsed:.1f}s")
