"""Acceptance checks, one per criterion.

Each ``check_*`` function returns ``(ok, detail)``. The pytest wrappers
assert on ``ok`` and record a PASS/FAIL line that is printed in the
terminal summary. Running this file directly prints the same lines.
"""
from __future__ import annotations

import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from conftest import random_z2_graphs  # noqa: E402
from oracles import heis_bfs_sizes, lattice_bfs_sizes  # noqa: E402

from steklov_cayley.bounds import TEST_FUNCTIONS, certify_sigma1, isoperimetric_ratio  # noqa: E402
from steklov_cayley.cayley import (  # noqa: E402
    ball,
    covering_count,
    covers,
    free_abelian,
    growth_function,
    heisenberg,
    separated_net,
)
from steklov_cayley.cli import main as cli_main  # noqa: E402
from steklov_cayley.families import heis_ball, induced, random_connected_subset, zd_ball, zd_box  # noqa: E402
from steklov_cayley.graph_boundary import InducedSubsetSpec, example_family_G  # noqa: E402
from steklov_cayley.steklov import dtn_matrix, oracle_spectrum, spectrum  # noqa: E402

Z1, Z2, Z3, H = free_abelian(1), free_abelian(2), free_abelian(3), heisenberg()

RESULTS: list[str] = []

# every graph built below is also fed to the structural checks (criteria 4 and 5)
_SUITE: dict[str, object] = {}


def _register(name, g):
    _SUITE.setdefault(name, g)
    return g


def _kernel_graphs():
    return [_register(f"z2rand20-{i}", g) for i, g in enumerate(random_z2_graphs(100, 20, seed=2024))]


def _oracle_graphs():
    return [_register(f"z2rand8-{i}", g) for i, g in enumerate(random_z2_graphs(100, 8, seed=808))]


def _record(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def check_1():
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(1, 31):
        worst = max(worst, abs(spectrum(_register(f"G{n}", example_family_G(n))).sigma1 - n))
    elapsed = time.perf_counter() - t0
    return worst <= 1e-9 and elapsed < 5.0, f"max |sigma1(G_n) - n| = {worst:.2e} for n=1..30 in {elapsed:.2f} s"


def check_2():
    worst_s0 = worst_dev = 0.0
    graphs = _kernel_graphs()
    for g in graphs:
        s = spectrum(g)
        worst_s0 = max(worst_s0, abs(s.eigenvalues[0]))
        u = s.eigenvectors[:, 0]
        u = u / u[np.argmax(np.abs(u))]
        worst_dev = max(worst_dev, float(np.abs(u - 1.0).max()))
    ok = len(graphs) == 100 and worst_s0 <= 1e-9 and worst_dev <= 1e-8
    return ok, f"{len(graphs)} graphs, max |sigma0| = {worst_s0:.1e}, max deviation from constant = {worst_dev:.1e}"


def check_3():
    worst = 0.0
    graphs = _oracle_graphs()
    for g in graphs:
        worst = max(worst, float(np.abs(oracle_spectrum(g) - spectrum(g).eigenvalues).max()))
    return len(graphs) == 100 and worst <= 1e-8, f"{len(graphs)} graphs, max eigenvalue gap to min-max oracle = {worst:.1e}"


def _populate_suite():
    _kernel_graphs()
    _oracle_graphs()
    for n in range(1, 31):
        _register(f"G{n}", example_family_G(n))
    for r in range(1, 21):
        _register(f"z2ball{r}", zd_ball(2, r))
    for s in range(2, 9):
        _register(f"z3box{s}", zd_box((s,) * 3))
    for r in range(1, 5):
        _register(f"heis{r}", heis_ball(r))
    _certificate_cases()


def check_4():
    _populate_suite()
    asym = neg = rows = 0.0
    for g in _SUITE.values():
        raw = dtn_matrix(g, symmetrize=False)
        scale = max(np.abs(raw).max(), 1e-300)
        asym = max(asym, float(np.abs(raw - raw.T).max() / scale))
        rows = max(rows, float(np.abs(raw.sum(axis=1)).max()))
        neg = min(neg, float(np.linalg.eigvalsh(dtn_matrix(g)).min()))
    ok = asym <= 1e-12 and neg >= -1e-9 and rows <= 1e-10
    return ok, f"{len(_SUITE)} instances, rel. asymmetry {asym:.1e}, min eigenvalue {neg:.1e}, max row sum {rows:.1e}"


def check_5():
    _populate_suite()
    worst = -math.inf
    for g in _SUITE.values():
        if g.b < 2:
            continue
        d = int(g.host.degree) if g.host is not None else int(g.degrees.max())
        worst = max(worst, spectrum(g).sigma1 - d)
    return worst <= 1e-9, f"{len(_SUITE)} instances, max sigma1 - d = {worst:.3f}"


def _certificate_cases():
    cases = []
    for k in range(6, 15):
        # isolated points, then pairs, spaced so each gap is one boundary vertex
        for name, omega in ((f"z1-points{k}", {(2 * i,) for i in range(k)}),
                            (f"z1-pairs{k}", {(3 * i + j,) for i in range(k) for j in (0, 1)})):
            cases += [(name, induced(Z1, omega), c) for c in (None, 7, 3)]
    for r in range(1, 11):
        cases += [(f"z2ball{r}", zd_ball(2, r), c) for c in (None, 3, 10)]
    for i, g in enumerate(random_z2_graphs(15, 40, seed=606)):
        cases += [(f"z2rand{i}", g, c) for c in (None, 5)]
    for s in range(2, 7):
        cases += [(f"z3box{s}", zd_box((s,) * 3), c) for c in (None, 10, 40)]
    rng = np.random.default_rng(77)
    for i in range(5):
        g = induced(Z3, random_connected_subset(Z3, int(rng.integers(10, 60)), rng))
        cases += [(f"z3rand{i}", g, c) for c in (None, 10)]
    for r in range(1, 5):
        cases += [(f"heis{r}", heis_ball(r), c) for c in (None, 20, 40)]
    for i in range(5):
        g = induced(H, random_connected_subset(H, int(rng.integers(10, 60)), rng))
        cases += [(f"heisrand{i}", g, c) for c in (None, 10, 20)]
    return [(name, _register(name, g), c) for name, g, c in cases if g.b >= 2]


def check_6():
    cases = _certificate_cases()
    worst = math.inf
    hosts = set()
    test_fn = 0
    bad = []
    for name, g, c1 in cases:
        cert = certify_sigma1(g, c1=c1)
        margin = cert.certified_bound - cert.sigma1
        worst = min(worst, margin)
        hosts.add((g.host.kind, g.host.rank))
        test_fn += cert.branch == TEST_FUNCTIONS
        if margin < -1e-9:
            bad.append((name, c1))
    graphs = {name for name, _, _ in cases}
    ok = not bad and len(graphs) >= 50 and len(hosts) == 4
    detail = (f"{len(cases)} certificates on {len(graphs)} graphs over {len(hosts)} hosts "
              f"({test_fn} via test functions), min(bound - sigma1) = {worst:.3f}")
    if bad:
        detail += f", unsound: {bad}"
    return ok, detail


def check_7():
    s2 = []
    scaled2 = []
    for r in range(1, 21):
        g = zd_ball(2, r)
        s = spectrum(g).sigma1
        s2.append(s)
        scaled2.append(s * g.n ** 0.5)
    s3 = []
    scaled3 = []
    for side in range(2, 9):
        g = zd_box((side,) * 3)
        s = spectrum(g).sigma1
        s3.append(s)
        scaled3.append(s * g.n ** (1 / 3))
    ok = (
        all(x > 0 for x in s2 + s3)
        and s2[-1] < s2[0]
        and s3[-1] < s3[0]
        and all(math.isfinite(x) for x in scaled2 + scaled3)
    )
    detail = (f"Z2 balls: sigma1 {s2[0]:.4f} -> {s2[-1]:.4f}, max sigma1*|closure|^(1/2) = {max(scaled2):.4f}; "
              f"Z3 boxes: sigma1 {s3[0]:.4f} -> {s3[-1]:.4f}, max sigma1*|closure|^(1/3) = {max(scaled3):.4f}")
    return ok, detail


def check_8():
    t0 = time.perf_counter()
    z1 = [v for _, v in growth_function(Z1, 50).samples]
    ok1 = z1 == [2 * n + 1 for n in range(1, 51)]
    z2 = [v for _, v in growth_function(Z2, 20).samples]
    ok2 = z2 == [2 * n * n + 2 * n + 1 for n in range(1, 21)] == lattice_bfs_sizes(2, 20)[1:]
    hv = [v for _, v in growth_function(H, 10).samples]
    ref = heis_bfs_sizes(10)[1:]
    ratios = [hv[2 * n - 1] / hv[n - 1] for n in (3, 4, 5)]
    ok3 = hv == ref and all(a < b for a, b in zip(hv, hv[1:])) and all(8 <= q <= 32 for q in ratios)
    elapsed = time.perf_counter() - t0
    ok = ok1 and ok2 and ok3 and elapsed < 30
    detail = (f"Z1 n<=50 {'exact' if ok1 else 'MISMATCH'}, Z2 n<=20 {'exact' if ok2 else 'MISMATCH'}, "
              f"Heisenberg V(2n)/V(n) = {', '.join(f'{q:.2f}' for q in ratios)}, {elapsed:.2f} s")
    return ok, detail


def check_9():
    parts = []
    ok = True
    for desc in (Z1, Z2):
        C = growth_function(desc, 12).growth_constant
        bound = covering_count(C, 3, Fraction(1, 2), desc.growth_order)
        for R in (2, 3, 4):
            sep = -(-R // 2)
            net = separated_net(desc, desc.identity(), 3 * R, sep)
            good = len(net) <= bound and covers(desc, net, sep, ball(desc, desc.identity(), 3 * R))
            ok &= good
            parts.append(f"Z{desc.rank} R={R}: {len(net)}<={bound}")
    return ok, "; ".join(parts)


def check_10():
    sq = []
    for k in range(1, 31):
        omega = frozenset((x, y) for x in range(k) for y in range(k))
        rep = isoperimetric_ratio(InducedSubsetSpec(Z2, omega), 2)
        assert rep.boundary_size == 4 * k and rep.closure_size == k * k + 4 * k
        sq.append(rep.ratio)
    balls = [isoperimetric_ratio(InducedSubsetSpec(Z2, frozenset(ball(Z2, (0, 0), r))), 2).ratio for r in range(1, 21)]
    ok = max(sq + balls) <= 1.5
    return ok, f"sup over squares k<=30 = {max(sq):.4f}, sup over balls r<=20 = {max(balls):.4f}"


def _cli_bytes(argv, path):
    code = cli_main(["--output", str(path), *argv])
    return code, path.read_bytes()


def check_11(tmp: Path):
    graph = tmp / "g.json"
    cli_main(["--output", str(graph), "gen", "zd_ball", "2", "4"])
    commands = [
        ["gen", "heis_ball", "2"],
        ["--seed", "5", "gen", "zd_random", "3", "25"],
        ["spectrum", str(graph)],
        ["spectrum", str(graph), "--csv", "--method", "jacobi"],
        ["certify", str(graph)],
        ["certify", str(graph), "--c1", "3"],
        ["sweep", "zd_ball", "2", "--range", "1..6"],
        ["sweep", "heis_ball", "--range", "1..2", "--c1", "20"],
        ["--seed", "1", "sweep", "zd_random", "2", "--range", "5..12"],
        ["growth", "z", "2", "10"],
        ["growth", "heis", "8"],
    ]
    differing = []
    for i, argv in enumerate(commands):
        c1, a = _cli_bytes(argv, tmp / f"a{i}")
        c2, b = _cli_bytes(argv, tmp / f"b{i}")
        if c1 != 0 or c1 != c2 or a != b or not a:
            differing.append(" ".join(argv))
    ok = not differing
    detail = f"{len(commands)} commands run twice, byte-identical" if ok else f"differing: {differing}"
    return ok, detail


# pytest wrappers


def _run(number, fn, *args):
    ok, detail = fn(*args)
    _record(number, ok, detail)
    assert ok, detail


def test_criterion_01_example_family_exact():
    _run(1, check_1)


def test_criterion_02_kernel_is_constants():
    _run(2, check_2)


def test_criterion_03_oracle_equivalence():
    _run(3, check_3)


def test_criterion_04_dtn_structure():
    _run(4, check_4)


def test_criterion_05_degree_bound():
    _run(5, check_5)


def test_criterion_06_certificate_soundness():
    _run(6, check_6)


def test_criterion_07_decay():
    _run(7, check_7)


def test_criterion_08_growth_functions():
    _run(8, check_8)


def test_criterion_09_covering():
    _run(9, check_9)


def test_criterion_10_isoperimetric_ratio():
    _run(10, check_10)


def test_criterion_11_cli_determinism(tmp_path):
    _run(11, check_11, tmp_path)


if __name__ == "__main__":
    import tempfile

    checks = [check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8, check_9, check_10]
    failed = 0
    for i, fn in enumerate(checks, start=1):
        failed += not _record(i, *fn())
    with tempfile.TemporaryDirectory() as d:
        failed += not _record(11, *check_11(Path(d)))
    sys.exit(1 if failed else 0)
