"""The ten acceptance criteria, one test each.

Each criterion is a function returning ``(ok, detail)``.  The tests assert
``ok``; a summary line per criterion is printed at the end of the pytest run
and also when this file is executed directly.
"""
import io
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from shapely.geometry import Point, Polygon
from shapely.ops import unary_union

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE, atlas  # noqa: E402

from profile_lab import cli  # noqa: E402
from profile_lab.expander import FallbackProvider, expander, feasible_alon_ks, verify_ndlambda  # noqa: E402
from profile_lab.graphs import (  # noqa: E402
    Hypergraph,
    add_isolated_vertices,
    complete,
    cycle,
    disjoint_union,
    hyperstar,
    necklace,
    q_ify,
)
from profile_lab.homcount import (  # noqa: E402
    brute_force_hom,
    brute_force_hom_hyper,
    cycle_hom,
    hyperstar_hom,
    necklace_hom,
    necklace_homs,
    spectrum_buckets,
)
from profile_lab.profile import (  # noqa: E402
    FiberPoint,
    Infeasible,
    boundary_sweep,
    dirichlet_uniform,
    fiber_scale,
    power_sums,
    ratio_point_necklaces,
    realize_weights,
    sample_profile,
)
from profile_lab.realize import (  # noqa: E402
    TargetSpec,
    convergence_experiment,
    expander_sequence_mixed,
    mixed_exponents,
    smallest_feasible_N,
)


def _strictly_decreasing(xs):
    return all(b < a for a, b in zip(xs, xs[1:]))


def _fmt(xs):
    return ", ".join(f"{x:.3g}" for x in xs)


# --------------------------------------------------------------------------

def criterion_1():
    graphs = atlas(6, connected=True)
    c4, c8 = cycle(4), cycle(8)
    bad = [G for G in graphs
           if cycle_hom(G, 4) != brute_force_hom(c4, G) or cycle_hom(G, 8) != brute_force_hom(c8, G)]
    return not bad, f"{len(graphs)} connected graphs on <= 6 vertices, {len(bad)} mismatches for C_4, C_8"


def criterion_2():
    graphs = atlas(5)
    n43 = necklace(4, 3)
    bad = [G for G in graphs if necklace_hom(G, 4, 3) != brute_force_hom(n43, G)]
    k4 = necklace_hom(complete(4), 4, 3)
    tf = [G for G in graphs if brute_force_hom(complete(3), G) == 0]
    vanish = all(necklace_hom(G, 4, 3) == 0 for G in tf)
    ok = not bad and k4 == 1344 and vanish
    return ok, (f"{len(graphs)} graphs on <= 5 vertices, {len(bad)} mismatches; "
                f"hom(N_4,3; K_4) = {k4}; vanishes on all {len(tf)} triangle-free targets: {vanish}")


def _random_hypergraph(rng, k=3):
    n = int(rng.integers(k, 7))
    from itertools import combinations
    pool = list(combinations(range(n), k))
    m = int(rng.integers(0, min(len(pool), 6) + 1))
    idx = rng.choice(len(pool), size=m, replace=False)
    return Hypergraph(n, k, [pool[i] for i in idx])


def criterion_3():
    rng = np.random.default_rng(20240603)
    bad = 0
    for _ in range(100):
        H = _random_hypergraph(rng)
        b = int(rng.integers(1, 4))
        if hyperstar_hom(H, b) != brute_force_hom_hyper(hyperstar(3, b), H):
            bad += 1
    k3 = Hypergraph(3, 2, [(0, 1), (0, 2), (1, 2)])
    h = hyperstar_hom(k3, 2)
    return bad == 0 and h == 12, f"100 random 3-uniform hypergraphs, {bad} mismatches; hom(S_2; K_3) = {h}"


def criterion_4():
    target = TargetSpec((Fraction(1, 2), Fraction(1, 2)), 3)
    rows = convergence_experiment(target, "cycles", [50, 100, 200, 400])
    errs = [r.err_inf for r in rows]
    ratio = errs[3] / errs[2]
    ok = errs[2] <= 0.02 and _strictly_decreasing(errs) and ratio <= 0.6
    return ok, f"err_inf = [{_fmt(errs)}], err(400)/err(200) = {ratio:.3g}"


def criterion_5():
    target = TargetSpec((Fraction(1, 2), Fraction(1, 2)), 2, 3)
    N0 = smallest_feasible_N(target, "necklaces")
    schedule = [N0 * 2**i for i in range(6)]
    errs = [r.err_inf for r in convergence_experiment(target, "necklaces", schedule)]
    ok = _strictly_decreasing(errs) and errs[-1] <= 0.05
    return ok, f"schedule {schedule}, err_inf = [{_fmt(errs)}]"


def criterion_6():
    parts, ok = [], True
    for k in (2, 3):
        target = TargetSpec((Fraction(1, 3), Fraction(2, 3)), 3, k)
        errs = [r.err_inf for r in convergence_experiment(target, "hyperstars", [75, 150, 300, 600])]
        good = errs[2] <= 0.02 and _strictly_decreasing(errs)
        ok &= good
        parts.append(f"k={k}: err_inf = [{_fmt(errs)}]{'' if good else ' (not decreasing)'}")
    return ok, "; ".join(parts)


def criterion_7():
    # fallback provider: a component built at level q contributes nothing to hom(N_{4j,p}) for p > q
    provider = FallbackProvider()
    ys = ((Fraction(1),), (Fraction(1, 2), Fraction(1, 2)), (Fraction(1),))
    vanish, checked = True, 0
    for N in (1, 2**4, 2**8):
        for q, k in mixed_exponents(ys, N):
            H = q_ify(provider(k), q)
            for p in range(q + 1, len(ys) + 2):
                vanish &= all(v == 0 for v in necklace_homs(H, [4, 8], p).values())
                checked += 1
        G = expander_sequence_mixed(ys, N, provider)
        total = necklace_homs(G, [4], 3)[4]
        upper = sum(necklace_homs(q_ify(provider(k), q), [4], 3)[4] for q, k in mixed_exponents(ys, N) if q >= 3)
        vanish &= total == upper
    ks = feasible_alon_ks()[:2]
    tops, reports = [], []
    for k in ks:
        A = expander(k)
        tops.append(spectrum_buckets(A, 2, k, 1e-9).top)
        reports.append(verify_ndlambda(A))
    ratio = tops[1] / tops[0]
    structural = all(r.triangle_free and r.regular_degree is not None for r in reports)
    ok = vanish and 2 <= ratio <= 8 and structural
    return ok, (f"q<p vanishing with fallback provider ({checked} component checks): {vanish}; "
                f"Alon k={ks} tops {tops}, ratio {ratio:.3f}; triangle-free and regular: {structural}")


def _pi33_region(steps=200):
    """Image under ``(p_2, p_3)`` of a barycentric triangulation of the sorted part
    ``x_1 >= x_2 >= x_3`` of the 2-simplex, where the map has no folds."""
    corners = np.array([[1, 0, 0], [1 / 2, 1 / 2, 0], [1 / 3, 1 / 3, 1 / 3]])

    def img(i, j):
        x = ((steps - i - j) * corners[0] + i * corners[1] + j * corners[2]) / steps
        return (float(np.sum(x**2)), float(np.sum(x**3)))

    tris = []
    for i in range(steps):
        for j in range(steps - i):
            tris.append(Polygon([img(i, j), img(i + 1, j), img(i, j + 1)]))
            if i + j <= steps - 2:
                tris.append(Polygon([img(i + 1, j), img(i, j + 1), img(i + 1, j + 1)]))
    return unary_union([t for t in tris if t.area > 0])


def criterion_8():
    pts = sample_profile(4, 50, 10000, seed=7)
    chain = np.hstack([np.ones((len(pts), 1)), pts, np.zeros((len(pts), 1))])
    monotone = bool(np.all(np.diff(chain, axis=1) <= 1e-15))

    region = _pi33_region()
    bpts = boundary_sweep(3, 3, 300, seed=3)
    worst = max(region.distance(Point(p)) for p in bpts)

    rng = np.random.default_rng(11)
    worst_res = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 6))
        x = dirichlet_uniform(n, rng)
        a = np.array([np.sum(x**j) for j in range(2, 5)])
        got = realize_weights(a, n, tol=1e-8, seed=int(rng.integers(1 << 30)))
        if isinstance(got, Infeasible):
            worst_res = np.inf
            break
        worst_res = max(worst_res, float(np.max(np.abs([np.sum(got**j) for j in range(2, 5)] - a))))
    infeasible = all(isinstance(realize_weights((0.9, 0.5), n), Infeasible) for n in (2, 3, 5, 10))
    ok = monotone and worst <= 1e-3 and worst_res <= 1e-8 and infeasible
    return ok, (f"monotone chain on 10000 samples: {monotone}; boundary distance to grid region {worst:.2e}; "
                f"round-trip residual {worst_res:.2e}; (0.9, 0.5) infeasible: {infeasible}")


def _density_fiber(G, r):
    rows = []
    for q in range(2, r + 1):
        homs = necklace_homs(G, [4 * i for i in range(1, 3)], q)
        rows.append(tuple(Fraction(homs[4 * i], G.n ** (4 * i * (q - 1))) for i in range(1, 3)))
    return FiberPoint(tuple(rows))


def criterion_9():
    graphs = [G for G in atlas(5) if cycle_hom(G, 4) > 0]
    bad = 0
    for G in graphs:
        for q in (2, 3):
            try:
                p = ratio_point_necklaces(G, 3, q)
            except Exception:
                continue
            if ratio_point_necklaces(add_isolated_vertices(G, 3), 3, q) != p:
                bad += 1
            doubled = ratio_point_necklaces(disjoint_union([G, G]), 3, q)
            if any(doubled[j - 2] != p[j - 2] / 2 ** (j - 1) for j in (2, 3)):
                bad += 1
        r = 3 if necklace_hom(G, 4, 3) > 0 else 2
        b = _density_fiber(G, r)
        for t in (Fraction(1), Fraction(1, 2), Fraction(2, 3), Fraction(1, 7)):
            if fiber_scale(b, t).ratios() != b.ratios():
                bad += 1
        # padding by s isolated vertices is the fiber map with t = n / (n + s)
        s = 2
        if fiber_scale(b, Fraction(G.n, G.n + s)) != _density_fiber(add_isolated_vertices(G, s), r):
            bad += 1
    return bad == 0, f"{len(graphs)} graphs on <= 5 vertices with hom(C_4) > 0, {bad} violations"


def _cli(argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        code = cli.run(argv, out, err)
    finally:
        sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def criterion_10():
    cases = [
        ("cycles", "1/2,1/2", [], "3", 40),
        ("necklaces", "1/16,15/16", ["--q", "3"], "2", 12),
        ("hyperstars", "1/3,2/3", ["--k", "3"], "3", 75),
        ("mixed", "1;1/2,1/2", ["--r", "3", "--provider", "fallback"], "2", 256),
    ]
    mismatches = []
    for family, target, extra, ell, N in cases:
        _, graph, _ = _cli(["realize", "--family", family, "--target", target, "--N", str(N), *extra])
        ratio_extra = [a for a in extra if a != "fallback" and a != "--provider"]
        _, ratio, _ = _cli(["ratio", "--family", family, "--l", ell, "--in", "-", "--format", "csv", *ratio_extra],
                           stdin=graph)
        _, conv, _ = _cli(["converge", "--family", family, "--target", target, "--l", ell,
                           "--schedule", str(N), *extra])
        ratio_row = ratio.splitlines()[1]
        conv_row = ",".join(conv.splitlines()[1].split(",")[3:])
        if ratio_row != conv_row:
            mismatches.append(family)
    runs = [_cli(["sample", "--l", "4", "--nmax", "50", "--count", "500", "--seed", "5"])[1] for _ in range(2)]
    same = runs[0] == runs[1] and len(runs[0]) > 0
    return not mismatches and same, f"realize->ratio vs converge mismatches: {mismatches or 'none'}; sample byte-identical: {same}"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 11)}


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num):
    t0 = time.perf_counter()
    ok, detail = CRITERIA[num]()
    detail = f"{detail} ({time.perf_counter() - t0:.1f}s)"
    ACCEPTANCE[num] = (ok, detail)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    for num, fn in CRITERIA.items():
        ok, detail = fn()
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}", flush=True)
