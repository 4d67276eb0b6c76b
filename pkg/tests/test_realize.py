import math
from fractions import Fraction as F

import pytest

from profile_lab.errors import FeasibilityExceeded, InvalidSize, NotNormalized, ScaleTooSmall
from profile_lab.expander import ConstantProvider, FallbackProvider, get_provider, petersen
from profile_lab.graphs import complete, disjoint_union, hyperstar, q_ify
from profile_lab.homcount import necklace_homs
from profile_lab.profile import ratio_point_cycles, ratio_point_hyperstars, ratio_point_mixed, ratio_point_necklaces
from profile_lab.realize import (
    TargetSpec,
    build,
    clique_sequence_cycles,
    clique_sequence_necklaces,
    clique_sizes_necklaces,
    clique_union_point,
    convergence_experiment,
    err_inf,
    evaluate,
    expander_sequence_mixed,
    hyperstar_branches,
    hyperstar_sequence,
    mixed_exponents,
    round_half_up,
    smallest_feasible_N,
)

HALF = (F(1, 2), F(1, 2))


def test_round_half_up():
    assert [round_half_up(x) for x in (0.5, 1.5, 2.5, 2.49, -0.5)] == [1, 2, 3, 2, 0]


def test_target_spec():
    t = TargetSpec(HALF, 3)
    assert t.point().values == (F(1, 2), F(1, 4))
    m = TargetSpec(((F(1),), HALF), 2)
    assert m.param == 3 and m.point().blocks() == [(1,), (F(1, 2),)]
    with pytest.raises(NotNormalized):
        TargetSpec((F(1, 2), F(1, 3)), 2)
    with pytest.raises(InvalidSize):
        TargetSpec(HALF, 1)
    with pytest.raises(InvalidSize):
        TargetSpec(((F(1),), HALF), 2, 4)


# --- constructions --------------------------------------------------------

def test_clique_sequence_cycles():
    G = clique_sequence_cycles(HALF, 100)
    assert G == disjoint_union([complete(85), complete(85)])  # 0.5^(1/4) * 100 = 84.09
    assert clique_sequence_cycles((F(1),), 7) == complete(8)
    with pytest.raises(ScaleTooSmall):
        clique_sequence_cycles(HALF, 1)
    # zero weights are skipped
    assert clique_sequence_cycles((F(0), F(1)), 5) == complete(6)


def test_clique_sequence_necklaces():
    assert clique_sequence_necklaces((F(1),), 3, 50) == complete(51)
    # (1/16)^(1/8) * 64 = 45.25 and (15/16)^(1/8) * 64 = 63.49
    assert clique_sizes_necklaces((F(1, 16), F(15, 16)), 3, 64) == [46, 64]
    assert 0.0625 ** (1 / 8) * 64 == pytest.approx(45.2548, abs=1e-4)
    with pytest.raises(ScaleTooSmall):
        clique_sequence_necklaces((F(1, 10**6), 1 - F(1, 10**6)), 4, 3)


def test_mixed_exponents():
    ys = ((F(1),), (F(1),))
    assert mixed_exponents(ys, 2**16) == [(2, 2), (3, 0)]
    assert mixed_exponents(ys, 2**24) == [(2, 3), (3, 0)]
    with pytest.raises(ScaleTooSmall):
        expander_sequence_mixed(ys, 2**16, get_provider("alon"))


def test_expander_sequence_mixed_petersen():
    ys = ((F(1),), HALF)
    G = expander_sequence_mixed(ys, 2**8, get_provider("petersen"))
    expected = disjoint_union([q_ify(petersen(), 2), q_ify(petersen(), 3), q_ify(petersen(), 3)])
    assert G == expected


def test_mixed_vanishing():
    ys = ((F(1, 3), F(2, 3)), (F(1),))
    provider = FallbackProvider()
    G = expander_sequence_mixed(ys, 2**8, provider)
    # hom(N_{4j,3}) comes only from the q = 3 components
    upper = [q_ify(provider(k), q) for q, k in mixed_exponents(ys, 2**8) if q == 3]
    for j in (4, 8):
        assert necklace_homs(G, [j], 3)[j] == sum(necklace_homs(H, [j], 3)[j] for H in upper)
    with pytest.raises(FeasibilityExceeded):
        expander_sequence_mixed(ys, 2**24, provider)


def test_hyperstar_sequence():
    assert hyperstar_branches(HALF, 2, 100) == [71, 71]
    assert hyperstar_sequence((F(1),), 3, 12) == hyperstar(3, 6)
    with pytest.raises(ScaleTooSmall):
        hyperstar_sequence((F(1, 10**6), 1 - F(1, 10**6)), 2, 10)
    with pytest.raises(InvalidSize):
        hyperstar_sequence((F(1),), 1, 10)


# --- evaluation -----------------------------------------------------------

@pytest.mark.parametrize("sizes, q", [([5, 7], 2), ([4], 3), ([6, 6, 9], 3), ([5, 8], 4)])
def test_clique_union_point_matches_graph(sizes, q):
    G = disjoint_union([complete(m) for m in sizes])
    assert clique_union_point(sizes, 3, q) == ratio_point_necklaces(G, 3, q)


def test_evaluate_matches_graph_path():
    t = TargetSpec(HALF, 3)
    point, size = evaluate(t, "cycles", 20)
    assert point == ratio_point_cycles(build(t, "cycles", 20), 3) and size == 36
    t = TargetSpec((F(1, 3), F(2, 3)), 3, 3)
    point, _ = evaluate(t, "hyperstars", 40)
    assert point == ratio_point_hyperstars(build(t, "hyperstars", 40), 3)
    t = TargetSpec(((F(1),), HALF), 2)
    point, _ = evaluate(t, "mixed", 2**8, FallbackProvider())
    assert point == ratio_point_mixed(build(t, "mixed", 2**8, FallbackProvider()), 2, 3)


def test_cycles_single_clique_error():
    # K_11: hom(C_8)/hom(C_4)^2 = (10^8 + 10)/(10^4 + 10)^2
    rows = convergence_experiment(TargetSpec((F(1),), 2), "cycles", [10])
    assert rows[0].point.values == (F(10**8 + 10, (10**4 + 10) ** 2),)
    assert rows[0].err_inf == pytest.approx(float(1 - F(10**8 + 10, (10**4 + 10) ** 2)))
    assert rows[0].err_inf < 0.01


def test_hyperstar_single_star_error():
    # one star S_b: degrees ((k-1)! b, 1, ..., 1); the error is the leaf correction
    k, N = 3, 40
    b = hyperstar_branches((F(1),), k, N)[0]
    f = math.factorial(k - 1)
    hom = lambda s: (f * b) ** s + b * (k - 1) * f**s
    expected = F(hom(2 * k), hom(k) ** 2)
    row = convergence_experiment(TargetSpec((F(1),), 2, k), "hyperstars", [N])[0]
    assert row.point.values == (expected,)
    assert row.err_inf == pytest.approx(float(1 - expected))


def test_convergence_rows_are_exact():
    rows = convergence_experiment(TargetSpec(HALF, 3), "cycles", [10, 20, 40])
    assert [r.N for r in rows] == [10, 20, 40]
    assert all(r.point.exact for r in rows)


def _doubling_errs(target, fam):
    N0 = smallest_feasible_N(target, fam)
    sched = [max(N0, 100) * 2**i for i in range(4)]
    return [r.err_inf for r in convergence_experiment(target, fam, sched)]


@pytest.mark.parametrize("target, fam", [
    (TargetSpec(HALF, 4), "cycles"),
    (TargetSpec((F(1, 3),) * 3, 4), "cycles"),
    (TargetSpec(HALF, 3, 3), "necklaces"),
    (TargetSpec(HALF, 3, 4), "necklaces"),
])
def test_convergence_monotone_equal_weights(target, fam):
    errs = _doubling_errs(target, fam)
    assert all(b <= a for a, b in zip(errs, errs[1:]))
    if fam == "cycles":
        assert all(b / a <= 0.6 for a, b in zip(errs, errs[1:]))


@pytest.mark.parametrize("target, fam", [
    (TargetSpec((F(1, 5), F(3, 10), F(1, 2)), 4), "cycles"),
    (TargetSpec((F(1, 4), F(3, 4)), 3, 4), "necklaces"),
])
def test_convergence_unequal_weights_not_monotone(target, fam):
    # unequal weights: rounded clique sizes carry an O(1/N) weight error whose sign
    # flips with N, so the error shrinks overall but not step by step
    errs = _doubling_errs(target, fam)
    assert errs[-1] < errs[0] < 0.05
    assert any(b > a for a, b in zip(errs, errs[1:]))


def test_hyperstar_convergence_k2():
    target = TargetSpec((F(1, 3), F(2, 3)), 3, 2)
    errs = [r.err_inf for r in convergence_experiment(target, "hyperstars", [75, 150, 300, 600])]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_hyperstar_convergence_k3_rounding_blip():
    # with round-half-up branch counts the k = 3 error is not monotone between N = 75 and 150:
    # b = round(y^(1/3) N / 2) lands closer to the target ratio at 75 than at 150
    target = TargetSpec((F(1, 3), F(2, 3)), 3, 3)
    errs = [r.err_inf for r in convergence_experiment(target, "hyperstars", [75, 150, 300, 600])]
    assert hyperstar_branches(target.y, 3, 75) == [26, 33]
    assert hyperstar_branches(target.y, 3, 150) == [52, 66]
    assert errs[1] > errs[0]
    assert errs[3] < errs[2] < errs[1]


def test_convergence_errors():
    t = TargetSpec(HALF, 3)
    with pytest.raises(InvalidSize):
        convergence_experiment(t, "cycles", [20, 10])
    with pytest.raises(InvalidSize):
        convergence_experiment(t, "nope", [10])
    with pytest.raises(ScaleTooSmall) as err:
        convergence_experiment(t, "cycles", [1, 10])
    assert err.value.info["N"] == 1 and "N=1" in err.value.detail


def test_smallest_feasible_N():
    assert smallest_feasible_N(TargetSpec(HALF, 2, 3), "necklaces") == 3
    assert smallest_feasible_N(TargetSpec(HALF, 2), "cycles") == 2


def test_err_inf():
    a = TargetSpec(HALF, 3).point()
    assert err_inf(a, a) == 0
