import math

import numpy as np
import pytest

from betadyn import (
    AffineClampedTau,
    ConstTau,
    DomainError,
    GeoRate,
    MtpProblem,
    PolyRate,
    PowRate,
    PreconditionError,
    TableRate,
    alpha_exponent,
    classify_simultaneous,
    dim_inhom_planar,
    dim_shrinking_target,
    dim_simultaneous,
    dim_simultaneous_inhom,
    dim_wang_li,
    mtp_lower_bound,
    mtp_matches_simultaneous,
    mtp_problem_for_simultaneous,
)

rng = np.random.default_rng(424242)

theta_pairs = [tuple(p) for p in rng.uniform(0.05, 2.5, size=(25, 2))]
base_pairs = sorted(
    tuple(sorted(p)) for p in rng.uniform(1.2, 3.5, size=(25, 2))
)


# ---------------------------------------------------------------------------
# decay exponent
# ---------------------------------------------------------------------------


def test_alpha_analytic_families():
    assert alpha_exponent(PowRate(1.0, 2.0), 2.0).value == pytest.approx(1.0)
    assert alpha_exponent(PowRate(1.0, 2.0), 2.0).method == "analytic"
    assert alpha_exponent(PolyRate(2.0), 2.0).value == 0.0
    assert alpha_exponent(GeoRate(1.0, 0.25), 2.0).value == pytest.approx(2.0)
    # pow family against a different query base rescales by the log ratio
    assert alpha_exponent(PowRate(1.0, 4.0), 2.0).value == pytest.approx(2.0)


def test_alpha_numeric_fallback():
    table = TableRate([0.5 ** n for n in range(1, 65)])
    res = alpha_exponent(table, 2.0)
    assert res.method == "numeric-liminf"
    assert res.heuristic
    assert res.value == pytest.approx(1.0, abs=1e-12)


def test_alpha_errors():
    with pytest.raises(DomainError):
        alpha_exponent(PolyRate(1.0), 1.0)
    with pytest.raises(PreconditionError):
        alpha_exponent(TableRate([0.5] * 64), 2.0, horizon=8)
    with pytest.raises(DomainError):
        alpha_exponent(TableRate([0.5] * 10), 2.0, horizon=64)


def test_dim_formulas_closed_form():
    assert dim_shrinking_target(0.0) == 1.0
    assert dim_shrinking_target(1.0) == 0.5
    assert dim_shrinking_target(2.0) == pytest.approx(1.0 / 3.0)
    assert dim_inhom_planar(0.0) == 2.0
    assert dim_inhom_planar(1.0) == 1.5
    assert dim_inhom_planar(2.0) == pytest.approx(4.0 / 3.0)
    with pytest.raises(DomainError):
        dim_shrinking_target(-0.1)
    with pytest.raises(DomainError):
        dim_inhom_planar(-1.0)


def test_dim_ranges():
    for alpha in rng.uniform(0.0, 50.0, 40):
        assert 0.0 < dim_shrinking_target(alpha) <= 1.0
        assert 1.0 < dim_inhom_planar(alpha) <= 2.0


# ---------------------------------------------------------------------------
# three-regime classification
# ---------------------------------------------------------------------------


def test_classify_cases():
    case, lam, tie = classify_simultaneous(2.0, 4.0, 0.5, 0.5)
    assert (case, lam, tie) == ("case1", 0.5, False)
    case, lam, tie = classify_simultaneous(2.0, 2.0, 0.5, 1.0)
    assert (case, lam, tie) == ("case2", 1.0, False)
    case, lam, tie = classify_simultaneous(2.0, 2.1, 1.0, 0.1)
    assert case == "case3"
    assert lam == pytest.approx(math.log(2.0) / math.log(2.1))


def test_classify_boundary_tie_goes_to_middle_case():
    # beta1^(1+theta1) = beta2 exactly: 2^2 = 4
    case, lam, tie = classify_simultaneous(2.0, 4.0, 1.0, 0.5)
    assert case == "case2"
    assert tie


def test_classify_errors():
    with pytest.raises(PreconditionError):
        classify_simultaneous(3.0, 2.0, 0.5, 0.5)
    with pytest.raises(DomainError):
        classify_simultaneous(1.0, 2.0, 0.5, 0.5)
    with pytest.raises(DomainError):
        classify_simultaneous(2.0, 3.0, 0.0, 0.5)


def test_dim_simultaneous_case1():
    rep = dim_simultaneous(2.0, 4.0, 0.5, 0.5)
    assert rep.case == "case1"
    assert rep.value == pytest.approx(1.5, abs=1e-12)
    assert rep.branch_values["branch1"] == pytest.approx(2.5 / 1.5, abs=1e-12)
    assert rep.branch_values["branch2"] == pytest.approx(2.25 / 1.5, abs=1e-12)
    assert rep.inputs["lambda"] == 0.5


def test_dim_simultaneous_case2_single_base():
    rep = dim_simultaneous(2.0, 2.0, 0.5, 1.0)
    assert rep.case == "case2"
    assert rep.value == pytest.approx(1.25, abs=1e-12)
    assert rep.value == pytest.approx(dim_wang_li(2.0, 0.5, 1.0), abs=1e-15)


def test_dim_simultaneous_case3():
    rep = dim_simultaneous(2.0, 2.1, 1.0, 0.1)
    assert rep.case == "case3"
    assert rep.value == pytest.approx(1.44648053360543, abs=1e-10)
    lam = math.log(2.0) / math.log(2.1)
    assert rep.branch_values["branch1"] == pytest.approx((1 + lam) / 1.1, abs=1e-12)
    assert rep.branch_values["branch2"] == pytest.approx(
        (3 * lam - 0.1) / (2 * lam), abs=1e-12
    )


def test_dim_simultaneous_notes():
    rep = dim_simultaneous(2.0, 4.0, 1.0, 0.5)
    assert any("tie" in n for n in rep.notes)
    assert any("theta1 > theta2" in n for n in rep.notes)
    assert dim_simultaneous(2.0, 3.0, 0.5, 0.5).notes == ()


def test_dim_simultaneous_range():
    for (b1, b2), (t1, t2) in zip(base_pairs, theta_pairs):
        rep = dim_simultaneous(b1, b2, t1, t2)
        assert 0.0 < rep.value <= 2.0
        assert rep.value == min(rep.branch_values.values())


def test_dim_continuity_at_first_boundary():
    # lambda = 1/(1+theta1): the case-1 and case-2 expressions coincide
    for t1 in rng.uniform(0.1, 2.0, 30):
        b1 = 1.7
        b2 = b1 ** (1.0 + t1)
        t2 = float(rng.uniform(0.1, 2.0))
        below = dim_simultaneous(b1, b2 * (1 + 1e-9), t1, t2).value
        at = dim_simultaneous(b1, b2, t1, t2).value
        above = dim_simultaneous(b1, b2 * (1 - 1e-9), t1, t2).value
        assert abs(below - at) < 1e-6
        assert abs(above - at) < 1e-6


def test_dim_continuity_at_second_boundary():
    # (1+theta1) lambda = 1+theta2: case-2 and case-3 values coincide
    for t2 in rng.uniform(0.05, 0.8, 30):
        t1 = float(t2 + rng.uniform(0.05, 1.0))
        b2 = 2.2
        b1 = b2 ** ((1.0 + t2) / (1.0 + t1))
        at = dim_simultaneous(b1, b2, t1, t2).value
        lam = math.log(b1) / math.log(b2)
        assert at == pytest.approx((1.0 + lam) / (1.0 + t2), abs=1e-9)


# ---------------------------------------------------------------------------
# inhomogeneous variant and the single-base formula
# ---------------------------------------------------------------------------


def test_inhom_applicable():
    rep = dim_simultaneous_inhom(2.0, 3.0, ConstTau(0.2), ConstTau(0.2))
    assert rep.applicable is True
    assert rep.value == dim_simultaneous(2.0, 3.0, 0.2, 0.2).value
    assert rep.inputs["kappa1"] == 0.2


def test_inhom_not_applicable():
    rep = dim_simultaneous_inhom(2.0, 3.0, ConstTau(0.2), ConstTau(2.0))
    assert rep.applicable is False
    assert any("reference only" in n for n in rep.notes)
    # the number itself is still the closed-form evaluation
    assert rep.value == dim_simultaneous(2.0, 3.0, 0.2, 2.0).value


def test_inhom_uses_profile_extremes():
    tau1 = AffineClampedTau(a=1.0, b=0.5, floor=0.1)  # theta 0.5, kappa 1.5
    rep = dim_simultaneous_inhom(2.0, 3.5, tau1, ConstTau(0.3))
    assert rep.value == dim_simultaneous(2.0, 3.5, 0.5, 0.3).value
    assert rep.inputs["kappa1"] == 1.5
    assert rep.applicable == (3.5 > 2.0 ** 1.5 and 2.0 > 3.5 ** 0.3)


def test_wang_li_example():
    assert dim_wang_li(2.0, 0.5, 1.0) == pytest.approx(1.25, abs=1e-15)
    assert dim_wang_li(2.0, 1.0, 1.0) == 1.0
    with pytest.raises(DomainError):
        dim_wang_li(1.0, 0.5, 0.5)


def test_single_base_reduction_is_exact():
    for t1, t2 in theta_pairs:
        lo, hi = min(t1, t2), max(t1, t2)
        rep = dim_simultaneous(2.4, 2.4, lo, hi)
        assert rep.value == dim_wang_li(2.4, lo, hi)


# ---------------------------------------------------------------------------
# transference-principle calculator
# ---------------------------------------------------------------------------


def test_mtp_validation():
    with pytest.raises(DomainError):
        MtpProblem((), ())
    with pytest.raises(DomainError):
        MtpProblem((1.0, 2.0), (0.5,))
    with pytest.raises(DomainError):
        MtpProblem((0.0,), (1.0,))
    with pytest.raises(DomainError):
        MtpProblem((1.0,), (-0.5,))
    assert MtpProblem((1.0, 2.0), (0.0, 0.0)).d == 2


def test_mtp_one_dimensional_example():
    res = mtp_lower_bound(MtpProblem((1.0,), (2.0,)))
    assert res.s == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert res.argmin == (3.0,)
    assert [r["A"] for r in res.table] == [1.0, 3.0]
    assert res.table[0]["K1"] == [1]
    assert res.table[1]["K2"] == [1]


def test_mtp_degenerate_full_measure():
    res = mtp_lower_bound(MtpProblem((1.0, 1.0), (0.0, 0.0)))
    assert res.s == 2.0
    assert res.table[0]["K1"] == [1, 2]


def test_mtp_two_dimensional_example():
    res = mtp_lower_bound(MtpProblem((1.0, 1.0), (0.5, 1.0)))
    assert res.s == pytest.approx(1.25, abs=1e-15)
    assert [r["A"] for r in res.table] == [1.0, 1.5, 2.0]
    assert [r["s_A"] for r in res.table] == pytest.approx([2.0, 4.0 / 3.0, 1.25])


def test_mtp_closed_form_d1():
    for alpha in rng.uniform(0.0, 30.0, 100):
        res = mtp_lower_bound(MtpProblem((1.0,), (float(alpha),)))
        assert res.s == pytest.approx(1.0 / (1.0 + alpha), abs=1e-12)


def test_mtp_range_and_monotonicity():
    for _ in range(60):
        d = int(rng.integers(1, 5))
        a = tuple(rng.uniform(0.2, 3.0, d))
        t = tuple(rng.uniform(0.0, 3.0, d))
        res = mtp_lower_bound(MtpProblem(a, t))
        assert 0.0 < res.s <= d
        bigger = tuple(tk + float(rng.uniform(0.0, 1.0)) for tk in t)
        assert mtp_lower_bound(MtpProblem(a, bigger)).s <= res.s + 1e-12


def test_mtp_scale_invariance():
    for _ in range(40):
        d = int(rng.integers(1, 4))
        a = tuple(rng.uniform(0.2, 3.0, d))
        t = tuple(rng.uniform(0.0, 3.0, d))
        c = float(rng.uniform(0.1, 10.0))
        s0 = mtp_lower_bound(MtpProblem(a, t)).s
        s1 = mtp_lower_bound(MtpProblem(tuple(c * x for x in a),
                                        tuple(c * x for x in t))).s
        assert s1 == pytest.approx(s0, abs=1e-9)


def test_mtp_sandwich_matches_formula():
    for (b1, b2), (t1, t2) in zip(base_pairs, theta_pairs):
        ok, mtp_val, formula_val = mtp_matches_simultaneous(b1, b2, t1, t2)
        assert ok, (b1, b2, t1, t2, mtp_val, formula_val)


def test_mtp_sandwich_eps_converges_one_sided():
    b1, b2, t1, t2 = 2.0, 3.0, 0.4, 0.7
    target = dim_simultaneous(b1, b2, t1, t2).value
    errs = []
    for eps in (1e-2, 1e-4, 1e-6):
        prob = mtp_problem_for_simultaneous(b1, b2, t1, t2, eps=eps)
        errs.append(abs(mtp_lower_bound(prob).s - target))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-4


def test_mtp_problem_eps_validation():
    with pytest.raises(DomainError):
        mtp_problem_for_simultaneous(2.0, 3.0, 0.5, 0.5, eps=0.5)
    with pytest.raises(DomainError):
        mtp_problem_for_simultaneous(2.0, 3.0, 0.5, 0.5, eps=-0.1)
