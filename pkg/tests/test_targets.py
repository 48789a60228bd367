import math
from fractions import Fraction

import numpy as np
import pytest

from betadyn import (
    Affine1D,
    Affine2D,
    AffineClampedTau,
    BetaBasis,
    Const1D,
    Const2D,
    ConstTau,
    DomainError,
    GeoRate,
    HarmonicLogRate,
    Identity1D,
    Lift2D,
    PolyRate,
    PowRate,
    PreconditionError,
    TableRate,
    approximate_hit_interval,
    cylinder_interval,
    full_words,
    hits_1d,
    hits_inhom_planar,
    hits_simultaneous,
    hits_simultaneous_inhom,
    solve_target_point,
    t_iterate,
    tau_extremes,
)

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

rng = np.random.default_rng(77031)


# ---------------------------------------------------------------------------
# rate families
# ---------------------------------------------------------------------------


def test_pow_rate():
    r = PowRate(tau=1.0, base=2.0)
    assert r.value(3) == pytest.approx(0.125, abs=1e-15)
    assert r.log_value(100) == pytest.approx(-100 * math.log(2), abs=1e-10)
    assert r.convergent
    assert r.alpha_analytic(2.0) == pytest.approx(1.0, abs=1e-15)
    assert r.alpha_analytic(4.0) == pytest.approx(0.5, abs=1e-15)
    assert not PowRate(tau=0.0, base=2.0).convergent
    with pytest.raises(DomainError):
        PowRate(tau=1.0, base=1.0)
    with pytest.raises(DomainError):
        PowRate(tau=-0.5, base=2.0)


def test_geo_rate():
    r = GeoRate(c=2.0, rho=0.5)
    assert r.value(4) == pytest.approx(0.125, abs=1e-15)
    assert r.convergent
    assert r.alpha_analytic(2.0) == pytest.approx(1.0, abs=1e-15)
    for bad in (0.0, 1.0, 1.5):
        with pytest.raises(DomainError):
            GeoRate(c=1.0, rho=bad)
    with pytest.raises(DomainError):
        GeoRate(c=0.0, rho=0.5)


def test_poly_rate():
    assert PolyRate(gamma=2.0).value(4) == pytest.approx(0.0625, abs=1e-15)
    assert PolyRate(gamma=1.5).convergent
    assert not PolyRate(gamma=1.0).convergent
    assert PolyRate(gamma=3.0).alpha_analytic(2.0) == 0.0
    with pytest.raises(DomainError):
        PolyRate(gamma=0.0)


def test_harmonic_log_rate():
    r = HarmonicLogRate()
    assert r.value(1) == pytest.approx(1.0 / math.log(2) ** 2, abs=1e-15)
    assert r.convergent
    assert r.alpha_analytic(3.0) == 0.0


def test_table_rate():
    r = TableRate([0.5, 0.25, 0.125])
    assert len(r) == 3
    assert r.value(2) == 0.25
    assert r.convergent is None
    assert r.alpha_analytic(2.0) is None
    with pytest.raises(DomainError):
        r.value(4)
    with pytest.raises(DomainError):
        r.value(0)
    with pytest.raises(DomainError):
        TableRate([0.5, -0.1])
    with pytest.raises(DomainError):
        TableRate([])


@pytest.mark.parametrize(
    "rate",
    [
        PowRate(tau=0.7, base=2.5),
        GeoRate(c=0.3, rho=0.8),
        PolyRate(gamma=1.2),
        HarmonicLogRate(),
    ],
)
def test_rates_positive_and_log_consistent(rate):
    for n in range(1, 40):
        v = rate.value(n)
        assert v > 0
        assert rate.log_value(n) == pytest.approx(math.log(v), abs=1e-9)


# ---------------------------------------------------------------------------
# lipschitz targets
# ---------------------------------------------------------------------------


def test_target_ranges_and_bounds():
    assert Const1D(0.3)(0.9) == 0.3
    assert Const1D(0.3).lipschitz_bound == 0.0
    with pytest.raises(DomainError):
        Const1D(1.5)
    assert Identity1D()(0.42) == 0.42
    f = Affine1D(2.0, -0.5)
    assert f.lipschitz_bound == 2.0
    assert f(0.9) == 1.0  # clamped
    assert f(0.1) == 0.0  # clamped
    assert f(0.5) == pytest.approx(0.5, abs=1e-15)
    g = Affine2D(0.5, 0.5, 0.0)
    assert g.lipschitz_bound == pytest.approx(math.hypot(0.5, 0.5), abs=1e-15)
    assert g(0.4, 0.6) == pytest.approx(0.5, abs=1e-15)


def test_declared_lipschitz_bound_is_valid():
    """Sampled difference quotients never exceed the declared bound."""
    xs = rng.random(80)
    ys = rng.random(80)
    for f in (Const1D(0.6), Identity1D(), Affine1D(1.7, -0.2), Affine1D(-0.9, 0.8)):
        vals = np.array([float(f(x)) for x in xs])
        for i in range(len(xs) - 1):
            dx = abs(xs[i] - xs[i + 1])
            if dx > 1e-9:
                assert abs(vals[i] - vals[i + 1]) <= f.lipschitz_bound * dx + 1e-12
    g = Affine2D(0.8, -0.4, 0.5)
    for i in range(len(xs) - 1):
        d = math.hypot(xs[i] - xs[i + 1], ys[i] - ys[i + 1])
        dv = abs(float(g(xs[i], ys[i])) - float(g(xs[i + 1], ys[i + 1])))
        if d > 1e-9:
            assert dv <= g.lipschitz_bound * d + 1e-12


def test_targets_broadcast_over_arrays():
    xs = rng.random(16)
    assert np.array_equal(Const1D(0.25)(xs), np.full(16, 0.25))
    assert np.array_equal(Identity1D()(xs), xs)
    a = Affine1D(0.5, 0.1)
    assert np.allclose(a(xs), np.clip(0.5 * xs + 0.1, 0.0, 1.0))
    c2 = Const2D(0.7)
    assert np.array_equal(c2(xs, xs), np.full(16, 0.7))


def test_lift2d_delegates_exactly():
    f = Affine1D(0.5, 0.25)
    gx = Lift2D(f, "x")
    gy = Lift2D(f, "y")
    assert gx(0.3, 0.9) == f(0.3)
    assert gy(0.3, 0.9) == f(0.9)
    assert gx.lipschitz_bound == f.lipschitz_bound
    with pytest.raises(DomainError):
        Lift2D(f, "z")


def test_tau_functions():
    t = ConstTau(1.5)
    assert t.value(0.0) == t.value(0.99) == 1.5
    assert tau_extremes(t) == (1.5, 1.5)
    with pytest.raises(DomainError):
        ConstTau(0.0)

    a = AffineClampedTau(a=-2.0, b=1.0, floor=0.3)
    # decreasing line clamped at 0.3: tau(0) = 1, tau(1) = 0.3
    assert a.value(0.0) == 1.0
    assert a.value(0.9) == 0.3
    theta, kappa = tau_extremes(a)
    assert (theta, kappa) == (0.3, 1.0)
    with pytest.raises(DomainError):
        AffineClampedTau(a=1.0, b=0.0, floor=0.0)


def test_tau_extremes_bracket_values():
    for _ in range(20):
        a, b = rng.uniform(-2, 2), rng.uniform(0.1, 2)
        tau = AffineClampedTau(a=a, b=b, floor=0.05)
        theta, kappa = tau_extremes(tau)
        for x in rng.random(30):
            assert theta - 1e-12 <= tau.value(float(x)) <= kappa + 1e-12


# ---------------------------------------------------------------------------
# hit scans, one line
# ---------------------------------------------------------------------------


def test_hits_identity_period_two_orbit():
    # T(1/3) = 2/3, T(2/3) = 1/3 for the doubling map: exact return at even
    # n; the rational backend keeps the orbit on the period-2 cycle exactly
    basis = BetaBasis(Fraction(2))
    recs = hits_1d(basis, Fraction(1, 3), Identity1D(), TableRate([0.01] * 10), 10)
    assert [r.n for r in recs] == [2, 4, 6, 8, 10]
    assert all(r.distances == (0.0,) for r in recs)
    assert all(r.thresholds == (0.01,) for r in recs)


def test_hits_identity_float_orbit_drifts_but_still_hits():
    # float 1/3 leaves the cycle by ulps; the hits survive any sane threshold
    recs = hits_1d(BetaBasis(2.0), 1.0 / 3.0, Identity1D(), TableRate([0.01] * 10), 10)
    assert [r.n for r in recs] == [2, 4, 6, 8, 10]
    assert all(r.distances[0] < 1e-13 for r in recs)


def test_hits_const_zero_never_close():
    recs = hits_1d(BetaBasis(2.0), 1.0 / 3.0, Const1D(0.0), PowRate(1.0, 2.0), 10)
    assert recs == []


def test_hits_eventually_fixed_orbit():
    # 0.5 -> 0 -> 0 -> ...; poly threshold n^-1 is 1 at n=1, so n=1 hits too
    recs = hits_1d(BetaBasis(2.0), 0.5, Const1D(0.0), PolyRate(1.0), 5)
    assert [r.n for r in recs] == [1, 2, 3, 4, 5]
    assert recs[0].distances == (0.0,)


def test_hits_strict_comparison():
    basis = BetaBasis(2.0)
    # orbit of 0.5 is 0 from n=1 on; distance to const(0.25) is exactly 0.25
    equal = hits_1d(basis, 0.5, Const1D(0.25), TableRate([0.25] * 4), 4)
    assert [r.n for r in equal] == []
    above = hits_1d(basis, 0.5, Const1D(0.25), TableRate([0.2500001] * 4), 4)
    assert [r.n for r in above] == [1, 2, 3, 4]


def test_hits_domain_errors():
    basis = BetaBasis(2.0)
    with pytest.raises(DomainError):
        hits_1d(basis, 1.0, Identity1D(), PolyRate(1.0), 3)
    with pytest.raises(DomainError):
        hits_1d(basis, 0.3, Identity1D(), PolyRate(1.0), 0)


# ---------------------------------------------------------------------------
# hit scans, planar target
# ---------------------------------------------------------------------------


def test_planar_reduces_to_line():
    basis = BetaBasis(2.0)
    rate = TableRate([0.01] * 10)
    line = hits_1d(basis, 1.0 / 3.0, Identity1D(), rate, 10)
    planar = hits_inhom_planar(basis, 1.0 / 3.0, 0.77, Affine2D(1.0, 0.0, 0.0), rate, 10)
    assert planar == line


def test_planar_target_through_y():
    # target value is y = 2/3; the orbit of 1/3 sits at 2/3 exactly at odd n
    recs = hits_inhom_planar(
        BetaBasis(Fraction(2)), Fraction(1, 3), Fraction(2, 3),
        Affine2D(0.0, 1.0, 0.0), TableRate([0.01] * 10), 10,
    )
    assert [r.n for r in recs] == [1, 3, 5, 7, 9]
    assert all(r.distances == (0.0,) for r in recs)


def test_planar_huge_threshold_hits_everywhere():
    recs = hits_inhom_planar(
        BetaBasis(GOLDEN), 0.37, 0.6, Const2D(0.5), TableRate([1.5] * 7), 7,
    )
    assert [r.n for r in recs] == [1, 2, 3, 4, 5, 6, 7]


def test_planar_y_domain_error():
    with pytest.raises(DomainError):
        hits_inhom_planar(
            BetaBasis(2.0), 0.3, 1.5, Const2D(0.5), TableRate([0.5] * 3), 3,
        )


# ---------------------------------------------------------------------------
# hit scans, two lines
# ---------------------------------------------------------------------------


def test_simultaneous_double_return():
    basis = BetaBasis(Fraction(2))
    recs = hits_simultaneous(
        basis, basis, Fraction(1, 3), Fraction(1, 3),
        Identity1D(), Identity1D(), ConstTau(2.0), ConstTau(2.0), 10,
    )
    assert [r.n for r in recs] == [2, 4, 6, 8, 10]
    assert all(r.distances == (0.0, 0.0) for r in recs)
    assert recs[0].thresholds == (0.0625, 0.0625)


def test_simultaneous_fixed_point_line():
    # y = 0 is fixed, so the second line always has distance 0
    recs = hits_simultaneous(
        BetaBasis(2.0), BetaBasis(3.0), 1.0 / 3.0, 0.0,
        Identity1D(), Const1D(0.0), ConstTau(2.0), ConstTau(2.0), 12,
    )
    assert [r.n for r in recs] == [2, 4, 6, 8, 10, 12]
    assert all(r.distances[1] == 0.0 for r in recs)


def test_simultaneous_empty():
    # second orbit 1/2 -> 0 -> 0 ... sits at distance 1/2 from its start;
    # the n=1 x-line distance 1/3 already misses the 2^-1 threshold
    recs = hits_simultaneous(
        BetaBasis(2.0), BetaBasis(2.0), 1.0 / 3.0, 0.5,
        Identity1D(), Identity1D(), ConstTau(1.0), ConstTau(1.0), 6,
    )
    assert recs == []


def test_simultaneous_inhom_separable_reduction():
    """Lifted one-variable targets must reproduce the two-line scan exactly."""
    b1, b2 = BetaBasis(GOLDEN), BetaBasis(2.0)
    f1, f2 = Identity1D(), Const1D(0.3)
    t1, t2 = ConstTau(0.8), AffineClampedTau(1.0, 0.2, 0.1)
    args = (0.33, 0.21, 8)
    direct = hits_simultaneous(b1, b2, args[0], args[1], f1, f2, t1, t2, args[2])
    lifted = hits_simultaneous_inhom(
        b1, b2, args[0], args[1], Lift2D(f1, "x"), Lift2D(f2, "y"), t1, t2, args[2]
    )
    assert lifted == direct


def test_simultaneous_inhom_midpoint_target():
    # g(x,y) = (x+y)/2 equals 1/3 at the starting pair, so both lines need
    # the even-n exact return
    g = Affine2D(0.5, 0.5, 0.0)
    recs = hits_simultaneous_inhom(
        BetaBasis(2.0), BetaBasis(2.0), 1.0 / 3.0, 1.0 / 3.0,
        g, g, ConstTau(2.0), ConstTau(2.0), 4,
    )
    assert [r.n for r in recs] == [2, 4]


def test_simultaneous_threshold_underflow_empty():
    recs = hits_simultaneous(
        BetaBasis(2.0), BetaBasis(2.0), 1.0 / 3.0, 0.41,
        Const1D(0.1), Const1D(0.9), ConstTau(500.0), ConstTau(500.0), 10,
    )
    assert recs == []


def test_simultaneous_base_order_warns_not_fails():
    with pytest.warns(UserWarning):
        hits_simultaneous(
            BetaBasis(3.0), BetaBasis(2.0), 0.3, 0.4,
            Identity1D(), Identity1D(), ConstTau(1.0), ConstTau(1.0), 4,
        )


# ---------------------------------------------------------------------------
# target-point solver
# ---------------------------------------------------------------------------


def test_solver_identity_on_binary_cylinder():
    # 4x - 1 = x on [1/4, 1/2) gives x = 1/3
    x = solve_target_point(BetaBasis(2.0), (0, 1), Identity1D(), 1e-12)
    assert x == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_solver_constant_target():
    x = solve_target_point(BetaBasis(2.0), (0,), Const1D(0.8), 1e-12)
    assert x == pytest.approx(0.4, abs=1e-12)


def test_solver_endpoint_case():
    # root of beta^2 x - beta = x is x = 1, the excluded right closure; the
    # solver must back off inside the cylinder yet keep the residual small
    basis = BetaBasis(GOLDEN)
    x = solve_target_point(basis, (1, 0), Identity1D(), 1e-6)
    cyl = cylinder_interval(basis, (1, 0))
    assert float(cyl.left) <= x < float(cyl.right)
    assert 1.0 - x < 1e-6
    resid = abs(t_iterate(basis, x, 2)[-1] - x)
    assert resid < 1e-6


def test_solver_left_endpoint_case():
    """Clamped target that is zero on the whole cylinder.

    The residual root is then the cylinder's left endpoint, which sits on a
    digit boundary: the float orbit of the endpoint itself can wrap to
    1 - ulp instead of 0.  The solver must step into the interior, exactly
    mirroring the right-closure backoff, and the returned point's orbit has
    to land near 0 rather than near 1.
    """
    basis = BetaBasis(2.5)
    f = Affine1D(-1.6, 0.52)  # negative on [0.56, 0.72), clamps to 0
    x = solve_target_point(basis, (1, 1), f, 5e-11)
    cyl = cylinder_interval(basis, (1, 1))
    assert float(cyl.left) < x < float(cyl.right)
    orbit_end = t_iterate(basis, x, 2)[-1]
    assert orbit_end < 1e-10
    assert abs(orbit_end - float(f(x))) < 1e-10


def test_solver_preconditions():
    with pytest.raises(PreconditionError):
        solve_target_point(BetaBasis(GOLDEN), (0, 1), Identity1D(), 1e-9)
    with pytest.raises(PreconditionError):
        solve_target_point(BetaBasis(GOLDEN), (1, 0), Affine1D(3.0, 0.0), 1e-9)
    with pytest.raises(DomainError):
        solve_target_point(BetaBasis(2.0), (0, 1), Identity1D(), 0.0)


def test_solver_random_cylinders_small_residual():
    targets = [Identity1D(), Const1D(0.35), Affine1D(0.6, 0.2), Affine1D(-0.8, 0.9)]
    for beta in (2.0, GOLDEN, 2.5):
        basis = BetaBasis(beta)
        for n in (3, 5, 8):
            words = full_words(basis, n)
            pick = [words[int(i)] for i in rng.integers(0, len(words), 4)]
            for w in pick:
                f = targets[int(rng.integers(0, len(targets)))]
                x = solve_target_point(basis, w, f, 1e-11)
                cyl = cylinder_interval(basis, w)
                assert float(cyl.left) <= x < float(cyl.right)
                resid = abs(t_iterate(basis, x, n)[-1] - float(f(x)))
                assert resid < 1e-10


# ---------------------------------------------------------------------------
# hit-interval bracketing
# ---------------------------------------------------------------------------


def test_hit_interval_identity_example():
    br = approximate_hit_interval(
        BetaBasis(2.0), (0, 1), Identity1D(), ConstTau(1.0)
    )
    assert br.outer.contains(1.0 / 3.0)
    assert br.outer.length <= 0.25
    assert br.inner == br.outer  # constant tau: the bracket is tight
    assert br.threshold_outer == br.threshold_inner == 0.25


def test_hit_interval_constant_target_exact():
    # residual 4x - 0.5 inside [0, 1/4): band is (1/16, 3/16), length 1/8
    br = approximate_hit_interval(
        BetaBasis(2.0), (0, 0), Const1D(0.5), ConstTau(1.0)
    )
    assert br.outer.lo == pytest.approx(0.0625, abs=1e-12)
    assert br.outer.hi == pytest.approx(0.1875, abs=1e-12)
    assert br.outer.length == pytest.approx(2.0 * 2.0 ** -4, abs=1e-12)


def test_hit_interval_underflow_empty():
    br = approximate_hit_interval(
        BetaBasis(2.0), (0, 1), Identity1D(), ConstTau(500.0)
    )
    assert br.outer.is_empty and br.inner.is_empty


def test_hit_interval_clipped_to_cylinder():
    # a target far from the cylinder image leaves nothing
    br = approximate_hit_interval(
        BetaBasis(2.0), (0, 0, 0), Const1D(0.99), ConstTau(2.0)
    )
    cyl = cylinder_interval(BetaBasis(2.0), (0, 0, 0))
    if not br.outer.is_empty:
        assert br.outer.lo >= float(cyl.left)
        assert br.outer.hi <= float(cyl.right)


def test_hit_interval_membership_matches_scan():
    """For constant tau the bracket is exact: x in band iff n=2 is a hit."""
    basis = BetaBasis(2.0)
    target = Const1D(0.3)
    br = approximate_hit_interval(basis, (0, 1), target, ConstTau(1.0))
    rate = PowRate(1.0, 2.0)
    for x in np.linspace(0.25, 0.4999, 173):
        hit = any(r.n == 2 for r in hits_1d(basis, float(x), target, rate, 2))
        assert hit == br.outer.contains(float(x))


def test_hit_interval_inner_subset_outer():
    tau = AffineClampedTau(a=1.0, b=0.5, floor=0.2)  # theta=0.5, kappa=1.5
    br = approximate_hit_interval(BetaBasis(2.0), (0, 1), Identity1D(), tau)
    assert not br.outer.is_empty
    if not br.inner.is_empty:
        assert br.outer.lo <= br.inner.lo
        assert br.inner.hi <= br.outer.hi
    assert br.threshold_inner < br.threshold_outer


def test_hit_interval_diameter_law():
    # outer length <= 4 beta^(-n(1+theta)) once beta^n dominates the bound
    basis = BetaBasis(2.0)
    theta = 0.5
    for n in range(4, 11):
        word = (0,) * n
        br = approximate_hit_interval(
            basis, word, Affine1D(0.5, 0.2), ConstTau(theta)
        )
        assert br.outer.length <= 4.0 * 2.0 ** (-n * (1.0 + theta)) + 1e-15


def test_hit_interval_preconditions():
    with pytest.raises(PreconditionError):
        approximate_hit_interval(
            BetaBasis(GOLDEN), (1,), Affine1D(1.0, 0.0), ConstTau(1.0)
        )  # beta^1 < 2L
