import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad

from gshlab import caratheodory as cara
from gshlab import core
from gshlab import series as ts
from gshlab.caratheodory import SchwarzSample


def rational_extremal_coefficient(n: int) -> Fraction:
    """Independent oracle: a_n of the witness w = z^(n-1) member, exactly.

    Expands exp(u) with u = sum_k z^((n-1)(2k+1)) / ((2k+1)! (2k+1)(n-1))
    in rational arithmetic and reads off the coefficient of z^(n-1),
    which is the power carrying a_n after the shift by one.
    """
    m = n - 1
    u = {}
    k = 0
    while m * (2 * k + 1) <= m:
        power = m * (2 * k + 1)
        u[power] = Fraction(1, math.factorial(2 * k + 1) * power)
        k += 1
    # exp(u) up to power m; only the linear term can contribute at power m
    return u.get(m, Fraction(0))


# -- construction -------------------------------------------------------------


def test_extremal_member_initial_coefficients(f0):
    assert abs(f0.coeff(2) - 1.0) < 1e-14
    assert abs(f0.coeff(3) - 0.5) < 1e-14
    assert abs(f0.coeff(4) - 2.0 / 9.0) < 1e-14
    assert abs(f0.coeff(5) - 7.0 / 72.0) < 1e-14


def test_zero_witness_gives_identity():
    f = core.member_from_witness(ts.constant(0.0, 12), 12)
    assert np.allclose(f.series.coeffs, ts.identity(12).coeffs)


def test_square_witness_coefficients():
    f = core.member_from_witness(SchwarzSample.monomial(2), 12)
    got = [f.coeff(n) for n in (2, 3, 4, 5)]
    assert np.allclose(got, [0.0, 0.5, 0.0, 0.125], atol=1e-14)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_extremal_fn_attains_reciprocal(n):
    f = core.extremal_fn(n, order=16)
    expected = float(Fraction(1, n - 1))
    assert abs(f.coeff(n) - expected) < 1e-15
    for k in range(2, n):
        assert abs(f.coeff(k)) < 1e-15


def test_extremal_fn_matches_rational_oracle():
    for n in range(2, 6):
        f = core.extremal_fn(n, order=12)
        assert abs(f.coeff(n) - float(rational_extremal_coefficient(n))) < 1e-15


def test_extremal_fn_preconditions():
    with pytest.raises(ValueError):
        core.extremal_fn(1, order=16)
    with pytest.raises(ValueError):
        core.extremal_fn(9, order=8)


def test_witness_round_trip_200_samples():
    rng = np.random.default_rng(3)
    one = ts.constant(1.0, 24)
    for i in range(200):
        omega = cara.sample_schwarz(rng)
        f = core.member_from_witness(omega, 24)
        lhs = core.ratio_series(f)
        rhs = one + ts.sinh(omega.series(24))
        n = min(lhs.order, rhs.order)
        assert np.max(np.abs(lhs.coeffs[: n + 1] - rhs.coeffs[: n + 1])) < 1e-10


# -- ratio ---------------------------------------------------------------------


def test_ratio_of_identity_is_one(identity_fn):
    r = core.ratio_series(identity_fn)
    assert abs(r[0] - 1.0) < 1e-15
    assert np.max(np.abs(r.coeffs[1:])) < 1e-15


def test_ratio_of_koebe_is_half_plane_kernel(koebe):
    r = core.ratio_series(koebe)
    assert abs(r[0] - 1.0) < 1e-13
    assert np.max(np.abs(r.coeffs[1:] - 2.0)) < 1e-12


def test_ratio_series_coefficient_formulas():
    rng = np.random.default_rng(9)
    for _ in range(50):
        tail = 0.2 * (rng.normal(size=4) + 1j * rng.normal(size=4))
        f = core.NormalizedFunction.from_tail(tail, order=8)
        a2, a3, a4, a5 = (f.coeff(k) for k in (2, 3, 4, 5))
        r = core.ratio_series(f)
        assert abs(r[1] - a2) < 1e-12
        assert abs(r[2] - (2 * a3 - a2 ** 2)) < 1e-12
        assert abs(r[3] - (3 * a4 - 3 * a2 * a3 + a2 ** 3)) < 1e-12
        assert abs(r[4] - (4 * a5 - 2 * a3 ** 2 - 4 * a2 * a4
                           + 4 * a2 ** 2 * a3 - a2 ** 4)) < 1e-12


# -- coefficient transfer ------------------------------------------------------


def test_coeffs_from_caratheodory_boundary_values():
    a2, a3, a4, a5 = core.coeffs_from_caratheodory([2, 2, 2, 2])
    assert (a2, a3) == (1.0, 0.5)
    assert abs(a4 - 2.0 / 9.0) < 1e-16
    assert abs(a5 - 7.0 / 72.0) < 1e-16
    assert core.coeffs_from_caratheodory([0, 0, 0, 0]) == (0, 0, 0, 0)
    a2, a3, a4, a5 = core.coeffs_from_caratheodory([0, 2, 0, 2])
    assert np.allclose([a2, a3, a4, a5], [0, 0.5, 0, 0.125])


def test_coeff_formulas_match_series_pipeline():
    # members built through the full series pipeline from a positive-real
    # witness match the closed-form coefficient transfer
    rng = np.random.default_rng(21)
    order = 8
    one = ts.constant(1.0, order)
    for _ in range(100):
        k = cara.sample_herglotz(rng)
        ks = k.series(order)
        w = ts.div(ks - one, ks + one)
        f = core.member_from_witness(w, order)
        c = k.coeffs(4)
        expected = core.coeffs_from_caratheodory(c)
        got = tuple(f.coeff(n) for n in (2, 3, 4, 5))
        assert np.max(np.abs(np.array(got) - np.array(expected))) < 1e-10


def test_composed_expansion_displayed_coefficients():
    # 1 + sinh((k-1)/(k+1)) has the displayed polynomial coefficients in c_n
    rng = np.random.default_rng(33)
    order = 8
    one = ts.constant(1.0, order)
    sinh_outer = one + ts.sinh(ts.identity(order))
    for _ in range(100):
        k = cara.sample_herglotz(rng)
        c = k.coeffs(4)
        ks = k.series(order)
        composed = ts.compose(sinh_outer, ts.div(ks - one, ks + one))
        c1, c2, c3, c4 = c
        displayed = [
            1.0,
            c1 / 2,
            c2 / 2 - c1 ** 2 / 4,
            7 * c1 ** 3 / 48 - c1 * c2 / 2 + c3 / 2,
            -3 * c1 ** 4 / 32 + 7 * c1 ** 2 * c2 / 16 - c1 * c3 / 2
            - c2 ** 2 / 4 + c4 / 2,
        ]
        assert np.max(np.abs(composed.coeffs[:5] - np.array(displayed))) < 1e-10


# -- sufficient condition -------------------------------------------------------


def test_sufficient_identity_holds(identity_fn):
    v = core.sufficient_membership(identity_fn)
    assert v.holds and v.statistic == pytest.approx(0.0, abs=1e-15)


def test_sufficient_small_quadratic():
    f = core.NormalizedFunction.from_tail([0.1], order=8)
    v = core.sufficient_membership(f)
    expected = 0.1 * (1.0 + math.sinh(1.0)) / math.sinh(1.0)
    assert v.holds
    assert v.statistic == pytest.approx(expected, abs=1e-8)
    assert v.argmax_theta == pytest.approx(math.pi, abs=1e-3)


def test_sufficient_large_quadratic_inconclusive():
    f = core.NormalizedFunction.from_tail([0.6], order=8)
    v = core.sufficient_membership(f)
    assert not v.holds
    assert v.statistic == pytest.approx(0.6 * (1 + math.sinh(1)) / math.sinh(1),
                                        abs=1e-7)


def test_sufficient_requires_theta_samples():
    with pytest.raises(core.PreconditionNotMet):
        core.sufficient_membership(core.NormalizedFunction.identity(8), 32)


# -- kernel test ------------------------------------------------------------------


def test_kernel_identity_is_unit(identity_fn):
    v = core.kernel_nonvanishing(identity_fn, theta_samples=128,
                                 grid=core.PolarGrid(64, 16))
    assert v.nonvanishing
    assert v.min_modulus == pytest.approx(1.0, abs=1e-12)


def test_kernel_extremal_member_nonvanishing(f0):
    v = core.kernel_nonvanishing(f0, theta_samples=128, grid=core.PolarGrid(128, 32))
    assert v.nonvanishing
    assert v.min_modulus > 1e-4


def test_kernel_koebe_zero_found(koebe):
    v = core.kernel_nonvanishing(koebe, theta_samples=128, grid=core.PolarGrid(128, 32))
    assert not v.nonvanishing
    assert v.min_modulus <= 1e-6
    assert abs(v.argmin_z) < 1.0


# -- geometric test ----------------------------------------------------------------


def test_geometric_members(f0, identity_fn):
    grid = core.PolarGrid(128, 32)
    assert core.geometric_membership(f0, grid).member
    assert core.geometric_membership(identity_fn, grid).member


def test_geometric_koebe_excluded(koebe):
    # the log-derivative deviation at z = 0.9 has modulus 18, far beyond
    # the largest boundary modulus sinh(1)
    exact = (1 + 0.9) / (1 - 0.9) - 1.0
    assert exact == pytest.approx(18.0)
    truncated = abs(koebe.ratio_values(np.array([0.9]))[0] - 1.0)
    assert truncated > 2.0 * math.sinh(1.0)
    verdict = core.geometric_membership(koebe, core.PolarGrid(128, 32))
    assert not verdict.member
    assert verdict.outside_count > 0


# -- combined report ----------------------------------------------------------------


def test_membership_report_verdicts(f0, koebe):
    grid = core.PolarGrid(128, 32)
    good = core.membership_report(f0, 128, grid)
    assert good.verdict == "member"
    bad = core.membership_report(koebe, 128, grid)
    assert bad.verdict == "non-member"
    obj = bad.to_json()
    assert obj["kernel"]["verdict"] == "zero-found"
    assert obj["geometric"]["verdict"] == "non-member"


def test_implication_chain_on_samples():
    # sufficient => geometric => kernel nonvanishing
    rng = np.random.default_rng(15)
    grid = core.PolarGrid(96, 24)
    for i in range(60):
        if i % 2:
            tail = 0.12 * (rng.normal(size=4) + 1j * rng.normal(size=4)) / \
                np.arange(2, 6)
            f = core.NormalizedFunction.from_tail(tail, order=12)
        else:
            f = core.member_from_witness(cara.sample_schwarz(rng), 16)
        s = core.sufficient_membership(f, 128)
        g = core.geometric_membership(f, grid)
        k = core.kernel_nonvanishing(f, 96, grid)
        if s.holds:
            assert g.member, f"sufficient held but geometric failed: {f.to_json()}"
        if g.member:
            assert k.nonvanishing, f"member with vanishing kernel: {f.to_json()}"


# -- functionals --------------------------------------------------------------------


def test_hankel_report_extremal(f0):
    rep = core.hankel_report(f0, lam=1.0)
    assert rep.fs == pytest.approx(-0.5, abs=1e-14)
    assert rep.h22 == pytest.approx(-1.0 / 36.0, abs=1e-14)
    # rational oracle on (1, 1/2, 2/9, 7/72)
    a2, a3, a4, a5 = Fraction(1), Fraction(1, 2), Fraction(2, 9), Fraction(7, 72)
    h31 = a3 * (a2 * a4 - a3 ** 2) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 ** 2)
    assert h31 == Fraction(-1, 1296)
    assert rep.h31 == pytest.approx(float(h31), abs=1e-14)


def test_hankel_report_square_witness():
    f = core.member_from_witness(SchwarzSample.monomial(2), 8)
    rep = core.hankel_report(f)
    assert rep.h22 == pytest.approx(-0.25, abs=1e-14)


def test_hankel_requires_order_five():
    with pytest.raises(core.PreconditionNotMet):
        core.hankel_report(core.NormalizedFunction.identity(4))


# -- growth and covering ---------------------------------------------------------


def test_shi_routes_agree():
    for x in (0.25, 0.5, 0.75, 0.95, 1.0):
        assert abs(core.shi_series(x) - core.shi_quadrature(x)) < 1e-10


def test_growth_record_values():
    rec = core.growth_distortion(0.5)
    shi_half, _ = quad(lambda t: math.sinh(t) / t if t else 1.0, 0, 0.5,
                       epsabs=1e-13, epsrel=1e-13)
    assert rec.upper == pytest.approx(0.5 * math.exp(shi_half), abs=1e-12)
    assert rec.upper == pytest.approx(0.8301487057042349, abs=1e-10)
    assert rec.lower == pytest.approx(0.5 * math.exp(-shi_half), abs=1e-12)
    assert rec.deriv_bound == pytest.approx((1 + math.sinh(0.5)) * rec.upper / 0.5)
    assert rec.covering == pytest.approx(0.3474095709321509, abs=1e-10)


def test_growth_normalization_limit():
    rec = core.growth_distortion(1e-4)
    assert rec.upper / 1e-4 == pytest.approx(1.0, abs=2e-4)


def test_growth_domain_checked():
    with pytest.raises(core.PreconditionNotMet):
        core.growth_distortion(1.0)


def test_covering_radius_value():
    assert core.covering_radius() == pytest.approx(math.exp(-core.shi_quadrature(1.0)),
                                                   abs=1e-12)


def test_members_respect_growth_envelope():
    rng = np.random.default_rng(27)
    angles = np.exp(2j * np.pi * np.arange(64) / 64)
    for _ in range(25):
        f = core.member_from_witness(cara.sample_schwarz(rng), 40)
        for r in (0.25, 0.5, 0.75, 0.95):
            bound = core.growth_distortion(r).upper
            vals = np.abs(f.values(r * angles))
            assert float(np.max(vals)) <= bound * (1 + 1e-8)


# -- convexity ---------------------------------------------------------------------


def test_convex_combination_of_small_members():
    f1 = core.NormalizedFunction.from_tail([0.1], order=8)
    f2 = core.NormalizedFunction.from_tail([0.0, 0.1], order=8)
    combo = core.ComboSpec(mu=0.5, f1=f1, f2=f2)
    assert core.convex_combination_check(combo).holds


def test_convex_combination_edge_weights():
    f1 = core.NormalizedFunction.from_tail([0.1], order=8)
    f2 = core.NormalizedFunction.from_tail([0.05], order=8)
    for mu, reference in ((0.0, f2), (1.0, f1)):
        combo = core.ComboSpec(mu=mu, f1=f1, f2=f2)
        got = core.convex_combination_check(combo)
        expected = core.sufficient_membership(reference)
        assert got.holds == expected.holds
        assert got.statistic == pytest.approx(expected.statistic, abs=1e-12)


def test_convex_combination_requires_sufficient_inputs():
    good = core.NormalizedFunction.from_tail([0.1], order=8)
    bad = core.NormalizedFunction.from_tail([0.6], order=8)
    with pytest.raises(core.PreconditionNotMet):
        core.convex_combination_check(core.ComboSpec(mu=0.5, f1=good, f2=bad))


# -- types -------------------------------------------------------------------------


def test_kernel_params_consistency():
    p = core.KernelParams.from_theta(0.7)
    assert abs(p.beta - core.kernel_beta(0.7)) < 1e-15
    with pytest.raises(ValueError):
        core.KernelParams(theta=0.7, beta=p.beta + 1e-6)


def test_normalized_function_validation():
    with pytest.raises(ValueError):
        core.NormalizedFunction(ts.constant(1.0, 4))
    with pytest.raises(ValueError):
        core.NormalizedFunction(ts.TruncatedSeries([0, 1 + 1e-12, 0.5]))


def test_normalized_function_json_round_trip(f0):
    back = core.NormalizedFunction.from_json(f0.to_json())
    assert np.allclose(back.series.coeffs, f0.series.coeffs)
