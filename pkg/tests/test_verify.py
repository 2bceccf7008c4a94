import json
import math

import mpmath as mp
import numpy as np
import pytest

from tgk.errors import DomainError, PrecisionError, SeedRegimeError
from tgk.specfun import KSParams, airy_ai, bessel_k
from tgk.verify import (
    ClaimLedger,
    bigfloat_ks_oracle,
    check_caputo_identity,
    check_growth_bound,
    check_ks_bounds,
    check_ml_bounds,
    check_sequential_claim,
    closed_form_weighted_residual,
    illposed_demo,
    ode_oracle,
    run_suite,
)


class TestLedger:
    def test_status_rules(self):
        led = ClaimLedger()
        led.add("a", "text", {"v": 1.0}, 1e-8, "pass")
        led.add("b", "text", {"v": 2.0}, None, "report")
        with pytest.raises(DomainError):
            led.add("c", "text", {}, None, "pass")
        with pytest.raises(DomainError):
            led.add("d", "text", {}, 1e-8, "maybe")
        assert led.counts() == {"pass": 1, "fail": 0, "report": 1}

    def test_json_roundtrip(self):
        led = ClaimLedger()
        led.add("a", "text", {"v": 1.5}, 1e-8, "pass")
        doc = json.loads(led.to_json())
        assert doc["entries"][0]["claim_id"] == "a"
        assert doc["entries"][0]["measured"]["v"] == 1.5
        empty = json.loads(ClaimLedger().to_json())
        assert empty == {"entries": []}


class TestBoundChecks:
    def test_ks_bounds_spec_case(self):
        e = check_ks_bounds(0.5, 1.5, [0.0, 1.0, 10.0, 100.0])
        assert e.status == "pass"
        # equality at z = 0 shows up as zero minimum margin
        assert e.measured["min_margin_lower"] == pytest.approx(0.0, abs=1e-15)
        assert e.measured["min_margin_upper"] == pytest.approx(0.0, abs=1e-15)

    def test_ks_bounds_wide_parameters(self):
        e = check_ks_bounds(0.9, 3.0, [0.0, 1.0, 10.0, 50.0])
        assert e.status == "pass"

    def test_ml_bounds(self):
        e = check_ml_bounds(0.5, [0.0, 1.0, 10.0])
        assert e.status == "pass"
        # the sandwich at z = 1 brackets the known value exp(1) erfc(1)
        val = float(mp.exp(1) * mp.erfc(1))
        assert 1.0 / (1.0 + math.gamma(0.5)) - 1e-12 <= val
        assert val <= 1.0 / (1.0 + 1.0 / math.gamma(1.5)) + 1e-12

    def test_alpha_open_interval(self):
        with pytest.raises(DomainError):
            check_ml_bounds(1.0, [0.0, 1.0])

    def test_growth(self):
        e = check_growth_bound(0.75, 0.5, 2.0, [0.25, 1.0, 4.0])
        assert e.status == "pass"


class TestRefinementChecks:
    def test_caputo_identity_alpha_one(self):
        e = check_caputo_identity(1.0, 1.0, 1.0, levels=(6, 7, 8))
        assert e.status == "pass"
        assert min(e.measured["orders"].values()) >= 0.85

    def test_caputo_identity_fractional(self):
        e = check_caputo_identity(0.75, 0.0, 2.0, levels=(6, 7, 8, 9))
        assert e.status == "pass"

    def test_sequential_beta_zero(self):
        e = check_sequential_claim(0.8, 0.0, 4.0, levels=(6, 7, 8, 9))
        assert e.status == "pass"
        assert e.measured["order"] >= 2 - 0.8 - 0.15

    def test_sequential_weighted_is_report(self):
        e = check_sequential_claim(1.0, 1.0, 1.0, levels=(6, 7, 8))
        assert e.status == "report"
        assert e.measured["ratio_measured_to_predicted"] == pytest.approx(1.0, abs=0.05)

    def test_closed_form_counterexample(self):
        r = closed_form_weighted_residual(4.0, np.linspace(0.1, 2.0, 15))
        assert r["max_deviation"] <= 1e-8


class TestOdeOracle:
    def test_exponential(self):
        r = ode_oracle(1.0, 0.0, 12.0)
        assert np.max(np.abs(r.values - np.exp(-r.xs))) <= 1e-8
        assert r.monotone_tail

    def test_airy(self):
        r = ode_oracle(1.0, 1.0, 6.0)
        ai0 = airy_ai(0.0)
        for xq in (0.5, 1.0, 2.0):
            i = int(np.argmin(np.abs(r.xs - xq)))
            assert r.values[i] == pytest.approx(airy_ai(float(r.xs[i])) / ai0, abs=1e-6)

    def test_macdonald_with_fitted_scale(self):
        r = ode_oracle(1.0, 2.0, 4.0)
        sel = (r.xs >= 0.5) & (r.xs <= 2.0)
        xs, vals = r.xs[sel], r.values[sel]
        ref = np.array([math.sqrt(x) * bessel_k(0.25, x * x / 2) for x in xs])
        scale = vals[vals.size // 2] / ref[ref.size // 2]
        assert np.max(np.abs(vals - scale * ref) / np.abs(vals)) <= 1e-6

    def test_seed_regime_guard(self):
        with pytest.raises(SeedRegimeError):
            ode_oracle(1.0, 0.0, 5.0)

    def test_positivity_and_shape(self):
        r = ode_oracle(4.0, 1.0, 4.0)
        assert np.all(r.values > 0.0)
        assert r.values[0] == pytest.approx(1.0)


class TestBigfloatOracle:
    def test_exact_at_zero(self):
        assert bigfloat_ks_oracle(KSParams(0.7, 1.2, 0.2), 0.0) == 1

    def test_closed_form_depth(self):
        v = bigfloat_ks_oracle(KSParams(1.0, 2.0, 1.0), -2.0)
        with mp.workdps(60):
            assert abs(v - mp.exp(-1)) < mp.mpf("1e-30")

    def test_domain_limits(self):
        with pytest.raises(DomainError):
            bigfloat_ks_oracle(KSParams(0.75, 2.0, 1.0), -200.0)
        with pytest.raises(DomainError):
            bigfloat_ks_oracle(KSParams(0.75, 2.0, 1.0), -1.0, digits=20)

    def test_infeasible_peak_rejected(self):
        # peak index far beyond any term cap
        with pytest.raises(PrecisionError):
            bigfloat_ks_oracle(KSParams(0.1, 0.2, -0.8), -50.0)


class TestIllposedDemo:
    @pytest.mark.parametrize("alpha", [0.6, 0.75, 0.9])
    def test_finite_crossing(self, alpha):
        d = illposed_demo(alpha, 1.0, threshold=1e8)
        assert d["x_star"] is not None and d["x_star"] > 0.0
        assert d["monotone"]

    def test_larger_frequency_crosses_sooner(self):
        d1 = illposed_demo(0.9, 1.0, threshold=1e8)
        d2 = illposed_demo(0.9, 2.0, threshold=1e8)
        assert d2["x_star"] < d1["x_star"]

    def test_threshold_domain(self):
        with pytest.raises(DomainError):
            illposed_demo(0.75, 1.0, threshold=0.5)


class TestSuites:
    def test_residuals_suite(self):
        led = run_suite("residuals")
        counts = led.counts()
        assert counts["fail"] == 0
        assert counts["pass"] >= 20
        assert counts["report"] >= 2

    def test_unknown_suite(self):
        with pytest.raises(DomainError):
            run_suite("everything")

    def test_determinism_of_entries(self):
        a = run_suite("residuals").to_json()
        b = run_suite("residuals").to_json()
        assert a == b
