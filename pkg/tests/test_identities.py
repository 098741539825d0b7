"""Verification engine: KS calibration, every identity spec, negative controls,
lemma densities, conjecture scans."""

import math

import numpy as np
import pytest

from bpl.convolution import mellin_sum
from bpl.distributions import BetaPrimeParams, RngState, betaprime_mellin
from bpl.errors import DomainError
from bpl.identities import (
    ab_half_spec,
    cjmain_spec,
    conjecture_cjmain_scan,
    conjhyp_integral_check,
    cor34_spec,
    free_spec,
    half_gaussian_spec,
    hypergeo_identity_check,
    identity_catalog,
    ks_two_sample,
    lemma_densities,
    prop_b0_spec,
    theorem_a_spec,
    theorem_b_spec,
    verify,
    _one_plus_sqrt_beta_factor,
    _sqrt_gamma_sum_mellin,
)
from bpl.options import DEFAULT_OPTIONS, EvalOptions
from bpl.quadrature import integrate
from bpl.special import gamma_ln
from conftest import rel_err


class TestKs:
    def test_identical_vectors(self):
        x = np.linspace(0.0, 1.0, 100)
        stat, thr = ks_two_sample(x, x)
        assert stat == 0.0

    def test_null_calibration(self):
        r1, r2 = RngState(5).spawn(2)
        xs = r1.generator.random(100_000)
        ys = r2.generator.random(100_000)
        stat, thr = ks_two_sample(xs, ys)
        assert stat < thr(0.01)

    def test_power_against_shift(self):
        r1, r2 = RngState(5).spawn(2)
        xs = r1.generator.random(100_000)
        ys = r2.generator.random(100_000) + 0.05
        stat, thr = ks_two_sample(xs, ys)
        assert stat > thr(0.01)

    def test_threshold_constant(self):
        stat, thr = ks_two_sample(np.arange(10.0), np.arange(10.0))
        c = thr(0.01) / math.sqrt(20.0 / 100.0)
        assert c == pytest.approx(1.628, abs=5e-4)

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            ks_two_sample([], [1.0])


class TestEngine:
    def test_same_sampler_independent_streams_passes(self):
        from bpl.distributions import sample_betaprime
        from bpl.identities import IdentitySpec
        p = BetaPrimeParams(0.8, 1.2)
        sampler = lambda rng, n: sample_betaprime(p, rng, n)
        spec = IdentitySpec(name="self", lhs_sampler=sampler, rhs_sampler=sampler)
        rep = verify(spec, 50_000, None, RngState(60))
        assert rep.passed

    def test_same_law_passes(self):
        spec = theorem_a_spec(1.0)
        same = verify(spec, 50_000, None, RngState(61))
        assert same.passed and same.seed == 61

    def test_corrupted_rhs_fails(self):
        rep = verify(theorem_a_spec(1.0), 50_000, None, RngState(62), rhs_scale=1.1)
        assert not rep.passed

    def test_parameter_perturbation_fails(self):
        # engine power: right side built from a shape 5% off must fail
        base = theorem_a_spec(1.0)
        wrong = theorem_a_spec(1.05)
        from bpl.identities import IdentitySpec
        mixed = IdentitySpec(
            name="negative-control",
            lhs_sampler=base.lhs_sampler,
            rhs_sampler=wrong.rhs_sampler,
            lhs_mellin=base.lhs_mellin,
            rhs_mellin=wrong.rhs_mellin,
            mellin_strip=base.mellin_strip,
        )
        rep = verify(mixed, 100_000, None, RngState(65))
        assert not rep.passed
        assert rep.mellin_max_relerr > 1e-6

    def test_failure_recorded_not_raised(self):
        spec = theorem_a_spec(1.0)
        rep = verify(spec, 1000, [0.49999], RngState(63))  # s at the strip edge
        assert rep.verdict in ("pass", "fail")

    def test_out_of_strip_s_fails_gracefully(self):
        spec = theorem_a_spec(1.0)
        rep = verify(spec, 1000, [0.7], RngState(64))
        assert rep.verdict == "fail" and rep.failure is not None


class TestTheoremA:
    @pytest.mark.parametrize("a", [0.3, 1.0, 2.5])
    def test_verify(self, a):
        rep = verify(theorem_a_spec(a), 100_000, None, RngState(71))
        assert rep.passed, rep
        assert rep.mellin_max_relerr < 1e-6
        assert rep.density_max_relerr < 1e-6

    def test_rhs_factor_closed_moment(self):
        # E[(1 + sqrt Beta(1/2,1/2))^1] = 1 + 2/pi
        got = _one_plus_sqrt_beta_factor(0.5, 1.0)
        assert got == pytest.approx(1.0 + 2.0 / math.pi, rel=1e-11)

    def test_mellin_sides_trivial_at_zero(self):
        spec = theorem_a_spec(0.8)
        assert spec.lhs_mellin(0.0) == pytest.approx(1.0, rel=1e-10)
        assert spec.rhs_mellin(0.0) == pytest.approx(1.0, rel=1e-10)


class TestTheoremB:
    @pytest.mark.parametrize("ab", [(0.5, 0.2), (0.5, 0.4), (0.7, 0.3), (0.9, 0.1)])
    def test_verify_both_branches(self, ab):
        a, b = ab
        rep = verify(theorem_b_spec(a, b), 100_000, None, RngState(73))
        assert rep.passed, rep
        assert rep.mellin_max_relerr < 1e-6

    def test_domain_guard(self):
        with pytest.raises(DomainError):
            theorem_b_spec(0.5, 0.6)
        with pytest.raises(DomainError):
            theorem_b_spec(0.62, 0.3)  # off both proven branches

    def test_degenerates_to_theorem_a(self):
        # b -> 1/2 on the a = 1/2 branch: the extra beta factor tends to 1
        s = 0.2
        tb = theorem_b_spec(0.5, 0.4999)
        ta = theorem_a_spec(0.5)
        assert rel_err(tb.rhs_mellin(s), ta.rhs_mellin(s)) < 2e-3
        assert rel_err(tb.lhs_mellin(s), ta.lhs_mellin(s)) < 2e-3


class TestMellinFactorsAgainstMonteCarlo:
    # third, structurally independent witness for the tensor quadrature
    # factors feeding the transform channel

    def test_theorem_b_factor(self):
        from bpl.identities import _tb_factor
        from bpl.distributions import BetaParams, sample_beta, mc_mean
        rng = RngState(91)
        n = 1_000_000
        for (a, b, s) in ((0.5, 0.2, 0.1), (0.9, 0.1, 0.05), (0.7, 0.3, 0.2)):
            u = sample_beta(BetaParams(a, 0.5), rng, n)
            v = sample_beta(BetaParams(b, 0.5 - b), rng, n)
            mean, se = mc_mean((1.0 + np.sqrt(u / v)) ** s)
            assert abs(mean - _tb_factor(a, b, s)) < 5.0 * se

    def test_ab_half_factor(self):
        from bpl.identities import _ab_half_factor
        from bpl.distributions import BetaParams, sample_beta, mc_mean
        rng = RngState(92)
        n = 1_000_000
        for (a, s) in ((0.25, 0.1), (0.1, 0.2)):
            b = 0.5 - a
            x = sample_beta(BetaParams(a, 0.5), rng, n)
            y = sample_beta(BetaParams(b, 0.5), rng, n)
            mean, se = mc_mean((x + 1.0 / y) ** s)
            assert abs(mean - _ab_half_factor(a, b, s)) < 5.0 * se


class TestOtherIdentities:
    @pytest.mark.parametrize("abb", [(1.0, 0.5, 1.5), (0.6, 0.8, 2.0)])
    def test_prop_b0(self, abb):
        rep = verify(prop_b0_spec(*abb), 100_000, None, RngState(75))
        assert rep.passed, rep

    def test_prop_b0_closed_mellin_match(self):
        spec = prop_b0_spec(1.0, 0.5, 1.5)
        p = BetaPrimeParams(1.0, 0.5)
        for s in (-0.5, 0.2, 0.4):
            assert rel_err(spec.rhs_mellin(s), betaprime_mellin(p, s)) < 1e-12

    def test_prop_b0_guard(self):
        with pytest.raises(DomainError):
            prop_b0_spec(1.0, 1.5, 0.5)

    @pytest.mark.parametrize("a", [0.25, 0.1])
    def test_ab_half(self, a):
        rep = verify(ab_half_spec(a), 100_000, None, RngState(76))
        assert rep.passed, rep

    def test_ab_half_factor_at_zero(self):
        spec = ab_half_spec(0.25)
        assert spec.rhs_mellin(0.0) == pytest.approx(1.0, rel=1e-10)

    @pytest.mark.parametrize("abcd", [(1.0, 1.0, 1.0, 1.0), (0.8, 0.6, 1.2, 0.9)])
    def test_free(self, abcd):
        rep = verify(free_spec(*abcd), 100_000, None, RngState(77))
        assert rep.passed, rep

    def test_free_guard_and_swap(self):
        with pytest.raises(DomainError):
            free_spec(1.0, 2.0, 0.7, 0.5)
        rep = verify(free_spec(1.0, 2.0, 0.7, 0.5, swap=True), 50_000, None, RngState(78))
        assert rep.passed, rep

    @pytest.mark.parametrize("a", [0.5, 2.0])
    def test_half_gaussian(self, a):
        rep = verify(half_gaussian_spec(a), 100_000, None, RngState(79))
        assert rep.passed, rep

    def test_half_gaussian_second_moment(self):
        # E[(sqrt G_a + sqrt G_a)^2] = 2a + 2 (Gamma(a+1/2)/Gamma(a))^2; a = 1
        want = 2.0 + math.pi / 2.0
        got = _sqrt_gamma_sum_mellin(1.0, 2.0, DEFAULT_OPTIONS)
        assert got == pytest.approx(want, rel=1e-10)
        n = 2_000_000
        rng = RngState(80)
        g = rng.generator.standard_gamma(1.0, n) ** 0.5 + rng.generator.standard_gamma(1.0, n) ** 0.5
        se = (g ** 2).std() / math.sqrt(n)
        assert abs((g ** 2).mean() - want) < 4.0 * se

    @pytest.mark.parametrize("a", [1.0, 0.6])
    def test_cor34(self, a):
        rep = verify(cor34_spec(a), 100_000, None, RngState(81))
        assert rep.passed, rep

    def test_catalog_complete(self):
        assert set(identity_catalog()) == {
            "theorem-a", "theorem-b", "prop-b0", "ab-half", "free",
            "half-gaussian", "cor34",
        }


class TestLemmaDensities:
    def test_proportionality_first_family(self):
        a = 0.7
        coeff = 2.0 * math.exp(gamma_ln(2 * a) - math.log(a) - 2.0 * gamma_ln(a))
        pts = np.concatenate([np.linspace(1.05, 1.95, 10), np.linspace(2.05, 9.0, 10)])
        for x in pts:
            g = lemma_densities("betastr_g", a, float(x))
            f = lemma_densities("betastr_f", a, float(x))
            assert rel_err(g, coeff * float(x) ** (a - 1.0) * f) < 1e-8

    def test_proportionality_second_family(self):
        b = 0.3
        coeff = 2.0 * math.exp(gamma_ln(b + 0.5) - 0.5 * math.log(math.pi)
                               - gamma_ln(b + 1.0))
        pts = np.concatenate([np.linspace(1.05, 1.95, 10), np.linspace(2.05, 9.0, 10)])
        for x in pts:
            g = lemma_densities("betastrb_g", b, float(x))
            f = lemma_densities("betastrb_f", b, float(x))
            assert rel_err(g, coeff * float(x) ** (-b) * f) < 1e-8

    @pytest.mark.parametrize("kind,param,left_exp,tail_exp", [
        ("betastr_g", 0.7, 2 * 0.7 - 1.0, 2 * 0.7 - 1.0),
        ("betastrb_f", 0.3, 0.0, 2 * 0.3),
    ])
    def test_normalization(self, kind, param, left_exp, tail_exp):
        # substitutions absorb the (x-1)^left_exp endpoint and the
        # x^(-tail_exp-1) tail exactly; only the integrable log point at 2
        # is left to the adaptive pass
        from bpl.quadrature import beta_kernel
        loose = EvalOptions(rel_tol=1e-10, abs_tol=1e-13, max_quad_refinements=90)

        def inner(u):  # x = 1 + u on (1, 2); clamp off the log point at 2
            u = np.clip(np.atleast_1d(u), 1e-250, 1.0 - 1e-10)
            vals = np.array([lemma_densities(kind, param, 1.0 + float(v)) for v in u])
            return vals * u ** (-left_exp)

        def outer(v):  # x = 1 + 1/v on (2, inf); clamps keep x in float range
            v = np.clip(np.atleast_1d(v), 1e-140, 1.0 - 1e-10)
            vals = np.array([lemma_densities(kind, param, 1.0 + 1.0 / float(w)) for w in v])
            return vals * v ** (-(tail_exp - 1.0)) / (v * v)

        mass = (beta_kernel(inner, left_exp, 0.0, loose)
                + beta_kernel(outer, tail_exp - 1.0, 0.0, loose))
        assert mass == pytest.approx(1.0, abs=1e-7)

    def test_domain_guards(self):
        with pytest.raises(DomainError):
            lemma_densities("betastr_g", 0.7, 2.0)
        with pytest.raises(DomainError):
            lemma_densities("betastr_g", 0.3, 1.5)
        with pytest.raises(DomainError):
            lemma_densities("betastrb_g", 0.7, 1.5)
        with pytest.raises(DomainError):
            lemma_densities("nope", 0.7, 1.5)


class TestMultiplicativeIdentity:
    def test_pointwise_density_equality(self):
        assert hypergeo_identity_check(1.0, 1.0, 1.0, 1.0) < 1e-9
        assert hypergeo_identity_check(0.8, 0.6, 1.2, 0.9) < 1e-9

    def test_guard(self):
        with pytest.raises(DomainError):
            hypergeo_identity_check(1.0, 3.0, 0.5, 0.5)


class TestScans:
    def test_cjmain_proven_points_pass(self):
        rows = conjecture_cjmain_scan([(0.5, 0.2), (0.8, 0.2)], 30_000, RngState(83))
        for r in rows:
            assert r["proven"]
            assert r["verdict"] == "pass", r
            assert max(r["rep1_relerr"], r["rep2_relerr"]) < 1e-5

    def test_cjmain_exploratory_point_recorded(self):
        rows = conjecture_cjmain_scan([(2.0, 0.3)], 20_000, RngState(84))
        assert rows[0]["exploratory"] and rows[0]["verdict"] == ""
        assert np.isfinite(rows[0]["ks_statistic"])

    def test_cjmain_domain(self):
        with pytest.raises(DomainError):
            conjecture_cjmain_scan([(0.5, 0.7)], 1000, RngState(85))

    def test_conjhyp_limits_and_records(self):
        res = conjhyp_integral_check(0.25, [1e-7, 0.5, 0.9])
        # z -> 0: both sides agree after normalization (the deviation of the
        # recorded form is linear in z)
        assert res["by_z"][1e-7] < 1e-6
        # interior: the printed display deviates and the value is recorded
        assert res["by_z"][0.5] > 0.1
        # with the extra 1/(z+1) the two sides coincide
        assert res["max_relerr_with_zp1_factor"] < 1e-9

    def test_conjhyp_log_divergence_regime(self):
        res = conjhyp_integral_check(0.4, [0.9])
        assert math.isfinite(res["max_relerr"])
