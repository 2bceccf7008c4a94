import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tgk.errors import DomainError
from tgk.fraccalc import Grid1D, SampledFunction, caputo_l1, residual_sequential, sequential_d2alpha
from tgk.specfun import mittag_leffler


def make_sampled(fun, n=257, x_max=1.0):
    grid = Grid1D(x_max, n)
    return SampledFunction(grid, fun(grid.nodes))


def ls_order(res):
    lev = np.arange(len(res), dtype=float)
    return -np.polyfit(lev, np.log2(res), 1)[0]


class TestCaputoL1:
    def test_kills_constants(self):
        f = make_sampled(lambda x: np.full_like(x, 3.7))
        d = caputo_l1(f, 0.5)
        assert np.max(np.abs(d.values)) == 0.0

    def test_linear_function_exact(self):
        # for f(x) = x the piecewise-linear scheme telescopes to the exact value
        f = make_sampled(lambda x: x)
        d = caputo_l1(f, 0.5)
        x = f.grid.nodes
        ref = np.sqrt(x) / math.gamma(1.5)
        assert np.max(np.abs(d.values[1:] - ref[1:])) < 1e-12

    def test_quadratic_convergence_order(self):
        alpha = 0.75
        res = []
        for lev in range(6, 11):
            n = 2**lev + 1
            f = make_sampled(lambda x: x**2, n=n)
            d = caputo_l1(f, alpha)
            x = f.grid.nodes
            ref = 2.0 * x ** (2 - alpha) / math.gamma(3 - alpha)
            mask = x >= 0.25
            res.append(np.max(np.abs(d.values[mask] - ref[mask])))
        assert ls_order(res) >= 2 - alpha - 0.15

    def test_alpha_one_is_backward_difference(self):
        f = make_sampled(lambda x: np.sin(3 * x), n=65)
        d = caputo_l1(f, 1.0)
        h = f.grid.spacing
        ref = np.diff(f.values) / h
        assert np.array_equal(d.values[1:], ref)
        assert d.values[0] == 0.0

    @pytest.mark.parametrize("alpha", [0.0, -0.5, 1.2])
    def test_alpha_domain(self, alpha):
        f = make_sampled(lambda x: x)
        with pytest.raises(DomainError):
            caputo_l1(f, alpha)

    @given(st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3))
    @settings(max_examples=25, deadline=None)
    def test_linearity(self, a, b):
        grid = Grid1D(1.0, 65)
        x = grid.nodes
        f1 = SampledFunction(grid, np.sin(2 * x))
        f2 = SampledFunction(grid, x**1.5)
        lhs = caputo_l1(SampledFunction(grid, a * f1.values + b * f2.values), 0.6).values
        rhs = a * caputo_l1(f1, 0.6).values + b * caputo_l1(f2, 0.6).values
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.max(np.abs(rhs)))


class TestSequential:
    def test_kills_constants(self):
        f = make_sampled(lambda x: np.full_like(x, -2.2))
        d = sequential_d2alpha(f, 0.75)
        assert np.max(np.abs(d.values)) < 1e-13

    def test_alpha_one_second_derivative(self):
        f = make_sampled(lambda x: x**3, n=1025)
        d = sequential_d2alpha(f, 1.0)
        x = f.grid.nodes
        mask = x >= 4 * f.grid.spacing
        err = np.max(np.abs(d.values[mask] - 6 * x[mask]))
        assert err < 10 * f.grid.spacing

    def test_beta_zero_identity_under_refinement(self):
        # D^{2a} u = lam u for the decaying mode at beta = 0
        alpha, lam = 0.75, 1.0

        def fun(xs):
            return np.array([
                mittag_leffler(alpha, 1.0, -math.sqrt(lam) * x**alpha).value for x in xs
            ])

        res = []
        for lev in (6, 7, 8, 9):
            n = 2**lev + 1
            grid = Grid1D(1.0, n)
            f = SampledFunction(grid, fun(grid.nodes))
            d = sequential_d2alpha(f, alpha, source=fun, inner_refine=16)
            x = grid.nodes
            mask = x >= 0.25
            res.append(np.max(np.abs(d.values[mask] - lam * f.values[mask])))
        assert ls_order(res) >= 2 - alpha - 0.15


class TestResidualSequential:
    def test_exponential_alpha_one(self):
        lam = 1.0
        res = []
        for lev in (6, 8, 10):
            n = 2**lev + 1
            f = make_sampled(lambda x: np.exp(-x), n=n)
            r = residual_sequential(f, 1.0, 0.0, lam, x_cut=0.25,
                                    source=lambda x: np.exp(-x), inner_refine=8)
            res.append(r["max_residual"])
        assert res[-1] < res[0] < 0.1
        assert res[-1] < 2e-3

    def test_weighted_counterexample_alpha_one(self):
        # exp(-sqrt(lam) x^2/2) against u'' = lam x^2 u: the residual does not
        # vanish; it equals sqrt(lam)|u| up to the scheme error
        lam = 1.0
        fun = lambda x: np.exp(-math.sqrt(lam) * x**2 / 2.0)
        n = 2**10 + 1
        f = make_sampled(fun, n=n)
        grid = f.grid
        x = grid.nodes
        d = sequential_d2alpha(f, 1.0, source=fun, inner_refine=8).values
        mask = x >= 0.25
        resid = d[mask] - lam * x[mask] ** 2 * f.values[mask]
        pred = math.sqrt(lam) * np.abs(f.values[mask])
        assert np.max(np.abs(np.abs(resid) - pred)) < 0.02 * np.max(pred)

    def test_beta_domain(self):
        f = make_sampled(lambda x: x)
        with pytest.raises(DomainError):
            residual_sequential(f, 0.75, -1.0, 1.0)

    def test_default_cut_skips_boundary_layer(self):
        f = make_sampled(lambda x: x**0.8, n=129)
        r = residual_sequential(f, 0.8, 0.0, 0.0)
        assert r["num_nodes"] == 129 - 4


class TestGrid:
    def test_grid_validation(self):
        with pytest.raises(DomainError):
            Grid1D(-1.0, 65)
        with pytest.raises(DomainError):
            Grid1D(1.0, 2)
        with pytest.raises(DomainError):
            SampledFunction(Grid1D(1.0, 65), np.zeros(64))

    def test_nodes(self):
        g = Grid1D(2.0, 5)
        assert g.spacing == 0.5
        assert np.array_equal(g.nodes, [0.0, 0.5, 1.0, 1.5, 2.0])
