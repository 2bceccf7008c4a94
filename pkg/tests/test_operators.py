import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tgk.errors import InvalidParamsError, NegativeSymbolError, ResolutionError
from tgk.operators import make_operator, make_symbol, project_boundary_data


class TestDirichletInterval:
    def test_eigenvalues(self):
        op = make_operator("dirichlet_interval", length=1.0)
        assert op.eigenvalue(3) == pytest.approx(9 * math.pi**2, rel=1e-15)
        assert op.mode_rate(3) == pytest.approx(3 * math.pi, rel=1e-15)

    def test_boundary_zeros(self):
        op = make_operator("dirichlet_interval", length=1.0)
        for k in (1, 2, 7):
            vals = op.eigenfunction(k, np.array([0.0, 1.0]))
            assert np.max(np.abs(vals)) < 1e-12

    def test_orthonormal(self):
        op = make_operator("dirichlet_interval", length=1.0)
        G = op.gram(64)
        assert np.max(np.abs(G - np.eye(64))) <= 1e-8


class TestNeumann:
    def test_zero_mode(self):
        op = make_operator("neumann_interval", length=1.0)
        assert op.has_zero_eigenvalue
        assert op.eigenvalue(0) == 0.0
        assert op.k_min == 0
        G = op.gram(16)
        assert np.max(np.abs(G - np.eye(16))) <= 1e-8


class TestStarGraph:
    def test_eigenvalues(self):
        op = make_operator("star_graph", d=3)
        assert op.eigenvalue(1) == pytest.approx(0.25, rel=1e-15)
        assert op.eigenvalue(4) == pytest.approx(12.25, rel=1e-15)

    def test_orthonormal_over_edges(self):
        op = make_operator("star_graph", d=3)
        G = op.gram(24)
        assert np.max(np.abs(G - np.eye(24))) <= 1e-8

    def test_too_few_edges(self):
        with pytest.raises(InvalidParamsError):
            make_operator("star_graph", d=1)


class TestInvolution:
    def test_printed_mode_factor(self):
        op = make_operator("involution", eps=0.25)
        assert op.mode_rate(1) == pytest.approx(0.75 * math.pi, rel=1e-15)
        assert op.mode_rate(2) == pytest.approx(1.25 * 2 * math.pi, rel=1e-15)

    def test_orthonormal(self):
        op = make_operator("involution", eps=0.5)
        G = op.gram(32)
        assert np.max(np.abs(G - np.eye(32))) <= 1e-8

    def test_eps_bounds(self):
        with pytest.raises(InvalidParamsError):
            make_operator("involution", eps=1.0)


class TestJacobiFractional:
    def test_first_eigenvalue(self):
        mu = 0.4
        op = make_operator("jacobi_fractional", mu=mu)
        assert op.eigenvalue(1) == pytest.approx(math.gamma(1 + mu) / math.gamma(1 - mu),
                                                 rel=1e-13)

    def test_small_mu_limit(self):
        op = make_operator("jacobi_fractional", mu=1e-7)
        assert op.eigenvalue(1) == pytest.approx(1.0, abs=1e-5)

    def test_eigenvalues_increasing(self):
        op = make_operator("jacobi_fractional", mu=0.6)
        lam = [op.eigenvalue(k) for k in range(1, 65)]
        assert all(a < b for a, b in zip(lam, lam[1:]))

    def test_orthonormal_weighted(self):
        op = make_operator("jacobi_fractional", mu=0.4)
        G = op.gram(64)
        assert np.max(np.abs(G - np.eye(64))) <= 1e-8

    def test_mu_domain(self):
        with pytest.raises(InvalidParamsError):
            make_operator("jacobi_fractional", mu=1.5)

    def test_projection_of_eigenfunction(self):
        op = make_operator("jacobi_fractional", mu=0.3)
        coeffs = project_boundary_data(lambda y: op.eigenfunction(3, y), op, 8)
        assert coeffs.values[3] == pytest.approx(1.0, abs=1e-10)
        others = np.delete(coeffs.values, 3)
        assert np.max(np.abs(others)) <= 1e-10


class TestProjection:
    def test_single_mode(self):
        op = make_operator("dirichlet_interval", length=1.0)
        coeffs = project_boundary_data(lambda y: op.eigenfunction(1, y), op, 8)
        assert coeffs.values[1] == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.abs(np.delete(coeffs.values, 1))) <= 1e-10

    def test_sine_mode_two(self):
        op = make_operator("dirichlet_interval", length=1.0)
        phi = lambda y: math.sqrt(2) * np.sin(2 * math.pi * np.asarray(y))
        coeffs = project_boundary_data(phi, op, 8)
        assert coeffs.values[2] == pytest.approx(1.0, abs=1e-12)
        assert coeffs.parseval_defect <= 1e-10

    def test_star_graph_projection(self):
        op = make_operator("star_graph", d=3)
        phi = lambda y, edge: op.eigenfunction(2, y, edge)
        coeffs = project_boundary_data(phi, op, 6)
        assert coeffs.values[2] == pytest.approx(1.0, abs=1e-10)

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=20, deadline=None)
    def test_bessel_inequality(self, seed):
        rng = np.random.default_rng(seed)
        c = rng.standard_normal(4)

        def phi(y):
            y = np.asarray(y)
            return (c[0] * np.sin(math.pi * y) + c[1] * y * (1 - y)
                    + c[2] * np.exp(-((y - 0.4) ** 2) * 8) + c[3])

        op = make_operator("dirichlet_interval", length=1.0)
        coeffs = project_boundary_data(phi, op, 16)
        assert np.sum(coeffs.values**2) <= coeffs.data_l2**2 + 1e-8

    def test_sampled_projection_and_resolution(self):
        op = make_operator("dirichlet_interval", length=1.0)
        y = np.linspace(0.0, 1.0, 401)
        vals = math.sqrt(2) * np.sin(math.pi * y)
        coeffs = project_boundary_data((y, vals), op, 8)
        assert coeffs.values[1] == pytest.approx(1.0, abs=1e-5)
        with pytest.raises(ResolutionError):
            project_boundary_data((y[::50], vals[::50]), op, 8)


class TestSymbols:
    def test_laplacian(self):
        a = make_symbol("laplacian", dimension=1)
        assert a(3.0) == pytest.approx(9.0)
        a2 = make_symbol("laplacian", dimension=2)
        assert a2(3.0, 4.0) == pytest.approx(25.0)

    def test_fractional(self):
        a = make_symbol("fractional_laplacian", dimension=1, s=0.5)
        assert a(4.0) == pytest.approx(4.0)
        assert a(-4.0) == pytest.approx(4.0)
        with pytest.raises(InvalidParamsError):
            make_symbol("fractional_laplacian", dimension=1, s=1.5)

    def test_polynomial(self):
        a = make_symbol("polynomial", dimension=1, coefficients=[0.0, 0.0, 0.0, 0.0, 1.0])
        assert a(-2.0) == pytest.approx(16.0)

    def test_negative_symbol_detected(self):
        a = make_symbol("polynomial", dimension=1, coefficients=[0.0, 1.0])
        with pytest.raises(NegativeSymbolError):
            a(-1.0)

    @given(st.floats(min_value=-50, max_value=50), st.floats(min_value=0.05, max_value=0.95))
    @settings(max_examples=30, deadline=None)
    def test_fractional_nonnegative(self, xi, s):
        a = make_symbol("fractional_laplacian", dimension=1, s=s)
        assert a(xi) >= 0.0
