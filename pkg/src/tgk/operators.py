"""Catalog of spectral operators (eigenpairs) and Fourier symbols, plus
projection of boundary data onto the eigenbases.

Mode indexing follows each family's natural count: the Dirichlet-type kinds
(interval, star graph, involution, fractional Jacobi) start at k = 1 and
coefficient slot 0 is a structural zero, while the Neumann interval starts at
k = 0 with its genuine zero eigenvalue.  Orthonormality is meant with respect
to each operator's declared inner product; all kinds use the plain L2 product
except the fractional Jacobi operator, whose product carries the weight
(1-y)^{-mu} (1+y)^{-mu} natural to its eigenfunctions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_jacobi

from .errors import DomainError, InvalidParamsError, NegativeSymbolError, ResolutionError
from .specfun import log_gamma

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)
POINTS_PER_OSCILLATION = 10.0


# --------------------------------------------------------------------------
# coefficient vectors

@dataclass
class CoefficientVector:
    """Expansion coefficients phi_k, k = 0..K-1, with projection diagnostics."""

    values: np.ndarray
    data_l2: float = 0.0
    parseval_defect: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1:
            raise DomainError("CoefficientVector: values must be one-dimensional")

    @property
    def truncation(self) -> int:
        return self.values.size

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(self.values**2)))

    def hl_norm(self, op: "SpectralOperator") -> float:
        lam = np.array([op.eigenvalue(k) for k in range(self.truncation)])
        return float(np.sqrt(np.sum(lam**2 * self.values**2)))


# --------------------------------------------------------------------------
# spectral operators

class SpectralOperator:
    """Base: eigenvalue/eigenfunction catalog entry with quadrature helpers."""

    kind: str = "abstract"
    k_min: int = 1
    has_zero_eigenvalue: bool = False
    edges: int = 1

    # interval endpoints (per edge for graphs)
    y_lo: float = 0.0
    y_hi: float = 1.0

    def eigenvalue(self, k: int) -> float:
        raise NotImplementedError

    def mode_rate(self, k: int) -> float:
        """sqrt(lambda_k), the decay rate entering the mode factor."""
        lam = self.eigenvalue(k)
        return math.sqrt(lam)

    def eigenfunction(self, k: int, y: np.ndarray, edge: int = 0) -> np.ndarray:
        raise NotImplementedError

    def weight(self, y: np.ndarray) -> np.ndarray:
        return np.ones_like(np.asarray(y, dtype=float))

    def check_domain(self, y: float, edge: int = 0) -> None:
        if not (self.y_lo <= y <= self.y_hi):
            raise DomainError(f"y={y} outside the operator domain [{self.y_lo}, {self.y_hi}]")
        if not (0 <= edge < self.edges):
            raise DomainError(f"edge={edge} outside 0..{self.edges - 1}")

    # -- quadrature ---------------------------------------------------------

    def max_frequency(self, K: int) -> float:
        """Largest angular frequency among modes k < K (for grid resolution)."""
        raise NotImplementedError

    def quad_rule(self, K: int) -> tuple[np.ndarray, np.ndarray]:
        """Composite 32-point Gauss-Legendre panels resolving mode K-1."""
        length = self.y_hi - self.y_lo
        freq = max(self.max_frequency(K), 1.0)
        # panels so that nodes per wavelength >= POINTS_PER_OSCILLATION
        wavelength = 2.0 * math.pi / freq
        need = POINTS_PER_OSCILLATION * length / wavelength
        panels = max(2, int(math.ceil(need / 32.0)) + 1)
        edges_ = np.linspace(self.y_lo, self.y_hi, panels + 1)
        half = 0.5 * (edges_[1:] - edges_[:-1])
        mid = 0.5 * (edges_[1:] + edges_[:-1])
        nodes = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
        wts = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
        return nodes, wts

    # -- projection / Gram ---------------------------------------------------

    def project(self, phi, K: int) -> CoefficientVector:
        """Coefficients phi_k = <phi, e_k> under the declared inner product.

        phi is a callable of y (of (y, edge) for graph kinds).
        """
        nodes, wts = self.quad_rule(K)
        wq = wts * self.weight(nodes)
        coeffs = np.zeros(K)
        norm_sq = 0.0
        for edge in range(self.edges):
            fv = np.asarray(phi(nodes, edge) if self.edges > 1 else phi(nodes), dtype=float)
            norm_sq += float(np.sum(fv * fv * wq))
            for k in range(self.k_min, K):
                ek = self.eigenfunction(k, nodes, edge)
                coeffs[k] += float(np.sum(fv * ek * wq))
        data_l2 = math.sqrt(norm_sq)
        defect = abs(float(np.sum(coeffs**2)) - norm_sq)
        return CoefficientVector(coeffs, data_l2=data_l2, parseval_defect=defect)

    def project_samples(self, y: np.ndarray, values: np.ndarray, K: int) -> CoefficientVector:
        """Projection from uniform samples by the trapezoid rule (interval kinds)."""
        if self.edges > 1:
            raise DomainError("sample-based projection is only defined for interval kinds")
        y = np.asarray(y, dtype=float)
        values = np.asarray(values, dtype=float)
        freq = max(self.max_frequency(K), 1.0)
        per_osc = y.size * (2.0 * math.pi / freq) / (self.y_hi - self.y_lo)
        if per_osc < POINTS_PER_OSCILLATION:
            raise ResolutionError(
                f"grid gives {per_osc:.1f} points per oscillation of mode {K - 1}; "
                f"need >= {POINTS_PER_OSCILLATION}"
            )
        wq = np.full(y.size, y[1] - y[0])
        wq[0] *= 0.5
        wq[-1] *= 0.5
        wq = wq * self.weight(y)
        coeffs = np.zeros(K)
        for k in range(self.k_min, K):
            coeffs[k] = float(np.sum(values * self.eigenfunction(k, y) * wq))
        norm_sq = float(np.sum(values * values * wq))
        defect = abs(float(np.sum(coeffs**2)) - norm_sq)
        return CoefficientVector(coeffs, data_l2=math.sqrt(norm_sq), parseval_defect=defect)

    def gram(self, K: int) -> np.ndarray:
        """Matrix of inner products of modes k_min..k_min+K-1 (orthonormality audit)."""
        nodes, wts = self.quad_rule(self.k_min + K)
        wq = wts * self.weight(nodes)
        G = np.zeros((K, K))
        for edge in range(self.edges):
            E = np.stack(
                [self.eigenfunction(k, nodes, edge) for k in range(self.k_min, self.k_min + K)]
            )
            G += E @ (E * wq).T
        return G


class DirichletInterval(SpectralOperator):
    """Second-derivative operator with Dirichlet ends on (0, length)."""

    kind = "dirichlet_interval"

    def __init__(self, length: float = 1.0):
        if not length > 0:
            raise InvalidParamsError(f"dirichlet_interval: length must be > 0, got {length}")
        self.length = length
        self.y_hi = length

    def eigenvalue(self, k: int) -> float:
        if k < 1:
            return 0.0
        return (k * math.pi / self.length) ** 2

    def eigenfunction(self, k, y, edge=0):
        y = np.asarray(y, dtype=float)
        if k < 1:
            return np.zeros_like(y)
        return math.sqrt(2.0 / self.length) * np.sin(k * math.pi * y / self.length)

    def max_frequency(self, K):
        return max(K - 1, 1) * math.pi / self.length


class NeumannInterval(SpectralOperator):
    """Second-derivative operator with Neumann ends; lambda_0 = 0 branch."""

    kind = "neumann_interval"
    k_min = 0
    has_zero_eigenvalue = True

    def __init__(self, length: float = 1.0):
        if not length > 0:
            raise InvalidParamsError(f"neumann_interval: length must be > 0, got {length}")
        self.length = length
        self.y_hi = length

    def eigenvalue(self, k: int) -> float:
        return (k * math.pi / self.length) ** 2

    def eigenfunction(self, k, y, edge=0):
        y = np.asarray(y, dtype=float)
        if k == 0:
            return np.full_like(y, 1.0 / math.sqrt(self.length))
        return math.sqrt(2.0 / self.length) * np.cos(k * math.pi * y / self.length)

    def max_frequency(self, K):
        return max(K - 1, 1) * math.pi / self.length


class StarGraph(SpectralOperator):
    """Equal-length star graph with d >= 2 edges of length pi; the catalog's
    equal-component family lambda_k = (k - 1/2)^2."""

    kind = "star_graph"

    def __init__(self, d: int):
        if d < 2:
            raise InvalidParamsError(f"star_graph: need at least 2 edges, got {d}")
        self.edges = int(d)
        self.y_hi = math.pi

    def eigenvalue(self, k: int) -> float:
        if k < 1:
            return 0.0
        return (k - 0.5) ** 2

    def eigenfunction(self, k, y, edge=0):
        y = np.asarray(y, dtype=float)
        if k < 1:
            return np.zeros_like(y)
        norm = math.sqrt(2.0 / (self.edges * math.pi))
        return norm * np.sin((k - 0.5) * y)

    def max_frequency(self, K):
        return max(K - 0.5, 1.0)


class Involution(SpectralOperator):
    """Reflection-perturbed second-derivative operator on (-pi, pi).

    The mode factor keeps the printed form sqrt(lambda_k) = (1 + (-1)^k eps) k pi;
    the eigenfunctions are the odd Dirichlet family sin(k y)/sqrt(pi), which is
    orthonormal (the printed sin(k pi y) family is not orthogonal on this
    interval; the discrepancy is recorded in the claim ledger).
    """

    kind = "involution"

    def __init__(self, eps: float):
        if not -1.0 < eps < 1.0:
            raise InvalidParamsError(f"involution: need |eps| < 1, got {eps}")
        self.eps = eps
        self.y_lo = -math.pi
        self.y_hi = math.pi

    def mode_rate(self, k: int) -> float:
        if k < 1:
            return 0.0
        return (1.0 + (-1.0) ** k * self.eps) * k * math.pi

    def eigenvalue(self, k: int) -> float:
        return self.mode_rate(k) ** 2

    def eigenfunction(self, k, y, edge=0):
        y = np.asarray(y, dtype=float)
        if k < 1:
            return np.zeros_like(y)
        return np.sin(k * y) / math.sqrt(math.pi)

    def max_frequency(self, K):
        return float(max(K - 1, 1))


class JacobiFractional(SpectralOperator):
    """Weighted fractional Sturm-Liouville operator on (-1, 1) with
    eigenvalues Gamma(k+mu)/Gamma(k-mu) and eigenfunctions proportional to
    (1+y)^mu P^{(-mu,mu)}_{k-1}(y).

    The declared inner product carries the weight (1-y)^{-mu}(1+y)^{-mu};
    under it the family is orthogonal and the normalization constants are
    computed numerically with Gauss-Jacobi rules that integrate the
    polynomial part exactly.
    """

    kind = "jacobi_fractional"

    def __init__(self, mu: float, max_modes: int = 128):
        if not 0.0 < mu < 1.0:
            raise InvalidParamsError(f"jacobi_fractional: need mu in (0,1), got {mu}")
        self.mu = mu
        self.y_lo = -1.0
        self.y_hi = 1.0
        self.max_modes = max_modes
        nq = 2 * max_modes + 8
        # rule with weight (1-y)^{-mu} (1+y)^{+mu}: exact for P_j P_k
        self._gram_nodes, self._gram_wts = roots_jacobi(nq, -mu, mu)
        P = self._poly_table(max_modes, self._gram_nodes)
        nrm2 = (P * P) @ self._gram_wts
        self._norms = np.sqrt(nrm2)

    def _poly_table(self, K: int, y: np.ndarray) -> np.ndarray:
        """P^{(-mu,mu)}_0..P_{K-1} by the three-term recurrence."""
        y = np.asarray(y, dtype=float)
        mu = self.mu
        P = np.zeros((K, y.size))
        P[0] = 1.0
        if K > 1:
            P[1] = y - mu
        for n in range(2, K):
            P[n] = ((2 * n - 1) * (2 * n - 2) * y * P[n - 1]
                    - 2.0 * ((n - 1) ** 2 - mu**2) * P[n - 2]) / (n * (2 * n - 2))
        return P

    def eigenvalue(self, k: int) -> float:
        if k < 1:
            return 0.0
        return math.exp(log_gamma(k + self.mu) - log_gamma(k - self.mu))

    def eigenfunction(self, k, y, edge=0):
        y = np.asarray(y, dtype=float)
        if k < 1:
            return np.zeros_like(y)
        if k > self.max_modes:
            raise ResolutionError(f"jacobi_fractional built for k <= {self.max_modes}")
        P = self._poly_table(k, y) if k > 1 else None
        pk = P[k - 1] if P is not None else np.ones_like(y)
        return (1.0 + y) ** self.mu * pk / self._norms[k - 1]

    def weight(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        return (1.0 - y) ** (-self.mu) * (1.0 + y) ** (-self.mu)

    def max_frequency(self, K):
        return float(max(K, 2))

    def project(self, phi, K: int) -> CoefficientVector:
        """Projection in the transformed variable phi / (1+y)^mu.

        phi_k = <phi, e_k>_w = int [phi (1+y)^{-mu}] P_{k-1} (1-y)^{-mu}(1+y)^{mu} dy / norm_k,
        evaluated with the (-mu, +mu) Gauss-Jacobi rule, which is exact whenever
        phi has the natural boundary form (1+y)^mu * polynomial.
        """
        if K > self.max_modes:
            raise ResolutionError(f"jacobi_fractional built for K <= {self.max_modes}")
        y, w = self._gram_nodes, self._gram_wts
        ft = np.asarray(phi(y), dtype=float) * (1.0 + y) ** (-self.mu)
        P = self._poly_table(max(K, 1), y)
        coeffs = np.zeros(K)
        for k in range(1, K):
            coeffs[k] = float(np.sum(ft * P[k - 1] * w)) / self._norms[k - 1]
        norm_sq = float(np.sum(ft * ft * w))
        defect = abs(float(np.sum(coeffs**2)) - norm_sq)
        return CoefficientVector(coeffs, data_l2=math.sqrt(norm_sq), parseval_defect=defect)

    def gram(self, K: int) -> np.ndarray:
        y, w = self._gram_nodes, self._gram_wts
        P = self._poly_table(K + 1, y)
        E = P[:K] / self._norms[:K, None]
        return E @ (E * w).T


_OPERATOR_KINDS = {
    "dirichlet_interval": DirichletInterval,
    "neumann_interval": NeumannInterval,
    "star_graph": StarGraph,
    "involution": Involution,
    "jacobi_fractional": JacobiFractional,
}


def make_operator(kind: str, **params) -> SpectralOperator:
    """Build a catalog operator: dirichlet_interval(length), neumann_interval(length),
    star_graph(d), involution(eps), jacobi_fractional(mu)."""
    try:
        cls = _OPERATOR_KINDS[kind]
    except KeyError:
        raise InvalidParamsError(
            f"unknown operator kind {kind!r}; choose from {sorted(_OPERATOR_KINDS)}"
        ) from None
    return cls(**params)


def project_boundary_data(phi, op: SpectralOperator, K: int) -> CoefficientVector:
    """Project boundary data onto the first K coefficient slots of ``op``.

    phi may be a callable (vectorized in y; receiving (y, edge) for graph
    kinds) or a pair (y_samples, values) on a uniform grid.
    """
    if K < 1:
        raise DomainError(f"need K >= 1, got {K}")
    if callable(phi):
        return op.project(phi, K)
    y, values = phi
    return op.project_samples(np.asarray(y, float), np.asarray(values, float), K)


# --------------------------------------------------------------------------
# Fourier symbols

@dataclass
class SymbolSpec:
    """Nonnegative Fourier-multiplier symbol a(xi) on R^N, N in {1, 2}."""

    dimension: int
    kind: str
    s: float | None = None
    coefficients: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise InvalidParamsError(f"symbol dimension must be 1 or 2, got {self.dimension}")
        if self.kind == "fractional_laplacian" and not (self.s and 0.0 < self.s < 1.0):
            raise InvalidParamsError(f"fractional_laplacian: need s in (0,1), got {self.s}")
        if self.kind == "polynomial" and self.dimension != 1:
            raise InvalidParamsError("polynomial symbols are supported in dimension 1")

    def __call__(self, *xi) -> np.ndarray:
        if len(xi) != self.dimension:
            raise DomainError(f"symbol expects {self.dimension} frequency components")
        comps = [np.asarray(c, dtype=float) for c in xi]
        sq = sum(c * c for c in comps)
        if self.kind == "laplacian":
            a = sq
        elif self.kind == "fractional_laplacian":
            a = sq**self.s
        elif self.kind == "polynomial":
            x = comps[0]
            a = np.zeros_like(x)
            for c in reversed(self.coefficients):
                a = a * x + c
        else:
            raise InvalidParamsError(f"unknown symbol kind {self.kind!r}")
        a = np.asarray(a, dtype=float)
        if np.any(a < 0.0):
            bad = np.min(a)
            raise NegativeSymbolError(f"symbol evaluated to {bad} < 0")
        return a


def make_symbol(kind: str, dimension: int = 1, **params) -> SymbolSpec:
    """Build a symbol: laplacian, fractional_laplacian(s), polynomial(coefficients)."""
    if kind == "laplacian":
        return SymbolSpec(dimension, kind)
    if kind == "fractional_laplacian":
        return SymbolSpec(dimension, kind, s=params.get("s"))
    if kind == "polynomial":
        return SymbolSpec(dimension, kind, coefficients=tuple(params.get("coefficients", ())))
    raise InvalidParamsError(f"unknown symbol kind {kind!r}")
