"""Composite Gauss-Legendre quadrature with spectral cumulative integrals.

All inner products, half-line integrals and Fredholm discretizations in this
package run on composite Gauss-Legendre panels.  Besides plain integration,
panels support *cumulative* integration: the integrand's Legendre expansion on
each panel is integrated term by term, which gives antiderivative values at
the quadrature nodes to the same spectral accuracy as the quadrature itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on the reference interval [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def gl_interval(a: float, b: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre rule mapped onto [a, b]."""
    t, w = gauss_legendre(order)
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * t, half * w


@lru_cache(maxsize=16)
def cumulative_matrix(order: int) -> np.ndarray:
    """Matrix C with (C f)(i) = integral of f from -1 to t_i, f given at GL nodes.

    Built from the exact antiderivatives of Legendre polynomials,
    int_{-1}^{t} P_l = (P_{l+1}(t) - P_{l-1}(t)) / (2l+1) for l >= 1.
    Exact for polynomials of degree < order.
    """
    t, w = gauss_legendre(order)
    P = np.empty((order + 1, order))
    P[0] = 1.0
    P[1] = t
    for l in range(1, order):
        P[l + 1] = ((2 * l + 1) * t * P[l] - l * P[l - 1]) / (l + 1)
    Pint = np.empty((order, order))
    Pint[0] = t + 1.0
    for l in range(1, order):
        Pint[l] = (P[l + 1] - P[l - 1]) / (2 * l + 1)
    # coefficient extraction: c_l = (2l+1)/2 * sum_j w_j P_l(t_j) f_j
    coeff = ((2.0 * np.arange(order) + 1.0) / 2.0)[:, None] * (w[None, :] * P[:order])
    return Pint.T @ coeff


@dataclass(frozen=True)
class PanelGrid:
    """Composite Gauss-Legendre rule on consecutive panels."""

    edges: np.ndarray     # (P+1,) increasing panel boundaries
    order: int            # nodes per panel
    nodes: np.ndarray     # (P*order,)
    weights: np.ndarray   # (P*order,)

    @property
    def npanels(self) -> int:
        return len(self.edges) - 1

    @property
    def half_widths(self) -> np.ndarray:
        return 0.5 * np.diff(self.edges)

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Integrate rows of ``values`` (shape (..., nnodes)) over the grid."""
        return values @ self.weights

    def panel_integrals(self, values: np.ndarray) -> np.ndarray:
        """Per-panel integrals, shape (..., P)."""
        v = values.reshape(values.shape[:-1] + (self.npanels, self.order))
        w = self.weights.reshape(self.npanels, self.order)
        return np.einsum('...pk,pk->...p', v, w)

    def prefix_integrals(self, values: np.ndarray) -> np.ndarray:
        """Integrals from the left endpoint to each panel edge, shape (..., P+1)."""
        per = self.panel_integrals(values)
        out = np.zeros(per.shape[:-1] + (self.npanels + 1,))
        np.cumsum(per, axis=-1, out=out[..., 1:])
        return out

    def cumulative(self, values: np.ndarray) -> np.ndarray:
        """Antiderivative (from the left endpoint) at every node, spectrally exact."""
        C = cumulative_matrix(self.order)
        v = values.reshape(values.shape[:-1] + (self.npanels, self.order))
        within = np.einsum('...pk,ik->...pi', v, C) * self.half_widths[None, :, None]
        prefix = self.prefix_integrals(values)[..., :-1]
        return (prefix[..., None] + within).reshape(values.shape)

    def locate(self, x: np.ndarray) -> np.ndarray:
        """Panel index containing each x (clipped to the grid)."""
        return np.clip(np.searchsorted(self.edges, x, side='right') - 1,
                       0, self.npanels - 1)


def panel_grid(edges: np.ndarray, order: int) -> PanelGrid:
    edges = np.asarray(edges, dtype=float)
    t, w = gauss_legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return PanelGrid(edges=edges, order=order, nodes=nodes, weights=weights)


def uniform_panel_grid(a: float, b: float, npanels: int, order: int) -> PanelGrid:
    return panel_grid(np.linspace(a, b, npanels + 1), order)
