"""Orthonormal polynomials for w = e^{-V} and the Christoffel-Darboux kernel.

The three-term recurrence

    b_j phi_{j+1}(x) = (x - a_j) phi_j(x) - b_{j-1} phi_{j-1}(x)

is computed by a discretized Stieltjes procedure: Lanczos tridiagonalization
(with full reorthogonalization) of multiplication-by-x on a composite
Gauss-Legendre discretization of the measure e^{-V(x)} dx.  The grid is
refined until the coefficients stabilize, and orthonormality is certified on
an independent rule.  Moment-determinant constructions are avoided: they are
catastrophically ill-conditioned in double precision beyond j of about 20.

All evaluations run directly on the weighted functions phi_j = p_j w^{1/2}
(weight folded into phi_0), so bare-polynomial overflow never occurs.  The
same composite grid powers antiderivatives Psi_j(x) = int_{-inf}^x phi_j and
tail integrals, which downstream modules use for epsilon-integrated kernels.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._quad import PanelGrid, gl_interval, uniform_panel_grid
from .potential import Potential

DEFAULT_TOL = 1e-11
# Airy-scale margin past the largest turning point; e^{-(4/3)xi^{3/2}} < 1e-30
# for xi >= 16, which realizes the intended <1e-30 tail truncation error.
_EDGE_MARGIN = 16.0


class RecurrenceConvergenceError(RuntimeError):
    """Grid refinement exhausted before the coefficients stabilized."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (achieved residual {residual:.3e})")
        self.residual = residual


@dataclass
class RecurrenceTable:
    """Recurrence data plus the quadrature grid it was certified on.

    a[j], b[j] are the orthonormal-recurrence coefficients with b[j] linking
    phi_j to phi_{j+1}; the monic-normalization quantity beta_j = ||pi_j|| /
    ||pi_{j-1}|| squared is b[j-1]^2.  norm0 = p_0 = (int e^{-V})^{-1/2}.
    """

    potential: Potential
    a: np.ndarray
    b: np.ndarray
    norm0: float
    grid: PanelGrid
    cutoff: float
    tol: float
    orth_residual: float
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def jmax(self) -> int:
        return len(self.a)

    # -- evaluation ---------------------------------------------------------

    def phi(self, jmax: int, x) -> np.ndarray:
        """phi_0..phi_jmax at x; shape (jmax+1,) for scalar x, else (jmax+1, len(x))."""
        ph, _ = self._run_recurrence(jmax, x, derivatives=False)
        return ph

    def phi_and_deriv(self, jmax: int, x) -> tuple[np.ndarray, np.ndarray]:
        """phi_j and phi_j' via the differentiated recurrence.

        phi_j' = p_j' w^{1/2} - (V'/2) phi_j; seeding phi_0' = -(V'/2) phi_0
        propagates exactly through the recurrence, with no overflow of bare p_j.
        """
        return self._run_recurrence(jmax, x, derivatives=True)

    def _run_recurrence(self, jmax, x, derivatives):
        if jmax >= self.jmax:
            raise IndexError(f"jmax={jmax} out of range (capacity {self.jmax})")
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=float))
        a, b = self.a, self.b
        ph = np.empty((jmax + 1, x.size))
        half_w = np.exp(-0.5 * self.potential.value(x))
        ph[0] = self.norm0 * half_w
        dph = None
        if derivatives:
            dph = np.empty_like(ph)
            dph[0] = -0.5 * self.potential.deriv(x) * ph[0]
        if jmax >= 1:
            ph[1] = (x - a[0]) * ph[0] / b[0]
            if derivatives:
                dph[1] = ((x - a[0]) * dph[0] + ph[0]) / b[0]
        for j in range(1, jmax):
            ph[j + 1] = ((x - a[j]) * ph[j] - b[j - 1] * ph[j - 1]) / b[j]
            if derivatives:
                dph[j + 1] = ((x - a[j]) * dph[j] + ph[j] - b[j - 1] * dph[j - 1]) / b[j]
        if scalar:
            ph = ph[:, 0]
            dph = dph[:, 0] if derivatives else None
        return ph, dph

    # -- cached grid tables --------------------------------------------------

    def _grid_tables(self):
        """phi, phi', antiderivatives and totals on the certified grid."""
        if 'phi_grid' not in self._cache:
            ph, dph = self._run_recurrence(self.jmax - 1, self.grid.nodes, True)
            psi = self.grid.cumulative(ph)
            totals = self.grid.integrate(ph)
            self._cache.update(phi_grid=ph, dphi_grid=dph, psi_grid=psi,
                               totals=totals)
        c = self._cache
        return c['phi_grid'], c['dphi_grid'], c['psi_grid'], c['totals']

    def integrals(self) -> np.ndarray:
        """I_j = int_R phi_j over the certified grid."""
        return self._grid_tables()[3]

    def antiderivative(self, jmax: int, x) -> np.ndarray:
        """Psi_j(x) = int_{-inf}^x phi_j for j <= jmax, vectorized in x.

        Panel-edge prefix sums plus a fresh Gauss-Legendre rule on the partial
        panel [edge, x]; phi is smooth within a panel so this is spectrally
        accurate.
        """
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=float))
        x = np.clip(x, self.grid.edges[0], self.grid.edges[-1])
        _, _, _, _ = self._grid_tables()
        if 'prefix' not in self._cache:
            ph = self._cache['phi_grid']
            self._cache['prefix'] = self.grid.prefix_integrals(ph)
        prefix = self._cache['prefix'][:jmax + 1]
        p = self.grid.locate(x)
        left = self.grid.edges[p]
        t, w = np.polynomial.legendre.leggauss(24)
        half = 0.5 * (x - left)
        sub = (0.5 * (x + left))[:, None] + half[:, None] * t[None, :]
        ph_sub = self.phi(jmax, sub.ravel()).reshape(jmax + 1, x.size, 24)
        partial = np.einsum('jsk,s,k->js', ph_sub, half, w)
        out = prefix[:, p] + partial
        return out[:, 0] if scalar else out

    def tail_integral(self, jmax: int, x) -> np.ndarray:
        """int_x^{+inf} phi_j for j <= jmax (the weight kills the true tail)."""
        totals = self.integrals()[:jmax + 1]
        psi = self.antiderivative(jmax, x)
        return totals[..., None] - psi if psi.ndim > 1 else totals - psi

    # -- CSV interface -------------------------------------------------------

    def to_csv(self, path) -> None:
        with open(path, 'w', newline='') as fh:
            wr = csv.writer(fh)
            wr.writerow(['j', 'a_j', 'b_j'])
            for j in range(self.jmax):
                wr.writerow([j, format(self.a[j], '.17g'), format(self.b[j], '.17g')])

    @staticmethod
    def coefficients_from_csv(path) -> tuple[np.ndarray, np.ndarray]:
        rows = list(csv.reader(open(path)))
        data = np.array([[float(r[1]), float(r[2])] for r in rows[1:]])
        return data[:, 0], data[:, 1]


def _support_cutoff(potential: Potential, jmax: int) -> float:
    """Right cutoff: turning point of the highest index plus an Airy margin."""
    from .equilibrium import mrs_numbers  # local import, no cycle at module load

    n_top = jmax + 2
    c, d = mrs_numbers(potential, n_top)
    alpha = 2.0 * potential.m ** (2.0 / 3.0)
    return c * (1.0 + _EDGE_MARGIN / (alpha * n_top ** (2.0 / 3.0))) + abs(d) + 1.0


def _grid_for(potential: Potential, jmax: int, cutoff: float,
              npanels: int, order: int) -> PanelGrid:
    # symmetric cutoff covers the left edge for every admissible potential in
    # the one-interval class; panel count scales with the zero density
    return uniform_panel_grid(-cutoff, cutoff, npanels, order)


def _stieltjes(grid: PanelGrid, potential: Potential, jmax: int):
    """Lanczos with full reorthogonalization on the discretized measure."""
    logw = -potential.value(grid.nodes)
    mu = grid.weights * np.exp(logw)
    mass = float(mu.sum())
    basis = np.empty((jmax + 1, len(grid.nodes)))
    basis[0] = np.sqrt(mu / mass)
    a = np.zeros(jmax)
    b = np.zeros(jmax)
    prev = np.zeros_like(basis[0])
    bprev = 0.0
    x = grid.nodes
    for j in range(jmax):
        u = x * basis[j]
        a[j] = basis[j] @ u
        u = u - a[j] * basis[j] - bprev * prev
        for _ in range(2):
            u -= basis[:j + 1].T @ (basis[:j + 1] @ u)
        b[j] = float(np.sqrt(u @ u))
        if b[j] <= 0.0 or not np.isfinite(b[j]):
            raise RecurrenceConvergenceError(
                f"Lanczos breakdown at step {j}", float(b[j]))
        basis[j + 1] = u / b[j]
        prev = basis[j]
        bprev = b[j]
    return a, b, 1.0 / np.sqrt(mass)


def compute_recurrence(potential: Potential, jmax: int,
                       tol: float = DEFAULT_TOL) -> RecurrenceTable:
    """Recurrence coefficients a_0..a_{jmax-1}, b_0..b_{jmax-1} to tolerance tol.

    Doubles the panel count until coefficients are stable to tol, then
    certifies orthonormality of phi_0..phi_{jmax-1} on an independent rule.
    """
    if jmax < 1:
        raise ValueError("jmax must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    cutoff = _support_cutoff(potential, jmax)
    order = 24
    npanels = max(24, int(1.3 * jmax))
    prev = None
    residual = np.inf
    for _ in range(6):
        grid = _grid_for(potential, jmax, cutoff, npanels, order)
        a, b, norm0 = _stieltjes(grid, potential, jmax)
        if prev is not None:
            scale = max(1.0, float(np.max(np.abs(b))))
            residual = max(float(np.max(np.abs(a - prev[0]))),
                           float(np.max(np.abs(b - prev[1])))) / scale
            if residual < tol:
                table = RecurrenceTable(potential=potential, a=a, b=b,
                                        norm0=norm0, grid=grid, cutoff=cutoff,
                                        tol=tol, orth_residual=np.nan)
                table.orth_residual = _orthonormality_residual(table)
                if table.orth_residual > 100 * tol:
                    raise RecurrenceConvergenceError(
                        "orthonormality certificate failed",
                        table.orth_residual)
                return table
        prev = (a, b)
        npanels *= 2
    raise RecurrenceConvergenceError("grid refinement exhausted", residual)


def _orthonormality_residual(table: RecurrenceTable, jcheck: int | None = None) -> float:
    """max |(phi_j, phi_k) - delta_jk| on an independent quadrature rule."""
    jcheck = table.jmax - 1 if jcheck is None else jcheck
    grid = uniform_panel_grid(-table.cutoff, table.cutoff,
                              table.grid.npanels + 37, 20)
    ph = table.phi(jcheck, grid.nodes)
    gram = (ph * grid.weights) @ ph.T
    return float(np.max(np.abs(gram - np.eye(jcheck + 1))))


# -- Christoffel-Darboux kernel ----------------------------------------------

_TAU_DIAG_REL = 1e-4


def cd_kernel(table: RecurrenceTable, N: int, x: float, y: float) -> float:
    """K_N(x,y): two-term ratio form away from the diagonal, sum form near it."""
    tau = _TAU_DIAG_REL * table.potential.x_scale(N)
    if abs(x - y) > tau:
        px = table.phi(N, x)
        py = table.phi(N, y)
        return float(table.b[N - 1] * (px[N] * py[N - 1] - px[N - 1] * py[N]) / (x - y))
    px = table.phi(N - 1, x)
    py = table.phi(N - 1, y)
    return float(px @ py)


def cd_kernel_sum(table: RecurrenceTable, N: int, x: float, y: float) -> float:
    """Summation form, used as the internal oracle pair of the ratio form."""
    px = table.phi(N - 1, x)
    py = table.phi(N - 1, y)
    return float(px @ py)


def cd_kernel_matrix(table: RecurrenceTable, N: int, xs, ys) -> np.ndarray:
    """K_N on a product grid via the summation form (one matrix product)."""
    px = table.phi(N - 1, np.asarray(xs, dtype=float))
    py = table.phi(N - 1, np.asarray(ys, dtype=float))
    return px.T @ py


def correlation_det(table: RecurrenceTable, N: int, points) -> float:
    """l-point correlation function: det of the CD-kernel matrix at the points."""
    pts = np.asarray(points, dtype=float)
    if pts.size < 1:
        raise ValueError("need at least one point")
    K = cd_kernel_matrix(table, N, pts, pts)
    return float(np.linalg.det(K))
