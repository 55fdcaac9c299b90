"""Edge-scaling data: MRS constants, equilibrium density, and the edge map.

For the rescaled field V_N(x) = V(c x + d)/N the equilibrium measure is
supported exactly on [-1, 1] iff (c, d) solve the two moment conditions

    int_{-1}^{1} V_N'(t) / sqrt(1-t^2) dt = 0          (support centered)
    (1/pi) int_{-1}^{1} t V_N'(t) / sqrt(1-t^2) dt = 2 (unit total mass),

i.e. the zeroth Chebyshev-T coefficient of V_N' vanishes and the first equals
4.  The density is then (1/2pi) sqrt(1-x^2) h(x) where h, expanded in
Chebyshev-U, has coefficients h_k = (V_N')^T-coefficient at order k+1: the
finite Cauchy-transform relation int_{-1}^1 sqrt(1-s^2) U_{k-1}(s)/(t-s) ds
= pi T_k(t) makes the correspondence exact, with no truncation, because V_N'
is a polynomial of degree 2m-1.

The exact (c_N, d_N) are found by Newton iteration seeded with the known
leading-order expansion terms; the expansions themselves serve as test
oracles only, since truncating them would pollute convergence-rate
measurements downstream.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .potential import Potential


class MRSConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (last residual {residual:.3e})")
        self.residual = residual


class SupportAssumptionError(RuntimeError):
    """Equilibrium density not strictly positive on [-1, 1]."""


@dataclass(frozen=True)
class EdgeScaling:
    """All N-dependent constants entering the edge map and its conjugation."""

    N: int
    cN: float
    dN: float
    h_coeffs: tuple[float, ...]   # monomial coefficients of h, ascending
    alphaN: float
    lambdaN: float
    h_min: float

    @property
    def scale_factor(self) -> float:
        """c_N / (alpha_N N^{2/3}) = 1 / lambda_N^2, the kernel scale."""
        return self.cN / (self.alphaN * self.N ** (2.0 / 3.0))

    def h_value(self, x):
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x)
        for c in reversed(self.h_coeffs):
            acc = acc * x + c
        return acc if acc.ndim else float(acc)

    def density(self, x):
        """Equilibrium density (1/2pi) sqrt(1-x^2) h(x) on [-1, 1]."""
        x = np.asarray(x, dtype=float)
        inside = np.abs(x) <= 1.0
        out = np.where(inside,
                       np.sqrt(np.clip(1.0 - x * x, 0.0, None)) *
                       self.h_value(x) / (2.0 * np.pi),
                       0.0)
        return out if out.ndim else float(out)


def _chebyshev_t_coeffs(potential: Potential, N: int, c: float, d: float) -> np.ndarray:
    """Chebyshev-T coefficients of V_N'(t) = (c/N) V'(c t + d), t in [-1,1].

    Chebyshev-Gauss quadrature with enough nodes is exact for the polynomial
    integrand, so there is no truncation error by construction.
    """
    deg = potential.degree - 1
    K = 4 * (deg + 2)
    theta = (np.arange(K) + 0.5) * np.pi / K
    t = np.cos(theta)
    vals = (c / N) * potential.deriv(c * t + d)
    j = np.arange(deg + 1)
    cosjt = np.cos(np.outer(j, theta))
    coeffs = (2.0 / K) * cosjt @ vals
    coeffs[0] *= 0.5
    return coeffs


def _mrs_residual(potential: Potential, N: int, c: float, d: float) -> np.ndarray:
    a = _chebyshev_t_coeffs(potential, N, c, d)
    return np.array([a[0], a[1] - 4.0])


def cn_leading(potential: Potential, N: int) -> float:
    """Leading term of the c_N expansion (test oracle)."""
    m = potential.m
    dbl_even = math.prod(range(2, 2 * m + 1, 2))      # (2m)!!
    dbl_odd = math.prod(range(1, 2 * m, 2))           # (2m-1)!!
    return (dbl_even / (m * dbl_odd * potential.leading)) ** (1.0 / (2 * m)) \
        * N ** (1.0 / (2 * m))


def dn_constant(potential: Potential) -> float:
    """Constant term of the d_N expansion (test oracle)."""
    m = potential.m
    kappa_top = potential.coefficients[-1]
    kappa_sub = potential.coefficients[-2]
    return -kappa_sub / (2 * m * kappa_top)


def mrs_numbers(potential: Potential, N: int, tol: float = 1e-13,
                max_iter: int = 60) -> tuple[float, float]:
    """Exact MRS pair (c_N, d_N) by Newton iteration on the moment conditions."""
    if N < 1:
        raise ValueError("N must be >= 1")
    c = cn_leading(potential, N)
    d = dn_constant(potential)
    residual = np.inf
    for _ in range(max_iter):
        f = _mrs_residual(potential, N, c, d)
        residual = float(np.max(np.abs(f)))
        if residual < tol:
            return float(c), float(d)
        # Jacobian by central differences in (c, d); the residual is a smooth
        # polynomial map, so step ~ sqrt(eps)*scale is accurate enough
        hc = 1e-7 * max(1.0, abs(c))
        hd = 1e-7 * max(1.0, abs(c))
        J = np.column_stack([
            (_mrs_residual(potential, N, c + hc, d)
             - _mrs_residual(potential, N, c - hc, d)) / (2 * hc),
            (_mrs_residual(potential, N, c, d + hd)
             - _mrs_residual(potential, N, c, d - hd)) / (2 * hd),
        ])
        try:
            step = np.linalg.solve(J, f)
        except np.linalg.LinAlgError as exc:
            raise MRSConvergenceError(f"singular Newton system: {exc}", residual)
        c, d = c - step[0], d - step[1]
        if not (np.isfinite(c) and np.isfinite(d)) or c <= 0:
            raise MRSConvergenceError("Newton iterate left the domain", residual)
    raise MRSConvergenceError("Newton did not converge", residual)


def _u_to_monomial(h_u: np.ndarray) -> np.ndarray:
    """Convert Chebyshev-U coefficients to monomial coefficients."""
    deg = len(h_u) - 1
    U = np.zeros((deg + 1, deg + 1))
    U[0, 0] = 1.0
    if deg >= 1:
        U[1, 1] = 2.0
    for k in range(1, deg):
        U[k + 1, 1:] += 2.0 * U[k, :-1]
        U[k + 1, :] -= U[k - 1, :]
    return h_u @ U


def equilibrium_h(potential: Potential, N: int, cN: float, dN: float) -> np.ndarray:
    """Monomial coefficients of the degree 2m-2 polynomial factor h_N.

    Raises SupportAssumptionError if h_N fails to be strictly positive on a
    dense grid over [-1, 1] (the one-interval support assumption).
    """
    a = _chebyshev_t_coeffs(potential, N, cN, dN)
    h_u = a[1:]                      # U-coefficients: h_k = a_{k+1}
    coeffs = _u_to_monomial(h_u)
    xs = np.linspace(-1.0, 1.0, 2001)
    acc = np.zeros_like(xs)
    for c in coeffs[::-1]:
        acc = acc * xs + c
    if np.min(acc) <= 0.0:
        raise SupportAssumptionError(
            f"h_N attains min {np.min(acc):.3e} <= 0 on [-1,1]; "
            "one-interval support assumption violated")
    return coeffs


def edge_scaling(potential: Potential, N: int) -> EdgeScaling:
    """Convenience builder: MRS numbers, h_N, alpha_N and lambda_N."""
    cN, dN = mrs_numbers(potential, N)
    coeffs = equilibrium_h(potential, N, cN, dN)
    h1 = float(np.polyval(coeffs[::-1], 1.0))
    alphaN = (0.5 * h1 * h1) ** (1.0 / 3.0)
    lambdaN = (cN / (alphaN * N ** (2.0 / 3.0))) ** (-0.5)
    xs = np.linspace(-1.0, 1.0, 2001)
    h_min = float(np.min(np.polyval(coeffs[::-1], xs)))
    return EdgeScaling(N=N, cN=cN, dN=dN, h_coeffs=tuple(coeffs),
                       alphaN=alphaN, lambdaN=lambdaN, h_min=h_min)


def edge_map(scaling: EdgeScaling, xi):
    """xi -> c_N (1 + xi / (alpha_N N^{2/3})) + d_N."""
    xi = np.asarray(xi, dtype=float)
    out = scaling.cN * (1.0 + xi / (scaling.alphaN * scaling.N ** (2.0 / 3.0))) \
        + scaling.dN
    return out if out.ndim else float(out)


def edge_map_inverse(scaling: EdgeScaling, x):
    x = np.asarray(x, dtype=float)
    out = (x - scaling.dN - scaling.cN) * scaling.alphaN \
        * scaling.N ** (2.0 / 3.0) / scaling.cN
    return out if out.ndim else float(out)


def to_json(scaling: EdgeScaling) -> str:
    return json.dumps({
        'N': scaling.N,
        'cN': scaling.cN,
        'dN': scaling.dN,
        'alphaN': scaling.alphaN,
        'lambdaN': scaling.lambdaN,
        'h_coeffs': list(scaling.h_coeffs),
        'h_min': scaling.h_min,
    }, indent=2)


def from_json(text: str) -> EdgeScaling:
    d = json.loads(text)
    return EdgeScaling(N=d['N'], cN=d['cN'], dN=d['dN'],
                       h_coeffs=tuple(d['h_coeffs']), alphaN=d['alphaN'],
                       lambdaN=d['lambdaN'], h_min=d['h_min'])


def save_json(scaling: EdgeScaling, path) -> None:
    Path(path).write_text(to_json(scaling) + '\n')


def load_json(path) -> EdgeScaling:
    return from_json(Path(path).read_text())
