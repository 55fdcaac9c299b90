"""Airy functions, the Airy kernel, and the limiting edge kernels.

Ai and Ai' are evaluated in double precision with no external
special-function dependency:

* |x| <= 4.5            Maclaurin pair f, g (cancellation stays below 2e-14);
* 4.5 < |x| < 9         Taylor steps of the ODE y'' = x y from a frozen
                        anchor table at 0.5 spacing (coefficients from the
                        two-term recurrence, radius 0.25);
* |x| >= 9              standard asymptotic expansions with adaptive
                        truncation at the smallest term.

The Airy kernel is provided in both of its representations: the two-term
ratio form, and the integral form int_0^inf Ai(z+xi) Ai(z+eta) dz used near
the diagonal and for whole-grid assembly (where it reduces to one matrix
product per grid).  The limiting matrix kernels for the orthogonal and
symplectic ensembles, the edge-density formulas, and the skew-symmetry
identity for the integrated kernel live here too.

Convention: the symplectic limit displays define twice the kernel; this
module returns the kernel itself (the displays divided by 2), which is what
the gap-probability determinant consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._airy_anchors import ANCHOR_AI, ANCHOR_AIP, ANCHOR_POINTS, TAIL_FROM_12
from ._quad import gl_interval, uniform_panel_grid

SUPPORT_MIN = -15.0
SUPPORT_MAX = 30.0

_MACLAURIN_CUT = 4.5
_ASYMPTOTIC_CUT = 9.0
_TAU_DIAG = 0.05

# Ai(0) = 3^{-2/3}/Gamma(2/3), -Ai'(0) = 3^{-1/3}/Gamma(1/3)
_AI0 = 0.35502805388781723926
_AIP0 = -0.25881940379280679841


class AiryRangeError(ValueError):
    """Argument outside the supported interval [-15, 30]."""


@dataclass(frozen=True)
class AiryValue:
    ai: float
    ai_prime: float
    tail_integral: float


def _maclaurin(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # f, g solve y'' = x y with (f, f')(0) = (1, 0), (g, g')(0) = (0, 1)
    x3 = x ** 3
    f = np.ones_like(x)
    fp = np.zeros_like(x)
    g = x.copy()
    gp = np.ones_like(x)
    tf = np.ones_like(x)
    tg = x.copy()
    for k in range(1, 45):
        tf = tf * x3 / ((3 * k) * (3 * k - 1))
        tg = tg * x3 / ((3 * k + 1) * (3 * k))
        f += tf
        g += tg
        fp += tf * (3 * k) / np.where(x == 0.0, 1.0, x)
        gp += tg * (3 * k + 1) / np.where(x == 0.0, 1.0, x)
    ai = _AI0 * f + _AIP0 * g
    aip = _AI0 * fp + _AIP0 * gp
    return ai, aip


def _taylor_from_anchors(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    idx = np.argmin(np.abs(x[:, None] - ANCHOR_POINTS[None, :]), axis=1)
    a = ANCHOR_POINTS[idx]
    h = x - a
    c0 = ANCHOR_AI[idx]
    c1 = ANCHOR_AIP[idx]
    ai = c0 + c1 * h
    aip = c1.copy()
    cm1 = np.zeros_like(c0)
    hk = h.copy()                      # h^k with k the index of c_k below
    for k in range(30):
        c2 = (a * c0 + cm1) / ((k + 1) * (k + 2))
        hk = hk * h if k else h        # ensure hk = h^{k+1}
        ai += c2 * hk * h
        aip += c2 * (k + 2) * hk
        cm1, c0, c1 = c0, c1, c2
    return ai, aip


def _asymptotic_pos(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    zeta = (2.0 / 3.0) * x ** 1.5
    pref = np.exp(-zeta) / (2.0 * np.sqrt(np.pi) * x ** 0.25)
    prefp = -np.exp(-zeta) * x ** 0.25 / (2.0 * np.sqrt(np.pi))
    s_ai = np.ones_like(x)
    s_aip = np.ones_like(x)
    term_u = np.ones_like(x)
    done = np.zeros_like(x, dtype=bool)
    prev = np.full_like(x, np.inf)
    sign = -1.0
    for k in range(1, 28):
        uk_ratio = (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        term_u = term_u * uk_ratio / zeta
        grow = np.abs(term_u) >= prev
        done |= grow
        add = np.where(done, 0.0, sign * term_u)
        s_ai += add
        s_aip += add * (6 * k + 1) / (1 - 6 * k)
        prev = np.abs(term_u)
        sign = -sign
    return pref * s_ai, prefp * s_aip


def _asymptotic_neg(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    z = -x
    zeta = (2.0 / 3.0) * z ** 1.5
    phase = zeta + 0.25 * np.pi
    # cumulative products u_k / zeta^k with adaptive truncation
    nterms = 28
    terms = np.empty((nterms + 1,) + x.shape)
    terms[0] = 1.0
    t = np.ones_like(x)
    for k in range(1, nterms + 1):
        uk_ratio = (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        t = t * uk_ratio / zeta
        terms[k] = t
    # truncate each series where terms stop decreasing
    stop = np.argmax(np.abs(terms[1:]) >= np.abs(terms[:-1]), axis=0)
    stop = np.where(stop == 0, nterms, stop)
    even = np.zeros_like(x)
    odd = np.zeros_like(x)
    even_p = np.zeros_like(x)
    odd_p = np.zeros_like(x)
    for k in range(nterms + 1):
        live = k <= stop
        tk = np.where(live, terms[k], 0.0)
        vk = tk * (6 * k + 1) / (1 - 6 * k) if k else tk
        s = (-1.0) ** (k // 2)
        if k % 2 == 0:
            even += s * tk
            even_p += s * vk
        else:
            odd += s * tk
            odd_p += s * vk
    inv = 1.0 / (np.sqrt(np.pi) * z ** 0.25)
    ai = inv * (np.sin(phase) * even - np.cos(phase) * odd)
    aip = -(z ** 0.25 / np.sqrt(np.pi)) * (np.cos(phase) * even_p
                                           + np.sin(phase) * odd_p)
    return ai, aip


def ai_and_deriv(x) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized Ai and Ai' for any real argument (no range guard)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    ai = np.empty_like(x)
    aip = np.empty_like(x)
    near = np.abs(x) <= _MACLAURIN_CUT
    mid = (~near) & (np.abs(x) < _ASYMPTOTIC_CUT)
    pos = (~near) & (~mid) & (x > 0)
    neg = (~near) & (~mid) & (x < 0)
    if near.any():
        ai[near], aip[near] = _maclaurin(x[near])
    if mid.any():
        ai[mid], aip[mid] = _taylor_from_anchors(x[mid])
    if pos.any():
        ai[pos], aip[pos] = _asymptotic_pos(x[pos])
    if neg.any():
        ai[neg], aip[neg] = _asymptotic_neg(x[neg])
    return ai, aip


def ai(x) -> np.ndarray:
    return ai_and_deriv(x)[0]


def ai_deriv(x) -> np.ndarray:
    return ai_and_deriv(x)[1]


def ai_tail(x) -> np.ndarray:
    """int_x^{+inf} Ai(t) dt, vectorized; absolute accuracy ~1e-14."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    near = x <= 12.0
    if near.any():
        xs = x[near]
        # per-point panels [x, 12], one panel per unit length, stacked
        npanels = 28
        t, w = np.polynomial.legendre.leggauss(16)
        edges = xs[:, None] + (12.0 - xs[:, None]) * np.linspace(0, 1, npanels + 1)[None, :]
        half = 0.5 * np.diff(edges, axis=1)
        mid = 0.5 * (edges[:, 1:] + edges[:, :-1])
        nodes = mid[:, :, None] + half[:, :, None] * t[None, None, :]
        vals = ai(nodes.ravel()).reshape(nodes.shape)
        out[near] = np.einsum('spk,sp,k->s', vals, half, w) + TAIL_FROM_12
    far = ~near
    if far.any():
        out[far] = _tail_asymptotic(x[far])
    return out


def _tail_asymptotic(x: np.ndarray) -> np.ndarray:
    # T(x) = e^{-zeta} / (2 sqrt(pi) x^{3/4}) * sum t_k zeta^{-k} with
    # t_0 = 1, t_k = (-1)^k u_k - (k - 1/2) t_{k-1}  (from T' = -Ai)
    zeta = (2.0 / 3.0) * x ** 1.5
    uk = 1.0
    tk = 1.0
    s = np.ones_like(x)
    zpow = np.ones_like(x)
    for k in range(1, 14):
        uk = uk * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        tk = (-1.0) ** k * uk - (k - 0.5) * tk
        zpow = zpow / zeta
        s += tk * zpow
    return np.exp(-zeta) / (2.0 * np.sqrt(np.pi) * x ** 0.75) * s


def airy_eval(x: float) -> AiryValue:
    """Ai, Ai' and the tail integral at a point of the supported range."""
    if not (SUPPORT_MIN <= x <= SUPPORT_MAX):
        raise AiryRangeError(
            f"argument {x} outside supported range [{SUPPORT_MIN}, {SUPPORT_MAX}]")
    a, ap = ai_and_deriv(x)
    return AiryValue(ai=float(a[0]), ai_prime=float(ap[0]),
                     tail_integral=float(ai_tail(x)[0]))


# -- Airy kernel ---------------------------------------------------------------


def _z_rule(lo: float) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature in z for int_0^inf over Airy products decaying past -lo."""
    zmax = 18.0 + max(0.0, -lo)
    npan = int(np.ceil(zmax))
    grid = uniform_panel_grid(0.0, zmax, npan, 16)
    return grid.nodes, grid.weights


def airy_kernel_matrix(xi, eta) -> np.ndarray:
    """Airy kernel on a product grid via the integral representation."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    zn, zw = _z_rule(min(xi.min(), eta.min()))
    ax = ai(zn[None, :] + xi[:, None])
    ay = ai(zn[None, :] + eta[:, None])
    return (ax * zw[None, :]) @ ay.T


def airy_kernel_deta_matrix(xi, eta) -> np.ndarray:
    """d/d(eta) of the Airy kernel on a product grid."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    zn, zw = _z_rule(min(xi.min(), eta.min()))
    ax = ai(zn[None, :] + xi[:, None])
    dy = ai_deriv(zn[None, :] + eta[:, None])
    return -(ax * zw[None, :]) @ dy.T


def airy_kernel_tail_matrix(xi, eta) -> np.ndarray:
    """int_{xi_i}^{inf} K_Airy(t, eta_j) dt on a product grid.

    Fubini against the integral representation turns the t-integral into the
    Ai tail: int_xi^inf K(t,eta) dt = int_0^inf A(z+xi) Ai(z+eta) dz with
    A(s) = int_s^inf Ai.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    zn, zw = _z_rule(min(xi.min(), eta.min()))
    shifted = zn[None, :] + xi[:, None]
    tails = ai_tail(shifted.ravel()).reshape(shifted.shape)
    ay = ai(zn[None, :] + eta[:, None])
    return (tails * zw[None, :]) @ ay.T


def airy_kernel(xi: float, eta: float) -> float:
    """K_Airy: ratio form off the diagonal, integral form within tau = 0.05."""
    if abs(xi - eta) > _TAU_DIAG:
        a_vals, ap_vals = ai_and_deriv(np.array([xi, eta]))
        return float((a_vals[0] * ap_vals[1] - ap_vals[0] * a_vals[1]) / (xi - eta))
    if xi == eta:
        return airy_kernel_diag(xi)
    return float(airy_kernel_matrix([xi], [eta])[0, 0])


def airy_kernel_diag(t: float) -> float:
    """K_Airy(t, t) = Ai'(t)^2 - t Ai(t)^2."""
    a_val, ap_val = ai_and_deriv(t)
    return float(ap_val[0] ** 2 - t * a_val[0] ** 2)


def airy_kernel_deta(xi: float, eta: float) -> float:
    """d/d(eta) K_Airy at a point (integral form near the diagonal)."""
    if abs(xi - eta) > _TAU_DIAG:
        a_vals, ap_vals = ai_and_deriv(np.array([xi, eta]))
        k = (a_vals[0] * ap_vals[1] - ap_vals[0] * a_vals[1]) / (xi - eta)
        # Ai'' = x Ai
        num = a_vals[0] * eta * a_vals[1] - ap_vals[0] * ap_vals[1]
        return float(num / (xi - eta) + k / (xi - eta))
    return float(airy_kernel_deta_matrix([xi], [eta])[0, 0])


# -- limiting kernels and densities ---------------------------------------------


@dataclass(frozen=True)
class LimitKernelSample:
    """Limit-kernel entries at one point: scalar for beta=2, 2x2 otherwise."""

    beta: int
    xi: float
    eta: float
    entries: tuple[float, ...]   # (k11,) or (k11, k12, k21, k22)


def limit_kernel_grids(beta: int, xi, eta) -> list[np.ndarray]:
    """Limit-kernel entries on a product grid (list of 1 or 4 matrices)."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    eta = np.atleast_1d(np.asarray(eta, dtype=float))
    KA = airy_kernel_matrix(xi, eta)
    if beta == 2:
        return [KA]
    aix, aiy = ai(xi), ai(eta)
    tx, ty = ai_tail(xi), ai_tail(eta)
    dK = airy_kernel_deta_matrix(xi, eta)
    IK = airy_kernel_tail_matrix(xi, eta)
    KA_T = airy_kernel_matrix(eta, xi)
    k12 = -dK - 0.5 * np.outer(aix, aiy)
    if beta == 1:
        k11 = KA + 0.5 * np.outer(aix, 1.0 - ty)
        k21 = (-IK - 0.5 * (tx[:, None] - ty[None, :])
               + 0.5 * np.outer(tx, ty)
               - 0.5 * np.sign(xi[:, None] - eta[None, :]))
        k22 = KA_T.T + 0.5 * np.outer(1.0 - tx, aiy).T.T
        k22 = (KA_T + 0.5 * np.outer(aiy, 1.0 - tx)).T
        return [k11, k12, k21, k22]
    if beta == 4:
        k11 = 0.5 * (KA - 0.5 * np.outer(aix, ty))
        k12 = 0.5 * k12 * 2.0
        k12 = 0.5 * (-dK - 0.5 * np.outer(aix, aiy))
        k21 = 0.5 * (-IK + 0.5 * np.outer(tx, ty))
        k22 = (0.5 * (KA_T - 0.5 * np.outer(aiy, tx))).T
        return [k11, k12, k21, k22]
    raise ValueError(f"beta must be 1, 2 or 4, got {beta}")


def limit_kernel(beta: int, xi: float, eta: float) -> LimitKernelSample:
    """Pointwise limit kernel; beta=2 scalar, beta=1/4 the 2x2 entries."""
    grids = limit_kernel_grids(beta, [xi], [eta])
    return LimitKernelSample(beta=beta, xi=xi, eta=eta,
                             entries=tuple(float(g[0, 0]) for g in grids))


def edge_density(beta: int, t: float) -> float:
    """Limiting density of eigenvalues at the spectral edge, per ensemble."""
    k_diag = airy_kernel_diag(t)
    a_val = float(ai(t)[0])
    tail = float(ai_tail(t)[0])
    if beta == 2:
        return k_diag
    if beta == 1:
        return k_diag + 0.5 * a_val * (1.0 - tail)
    if beta == 4:
        return 0.25 * k_diag - 0.125 * a_val * tail
    raise ValueError(f"beta must be 1, 2 or 4, got {beta}")


def check_skew_identity(xi: float, eta: float) -> float:
    """Residual between the two forms of the integrated-kernel identity.

    Left side integrates K_Airy(t, eta) over [xi, eta] directly; right side
    uses the half-line integral.  Both are corrected by the corresponding
    Ai-tail products; the difference vanishes identically.
    """
    lo, hi = (xi, eta) if xi <= eta else (eta, xi)
    if hi > lo:
        npan = max(2, int(np.ceil(2 * (hi - lo))))
        grid = uniform_panel_grid(lo, hi, npan, 16)
        vals = airy_kernel_matrix(grid.nodes, [eta])[:, 0]
        seg = float(grid.integrate(vals))
        if xi > eta:
            seg = -seg
    else:
        seg = 0.0
    tx = float(ai_tail(xi)[0])
    ty = float(ai_tail(eta)[0])
    lhs = -seg + 0.5 * (tx - ty) * ty
    rhs = -float(airy_kernel_tail_matrix([xi], [eta])[0, 0]) + 0.5 * tx * ty
    return abs(lhs - rhs)


def skew_identity_halfline(xi: float, eta: float) -> float:
    """The half-line form itself (skew-symmetric in its arguments)."""
    tx = float(ai_tail(xi)[0])
    ty = float(ai_tail(eta)[0])
    return -float(airy_kernel_tail_matrix([xi], [eta])[0, 0]) + 0.5 * tx * ty
