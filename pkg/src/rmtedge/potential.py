"""Polynomial confining potentials and the ensemble weights they generate.

A potential V(x) = kappa_{2m} x^{2m} + ... with even degree and positive
leading coefficient defines the three invariant-ensemble weights

    w_1 = e^{-V/2},    w_2 = e^{-V},    w_4 = e^{-V},

so that w_1^2 = w_2 = w_4 pointwise.  Everything else in the package is
derived from a Potential instance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

VALID_BETAS = (1, 2, 4)


class InvalidPotentialError(ValueError):
    pass


@dataclass(frozen=True)
class Potential:
    """Polynomial potential, coefficients stored lowest degree first."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        object.__setattr__(self, 'coefficients', coeffs)
        if len(coeffs) < 3:
            raise InvalidPotentialError("degree must be at least 2")
        if coeffs[-1] == 0.0:
            raise InvalidPotentialError("leading coefficient must not vanish")
        if (len(coeffs) - 1) % 2 != 0:
            raise InvalidPotentialError(f"degree {len(coeffs) - 1} is odd")
        if coeffs[-1] <= 0.0:
            raise InvalidPotentialError("leading coefficient must be positive")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def m(self) -> int:
        """Half the degree; the bandwidth parameter is n = 2m - 1."""
        return self.degree // 2

    @property
    def band_halfwidth(self) -> int:
        return 2 * self.m - 1

    @property
    def leading(self) -> float:
        return self.coefficients[-1]

    @property
    def is_even(self) -> bool:
        return all(c == 0.0 for c in self.coefficients[1::2])

    def value(self, x):
        """Horner evaluation of V(x)."""
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc if acc.ndim else float(acc)

    __call__ = value

    def deriv(self, x, order: int = 1):
        """Evaluate d^order V / dx^order."""
        coeffs = np.asarray(self.coefficients)
        for _ in range(order):
            coeffs = coeffs[1:] * np.arange(1, len(coeffs))
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x)
        for c in coeffs[::-1]:
            acc = acc * x + c
        return acc if acc.ndim else float(acc)

    def x_scale(self, N: int) -> float:
        """Characteristic spectral scale (N / kappa_{2m})^{1/(2m)}."""
        return float((N / self.leading) ** (1.0 / self.degree))


def eval_V(potential: Potential, x):
    """Alias for Potential.value."""
    return potential.value(x)


def log_weight(potential: Potential, beta: int, x):
    """log of the ensemble weight w_beta(x)."""
    if beta not in VALID_BETAS:
        raise ValueError(f"beta must be one of {VALID_BETAS}, got {beta}")
    v = potential.value(x)
    return -0.5 * v if beta == 1 else -v


def weight(potential: Potential, beta: int, x):
    """Ensemble weight: e^{-V/2} for beta=1, e^{-V} for beta=2 and beta=4."""
    return np.exp(log_weight(potential, beta, x))


# canonical presets: the smallest even-degree case and the smallest case with
# a nontrivial correction window (m=2 gives n=3)
HERMITE = Potential((0.0, 0.0, 1.0))
QUARTIC = Potential((0.0, 0.0, 0.0, 0.0, 1.0))

PRESETS = {
    'hermite': HERMITE,
    'quartic': QUARTIC,
}


def from_name_or_coeffs(spec) -> Potential:
    """Build a Potential from a preset name or a coefficient list."""
    if isinstance(spec, str):
        name = spec.strip().lower()
        if name in PRESETS:
            return PRESETS[name]
        try:
            coeffs = json.loads(spec)
        except json.JSONDecodeError:
            raise InvalidPotentialError(
                f"unknown potential {spec!r}; use one of {sorted(PRESETS)} "
                "or a JSON list of coefficients (lowest degree first)")
        return Potential(tuple(coeffs))
    return Potential(tuple(spec))


def to_config(potential: Potential) -> dict:
    return {'coefficients': list(potential.coefficients)}


def from_config(config: dict) -> Potential:
    return Potential(tuple(config['coefficients']))


def save_config(potential: Potential, path) -> None:
    Path(path).write_text(json.dumps(to_config(potential)) + '\n')


def load_config(path) -> Potential:
    return from_config(json.loads(Path(path).read_text()))
