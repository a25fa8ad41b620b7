"""Power-law fit of the pairing onset below a thermal transition."""

from dataclasses import dataclass

import numpy as np
from loguru import logger
from numpy.typing import ArrayLike
from scipy.optimize import curve_fit

PAIRING_THRESHOLD = 1e-4
MIN_FIT_POINTS = 8


@dataclass
class CriticalFit:
    """
    Fit of P(T) = a·(T_c − T)^γ.

    Attributes:
        t_c: Critical temperature
        amplitude: Prefactor a
        gamma: Critical exponent γ
        residual_norm: ‖P_fit − P‖₂ over the fitted window
        n_points: Number of points in the window
    """

    t_c: float
    amplitude: float
    gamma: float
    residual_norm: float
    n_points: int

    def __str__(self) -> str:
        return (
            f"T_c={self.t_c:.6f}, a={self.amplitude:.6f}, γ={self.gamma:.4f} "
            f"({self.n_points} points, residual {self.residual_norm:.2e})"
        )


def _power_law(temperature, t_c, amplitude, gamma):
    return amplitude * np.clip(t_c - temperature, 0.0, None) ** gamma


def fit_critical_exponent(
    temperatures: ArrayLike,
    pairing: ArrayLike,
    threshold: float = PAIRING_THRESHOLD,
    min_points: int = MIN_FIT_POINTS,
) -> CriticalFit:
    """Fit P = a(T_c − T)^γ over the ordered window where P > threshold.

    T_c is bounded between the warmest ordered point and the first point above it where
    the pairing has vanished.

    Args:
        temperatures: Temperatures T = 1/β in any order
        pairing: Pairing measure at each temperature
        threshold: Pairing value below which the state counts as unpaired
        min_points: Minimum number of ordered points required

    Returns:
        CriticalFit

    Raises:
        ValueError: If the inputs differ in length, no transition lies in range or the
            ordered window holds fewer than ``min_points`` points
    """
    t = np.asarray(temperatures, dtype=float)
    p = np.asarray(pairing, dtype=float)
    if t.shape != p.shape or t.ndim != 1:
        raise ValueError("temperatures and pairing must be 1D arrays of equal length")
    order = np.argsort(t)
    t, p = t[order], p[order]

    ordered = p > threshold
    if not np.any(ordered):
        raise ValueError("No transition detected: pairing never exceeds the threshold")
    last = int(np.flatnonzero(ordered)[-1])
    if last == t.size - 1:
        raise ValueError("No transition detected: pairing never vanishes in range")

    window = ordered.copy()
    window[last + 1 :] = False
    t_fit, p_fit = t[window], p[window]
    if t_fit.size < min_points:
        raise ValueError(f"Need at least {min_points} ordered points, got {t_fit.size}")

    t_lo, t_hi = t[last], t[last + 1]
    guess = (0.5 * (t_lo + t_hi), float(p_fit.max() / max(t_hi - t_fit.min(), 1e-12)), 1.0)
    params, _ = curve_fit(
        _power_law,
        t_fit,
        p_fit,
        p0=guess,
        bounds=([t_lo, 0.0, 1e-3], [t_hi, np.inf, 10.0]),
        maxfev=20_000,
    )
    t_c, amplitude, gamma = (float(v) for v in params)
    residual = float(np.linalg.norm(_power_law(t_fit, *params) - p_fit))

    fit = CriticalFit(
        t_c=t_c,
        amplitude=amplitude,
        gamma=gamma,
        residual_norm=residual,
        n_points=int(t_fit.size),
    )
    logger.info(f"Critical fit: {fit}")
    return fit
