"""Core spectral containers and the rational response model.

The two temporal functions used throughout the package come from the
logarithmic frequency derivative of a complex response S(omega):

    tau(omega) = -i d/domega ln S(omega) = tau1 + i tau2

where tau1 tracks the phase slope (delay) and tau2 the modulus slope
(formation / reshaping).  A rational model with zeros in the upper half
plane mirrored by poles in the lower half plane gives closed forms for
both, and exponential integration inverts the extraction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import (
    AnchorOutOfRange,
    GridError,
    NonPositiveGrid,
    PoleProximity,
)

__all__ = [
    "FrequencyGrid",
    "ComplexSpectrum",
    "TemporalSpectrum",
    "PoleZeroModel",
    "evaluate_model",
    "model_tau",
    "reconstruct",
    "extend_negative_frequencies",
]

_UNIFORM_RTOL = 1e-9


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing, finite frequency sample points.

    The wrapped array is copied and frozen so a grid can be shared between
    spectra without aliasing surprises.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 1:
            raise GridError("grid must be one-dimensional")
        if arr.size < 3:
            raise GridError("grid needs at least 3 nodes")
        if not np.all(np.isfinite(arr)):
            raise GridError("grid contains non-finite values")
        if not np.all(np.diff(arr) > 0):
            raise GridError("grid must be strictly increasing")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @classmethod
    def linspace(cls, lo: float, hi: float, n: int) -> "FrequencyGrid":
        return cls(np.linspace(lo, hi, n))

    def __len__(self) -> int:
        return self.values.size

    @property
    def spacing(self) -> float:
        """Mean node spacing."""
        return float(np.mean(np.diff(self.values)))

    @property
    def is_uniform(self) -> bool:
        h = np.diff(self.values)
        return bool(np.max(np.abs(h - np.mean(h))) < _UNIFORM_RTOL * np.mean(h))

    @property
    def span(self) -> float:
        return float(self.values[-1] - self.values[0])


@dataclass(frozen=True)
class ComplexSpectrum:
    """Complex response samples S(omega) on a frequency grid."""

    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=complex)
        if arr.shape != (len(self.grid),):
            raise GridError("spectrum values must match the grid length")
        object.__setattr__(self, "values", arr)

    def modulus(self) -> np.ndarray:
        return np.abs(self.values)

    def phase(self) -> np.ndarray:
        """Wrapped phase in (-pi, pi]; unwrapping is the extractor's job."""
        return np.angle(self.values)


@dataclass(frozen=True)
class TemporalSpectrum:
    """Delay time tau1 and formation time tau2 sampled on a grid.

    Attributes:
        grid: frequency sample points.
        tau1: phase-slope times, d(arg S)/domega.
        tau2: modulus-slope times, -d(ln|S|)/domega.
        edge_nodes: nodes at each end where one-sided stencils were used;
            consumers that care about stencil accuracy may drop them.
    """

    grid: FrequencyGrid
    tau1: np.ndarray
    tau2: np.ndarray
    edge_nodes: int = 0

    def __post_init__(self):
        n = len(self.grid)
        t1 = np.asarray(self.tau1, dtype=float)
        t2 = np.asarray(self.tau2, dtype=float)
        if t1.shape != (n,) or t2.shape != (n,):
            raise GridError("tau arrays must match the grid length")
        if self.edge_nodes < 0 or 2 * self.edge_nodes >= n:
            raise GridError("edge_nodes out of range")
        object.__setattr__(self, "tau1", t1)
        object.__setattr__(self, "tau2", t2)

    @property
    def tau(self) -> np.ndarray:
        """Combined complex time tau1 + i tau2."""
        return self.tau1 + 1j * self.tau2

    @property
    def interior(self) -> slice:
        """Slice selecting nodes away from one-sided stencil closures."""
        if self.edge_nodes == 0:
            return slice(None)
        return slice(self.edge_nodes, -self.edge_nodes)


@dataclass(frozen=True)
class PoleZeroModel:
    """Unit-modulus rational response built from mirrored resonances.

    Each resonance (omega_n, gamma_n) contributes a Blaschke factor with a
    zero at omega_n + i gamma_n / 2 and a pole at its conjugate, so on the
    real axis the product has modulus one.  An optional power prefactor
    omega**(-prefactor_sign * p) models threshold behaviour at the origin.

    Args:
        scale: overall complex amplitude.
        p: non-negative integer power of the origin prefactor.
        resonances: sequence of (center, width) pairs, both positive.
        prefactor_sign: +1 for a decaying origin factor omega**-p,
            -1 for the growing branch omega**+p.
    """

    scale: complex = 1.0 + 0.0j
    p: int = 0
    resonances: tuple = ()
    prefactor_sign: int = 1

    def __post_init__(self):
        if self.scale == 0:
            raise ValueError("scale must be nonzero")
        if not isinstance(self.p, (int, np.integer)) or self.p < 0:
            raise ValueError("p must be a non-negative integer")
        if self.prefactor_sign not in (1, -1):
            raise ValueError("prefactor_sign must be +1 or -1")
        res = tuple((float(w), float(g)) for w, g in self.resonances)
        for w, g in res:
            if w <= 0 or g <= 0:
                raise ValueError("resonances need positive center and width")
        object.__setattr__(self, "scale", complex(self.scale))
        object.__setattr__(self, "resonances", res)

    def zeros(self) -> np.ndarray:
        """Upper-half-plane zeros omega_n + i gamma_n / 2."""
        return np.array([w + 0.5j * g for w, g in self.resonances], dtype=complex)

    def poles(self) -> np.ndarray:
        """Lower-half-plane poles omega_n - i gamma_n / 2."""
        return np.conj(self.zeros())


def _guard_proximity(omega, points, tol, what):
    for pt in np.atleast_1d(points):
        d = np.min(np.abs(omega - pt))
        if d < tol:
            raise PoleProximity(
                f"evaluation point within {d:.3e} of {what} at {pt}"
            )


def evaluate_model(model: PoleZeroModel, omega, pole_tolerance: float = 1e-12):
    """Evaluate the rational response at real or complex frequencies.

    Raises:
        PoleProximity: a sample sits within ``pole_tolerance`` of a pole,
            or of the origin when the prefactor is singular there.
    """
    om = np.atleast_1d(np.asarray(omega, dtype=complex))
    scalar = np.ndim(omega) == 0
    if model.p > 0 and model.prefactor_sign > 0:
        _guard_proximity(om, 0.0, pole_tolerance, "the origin prefactor pole")
    if len(model.resonances) > 0:
        _guard_proximity(om, model.poles(), pole_tolerance, "a model pole")
    out = np.full(om.shape, model.scale, dtype=complex)
    if model.p > 0:
        out = out * om ** (-model.prefactor_sign * model.p)
    for z in model.zeros():
        out = out * (om - z) / (om - np.conj(z))
    return complex(out[0]) if scalar else out


def model_tau(model: PoleZeroModel, omega, pole_tolerance: float = 1e-12):
    """Closed-form complex time tau(omega) of the rational response.

    Works for complex omega as well, which is what the winding-number
    contour integration uses.  On the real axis each resonance contributes
    gamma_n / ((omega - omega_n)**2 + gamma_n**2 / 4) to tau1 and the
    origin prefactor contributes prefactor_sign * p / omega to tau2.
    """
    om = np.atleast_1d(np.asarray(omega, dtype=complex))
    scalar = np.ndim(omega) == 0
    if model.p > 0:
        _guard_proximity(om, 0.0, pole_tolerance, "the origin")
    if len(model.resonances) > 0:
        _guard_proximity(om, model.poles(), pole_tolerance, "a model pole")
        _guard_proximity(om, model.zeros(), pole_tolerance, "a model zero")
    out = np.zeros(om.shape, dtype=complex)
    for z in model.zeros():
        out += -1j * (1.0 / (om - z) - 1.0 / (om - np.conj(z)))
    if model.p > 0:
        out += 1j * model.prefactor_sign * model.p / om
    return complex(out[0]) if scalar else out


def reconstruct(
    temporal: TemporalSpectrum, anchor_omega: float, anchor_value: complex
) -> ComplexSpectrum:
    """Rebuild S(omega) from its temporal functions by trapezoid quadrature.

    Integrates d(ln S)/domega = i tau1 - tau2 cumulatively along the grid
    and pins the result so S(anchor_omega) = anchor_value.  The anchor may
    sit between nodes; its log offset is then linearly interpolated.

    Raises:
        AnchorOutOfRange: anchor frequency outside the grid span.
    """
    grid = temporal.grid.values
    if not (grid[0] <= anchor_omega <= grid[-1]):
        raise AnchorOutOfRange(
            f"anchor {anchor_omega} outside grid span [{grid[0]}, {grid[-1]}]"
        )
    if anchor_value == 0:
        raise ValueError("anchor value must be nonzero")
    dlog = 1j * temporal.tau1 - temporal.tau2
    log_s = cumulative_trapezoid(dlog, grid, initial=0.0)
    at_anchor = np.interp(anchor_omega, grid, log_s.real) + 1j * np.interp(
        anchor_omega, grid, log_s.imag
    )
    values = anchor_value * np.exp(log_s - at_anchor)
    return ComplexSpectrum(temporal.grid, values)


def extend_negative_frequencies(temporal: TemporalSpectrum) -> TemporalSpectrum:
    """Mirror a positive-frequency temporal spectrum onto the real line.

    Reality of the underlying signal forces tau(-omega) = conj(tau(omega)),
    so tau1 extends as an even function and tau2 as an odd one.

    Raises:
        NonPositiveGrid: the input grid must be strictly positive.
    """
    grid = temporal.grid.values
    if grid[0] <= 0:
        raise NonPositiveGrid("extension needs a strictly positive grid")
    full = FrequencyGrid(np.concatenate([-grid[::-1], grid]))
    tau1 = np.concatenate([temporal.tau1[::-1], temporal.tau1])
    tau2 = np.concatenate([-temporal.tau2[::-1], temporal.tau2])
    return TemporalSpectrum(full, tau1, tau2, edge_nodes=temporal.edge_nodes)
