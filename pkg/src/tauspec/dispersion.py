"""Dispersion-integral machinery: Hilbert transforms, causality residuals,
sum rules, residue series, and contour counting.

The discrete Hilbert transform uses the skip-node trapezoid rule, which is
second-order accurate through the singular cell, evaluated as a single
convolution.  Optional tail models extend the principal-value integral
beyond the grid with closed-form corrections for 1/omega or 1/omega^2
falloff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .core import (
    ComplexSpectrum,
    FrequencyGrid,
    PoleZeroModel,
    TemporalSpectrum,
    extend_negative_frequencies,
    model_tau,
)
from .errors import (
    GridError,
    InsufficientDecay,
    NonPositiveGrid,
    NonUniformGrid,
    OriginInGrid,
    SingularityOnContour,
)

__all__ = [
    "TAIL_MODELS",
    "KKReport",
    "Contour",
    "hilbert_transform",
    "kk_residual",
    "tau_kk_residual",
    "frequency_sum_rule",
    "sum_rule_scale",
    "time_sum_rule",
    "residue_time_domain",
    "winding_number",
]

TAIL_MODELS = ("none", "one_over_omega", "one_over_omega2")


@dataclass(frozen=True)
class KKReport:
    """Summary of a causality-residual evaluation.

    residual_max and residual_l2 (root mean square) are taken over the
    reported nodes only: edge bands are dropped, and for gapped grids the
    zero-filled origin window is excluded.  origin_gap is the half-width
    of that window, zero when the input grid crosses the origin itself.
    """

    residual_max: float
    residual_l2: float
    tail_model: str
    nodes: int
    origin_gap: float = 0.0

    def __post_init__(self):
        if self.tail_model not in TAIL_MODELS:
            raise ValueError(f"unknown tail model {self.tail_model!r}")
        if self.residual_max < 0 or self.residual_l2 < 0:
            raise ValueError("residual norms must be non-negative")
        if self.nodes < 1:
            raise ValueError("report must cover at least one node")
        if self.origin_gap < 0:
            raise ValueError("origin_gap must be non-negative")


def _uniform_spacing(x: np.ndarray, what: str) -> float:
    steps = np.diff(x)
    h = float(np.mean(steps))
    if h <= 0 or np.max(np.abs(steps - h)) > 1e-9 * abs(h):
        raise NonUniformGrid(f"{what} needs a uniform grid")
    return h


def _skip_node_sums(values: np.ndarray) -> np.ndarray:
    """Trapezoid sums S_i = sum_{j != i} w_j f_j / (i - j), w half at ends."""
    n = values.size
    m = np.arange(-(n - 1), n, dtype=float)
    kernel = np.zeros(2 * n - 1)
    nz = m != 0
    kernel[nz] = 1.0 / m[nz]
    out = fftconvolve(values.astype(complex), kernel)[n - 1 : 2 * n - 1]
    idx = np.arange(n, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        left = 0.5 * values[0] / idx
        right = 0.5 * values[-1] / (idx - (n - 1))
    left[0] = 0.0
    right[-1] = 0.0
    return out - left - right


def _pv_core(values: np.ndarray) -> np.ndarray:
    """Principal-value quadrature by singularity subtraction.

    Writes PV int f/(omega-eta) as the integral of the regularised
    difference quotient plus f(omega) times the exact logarithmic kernel
    integral.  The regular part is plain trapezoid, so the interior error
    reduces to endpoint terms: the rule stays accurate across sharp
    resonances instead of degrading with the local curvature.  The two
    end nodes fall back to the skip-node sum; they are edge-band anyway.
    """
    n = values.size
    s1 = _skip_node_sums(values)
    ones_sums = _skip_node_sums(np.ones(n)).real
    out = np.empty(n, dtype=complex)
    out[0] = s1[0]
    out[-1] = s1[-1]
    idx = np.arange(1, n - 1, dtype=float)
    log_kernel = np.log(idx / (n - 1 - idx))
    centre = 0.5 * (values[2:] - values[:-2])
    mid = slice(1, n - 1)
    out[mid] = s1[mid] - values[mid] * ones_sums[mid] - centre + values[mid] * log_kernel
    return out


def _fit_tail_amplitude(x, f, tail_model, side):
    count = max(3, int(round(0.05 * x.size)))
    if side == "right":
        xs, fs = x[-count:], f[-count:]
    else:
        xs, fs = x[:count], f[:count]
    if tail_model == "one_over_omega":
        return np.mean(fs * xs)
    return np.mean(fs * xs**2)


def _log_ratio_over_omega(omega, edge):
    """log1p(-omega/edge) / omega with the removable singularity filled."""
    out = np.empty(omega.shape, dtype=float)
    small = np.abs(omega) <= 1e-8 * abs(edge)
    out[small] = -1.0 / edge - omega[small] / (2.0 * edge**2)
    big = ~small
    out[big] = np.log1p(-omega[big] / edge) / omega[big]
    return out


def _log_ratio_balanced(omega, edge):
    """log1p(-omega/edge)/omega^2 + 1/(omega*edge), filled near zero."""
    out = np.empty(omega.shape, dtype=float)
    small = np.abs(omega) <= 1e-5 * abs(edge)
    out[small] = -1.0 / (2.0 * edge**2) - omega[small] / (3.0 * edge**3)
    big = ~small
    om = omega[big]
    out[big] = np.log1p(-om / edge) / om**2 + 1.0 / (om * edge)
    return out


def _tail_correction(x, f, h, tail_model):
    """Closed-form tails of the principal-value integral beyond the grid.

    The quadrature covers [x0 - h/2, xN + h/2] in effect, so the tail
    models take over from half a cell beyond the end nodes; this also
    keeps the logarithms finite at the end nodes themselves.
    """
    if x[0] >= 0 or x[-1] <= 0:
        raise ValueError("tail corrections need a grid spanning the origin")
    a = x[0] - 0.5 * h
    b = x[-1] + 0.5 * h
    a_right = _fit_tail_amplitude(x, f, tail_model, "right")
    a_left = _fit_tail_amplitude(x, f, tail_model, "left")
    if tail_model == "one_over_omega":
        t_right = a_right * _log_ratio_over_omega(x, b)
        t_left = -a_left * _log_ratio_over_omega(x, a)
    else:
        t_right = a_right * _log_ratio_balanced(x, b)
        t_left = -a_left * _log_ratio_balanced(x, a)
    return t_right + t_left


def hilbert_transform(
    spectrum_values: np.ndarray,
    grid: FrequencyGrid,
    tail_model: str = "none",
) -> np.ndarray:
    """Discrete principal-value transform (1/pi) PV int f(eta)/(omega-eta).

    Args:
        spectrum_values: samples of f on the grid, real or complex.
        grid: uniform frequency grid.
        tail_model: "none", "one_over_omega", or "one_over_omega2";
            the latter two fit the outer 5 percent of nodes per side and
            add the analytic tail of the assumed falloff.  Tail models
            need a grid spanning the origin.

    Returns:
        Array of transform values on the same grid.
    """
    if tail_model not in TAIL_MODELS:
        raise ValueError(f"unknown tail model {tail_model!r}")
    f = np.asarray(spectrum_values, dtype=complex)
    x = grid.values
    if f.shape != x.shape:
        raise ValueError("values must match the grid length")
    h = _uniform_spacing(x, "hilbert_transform")
    out = _pv_core(f)
    if tail_model != "none":
        out = out + _tail_correction(x, f, h, tail_model)
    return out / np.pi


def _interior(n: int, edge_fraction: float) -> slice:
    k = int(np.floor(edge_fraction * n))
    return slice(k, n - k) if k > 0 else slice(None)


def kk_residual(
    spectrum: ComplexSpectrum,
    tail_model: str = "none",
    edge_fraction: float = 0.05,
) -> KKReport:
    """Causality residual S - i H[S] of a sampled response.

    A response whose poles all sit in the lower half-plane satisfies
    S = i H[S] on the real line, so the residual is a direct causality
    probe: it stays at the quadrature level for retarded responses and
    grows to order 2|S| for advanced ones.

    Statistics are reported over the interior nodes only, dropping
    ``edge_fraction`` of the grid per side where the truncated
    principal-value integral is least trustworthy.
    """
    transformed = hilbert_transform(spectrum.values, spectrum.grid, tail_model)
    residual = np.abs(spectrum.values - 1j * transformed)
    sl = _interior(residual.size, edge_fraction)
    inner = residual[sl]
    return KKReport(
        residual_max=float(np.max(inner)),
        residual_l2=float(np.sqrt(np.mean(inner**2))),
        tail_model=tail_model,
        nodes=int(inner.size),
    )


def tau_kk_residual(
    temporal: TemporalSpectrum,
    tail_model: str = "none",
    edge_fraction: float = 0.05,
) -> KKReport:
    """Causality residual of a temporal function given on omega > 0 only.

    The samples are mirrored with tau(-omega) = conj(tau(omega)), embedded
    in a uniform grid through the origin, and zero-filled across the
    origin window the input grid excludes.  Residual statistics skip that
    window (its half-width is returned as ``origin_gap``) along with the
    usual edge bands, but the zero-filled nodes still influence the
    transform, so a grid reaching close to the origin probes more than a
    widely gapped one.

    Raises:
        NonPositiveGrid: input grid is not strictly positive.
        NonUniformGrid: input nodes do not sit on a uniform grid aligned
            with the origin.
    """
    extended = extend_negative_frequencies(temporal)
    g = temporal.grid.values
    h = _uniform_spacing(g, "tau_kk_residual")
    k = int(round(g[0] / h))
    if k < 1 or abs(g[0] - k * h) > 1e-6 * h:
        raise NonUniformGrid(
            "positive grid must sit on a uniform grid through the origin"
        )
    n = g.size
    m_max = k + n - 1
    super_x = h * np.arange(-m_max, m_max + 1)
    values = np.zeros(super_x.size, dtype=complex)
    tau_pos = extended.tau[extended.grid.values > 0]
    values[m_max + k :] = tau_pos
    values[: m_max - k + 1] = np.conj(tau_pos)[::-1]
    super_grid = FrequencyGrid(super_x)
    transformed = hilbert_transform(values, super_grid, tail_model)
    residual = np.abs(values - 1j * transformed)
    keep = np.abs(super_x) > g[0] - 0.5 * h
    sl = _interior(super_x.size, edge_fraction)
    mask = np.zeros(super_x.size, dtype=bool)
    mask[sl] = True
    mask &= keep
    inner = residual[mask]
    return KKReport(
        residual_max=float(np.max(inner)),
        residual_l2=float(np.sqrt(np.mean(inner**2))),
        tail_model=tail_model,
        nodes=int(inner.size),
        origin_gap=float(g[0]),
    )


def _sum_rule_blocks(grid_values: np.ndarray):
    steps = np.diff(grid_values)
    median = float(np.median(steps))
    cuts = np.nonzero(steps > 1.5 * median)[0]
    edges = np.concatenate(([0], cuts + 1, [grid_values.size]))
    return [
        slice(int(edges[i]), int(edges[i + 1]))
        for i in range(edges.size - 1)
        if edges[i + 1] - edges[i] >= 2
    ]


def _sum_rule_integrand(spectrum: ComplexSpectrum, temporal: TemporalSpectrum):
    g = spectrum.grid.values
    if not np.array_equal(g, temporal.grid.values):
        raise GridError("sum rule needs matching spectrum and tau grids")
    if float(np.min(np.abs(g))) < 1e-12 * max(1.0, spectrum.grid.span):
        raise OriginInGrid("sum rule grid must exclude the origin")
    integrand = spectrum.values / g * (temporal.tau - 1j / g)
    return g, integrand


def frequency_sum_rule(
    spectrum: ComplexSpectrum, temporal: TemporalSpectrum
) -> complex:
    """Weighted balance integral int S/omega (tau - i/omega) d omega.

    For a response regular at the origin with S(0) = 0 this vanishes.
    The grid must exclude a window around omega = 0; integration is by
    trapezoid per contiguous block, never across a gap (blocks split
    where the spacing jumps above 1.5 times the median).

    Returns:
        The complex value of the integral over the sampled blocks.
    """
    g, integrand = _sum_rule_integrand(spectrum, temporal)
    total = 0.0 + 0.0j
    for block in _sum_rule_blocks(g):
        total += np.trapezoid(integrand[block], g[block])
    return complex(total)


def sum_rule_scale(spectrum: ComplexSpectrum, temporal: TemporalSpectrum) -> float:
    """L1 scale of the sum-rule integrand, for judging how small a value is."""
    g, integrand = _sum_rule_integrand(spectrum, temporal)
    total = 0.0
    for block in _sum_rule_blocks(g):
        total += float(np.trapezoid(np.abs(integrand[block]), g[block]))
    return total


def time_sum_rule(
    spectrum_time: np.ndarray, tau_time: np.ndarray, times: np.ndarray
) -> complex:
    """Time-domain balance integral int_0^inf S(t) tau(-t) dt.

    The negative-time values of tau come from the conjugate-symmetric
    extension tau(-t) = conj(tau(t)), so the integrand is formed from
    the supplied samples directly.

    Raises:
        NonPositiveGrid: the time grid must start at t >= 0.
        InsufficientDecay: the integrand has not fallen below 1e-6 of its
            peak by the end of the grid.
    """
    s = np.asarray(spectrum_time, dtype=complex)
    tau = np.asarray(tau_time, dtype=complex)
    times = np.asarray(times, dtype=float)
    if s.shape != times.shape or tau.shape != times.shape or times.ndim != 1:
        raise ValueError("samples and time grid must be matching 1-d arrays")
    if times.size < 2:
        raise ValueError("time grid needs at least two nodes")
    if times[0] < 0:
        raise NonPositiveGrid("time grid must start at t >= 0")
    _uniform_spacing(times, "time_sum_rule")
    integrand = s * np.conj(tau)
    peak = float(np.max(np.abs(integrand)))
    if peak == 0.0:
        return 0.0 + 0.0j
    if abs(integrand[-1]) > 1e-6 * peak:
        raise InsufficientDecay(
            "integrand has not decayed below 1e-6 of its peak at the grid end"
        )
    return complex(np.trapezoid(integrand, times))


def residue_time_domain(model: PoleZeroModel, t):
    """Closed-form time-domain temporal function of a pole-zero model.

    Each resonance contributes -cos(omega_n t) exp(-gamma_n |t|) to the
    real part; the imaginary part is the odd completion
    tau2(t) = -i sgn(t) tau1(t) with sgn(0) = 0.  The power prefactor
    contributes nothing here.

    Returns:
        Tuple (tau1_t, tau2_t): a real and a complex value or array
        matching the shape of ``t``.
    """
    t_arr = np.asarray(t, dtype=float)
    wn = np.array([w for w, _ in model.resonances])
    gn = np.array([g for _, g in model.resonances])
    if wn.size:
        terms = -np.cos(np.multiply.outer(t_arr, wn)) * np.exp(
            -np.multiply.outer(np.abs(t_arr), gn)
        )
        tau1 = np.sum(terms, axis=-1)
    else:
        tau1 = np.zeros_like(t_arr)
    tau2 = -1j * np.sign(t_arr) * tau1
    if np.ndim(t) == 0:
        return float(tau1), complex(tau2)
    return tau1, tau2


@dataclass(frozen=True)
class Contour:
    """Closed polyline in the complex frequency plane.

    Vertices must repeat the starting point at the end.  Orientation is
    part of the data: ``counterclockwise`` must agree with the signed
    area of the polygon.
    """

    vertices: np.ndarray
    counterclockwise: bool = True

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=complex)
        if v.ndim != 1 or v.size < 4:
            raise ValueError("contour needs at least three edges")
        scale = float(np.max(np.abs(v)))
        if abs(v[0] - v[-1]) > 1e-12 * max(1.0, scale):
            raise ValueError("contour must be closed (first vertex repeated)")
        area = 0.5 * float(np.sum(np.imag(np.conj(v[:-1]) * v[1:])))
        if area == 0.0:
            raise ValueError("contour encloses zero area")
        if (area > 0) != self.counterclockwise:
            raise ValueError("vertex order disagrees with orientation flag")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def rectangle(cls, re_min, re_max, im_min, im_max, counterclockwise=True):
        if not (re_min < re_max and im_min < im_max):
            raise ValueError("rectangle bounds must be ordered")
        corners = [
            complex(re_min, im_min),
            complex(re_max, im_min),
            complex(re_max, im_max),
            complex(re_min, im_max),
            complex(re_min, im_min),
        ]
        if not counterclockwise:
            corners = corners[::-1]
        return cls(np.array(corners), counterclockwise)


def _segment_gap(v0: complex, v1: complex, points: np.ndarray) -> float:
    """Smallest distance from any of ``points`` to the segment v0-v1."""
    d = v1 - v0
    den = abs(d) ** 2
    if den == 0.0:
        return float(np.min(np.abs(points - v0)))
    t = np.clip(((points - v0) * np.conj(d)).real / den, 0.0, 1.0)
    nearest = v0 + t * d
    return float(np.min(np.abs(points - nearest)))


def winding_number(
    model: PoleZeroModel, contour: Contour, samples_per_edge: int = 16
) -> float:
    """Contour integral (1/2 pi) oint tau d omega of a pole-zero model.

    Counts enclosed zeros minus enclosed poles of the response for a
    counterclockwise contour; the result is real up to quadrature noise.
    Each edge is split into ``samples_per_edge`` panels with 8-node
    Gauss-Legendre quadrature per panel.

    Raises:
        SingularityOnContour: an edge passes within 1e-6 of a zero,
            pole, or (for a power prefactor) the origin.
    """
    if samples_per_edge < 16:
        raise ValueError("samples_per_edge must be at least 16")
    nodes, weights = np.polynomial.legendre.leggauss(8)
    singular = list(model.zeros()) + list(model.poles())
    if model.p > 0:
        singular.append(0.0 + 0.0j)
    singular = np.array(singular, dtype=complex)

    v = contour.vertices
    for v0, v1 in zip(v[:-1], v[1:]):
        if singular.size and _segment_gap(v0, v1, singular) < 1e-6:
            raise SingularityOnContour(
                "contour edge within 1e-6 of a zero or pole"
            )

    total = 0.0 + 0.0j
    for v0, v1 in zip(v[:-1], v[1:]):
        edges = np.linspace(0.0, 1.0, samples_per_edge + 1)
        for s0, s1 in zip(edges[:-1], edges[1:]):
            mid = 0.5 * (s0 + s1)
            half = 0.5 * (s1 - s0)
            s_q = mid + half * nodes
            z_q = v0 + (v1 - v0) * s_q
            tau_q = model_tau(model, z_q)
            total += (v1 - v0) * half * np.sum(weights * tau_q)
    return float(np.real(total) / (2.0 * np.pi))
