"""Command-line interface.

Verbs:
    extract   tau1/tau2 from a sampled spectrum file
    model     sample a closed-form model: spectrum and tau side by side
    kk        causality residual report for a spectrum or tau table
    sumrule   weighted balance integral of a spectrum/tau pair
    winding   contour count of zeros minus poles for a pole-zero model
    barrier   transmission and delay table for a 1-d potential
    report    merge tables and artifacts into one deterministic document

Exit codes: 0 success, 2 input contract violated, 3 numerical guard
tripped, 4 domain guard (singularity or excluded region touched).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import fileio
from .core import (
    ComplexSpectrum,
    FrequencyGrid,
    TemporalSpectrum,
    evaluate_model,
    model_tau,
    reconstruct,
)
from .dispersion import (
    Contour,
    frequency_sum_rule,
    kk_residual,
    sum_rule_scale,
    tau_kk_residual,
    winding_number,
)
from .errors import (
    DegenerateEnergy,
    DegenerateFrequency,
    InsufficientDecay,
    InsufficientSupport,
    OriginInGrid,
    PhaseJump,
    PoleProximity,
    SingularityOnContour,
    TauspecError,
    ZeroModulus,
    ZeroNorm,
    ZeroTransmission,
)
from .extract import ExtractionOptions, extract_temporal
from .physics import breit_wigner_tau, oscillator_green, oscillator_tau, photon_response, photon_tau
from .scatter1d import formation_time, s_matrix, wigner_delay

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_DOMAIN = 4

_NUMERICAL_ERRORS = (
    ZeroModulus,
    PhaseJump,
    InsufficientDecay,
    InsufficientSupport,
    ZeroTransmission,
    ZeroNorm,
)
_DOMAIN_ERRORS = (
    PoleProximity,
    SingularityOnContour,
    OriginInGrid,
    DegenerateEnergy,
    DegenerateFrequency,
)

_TAIL_BY_FLAG = {"none": "none", "w1": "one_over_omega", "w2": "one_over_omega2"}

_TOLERANCES = (
    ("extract_closed_form_abs", 1.0e-3, "interior concordance with closed forms"),
    ("extract_fine_grid_rel", 1.0e-4, "order-4 stencil on a resolved grid"),
    ("round_trip_rel", 1.0e-6, "extract after reconstruct, interior"),
    ("kk_causal_max", 2.0e-2, "retarded response residual with tails"),
    ("kk_acausal_ratio_min", 1.0e1, "advanced over retarded residual"),
    ("sum_rule_ratio", 1.0e-2, "vanishing rule against integrand L1 scale"),
    ("winding_abs", 1.0e-3, "integer count from contour quadrature"),
    ("uncertainty_gaussian_abs", 1.0e-2, "spread product of a plain Gaussian"),
    ("unitarity_abs", 1.0e-10, "flux conservation of scattering amplitudes"),
    ("hartman_drift_rel", 1.0e-2, "delay change under opaque-width doubling"),
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tauspec",
        description="temporal functions of scattering: extraction, models, "
        "dispersion checks",
    )
    parser.add_argument(
        "--stencil", type=int, choices=(2, 4), default=2,
        help="finite-difference order for extraction (default 2)",
    )
    parser.add_argument(
        "--tail", choices=("none", "w1", "w2"), default="none",
        help="tail model for dispersion integrals (default none)",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def _global_flags(sp):
        # Accept the global flags after the verb as well; SUPPRESS keeps
        # a pre-verb value from being clobbered by a subparser default.
        sp.add_argument(
            "--stencil", type=int, choices=(2, 4), default=argparse.SUPPRESS
        )
        sp.add_argument(
            "--tail", choices=("none", "w1", "w2"), default=argparse.SUPPRESS
        )

    p = sub.add_parser("extract", help="tau1/tau2 from a sampled spectrum")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    _global_flags(p)

    p = sub.add_parser("model", help="sample a model: spectrum and tau files")
    p.add_argument("model")
    p.add_argument("--from", dest="lo", type=float, required=True)
    p.add_argument("--to", dest="hi", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("-o", "--output", required=True, help="output path prefix")
    _global_flags(p)

    p = sub.add_parser("kk", help="causality residual report")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="also write the report as an artifact")
    _global_flags(p)

    p = sub.add_parser("sumrule", help="weighted balance integral")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--tau", required=True)
    p.add_argument("-o", "--output")
    _global_flags(p)

    p = sub.add_parser("winding", help="zeros minus poles inside a rectangle")
    p.add_argument("model")
    p.add_argument(
        "--rect", nargs=4, type=float, required=True,
        metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"),
    )
    p.add_argument("--samples", type=int, default=16)
    p.add_argument("-o", "--output")
    _global_flags(p)

    p = sub.add_parser("barrier", help="transmission and delays of a potential")
    p.add_argument("model")
    p.add_argument("--from", dest="lo", type=float, required=True)
    p.add_argument("--to", dest="hi", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--step", type=float, default=1e-4,
                   help="energy step for delay differences")
    p.add_argument("-o", "--output", required=True)
    _global_flags(p)

    p = sub.add_parser("report", help="merge results into one document")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output")
    p.add_argument("--gnuplot", help="also write a plotting script")
    _global_flags(p)
    return parser


def _cmd_extract(args) -> int:
    spectrum = fileio.read_spectrum(args.input)
    options = ExtractionOptions(stencil_order=args.stencil)
    temporal = extract_temporal(spectrum, options)
    fileio.write_temporal(args.output, temporal)
    return EXIT_OK


def _model_tables(document, grid: FrequencyGrid, step: float = 1e-4):
    """Spectrum samples and temporal samples for a model document."""
    kind, params = document.kind, document.params
    x = grid.values
    if kind == "blaschke":
        values = evaluate_model(params, x)
        tau = model_tau(params, x)
        return values, tau.real, tau.imag
    if kind == "oscillator":
        values = oscillator_green(params, x)
        tau1, tau2 = oscillator_tau(params, x)
        return values, tau1, tau2
    if kind == "photon":
        values = photon_response(x, params.k_abs, params.eta)
        tau1, tau2 = photon_tau(x, params.k_abs, params.eta)
        return values, tau1, tau2
    if kind == "lorentz":
        tau1, tau2 = oscillator_tau(params.oscillator, x)
    elif kind == "breit_wigner":
        tau1, tau2 = breit_wigner_tau(params, x, document.branch)
    else:
        raise ValueError(f"model kind {kind!r} is not a spectral model")
    temporal = TemporalSpectrum(grid, tau1, tau2)
    spectrum = reconstruct(temporal, float(x[0]), 1.0 + 0.0j)
    return spectrum.values, tau1, tau2


def _cmd_model(args) -> int:
    document = fileio.load_model(args.model)
    grid = FrequencyGrid.linspace(args.lo, args.hi, args.points)
    if document.kind == "barrier":
        return _write_barrier(document.params, grid, args.output, step=1e-4)
    values, tau1, tau2 = _model_tables(document, grid)
    spectrum = ComplexSpectrum(grid, values)
    fileio.write_spectrum(args.output + ".spectrum.csv", spectrum)
    fileio.write_temporal(
        args.output + ".tau.csv", TemporalSpectrum(grid, tau1, tau2)
    )
    return EXIT_OK


def _cmd_kk(args, tail_model: str) -> int:
    fmt = fileio.detect_format(args.input)
    if fmt == "spectrum":
        report = kk_residual(fileio.read_spectrum(args.input), tail_model)
    elif fmt == "temporal":
        report = tau_kk_residual(fileio.read_temporal(args.input), tail_model)
    else:
        raise ValueError(f"{args.input}: kk needs a spectrum or tau table")
    mapping = {
        "input": os.path.basename(args.input),
        "kind": fmt,
        "nodes": report.nodes,
        "origin_gap": report.origin_gap,
        "residual_l2": report.residual_l2,
        "residual_max": report.residual_max,
        "tail_model": report.tail_model,
    }
    text = fileio.format_artifact("kk", mapping)
    sys.stdout.write(text)
    if args.output:
        fileio.write_artifact(args.output, "kk", mapping)
    return EXIT_OK


def _cmd_sumrule(args) -> int:
    spectrum = fileio.read_spectrum(args.spectrum)
    temporal = fileio.read_temporal(args.tau)
    value = frequency_sum_rule(spectrum, temporal)
    scale = sum_rule_scale(spectrum, temporal)
    mapping = {
        "exclusion_radius": float(np.min(np.abs(spectrum.grid.values))),
        "l1_scale": scale,
        "nodes": len(spectrum.grid),
        "value_im": value.imag,
        "value_re": value.real,
    }
    text = fileio.format_artifact("sumrule", mapping)
    sys.stdout.write(text)
    if args.output:
        fileio.write_artifact(args.output, "sumrule", mapping)
    return EXIT_OK


def _cmd_winding(args) -> int:
    document = fileio.load_model(args.model)
    if document.kind != "blaschke":
        raise ValueError("winding needs a pole-zero model")
    re_min, re_max, im_min, im_max = args.rect
    contour = Contour.rectangle(re_min, re_max, im_min, im_max)
    value = winding_number(document.params, contour, args.samples)
    mapping = {
        "im_max": im_max,
        "im_min": im_min,
        "re_max": re_max,
        "re_min": re_min,
        "samples_per_edge": args.samples,
        "winding": value,
    }
    text = fileio.format_artifact("winding", mapping)
    sys.stdout.write(text)
    if args.output:
        fileio.write_artifact(args.output, "winding", mapping)
    return EXIT_OK


def _write_barrier(profile, grid: FrequencyGrid, output: str, step: float) -> int:
    energies = grid.values
    trans = np.empty(energies.size)
    phase = np.empty(energies.size)
    tau1 = np.empty(energies.size)
    tau2 = np.empty(energies.size)
    for i, energy in enumerate(energies):
        amp = s_matrix(profile, float(energy))
        trans[i] = abs(amp.t) ** 2
        phase[i] = np.angle(amp.t)
        tau1[i] = wigner_delay(profile, float(energy), step)
        tau2[i] = formation_time(profile, float(energy), step)
    fileio.write_barrier_table(output, energies, trans, phase, tau1, tau2)
    return EXIT_OK


def _cmd_barrier(args) -> int:
    document = fileio.load_model(args.model)
    if document.kind != "barrier":
        raise ValueError("barrier needs a potential-profile model")
    grid = FrequencyGrid.linspace(args.lo, args.hi, args.points)
    return _write_barrier(document.params, grid, args.output, args.step)


def _summarise_table(fmt: str, path: str) -> dict:
    if fmt == "spectrum":
        spectrum = fileio.read_spectrum(path)
        return {
            "format": fmt,
            "max_abs": float(np.max(np.abs(spectrum.values))),
            "nodes": len(spectrum.grid),
            "omega_max": float(spectrum.grid.values[-1]),
            "omega_min": float(spectrum.grid.values[0]),
        }
    if fmt == "temporal":
        temporal = fileio.read_temporal(path)
        return {
            "format": fmt,
            "max_abs_tau1": float(np.max(np.abs(temporal.tau1))),
            "max_abs_tau2": float(np.max(np.abs(temporal.tau2))),
            "nodes": len(temporal.grid),
            "omega_max": float(temporal.grid.values[-1]),
            "omega_min": float(temporal.grid.values[0]),
        }
    header, cols = fileio.read_table(path)
    return {
        "energy_max": float(cols[0][-1]),
        "energy_min": float(cols[0][0]),
        "format": fmt,
        "nodes": int(cols[0].size),
        "transmission_max": float(np.max(cols[1])),
        "transmission_min": float(np.min(cols[1])),
    }


def _cmd_report(args) -> int:
    entries = sorted(args.inputs, key=lambda p: (os.path.basename(p), p))
    lines = [f"{fileio.ARTIFACT_PREFIX}report {fileio.ARTIFACT_VERSION}"]
    tables = []
    for path in entries:
        fmt = fileio.detect_format(path)
        lines.append("")
        lines.append(f"[file {os.path.basename(path)}]")
        if fmt == "artifact":
            kind, mapping = fileio.read_artifact(path)
            lines.append(f"format=artifact:{kind}")
            for key in sorted(mapping):
                lines.append(f"{key}={mapping[key]}")
        elif fmt in ("spectrum", "temporal", "barrier"):
            tables.append((path, fmt))
            summary = _summarise_table(fmt, path)
            for key in sorted(summary):
                value = summary[key]
                if isinstance(value, float):
                    lines.append(f"{key}={value:.12e}")
                else:
                    lines.append(f"{key}={value}")
        else:
            raise ValueError(f"{path}: report cannot summarise this format")
    lines.append("")
    lines.append("[tolerances]")
    for name, value, why in _TOLERANCES:
        lines.append(f"{name}={value:.12e}  # {why}")
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.gnuplot:
        _write_gnuplot(args.gnuplot, tables)
    return EXIT_OK


_PLOT_COLUMNS = {
    "spectrum": ((2, "re"), (3, "im")),
    "temporal": ((2, "tau1"), (3, "tau2")),
    "barrier": ((2, "transmission"), (4, "tau1"), (5, "tau2")),
}


def _write_gnuplot(path: str, tables) -> None:
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set grid",
    ]
    for table_path, fmt in tables:
        plots = ", ".join(
            f"'{table_path}' using 1:{col} with lines title '{name}'"
            for col, name in _PLOT_COLUMNS[fmt]
        )
        lines.append(f"plot {plots}")
        lines.append("pause -1")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    tail_model = _TAIL_BY_FLAG[args.tail]
    try:
        if args.verb == "extract":
            return _cmd_extract(args)
        if args.verb == "model":
            return _cmd_model(args)
        if args.verb == "kk":
            return _cmd_kk(args, tail_model)
        if args.verb == "sumrule":
            return _cmd_sumrule(args)
        if args.verb == "winding":
            return _cmd_winding(args)
        if args.verb == "barrier":
            return _cmd_barrier(args)
        if args.verb == "report":
            return _cmd_report(args)
        parser.error(f"unknown verb {args.verb!r}")
    except _NUMERICAL_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (TauspecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
