"""On-disk formats: csv tables for spectra and temporal functions, JSON
model documents, and key=value artifact files.

All writers emit LF newlines and %.12e floats so repeated runs produce
byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import ComplexSpectrum, FrequencyGrid, PoleZeroModel, TemporalSpectrum
from .physics import (
    LorentzMediumParams,
    OscillatorParams,
    PhotonParams,
    TwoLevelParams,
)
from .scatter1d import PotentialProfile

__all__ = [
    "SPECTRUM_HEADER",
    "TEMPORAL_HEADER",
    "BARRIER_HEADER",
    "ModelDocument",
    "read_spectrum",
    "write_spectrum",
    "read_temporal",
    "write_temporal",
    "write_barrier_table",
    "read_table",
    "load_model",
    "save_model",
    "write_artifact",
    "read_artifact",
    "detect_format",
]

SPECTRUM_HEADER = "omega,re,im"
TEMPORAL_HEADER = "omega,tau1,tau2"
BARRIER_HEADER = "energy,transmission,phase,tau1,tau2"
ARTIFACT_PREFIX = "# tauspec:"
ARTIFACT_VERSION = "v1"


def _fmt(x: float) -> str:
    return "%.12e" % float(x)


def _write_rows(path: str, header: str, columns) -> None:
    rows = [",".join(_fmt(c[i]) for c in columns) for i in range(len(columns[0]))]
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        fh.write("\n".join(rows))
        fh.write("\n")


def read_table(path: str):
    """Read a csv table, returning (header, list of float columns)."""
    with open(path, "r") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty file")
    header = lines[0]
    names = header.split(",")
    data = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(names):
            raise ValueError(f"{path}: row has {len(parts)} fields, expected {len(names)}")
        data.append([float(p) for p in parts])
    if not data:
        raise ValueError(f"{path}: table has no rows")
    arr = np.asarray(data, dtype=float)
    return header, [arr[:, i] for i in range(arr.shape[1])]


def read_spectrum(path: str) -> ComplexSpectrum:
    header, cols = read_table(path)
    if header != SPECTRUM_HEADER:
        raise ValueError(f"{path}: expected header {SPECTRUM_HEADER!r}, got {header!r}")
    grid = FrequencyGrid(cols[0])
    return ComplexSpectrum(grid, cols[1] + 1j * cols[2])


def write_spectrum(path: str, spectrum: ComplexSpectrum) -> None:
    _write_rows(
        path,
        SPECTRUM_HEADER,
        [spectrum.grid.values, spectrum.values.real, spectrum.values.imag],
    )


def read_temporal(path: str) -> TemporalSpectrum:
    header, cols = read_table(path)
    if header != TEMPORAL_HEADER:
        raise ValueError(f"{path}: expected header {TEMPORAL_HEADER!r}, got {header!r}")
    grid = FrequencyGrid(cols[0])
    return TemporalSpectrum(grid, cols[1], cols[2])


def write_temporal(path: str, temporal: TemporalSpectrum) -> None:
    _write_rows(
        path,
        TEMPORAL_HEADER,
        [temporal.grid.values, temporal.tau1, temporal.tau2],
    )


def write_barrier_table(path, energies, transmission, phase, tau1, tau2) -> None:
    _write_rows(path, BARRIER_HEADER, [energies, transmission, phase, tau1, tau2])


@dataclass(frozen=True)
class ModelDocument:
    """A typed model loaded from JSON: kind tag plus parameter object."""

    kind: str
    params: object
    branch: str = "lower"


_MODEL_FIELDS = {
    "blaschke": ({"resonances"}, {"scale", "p", "prefactor_sign"}),
    "oscillator": ({"omega0", "gamma"}, set()),
    "lorentz": ({"plasma_frequency", "omega0", "gamma"}, set()),
    "breit_wigner": ({"omega0", "gamma"}, {"gamma0", "branch"}),
    "photon": ({"k_abs", "eta"}, set()),
    "barrier": ({"segments"}, set()),
}


def _check_fields(kind: str, doc: dict) -> None:
    required, optional = _MODEL_FIELDS[kind]
    fields = set(doc) - {"type"}
    unknown = fields - required - optional
    if unknown:
        raise ValueError(f"unknown field {sorted(unknown)[0]!r} for model type {kind!r}")
    missing = required - fields
    if missing:
        raise ValueError(f"missing field {sorted(missing)[0]!r} for model type {kind!r}")


def _pair(value, what: str):
    if not (isinstance(value, (list, tuple)) and len(value) == 2):
        raise ValueError(f"{what} must be a two-element list")
    return float(value[0]), float(value[1])


def load_model(path: str) -> ModelDocument:
    """Load and validate a JSON model document.

    Every parameter invariant is re-checked on load by constructing the
    corresponding parameter object; unknown fields are rejected.
    """
    with open(path, "r") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: model document must be a JSON object")
    kind = doc.get("type")
    if kind not in _MODEL_FIELDS:
        known = ", ".join(sorted(_MODEL_FIELDS))
        raise ValueError(f"{path}: unknown model type {kind!r} (known: {known})")
    _check_fields(kind, doc)

    if kind == "blaschke":
        scale = _pair(doc.get("scale", [1.0, 0.0]), "scale")
        resonances = tuple(
            _pair(item, "resonance") for item in doc["resonances"]
        )
        params = PoleZeroModel(
            scale=complex(*scale),
            p=int(doc.get("p", 0)),
            resonances=resonances,
            prefactor_sign=int(doc.get("prefactor_sign", 1)),
        )
        return ModelDocument(kind, params)
    if kind == "oscillator":
        return ModelDocument(
            kind, OscillatorParams(float(doc["omega0"]), float(doc["gamma"]))
        )
    if kind == "lorentz":
        osc = OscillatorParams(float(doc["omega0"]), float(doc["gamma"]))
        return ModelDocument(
            kind, LorentzMediumParams(float(doc["plasma_frequency"]), osc)
        )
    if kind == "breit_wigner":
        branch = doc.get("branch", "lower")
        if branch not in ("upper", "lower"):
            raise ValueError(f"{path}: branch must be 'upper' or 'lower'")
        params = TwoLevelParams(
            float(doc["omega0"]),
            float(doc["gamma"]),
            float(doc.get("gamma0", 0.0)),
        )
        return ModelDocument(kind, params, branch)
    if kind == "photon":
        return ModelDocument(
            kind, PhotonParams(float(doc["k_abs"]), float(doc["eta"]))
        )
    segments = doc["segments"]
    if not isinstance(segments, list):
        raise ValueError(f"{path}: segments must be a list of [width, height] pairs")
    profile = PotentialProfile(tuple(_pair(s, "segment") for s in segments))
    return ModelDocument(kind, profile)


def save_model(path: str, document: ModelDocument) -> None:
    """Write a model document back to JSON (canonical key order)."""
    kind = document.kind
    p = document.params
    if kind == "blaschke":
        doc = {
            "type": kind,
            "scale": [p.scale.real, p.scale.imag],
            "p": p.p,
            "resonances": [[w, g] for w, g in p.resonances],
            "prefactor_sign": p.prefactor_sign,
        }
    elif kind == "oscillator":
        doc = {"type": kind, "omega0": p.omega0, "gamma": p.gamma}
    elif kind == "lorentz":
        doc = {
            "type": kind,
            "plasma_frequency": p.plasma_frequency,
            "omega0": p.oscillator.omega0,
            "gamma": p.oscillator.gamma,
        }
    elif kind == "breit_wigner":
        doc = {
            "type": kind,
            "omega0": p.omega0,
            "gamma": p.gamma,
            "gamma0": p.gamma0,
            "branch": document.branch,
        }
    elif kind == "photon":
        doc = {"type": kind, "k_abs": p.k_abs, "eta": p.eta}
    elif kind == "barrier":
        doc = {"type": kind, "segments": [[w, h] for w, h in p.segments]}
    else:
        raise ValueError(f"unknown model kind {kind!r}")
    with open(path, "w", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def format_artifact(kind: str, mapping: dict) -> str:
    """Render an artifact document as deterministic text."""
    lines = [f"{ARTIFACT_PREFIX}{kind} {ARTIFACT_VERSION}"]
    for key in sorted(mapping):
        value = mapping[key]
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, (int, np.integer)):
            text = "%d" % value
        elif isinstance(value, (float, np.floating)):
            text = _fmt(value)
        else:
            text = str(value)
        lines.append(f"{key}={text}")
    return "\n".join(lines) + "\n"


def write_artifact(path: str, kind: str, mapping: dict) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_artifact(kind, mapping))


def read_artifact(path: str):
    """Read an artifact file, returning (kind, ordered key/value dict)."""
    with open(path, "r") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith(ARTIFACT_PREFIX):
        raise ValueError(f"{path}: not an artifact file")
    head = lines[0][len(ARTIFACT_PREFIX) :].split()
    kind = head[0]
    mapping = {}
    for ln in lines[1:]:
        if "=" not in ln:
            raise ValueError(f"{path}: malformed artifact line {ln!r}")
        key, _, value = ln.partition("=")
        mapping[key] = value
    return kind, mapping


def detect_format(path: str) -> str:
    """Classify a file by its first non-empty line."""
    with open(path, "r") as fh:
        first = ""
        for ln in fh:
            if ln.strip():
                first = ln.strip()
                break
    if not first:
        raise ValueError(f"{path}: empty file")
    if first.startswith(ARTIFACT_PREFIX):
        return "artifact"
    if first == SPECTRUM_HEADER:
        return "spectrum"
    if first == TEMPORAL_HEADER:
        return "temporal"
    if first == BARRIER_HEADER:
        return "barrier"
    if first.startswith("{"):
        return "model"
    raise ValueError(f"{path}: unrecognised file format")
