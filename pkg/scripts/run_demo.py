#!/usr/bin/env python3
"""Drive every command-line verb through one reproducible pipeline.

Usage: run_demo.py [OUTPUT_DIR]

The script writes all of its inputs, runs the verbs in process, then
re-reads the outputs and checks the headline numbers. Exit code 0 means
every check passed. Paths inside the output directory are relative, so
two runs into different directories produce byte-identical trees.
"""

import json
import os
import sys
import time

import numpy as np

from tauspec import fileio
from tauspec.cli import main as cli
from tauspec.core import (
    ComplexSpectrum,
    FrequencyGrid,
    PoleZeroModel,
    TemporalSpectrum,
    evaluate_model,
    model_tau,
)

CHECKS = []


def check(name: str, ok: bool, detail: str = "") -> None:
    CHECKS.append((name, bool(ok)))
    print(f"  {'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))


def run(argv) -> None:
    rc = cli(argv)
    if rc != 0:
        check("command " + " ".join(argv), False, f"exit {rc}")


def write_json(name: str, doc: dict) -> None:
    with open(name, "w", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def main(argv) -> int:
    outdir = argv[1] if len(argv) > 1 else "demo_out"
    os.makedirs(outdir, exist_ok=True)
    os.chdir(outdir)
    t0 = time.perf_counter()

    # 1. Sample a single-resonance model, then re-extract tau from the
    # sampled spectrum and compare at the peak (tau1 = 4/gamma there).
    write_json("resonance.json", {"type": "blaschke", "resonances": [[1.0, 0.2]]})
    run(["model", "resonance.json", "--from", "0.25", "--to", "1.75",
         "--points", "4001", "-o", "resonance"])
    run(["--stencil", "4", "extract", "resonance.spectrum.csv",
         "-o", "resonance.extracted.csv"])
    ext = fileio.read_temporal("resonance.extracted.csv")
    idx = int(np.argmin(np.abs(ext.grid.values - 1.0)))
    check("delay peak equals 4/gamma", abs(ext.tau1[idx] - 20.0) < 1e-2,
          f"tau1(1)={ext.tau1[idx]:.6f}")

    # 2. Causality discrimination: a retarded pole passes the dispersion
    # residual test, its conjugate fails it loudly.
    x = np.linspace(-60.0, 60.0, 40001)
    g = FrequencyGrid(x)
    fileio.write_spectrum("causal.csv", ComplexSpectrum(g, 1.0 / (x - 1.0 + 0.1j)))
    fileio.write_spectrum("acausal.csv", ComplexSpectrum(g, 1.0 / (x - 1.0 - 0.1j)))
    run(["--tail", "w1", "kk", "causal.csv", "-o", "kk_causal.txt"])
    run(["--tail", "w1", "kk", "acausal.csv", "-o", "kk_acausal.txt"])
    _, cmap = fileio.read_artifact("kk_causal.txt")
    _, amap = fileio.read_artifact("kk_acausal.txt")
    causal_max = float(cmap["residual_max"])
    ratio = float(amap["residual_max"]) / causal_max
    check("causal residual small", causal_max < 2e-2, f"max={causal_max:.3e}")
    check("acausal residual much larger", ratio > 10.0, f"ratio={ratio:.1f}")

    # 3. Weighted balance integral for a sharp resonance carried by a
    # 1/omega prefactor, on a conjugate-symmetric grid.
    pos = np.arange(0.5, 60.0 + 1e-9, 0.001)
    model = PoleZeroModel(p=1, resonances=((10.0, 0.02),))
    s_pos = evaluate_model(model, pos)
    tau_pos = model_tau(model, pos)
    grid = FrequencyGrid(np.concatenate([-pos[::-1], pos]))
    values = np.concatenate([np.conj(s_pos)[::-1], s_pos])
    tau = np.concatenate([np.conj(tau_pos)[::-1], tau_pos])
    fileio.write_spectrum("balance.spectrum.csv", ComplexSpectrum(grid, values))
    fileio.write_temporal(
        "balance.tau.csv", TemporalSpectrum(grid, tau.real, tau.imag)
    )
    run(["sumrule", "--spectrum", "balance.spectrum.csv",
         "--tau", "balance.tau.csv", "-o", "sumrule.txt"])
    _, smap = fileio.read_artifact("sumrule.txt")
    value = complex(float(smap["value_re"]), float(smap["value_im"]))
    balance = abs(value) / float(smap["l1_scale"])
    check("balance integral cancels", balance < 1e-2, f"|value|/L1={balance:.2e}")

    # 4. Winding counts around the zero, the pole, and an empty region.
    rects = (
        ("winding_zero.txt", ("0", "2", "0.02", "1"), 1.0),
        ("winding_pole.txt", ("0", "2", "-1", "-0.02"), -1.0),
        ("winding_empty.txt", ("2", "3", "0.02", "1"), 0.0),
    )
    for name, rect, want in rects:
        run(["winding", "resonance.json", "--rect", *rect, "-o", name])
        _, wmap = fileio.read_artifact(name)
        got = float(wmap["winding"])
        check(f"winding {want:+.0f}", abs(got - want) < 1e-3, f"count={got:.6f}")

    # 5. Barrier sweep: bounded transmission, negative sub-barrier
    # formation time.
    write_json("barrier.json", {"type": "barrier", "segments": [[2.0, 1.0]]})
    run(["barrier", "barrier.json", "--from", "0.05", "--to", "2.95",
         "--points", "30", "-o", "barrier.csv"])
    _, cols = fileio.read_table("barrier.csv")
    energies, trans, _, _, tau2 = cols
    check("transmission bounded", bool(np.all((trans >= 0) & (trans <= 1 + 1e-12))))
    check("sub-barrier formation negative", bool(np.all(tau2[energies < 0.95] < 0)))

    # 6. Merge everything into one report plus a plotting script.
    inputs = [
        "resonance.spectrum.csv", "resonance.tau.csv", "resonance.extracted.csv",
        "balance.spectrum.csv", "balance.tau.csv", "barrier.csv",
        "kk_causal.txt", "kk_acausal.txt", "sumrule.txt",
        "winding_zero.txt", "winding_pole.txt", "winding_empty.txt",
    ]
    run(["report", *inputs, "-o", "report.txt", "--gnuplot", "plot.gp"])
    check("report written", os.path.exists("report.txt") and os.path.exists("plot.gp"))

    elapsed = time.perf_counter() - t0
    failed = [name for name, ok in CHECKS if not ok]
    print(f"demo finished in {elapsed:.2f} s; "
          f"{len(CHECKS) - len(failed)}/{len(CHECKS)} checks passed")
    if failed:
        print("failed checks: " + ", ".join(failed))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
