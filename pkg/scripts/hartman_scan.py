#!/usr/bin/env python3
"""Scan barrier width at fixed sub-barrier energy.

Usage: hartman_scan.py [ENERGY] [HEIGHT]

Prints a csv table of width, opacity kappa*a, transmission, delay, and
formation time. The delay saturates as the barrier becomes opaque while
the transmission keeps falling exponentially; the formation time stays
negative throughout.
"""

import sys

import numpy as np

from tauspec.scatter1d import (
    PotentialProfile,
    formation_time,
    s_matrix,
    wigner_delay,
)


def main(argv) -> int:
    energy = float(argv[1]) if len(argv) > 1 else 0.5
    height = float(argv[2]) if len(argv) > 2 else 1.0
    if not 0.0 < energy < height:
        print("error: need 0 < ENERGY < HEIGHT for a tunnelling scan",
              file=sys.stderr)
        return 2
    kappa = np.sqrt(height - energy)
    print("width,opacity,transmission,delay,formation")
    for width in np.linspace(1.0, 22.0 / kappa, 36):
        profile = PotentialProfile.single(float(width), height)
        amp = s_matrix(profile, energy)
        delay = wigner_delay(profile, energy)
        formation = formation_time(profile, energy)
        print(f"{width:.4f},{kappa * width:.4f},{abs(amp.t) ** 2:.6e},"
              f"{delay:.9f},{formation:.9f}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
