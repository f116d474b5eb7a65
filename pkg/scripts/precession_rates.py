"""Simulated spin precession rates against their closed forms.

Two runs: an electron at rest in a circularly polarized wave (``h1`` only)
and a circular Coulomb orbit (``so`` only), each swept over one parameter.
Prints a table; ``--csv`` also writes it.
"""
import argparse
import csv
import math
import sys

import numpy as np

from hiddenspin import Constants, FieldConfiguration, Integrator, ParticleState, TermMask, integrate
from hiddenspin.fields import circular_wave_e_cross_a
from hiddenspin.mathcore import spinor_from_bloch


def in_plane_angle(rec):
    return np.unwrap([math.atan2(s.sigma[1], s.sigma[0]) for s in rec.samples])[-1]


def wave_rate(E0, omega, cycles, dt):
    k = Constants()
    cfg = FieldConfiguration("plane_wave_circular", E0=E0, omega=omega)
    T = cycles * 2 * math.pi / omega
    st = ParticleState(np.zeros(3), np.zeros(3), 0.0, spinor_from_bloch((1, 0, 0)))
    rec = integrate(Integrator(cfg, k, TermMask.of("h1")), st, T, dt, sample_every=10)
    expected = k.e ** 2 / (2 * k.m ** 2 * k.c ** 2) * circular_wave_e_cross_a(cfg, k)[2]
    return in_plane_angle(rec) / T, expected


def coulomb_rate(c, periods, dt, r=1.0, Z=1.0):
    k = Constants(c=c)
    speed = math.sqrt(Z / (k.m * r))
    T = periods * 2 * math.pi * r / speed
    st = ParticleState(np.array([r, 0, 0]), np.array([0, k.m * speed, 0]), 0.0, spinor_from_bloch((1, 0, 0)))
    rec = integrate(Integrator(FieldConfiguration("coulomb_potential", Z=Z), k, TermMask.of("so")),
                    st, T, dt, sample_every=100)
    expected = (Z / r ** 3) * (k.m * speed * r) / (2 * k.m ** 2 * k.c ** 2)
    return in_plane_angle(rec) / T, expected


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dt", type=float, default=0.01)
    ap.add_argument("--csv", help="also write the table here")
    args = ap.parse_args(argv)

    rows = []
    for E0 in (0.05, 0.1, 0.2, 0.4):
        got, want = wave_rate(E0, 1.0, 10, args.dt)
        rows.append(("h1 wave", f"E0={E0:g}", got, want))
    for c in (5.0, 10.0, 20.0):
        got, want = coulomb_rate(c, 20, args.dt)
        rows.append(("so orbit", f"c={c:g}", got, want))

    print(f"{'run':<9} {'param':<8} {'simulated':>20} {'closed form':>20} {'rel err':>9}")
    for run, param, got, want in rows:
        print(f"{run:<9} {param:<8} {got:>20.14e} {want:>20.14e} {abs(got - want) / abs(want):>9.2e}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["run", "param", "simulated", "closed_form"])
            w.writerows((r, p, repr(g), repr(x)) for r, p, g, x in rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
