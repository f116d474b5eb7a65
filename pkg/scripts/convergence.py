"""Step-size convergence of the orbit (RK4) and the spin (Strang splitting).

The orbit error is measured against the analytic cyclotron solution, the
spin error against a run at a much smaller step.  Successive error ratios
near 16 and 4 indicate fourth and second order respectively.
"""
import argparse
import math
import sys

import numpy as np

from hiddenspin import Constants, FieldConfiguration, Integrator, ParticleState, TermMask, integrate
from hiddenspin.mathcore import spinor_from_bloch


def cyclotron_error(dt, T=10.0):
    k = Constants(e=1.0)
    r0, v0 = np.array([1.0, 0, 0]), np.array([0, 0.5, 0.1])
    st = ParticleState(r0, v0, 0.0, spinor_from_bloch((0, 0, 1)))
    rec = integrate(Integrator(FieldConfiguration("uniform_static", B=(0, 0, 1.0)), k), st, T, dt, 10**9)
    s, c = math.sin(T), math.cos(T)
    exact = r0 + np.array([v0[0] * s - v0[1] * c + v0[1], v0[0] * c - v0[0] + v0[1] * s, v0[2] * T])
    return float(np.linalg.norm(rec.final.r - exact))


def spin_final(dt, T=4.0):
    integ = Integrator(FieldConfiguration("plane_wave_circular", E0=0.8, omega=2.0), Constants(e=1.0),
                       TermMask.of("zeeman", "h2"))
    st = ParticleState(np.zeros(3), np.array([0.1, 0, 0]), 0.0, spinor_from_bloch((1, 0, 0)))
    return integrate(integ, st, T, dt, 10**9).final.sigma


def table(label, dts, errs):
    print(label)
    print(f"  {'dt':>8} {'error':>12} {'ratio':>8}")
    prev = None
    for dt, e in zip(dts, errs):
        ratio = "" if prev is None else f"{prev / e:8.3f}"
        print(f"  {dt:>8.4f} {e:>12.4e} {ratio:>8}")
        prev = e


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, default=5, help="number of dt halvings")
    args = ap.parse_args(argv)

    dts = [0.4 / 2 ** i for i in range(args.levels)]
    table("orbit (cyclotron, analytic reference)", dts, [cyclotron_error(dt) for dt in dts])
    ref = spin_final(dts[-1] / 16)
    table("spin (wave with zeeman + h2, fine-step reference)", dts,
          [float(np.linalg.norm(spin_final(dt) - ref)) for dt in dts])
    return 0


if __name__ == "__main__":
    sys.exit(main())
