"""Integrator diagnostics near classical L4: Jacobi drift, RK4 order, period."""
import argparse
import math

import numpy as np

from photokam.dynamics import PhaseState, crossing_period, integrate, linearize
from photokam.equilibria import classical_point
from photokam.linear import frequencies
from photokam.params import derive_params


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mu", type=float, default=0.01)
    ap.add_argument("--t-final", type=float, default=100.0)
    args = ap.parse_args()
    p = derive_params(args.mu)
    pt = classical_point(args.mu)
    s = PhaseState(pt.x + 1e-3, pt.y, 0.0, 1e-3)

    c = integrate(s, p, args.t_final, cadence=1.0).jacobi(p)
    print(f"Jacobi drift over T={args.t_final:g}: {np.max(np.abs(c - c[0])):.3e}")

    ref = integrate(s, p, 10.0, rtol=1e-13, atol=1e-15)[-1].vector()
    errs = [np.linalg.norm(integrate(s, p, 10.0, step=h, method="rk4")[-1].vector() - ref)
            for h in (0.1, 0.05, 0.025)]
    print("RK4 error ratios under step halving:",
          ", ".join(f"{a / b:.2f}" for a, b in zip(errs, errs[1:])))

    # excite the long-period mode only
    lin = linearize(pt, p)
    w2 = frequencies(p).omega2
    vec = lin.eigenvectors[:, int(np.argmin(np.abs(lin.eigenvalues - 1j * w2)))]
    dz = 1e-6 * (vec / np.max(np.abs(vec[:2]))).real
    s2 = PhaseState(pt.x + dz[0], pt.y + dz[1], dz[2], dz[3])
    period = 2 * math.pi / w2
    traj = integrate(s2, p, 5 * period, cadence=period / 400)
    measured = crossing_period(traj.t, traj.z[:, 0] - pt.x)
    print(f"long period: measured {measured:.6f}, 2*pi/omega2 {period:.6f}, "
          f"rel diff {measured / period - 1:.2e}")


if __name__ == "__main__":
    main()
