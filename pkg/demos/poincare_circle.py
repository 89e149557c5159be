"""Walk the output polarization around the Poincare sphere.

For a horizontally polarized input photon, sweeping the drive parameter
alpha at a fixed dipole angle theta moves the output state along a circle
whose plane is perpendicular to the equator; sweeping theta then carries
that circle over the whole sphere.  This script prints a few trajectories
and verifies the circle geometry numerically.
"""

import math

import numpy as np

import polarix as px


def show_trajectory(theta: float) -> None:
    center, radius = px.poincare_circle(theta)
    print(f"\ntheta = {theta / math.pi:.3f} pi   "
          f"circle center = ({center[0]:+.3f}, {center[1]:+.3f}, {center[2]:+.3f})"
          f"   radius = {radius:.3f}")
    res = px.poincare_trajectory(theta, np.array([-1e6, -2.0, 0.0, 2.0, 1e6]))
    for i, alpha in enumerate(res.axis("alpha")):
        s = np.array([res.values[k][i] for k in ("s1", "s2", "s3")])
        label = f"alpha = {alpha:+.0f}" if abs(alpha) < 1e3 else "alpha -> inf"
        print(f"  {label:14s} s = ({s[0]:+.3f}, {s[1]:+.3f}, {s[2]:+.3f})   "
              f"|s - center| = {np.linalg.norm(s - center):.6f}")


def main() -> None:
    print("Equator at alpha = 0: linear output with direction eta = 2 theta")
    for theta in (0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8):
        s = px.stokes_of_output(theta, 0.0)
        eta = px.ellipse_angles(s).eta
        print(f"  theta = {theta / math.pi:.3f} pi -> eta = {eta / math.pi:.3f} pi")

    for theta in (math.pi / 4, math.pi / 8):
        show_trajectory(theta)

    print("\nCircle invariant across 1000 random (theta, alpha) samples:")
    rng = np.random.default_rng(7)
    worst = 0.0
    for theta in rng.uniform(0.0, math.pi, 100):
        center, radius = px.poincare_circle(theta)
        res = px.poincare_trajectory(theta, rng.uniform(-40, 40, 10))
        s = np.stack([res.values[k] for k in ("s1", "s2", "s3")], axis=1)
        worst = max(worst, np.abs(np.linalg.norm(s - center, axis=1) - radius).max())
    print(f"  worst |s - center| deviation from the radius: {worst:.2e}")


if __name__ == "__main__":
    main()
