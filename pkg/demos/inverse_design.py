"""End-to-end inverse design of one polarization conversion.

Pick an arbitrary input and target state, solve for both control branches,
realize a drive field for a chosen photon detuning, and verify the chain
forward through the full emitter-plus-mirror model, first at the ideal
geometry and then with realistic imperfections.
"""

import math

import polarix as px


def main() -> None:
    vin = px.parse_state("linear:20")
    target = px.parse_state("jones:0.6,0,0,0.8")
    print(f"input  = [{vin.c_a:.4f}, {vin.c_b:.4f}]")
    print(f"target = [{target.c_a:.4f}, {target.c_b:.4f}]")

    b1, b2 = px.solve_controls(vin, target)
    for sol in (b1, b2):
        print(f"\nbranch {sol.branch}: alpha = {sol.alpha:+.6f}  "
              f"theta = {math.degrees(sol.theta):7.3f} deg  "
              f"xi_co = {sol.xi_co:+.6f} rad")
        em = px.EmitterConfig(theta=sol.theta, gamma_e=0.0)
        out = px.scatter(px.ideal_scattering_matrix(em, sol.alpha), vin)
        print(f"  ideal forward fidelity: {px.fidelity(out, target):.12f}")

    # realize the branch-1 drive for a photon detuned from the bare emitter
    delta_ge = 1.5
    delta_es = delta_ge - 1.0 if b1.alpha >= -delta_ge else delta_ge + 1.0
    omega, alpha_check = px.realize_drive(b1, delta_ge, delta_es)
    print(f"\ndrive realization at delta_ge = {delta_ge}: "
          f"omega = {omega:.6f}, delta_es = {delta_es} "
          f"(alpha check {alpha_check:+.6f})")

    drive = px.DriveConfig.from_drive(omega, delta_ge, delta_es)
    em = px.EmitterConfig(theta=b1.theta, gamma_e=0.0)
    fs = px.full_scattering(px.GeometryConfig(), em, drive)
    out = px.scatter(fs.matrix, vin)
    print(f"full-model fidelity, ideal geometry:      "
          f"{px.fidelity(out, target):.12f}")

    # now the same controls under realistic imperfections
    geom = px.GeometryConfig(b=1.02, x=0.55, r_am=-0.99, r_bm=-0.99)
    em = px.EmitterConfig(theta=b1.theta, gamma_e=0.05)
    out = px.scatter(px.full_scattering(geom, em, drive).matrix, vin)
    print(f"full-model fidelity, non-ideal geometry:  "
          f"{px.fidelity(out, target):.12f}")
    print(f"dissipation probability:                  "
          f"{px.dissipation_probability(out):.6f}")


if __name__ == "__main__":
    main()
