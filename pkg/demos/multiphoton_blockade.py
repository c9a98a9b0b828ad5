#!/usr/bin/env python3
"""Two- and three-photon blockade working points under a strong pump.

Evaluates the steady-state photon statistics at the dressed-ladder resonances
for two atom configurations:

* in-phase (phi_z = 0), pump 1.5 kappa: one-photon peaks show g2 < 1
  (two-photon blockade); near the two-photon resonance a narrow window has
  g2 > 1 with g3 < 1 (three-photon blockade).  A strong control field shifts
  the resonances and sharpens both effects.
* out-of-phase (phi_z = pi), pump 2 kappa: one-photon excitation is forbidden,
  the two-photon side peaks carry the three-photon blockade, and the control
  field boosts the photon yield while suppressing g3 by an order of magnitude.
"""

import math
from dataclasses import replace

from blockadesim import SystemParams, analytic_eigenvalues, steady_observables


def classify(obs) -> str:
    if not obs.correlations_defined:
        return "undefined"
    if obs.g2 < 1.0:
        return "two-photon blockade" if obs.g3 < 1.0 else "sub-Poissonian"
    if obs.g3 < 1.0:
        return "three-photon blockade"
    return "classical / bunched"


def report(tag: str, params: SystemParams, detunings: dict[str, float]):
    print(f"\n== {tag}")
    print(f"   {'working point':28s} {'dp':>8s} {'<n>':>9s} {'g2':>9s} {'g3':>9s}")
    for name, dp in detunings.items():
        obs = steady_observables(replace(params, delta_p=dp))
        print(
            f"   {name:28s} {dp:8.3f} {obs.mean_n:9.4f} {obs.g2:9.4f} "
            f"{obs.g3:9.4f}   {classify(obs)}"
        )


def main():
    g = 20.0

    in_phase = SystemParams(
        g=g, phi_z=0.0, eta=1.5, omega_c=0.0, delta_p=0.0,
        gamma_m=1.0, gamma_e=0.01, n_max=8,
    )
    lam2 = analytic_eigenvalues(2, g, 0.0)
    report(
        "in-phase, no control (eta = 1.5)",
        in_phase,
        {
            "one-photon peak": math.sqrt(2.0) * g,
            "two-photon resonance": lam2["3+"] / 2.0,
            "blockade window edge": lam2["3+"] / 2.0 - 0.35,
        },
    )

    with_control = replace(in_phase, omega_c=35.0)
    lam2c = analytic_eigenvalues(2, g, 35.0)
    report(
        "in-phase, control 35 kappa",
        with_control,
        {
            "one-photon peak": math.sqrt(2.0 * g**2 + 35.0**2),
            "two-photon resonance": lam2c["3+"] / 2.0,
        },
    )

    out_phase = SystemParams(
        g=g, phi_z=math.pi, eta=2.0, omega_c=0.0, delta_p=0.0,
        gamma_m=1.0, gamma_e=0.01, n_max=12,
    )
    report(
        "out-of-phase, no control (eta = 2)",
        out_phase,
        {
            "two-photon side peak": math.sqrt(6.0) * g / 2.0,
            "multiphoton center": 0.0,
        },
    )

    out_control = replace(out_phase, omega_c=20.0, n_max=8)
    lam2o = analytic_eigenvalues(2, g, 20.0)
    report(
        "out-of-phase, control 20 kappa",
        out_control,
        {
            "outer two-photon peak": lam2o["3+"] / 2.0,
            "inner two-photon peak": lam2o["2+"] / 2.0,
        },
    )
    print(
        "\nthe control field raises the out-of-phase photon yield at the outer\n"
        "peak while cutting g3 by roughly a factor of ten"
    )


if __name__ == "__main__":
    main()
