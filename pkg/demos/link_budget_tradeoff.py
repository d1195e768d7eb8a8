"""Where should the outer satellites sit?

Compares the total loss of the pair-source path (satellite S_A feeding
ground station A and the central memory satellite S_C) for different
fractional placements of S_A along the ground track.  Placing S_A right
above A maximizes the inter-satellite distance but keeps the atmospheric
path short; for tightly collimated beams the atmosphere wins at long range,
so the 0% placement has the least loss at large ground distances.

Run:  python demos/link_budget_tradeoff.py [--plot out.png]
"""

import argparse

import numpy as np

from maqkd import geometry, optics

PLACEMENTS = (0.0, 0.1, 0.2)
DISTANCES_KM = np.linspace(1000.0, 8000.0, 29)


def path_loss_db(distance_km: float, fraction: float) -> float:
    layout = geometry.GroundTrackLayout(
        distance_km, 400.0, (fraction, 0.5, 1.0 - fraction)
    )
    nodes = geometry.node_positions(layout)
    elevation = geometry.elevation_from_positions(nodes.ground_a, nodes.sat_a)
    if elevation <= 0:
        return float("nan")
    budget = optics.source_path_budget(
        geometry.pair_distance_km(nodes.ground_a, nodes.sat_a),
        elevation,
        geometry.pair_distance_km(nodes.sat_a, nodes.sat_c),
        optics.OpticalParams(),
        optics.BackgroundParams(),
    )
    return budget.loss_db


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--plot", help="optional output image path")
    args = parser.parse_args()

    losses = {f: [path_loss_db(d, f) for d in DISTANCES_KM] for f in PLACEMENTS}

    header = "ground distance [km] " + "".join(f"  S_A@{f:>4.0%}" for f in PLACEMENTS)
    print(header)
    for i, d in enumerate(DISTANCES_KM):
        row = f"{d:20.0f}" + "".join(f"  {losses[f][i]:7.2f}" for f in PLACEMENTS)
        print(row + "   [dB]" if i == 0 else row)

    crossover = next(
        d
        for i, d in enumerate(DISTANCES_KM)
        if losses[0.0][i] < losses[0.1][i] < losses[0.2][i]
    )
    print(f"\nfrom about {crossover:.0f} km on, S_A@0% is the lowest-loss placement")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        for f in PLACEMENTS:
            plt.plot(DISTANCES_KM, losses[f], label=f"S_A @ {f:.0%}")
        plt.xlabel("ground distance [km]")
        plt.ylabel("total loss A..S_C [dB]")
        plt.legend()
        plt.grid(alpha=0.3)
        plt.savefig(args.plot, dpi=150, bbox_inches="tight")
        print(f"wrote {args.plot}")


if __name__ == "__main__":
    main()
