"""How long may a qubit wait in memory?

A stored qubit keeps dephasing while its partner link retries, so letting it
wait forever poisons the key, while discarding it too eagerly starves the
swap.  This demo sweeps the cutoff time on a lossy long-distance point
(divergence 6 urad, 7000 km, 10 ms memories) and prints the resulting key
rates: no cutoff collapses, an over-tight cutoff costs rate, and a moderate
value sits at the optimum.

Run:  python demos/cutoff_tuning.py
"""

from maqkd import analysis
from maqkd.geometry import GroundTrackLayout
from maqkd.optics import BackgroundParams, OpticalParams
from maqkd.protocols import ProtocolConfig, build_scenario1, run_scenario1

CUTOFFS = (None, 8e-3, 4e-3, 2e-3, 1e-3, 0.5e-3, 0.25e-3)


def main() -> None:
    layout = GroundTrackLayout(7000.0, 400.0, (0.0, 0.5, 1.0))
    optical = OpticalParams(divergence_half_angle_rad=6e-6)
    background = BackgroundParams()

    print("cutoff [ms]   raw [1/s]   e_X      key [bits/s]")
    for cutoff in CUTOFFS:
        config = ProtocolConfig(
            scenario="scenario1", n_modes=100, cutoff_s=cutoff,
            dephasing_time_s=0.010,
        )
        setup = build_scenario1(layout, optical, background, config)
        records = run_scenario1(setup, 1500, seed=7)
        rates = analysis.key_rate(records, records[-1].time_s)
        label = "none" if cutoff is None else f"{cutoff * 1e3:.2f}"
        print(
            f"{label:>11}   {rates.raw_rate_hz:9.1f}   {rates.error_x:.3f}"
            f"    {rates.key_rate_hz:8.1f} +- {rates.key_rate_se:.1f}"
        )


if __name__ == "__main__":
    main()
