"""Key rate against ground distance for three satellite placements.

Runs the two-link protocol (memories only on the central satellite) at
reduced scale and prints key rates for S_A above the ground station (0%),
and shifted inward by 10% and 20% of the ground distance, next to the
memoryless single-satellite baseline.  Near the single-satellite horizon
(about 4400 km) the baseline dies while the three-satellite chain keeps
delivering key.

Run:  python demos/placement_key_rates.py
"""

from maqkd import analysis
from maqkd.errors import VisibilityError
from maqkd.geometry import GroundTrackLayout
from maqkd.optics import BackgroundParams, OpticalParams
from maqkd.protocols import (
    ProtocolConfig,
    build_scenario1,
    one_sat_baseline_rate,
    run_scenario1,
)

DISTANCES_KM = (2000.0, 3000.0, 4000.0, 4400.0, 5000.0, 6000.0)
PLACEMENTS = (0.0, 0.1, 0.2)


def main() -> None:
    optical = OpticalParams()
    background = BackgroundParams()
    config = ProtocolConfig(
        scenario="scenario1", n_modes=100, cutoff_s=0.05, dephasing_time_s=0.1
    )

    print("d [km]   " + "".join(f"  S_A@{f:>4.0%}" for f in PLACEMENTS) + "   baseline")
    for distance in DISTANCES_KM:
        cells = []
        for fraction in PLACEMENTS:
            layout = GroundTrackLayout(
                distance, 400.0, (fraction, 0.5, 1.0 - fraction)
            )
            setup = build_scenario1(layout, optical, background, config)
            records = run_scenario1(setup, 1200, seed=13)
            rates = analysis.key_rate(records, records[-1].time_s)
            cells.append(f"{rates.key_rate_hz:9.1f}")
        try:
            baseline = one_sat_baseline_rate(
                GroundTrackLayout(distance, 400.0), optical, background, config
            )
            base = f"{baseline:10.2g}"
        except VisibilityError:
            base = "   beyond horizon"
        print(f"{distance:6.0f}   " + "".join(cells) + base)
    print("\nkey bits per second, 100-mode memories, 1200 samples per point")


if __name__ == "__main__":
    main()
