"""Sky photons through the receiver telescope.

Background light adds noise clicks on top of detector dark counts.  This
demo tabulates the expected background photons per 1 us detection window
against the telescope aperture for three weather conditions: clear daytime,
a full-moon night and a moonless night.  Only the moonless case stays near
the dark-count level (1e-6 per window), which is why night operation at a
narrow filter bandwidth is assumed throughout.

Run:  python demos/background_light.py
"""

import numpy as np

from maqkd import optics

WEATHER = (("daytime", 1e-2), ("full moon", 1e-5), ("moonless", 1e-7))
RADII_M = np.linspace(0.1, 1.0, 10)


def main() -> None:
    print("aperture radius [m]" + "".join(f"  {name:>12}" for name, _ in WEATHER))
    for radius in RADII_M:
        cells = []
        for _, k in WEATHER:
            params = optics.BackgroundParams(weather_factor=k)
            _, per_window = optics.background_rate(params, float(radius))
            cells.append(f"  {per_window:12.3e}")
        print(f"{radius:19.2f}" + "".join(cells))
    print("\nexpected noise clicks per 1 us window; dark counts sit at 1e-6")


if __name__ == "__main__":
    main()
