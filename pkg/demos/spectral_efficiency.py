"""Zero-forcing spectral efficiency: closed-form bound, exact quadrature, Monte Carlo.

The interesting part is the stream-count tradeoff: at a small power budget a
single well-aimed stream wins, at a large one spatial multiplexing does.
"""

import numpy as np

from hcppnet import (
    AntennaConfig,
    spectral_efficiency_bound,
    spectral_efficiency_exact,
    spectral_efficiency_mc,
)


def main():
    rng = np.random.default_rng(3)

    print("8 transmit antennas, xi = 10")
    print("streams   bound    exact    monte carlo (bit/s/Hz)")
    for s in (1, 2, 4, 8):
        cfg = AntennaConfig(8, s)
        est = spectral_efficiency_mc(cfg, 10.0, 40_000, rng)
        print(f"{s:7d}   {spectral_efficiency_bound(cfg, 10.0):6.3f}   "
              f"{spectral_efficiency_exact(cfg, 10.0):6.3f}   "
              f"{est.mean:6.3f} +/- {est.std_error:.3f}")

    print("\nbest stream count by power budget (exact values)")
    print("     xi   s=1      s=2      s=4      s=8      winner")
    for xi in (0.01, 0.1, 1.0, 10.0, 100.0, 1000.0):
        vals = [spectral_efficiency_exact(AntennaConfig(8, s), xi) for s in (1, 2, 4, 8)]
        best = (1, 2, 4, 8)[int(np.argmax(vals))]
        print(f"{xi:7g}   " + "  ".join(f"{v:7.3f}" for v in vals) + f"   s={best}")


if __name__ == "__main__":
    main()
