"""Effect of miscalibrated valve models on sensorless pressure control.

Runs the same chirp twice: once with the controller's valve models matching
the plant, and once with the real valves passing +8 % (high pressure) and
+58 % (low pressure) more flow than the controller believes. Because the
estimate is never corrected by a measurement, the mismatch accumulates and
tracking degrades by an order of magnitude.

Usage: python demos/miscalibration.py [out_dir]
"""

import sys
from pathlib import Path

from dighydro import run_scenario, scenario_path

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo_out")

results = {}
for name in ("chirp_matched", "chirp_miscalibrated"):
    _, _, metrics, trace = run_scenario(scenario_path(name), out_dir)
    results[name] = (metrics, trace)
    print(
        f"{name:22s} rms {metrics.rms_tracking_error / 1e3:6.2f} kPa   "
        f"max {metrics.max_abs_error / 1e3:6.2f} kPa"
    )

ratio = (
    results["chirp_miscalibrated"][0].rms_tracking_error
    / results["chirp_matched"][0].rms_tracking_error
)
print(f"miscalibration inflates the rms error {ratio:.1f}x")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping plot")
else:
    fig, axes = plt.subplots(2, 1, sharex=True, figsize=(9, 6))
    for ax, name in zip(axes, ("chirp_matched", "chirp_miscalibrated")):
        _, trace = results[name]
        ax.plot(trace["t"], trace["ref"] / 1e3, label="reference")
        ax.plot(trace["t"], trace["p_tube"] / 1e3, label="tube pressure", alpha=0.8)
        ax.set_ylabel("pressure [kPa]")
        ax.set_title(name)
        ax.legend(loc="upper right")
    axes[1].set_xlabel("time [s]")
    fig.tight_layout()
    fig.savefig(out_dir / "miscalibration.png", dpi=120)
    print(f"plot: {out_dir / 'miscalibration.png'}")
