"""Sensorless pressure tracking of a 0 -> 1 Hz chirp.

Runs the matched-parameter chirp scenario: the controller predicts the tube
pressure one sample period ahead for each valve combination and picks the
closest one, never reading a pressure sensor. With the valve models matching
the plant, tracking stays within roughly the tolerance plus one command
quantum's worth of pressure.

Usage: python demos/pressure_tracking.py [out_dir]
"""

import sys
from pathlib import Path

import numpy as np

from dighydro import run_scenario, scenario_path

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo_out")

trace_path, metrics_path, metrics, trace = run_scenario(scenario_path("chirp_matched"), out_dir)
err = trace["ref"] - trace["p_tube"]

print(f"trace:   {trace_path}")
print(f"metrics: {metrics_path}")
print(f"rms error: {metrics.rms_tracking_error / 1e3:.2f} kPa")
print(f"max error: {metrics.max_abs_error / 1e3:.2f} kPa")
print(f"valve switchings: HP {metrics.switch_count_hp}, LP {metrics.switch_count_lp}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping plot")
else:
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(9, 6))
    ax1.plot(trace["t"], trace["ref"] / 1e3, label="reference")
    ax1.plot(trace["t"], trace["p_tube"] / 1e3, label="tube pressure", alpha=0.8)
    ax1.set_ylabel("pressure [kPa]")
    ax1.legend()
    ax2.plot(trace["t"], err / 1e3)
    ax2.set_ylabel("error [kPa]")
    ax2.set_xlabel("time [s]")
    fig.suptitle("Sensorless chirp pressure tracking, matched valve models")
    fig.savefig(out_dir / "pressure_tracking.png", dpi=120)
    print(f"plot:    {out_dir / 'pressure_tracking.png'}")
