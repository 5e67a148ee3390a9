"""Switching position control: step responses, unloaded and loaded.

The controller is a three-level switch on the vision-measured tip position
error, evaluated every 100 ms: outside the threshold band it pulses the
high- or low-pressure valve at a reduced duty so the tip moves slowly enough
for the camera to track; inside the band both valves stay off and the tube
holds its pressure. The payload scenario shifts the static tip map downwards.

Usage: python demos/step_position.py [out_dir]
"""

import sys
from pathlib import Path

from dighydro import run_scenario, scenario_path

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo_out")

traces = {}
for name in ("step_unloaded_p1", "step_unloaded_p2", "step_loaded"):
    _, _, metrics, trace = run_scenario(scenario_path(name), out_dir)
    traces[name] = trace
    print(
        f"{name:17s} settled at {metrics.settle_time_s:5.2f}s, "
        f"final error {metrics.final_steady_error:.3f} mm, "
        f"HP/LP switchings {metrics.switch_count_hp}/{metrics.switch_count_lp}"
    )

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping plot")
else:
    fig, ax = plt.subplots(figsize=(9, 5))
    for name, trace in traces.items():
        ax.plot(trace["t"], trace["tip_y"], label=f"{name} tip")
        ax.plot(trace["t"], trace["ref"], linestyle="--", alpha=0.5)
    ax.set_xlabel("time [s]")
    ax.set_ylabel("tip position [mm]")
    ax.set_xlim(0, 6)
    ax.legend()
    ax.set_title("Switching position control step responses (dashed: references)")
    fig.savefig(out_dir / "step_position.png", dpi=120)
    print(f"plot: {out_dir / 'step_position.png'}")
