"""Pressure/tip-position hysteresis of the backlash tip map.

Sweeps the tube pressure up and down a staircase and records the tip
position on both branches. With a positive play width the same pressure maps
to two different tip positions depending on travel history, which is why the
tip cannot be positioned open-loop from pressure alone without knowing the
initial conditions. The enclosed loop area matches the play-operator closed
form.

Usage: python demos/hysteresis_loop.py [out_dir]
"""

import sys
from pathlib import Path

from dighydro import hysteresis_sweep, play_loop_area, scenario_path

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo_out")

csv_path, area, cfg = hysteresis_sweep(scenario_path("hysteresis"), out_dir)
expected = play_loop_area(
    cfg.tip_map.gain_mm_per_pa, cfg.tip_map.play_width_pa, cfg.hysteresis.pressure_max_pa
)
print(f"loop CSV: {csv_path}")
print(f"loop area: {area:.3f} mm*Pa (closed form {expected:.3f})")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping plot")
else:
    branches = {"up": ([], []), "down": ([], [])}
    with open(csv_path) as fh:
        next(fh)
        for line in fh:
            branch, p, y = line.strip().split(",")
            branches[branch][0].append(float(p) / 1e3)
            branches[branch][1].append(float(y))
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(*branches["up"], label="pressurizing")
    ax.plot(*branches["down"], label="depressurizing")
    ax.set_xlabel("tube pressure [kPa]")
    ax.set_ylabel("tip position [mm]")
    ax.set_title("Quasi-static pressure/position hysteresis loop")
    ax.legend()
    fig.savefig(out_dir / "hysteresis_loop.png", dpi=120)
    print(f"plot: {out_dir / 'hysteresis_loop.png'}")
