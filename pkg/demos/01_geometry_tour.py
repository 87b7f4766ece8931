"""Tour of the panel lattice and the three reference deployments.

The reflecting surface is a rectangular grid of passive elements spaced half
a wavelength apart, mounted in the x-z plane. Element indices run row-major
from the top-left corner; column k collects every element whose x offset is
the same, which is what the column-level control schemes act on.
"""

import numpy as np

from irssim import Point3, build_irs_array, irs_for_scenario, scenario_preset, ue_grid

geom = build_irs_array(n_cols=4, n_rows=3, frequency=26e9, center=Point3(10.0, 20.0, 1.5))
print(f"4x3 panel at 26 GHz: spacing {geom.spacing * 1e3:.3f} mm "
      f"({geom.n_elements} elements)")
print("element positions (x, y, z):")
for idx, pos in enumerate(geom.element_positions):
    print(f"  {idx:2d}  col {geom.column_of[idx]}  "
          f"({pos[0]:.6f}, {pos[1]:.1f}, {pos[2]:.6f})")
print(f"column 0 element indices: {geom.column_elements(0)}")

# z decreases as the row index grows: row 0 is the physical top of the panel
top, bottom = geom.element_positions[0, 2], geom.element_positions[-1, 2]
print(f"top row z {top:.6f} m, bottom row z {bottom:.6f} m\n")

for sid in (1, 2, 3):
    sc = scenario_preset(sid)
    print(f"scenario {sid}: AP {sc.ap_pos}, panel center {sc.irs_center}, "
          f"receiver height {sc.ue_height} m")

full = irs_for_scenario(scenario_preset(1))
print(f"\nfull panel: {full.n_cols}x{full.n_rows}, "
      f"{full.n_cols * full.spacing:.3f} m wide")

# The receiver grid spans the map at the scenario's step, minus a disk of one
# reference distance around the AP and the panel center where the decay law
# would be clamped anyway.
sc = scenario_preset(1)
grid = ue_grid(sc)
xs = sorted({p.x for p in grid})
print(f"scenario-1 receiver grid: {len(grid)} points, "
      f"x from {xs[0]} to {xs[-1]} step {xs[1] - xs[0]}")
print(f"closest grid point to the AP: "
      f"{min(np.hypot(p.x - 4.0, p.y - 15.0) for p in grid):.3f} m "
      f"(keep-out radius 1.0)")
