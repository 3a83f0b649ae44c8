# %% [markdown]
# # Bending an actuator with one brake
#
# With both brakes off the actuator only lengthens. Locking one wall turns
# the extra length of the other wall into curvature.

# %%
import math

from mashgrip import ActuatorGeometry, ExtensionLaw, bend_config, free_extension

law = ExtensionLaw()
geom = ActuatorGeometry()

print(" P kPa   free L    inward theta   tip x    tip y")
for p in range(0, 101, 10):
    arc = bend_config(geom, law, p, "inner")
    x, y = arc.tip_position
    print(f"{p:5d}  {free_extension(geom, law, p):8.2f}  {math.degrees(arc.theta):10.1f} deg  {x:7.2f}  {y:7.2f}")

# %% [markdown]
# Beyond roughly 2.5 rad the tip curls back over itself: the lateral reach
# peaks and then shrinks even though the actuator keeps extending.

# %%
best = max(range(0, 1001), key=lambda k: bend_config(geom, law, k / 10, "inner").tip_position[0])
arc = bend_config(geom, law, best / 10, "inner")
print(f"lateral reach peaks at {best / 10:.1f} kPa, theta = {arc.theta:.3f} rad, x = {arc.tip_position[0]:.2f} mm")

# %% [markdown]
# ## Stiffness under a tip load
#
# An engaged brake stiffens the actuator until the load moment exceeds what
# the clutch friction can transmit.

# %%
from mashgrip.harness.characterize import characterize

table = characterize("stiffness")
print("  U V   " + "  ".join(f"{g:5.0f} g" for g in (20, 40, 60, 80, 100)))
for i in range(0, len(table.rows), 5):
    row = table.rows[i : i + 5]
    cells = "  ".join(f"{r[5]:6.2f}{'*' if r[4] else ' '}" for r in row)
    print(f"{row[0][0]:6.0f}  {cells}")
print("(* = brake slipped; small-deflection sag estimate in rad, only the ordering is meaningful)")
