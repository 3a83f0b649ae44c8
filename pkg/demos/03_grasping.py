# %% [markdown]
# # Grasping small and large objects
#
# The resting fingertips enclose a 30 mm radius. A 20 mm ball fits, so the
# inner brakes are armed and the fingers curl inward. A 75 mm tape roll does
# not fit, and the small-object strategy refuses it.

# %%
from mashgrip.harness import parse_scenario, run_scenario
from mashgrip.harness import presets

for name in ("small_ball", "tape_small_single", "tape_large_single"):
    log = run_scenario(parse_scenario(presets.ALL[name]()))
    last = log.records[-1]["t"] if log.records else 0.0
    print(f"{name:18s} -> {log.terminal:9s} grip={log.final_status}  t={last:.2f} s")
    for e in log.events:
        print(f"     {e['t']:5.2f} s  {e['kind']:8s} {e['name']}")

# %% [markdown]
# The large-object strategy first widens the gripper with the outer brakes,
# releases them, then closes with the inner brakes. The widest pad radius
# reached during the opening stroke sets the usable range.

# %%
log = run_scenario(parse_scenario(presets.tape_large_single()))
widest = max(max(r["observation"]["open_radii"]) for r in log.records)
print(f"widest opening: pad radius {widest:.1f} mm for a 75 mm roll")

# %% [markdown]
# ## Two objects at once
#
# Pair A holds a box, pair B extends below it and picks up a ball. Object 2
# is put down before object 1.

# %%
log = run_scenario(parse_scenario(presets.multi_object()))
for e in log.events:
    print(f"{e['t']:5.2f} s  {e['kind']:8s} {e['name']}")
