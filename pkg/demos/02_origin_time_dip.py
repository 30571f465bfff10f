"""The conditioned origin time and its dip.

origin_time(d, t) is the expected time a cube walk spends at its start
before time t, given that it is back there at time t.  The curve rises,
overshoots, and for d >= 5 comes back down before settling into linear
growth at rate 2^-d: conditioning on an early return favors walks that
never left, and that advantage decays.
"""

import relmass

print("analytic bounds (value at sqrt(d) vs sqrt(d)/e, value at d vs 6):")
for d in (1, 4, 16, 64):
    rep = relmass.origin_time_bounds(d)
    print(
        f"  d={d:3d}: {rep.value_at_sqrt:8.4f} >= {rep.lower_bound_at_sqrt:7.4f}  |  "
        f"{rep.value_at_d:6.4f} <= {rep.upper_bound_tight:.4f} <= 6"
    )

print()
print("searching for a decrease (grid [0, 30], step 0.05, margin 1e-3):")
for d in (3, 4, 5, 6, 7):
    witness = relmass.find_witness(d)
    if witness is None:
        print(f"  d={d}: monotone on the grid")
    else:
        print(
            f"  d={d}: drops from {witness.value1:.6f} at t={witness.t1:.3f} "
            f"to {witness.value2:.6f} at t={witness.t2:.3f} "
            f"(margin {witness.margin:.4f})"
        )

print()
d = 5
print(f"curve for d={d} around the dip:")
for t in (2.0, 4.0, 6.0, 6.4, 8.0, 10.6, 14.0, 20.0):
    closed = relmass.origin_time_closed(d, t)
    quad = relmass.origin_time_quadrature(d, t)
    print(f"  t={t:5.1f}: {closed:.8f}  (quadrature agrees to {abs(closed - quad):.1e})")
print(f"  large-t slope: {(relmass.origin_time_closed(d, 800) - relmass.origin_time_closed(d, 400)) / 400:.6f}"
      f" vs 2^-{d} = {2.0**-d:.6f}")
