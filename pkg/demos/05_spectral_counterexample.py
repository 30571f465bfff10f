"""A 10-vertex regular graph where the relative mass overshoots 1.

On a regular graph whose second Laplacian eigenvalue is simple with
eigenvector f2 satisfying f2(v) > f2(u) > 0, the slowest mode dominates the
heat kernel at large t and pushes r_uv above 1 before the limit value 1 is
reached; r then has to come back down.  A cube with a pyramid glued over the
top and bottom faces does the job, with u a top-face vertex and v the apex.
"""

import numpy as np

import relmass

graph = relmass.build_pyramid_cube()
dec = relmass.spectral_decompose(graph)
print("vertex labels:", graph.labels)
print("eigenvalues:", np.round(dec.values, 6))

u, v = 1, 0  # t1 and apex_top
report = relmass.spectral_criterion_check(dec, u, v)
print(f"\nlambda2 = {report.lambda2:.9f}, lambda3 = {report.lambda3:.6f}")
print(f"f2 at u = {report.f2_u:.6f}, f2 at v = {report.f2_v:.6f}")
print(f"criterion hypotheses met: {report.hypotheses_met}")

grid = relmass.monotonicity.default_scan_grid()
t_star = relmass.find_r_exceeds_one(dec, u, v, grid)
crossing = relmass.locate_r_crossing(dec, u, v, grid)
print(f"\nr first exceeds 1 on the grid at t = {t_star:.2f} "
      f"(upcrossing near {crossing:.4f})")
for t in (2.0, 5.0, 6.8, 10.0, 20.0, 60.0):
    print(f"  r({t:5.1f}) = {relmass.relative_mass(dec, u, v, t):.9f}")

pair = relmass.monotonicity_scan(dec, u, v, grid, margin=1e-6)
print(f"\nbest decreasing pair: r({pair[0]:.3f}) > r({pair[1]:.3f})")

# vertex-transitive graphs never do this
cube_dec = relmass.spectral_decompose(relmass.build_hypercube(5))
print(
    "\nsame scan on the 5-cube finds nothing:",
    relmass.find_r_exceeds_one(cube_dec, 0, 3, grid),
)
