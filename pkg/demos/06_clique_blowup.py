"""Trading edge weights for clique structure.

An integer-weighted Cayley graph becomes an unweighted one by replacing each
vertex with an N-clique and each weight-w edge with w parallel perfect
matchings.  The walk on the blowup, run deg(H) times longer, projects onto
the original walk up to an error that vanishes as N grows; the table below
watches both the relative-mass and kernel deviations shrink.
"""

import relmass

group = relmass.GroupTable.cyclic(6)
gens = relmass.WeightedGeneratorSet([(1, 2.0), (5, 2.0), (2, 1.0), (4, 1.0)])

params = relmass.BlowupParams(group=group, gens=gens, clique_size=16)
blowup = relmass.clique_blowup(params)
print(
    f"weighted 6-cycle-with-chords -> blowup on {blowup.n} vertices, "
    f"regular of degree {params.degree()} (= N - 1 + total weight)"
)

rows = relmass.blowup_convergence(group, gens, 0, 1, (16, 32, 64))
print(f"\n{'N':>4} {'deg':>5} {'sup |r_H - r_G|':>16} {'sup |N p_H - p_G|':>18}")
for row in rows:
    print(
        f"{row.clique_size:>4} {row.degree:>5} {row.sup_r_dev:>16.6f} "
        f"{row.sup_p_dev:>18.6f}"
    )
print("\nboth deviation columns shrink as the clique grows.")
