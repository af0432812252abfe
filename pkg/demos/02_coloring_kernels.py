"""The coloring building blocks on their own."""

# %% a union-free family: no set is covered by delta others
from netdecomp import SimConfig, build_union_free, is_union_free, linial_color, random_color
from netdecomp.coloring import arb_linial_color, h_partition_random_color, peel_h_partition
from netdecomp.generators import gnp, grid, star

fam = build_union_free(p=20, delta=3)
print(fam, "q =", fam.q, "degree =", fam.degree)
print("set for color 7:", sorted(fam.set_for(7)))
print("union-free:", is_union_free(fam.sets, 3))

# %% one Linial round on a star shrinks n IDs to q^2 colors
g = star(10)
col, led = linial_color(g, 1)
print("star, 1 round:", col.palette, "colors in palette, proper =", col.is_proper(g))

# %% Linial run to its fixpoint on a random graph
g = gnp(100, 0.05, seed=2)
col, led = linial_color(g)
print(f"gnp(100): max degree {g.max_degree}, palette {col.palette}, rounds {led.total}")

# %% randomized trial coloring with palette ceil(Delta * n^eps)
col, led = random_color(g, 0.5, SimConfig(seed=3))
print(f"random trials: palette {col.palette}, colors used {col.num_colors}, rounds {led.total}")

# %% peel an H-partition of a grid, then color band by band
g = grid(10, 10)
h = peel_h_partition(g, arboricity_bound=2, epsilon=0.5)
print("grid bands:", [len(b) for b in h.bands], "degree bound", h.degree_bound)
col, _ = arb_linial_color(g, h)
print("oriented Linial palette:", col.palette, "proper:", col.is_proper(g))
col, led = h_partition_random_color(g, h, 0.5, SimConfig(seed=0))
print("band-wise trials palette:", col.palette, "rounds per band:", [e.base for e in led.entries])
