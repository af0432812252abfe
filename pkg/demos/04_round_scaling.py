"""How the simulated round count grows with n at fixed k."""

# %% mean ledger totals for growing n, expected degree 10
import numpy as np

from netdecomp import SimConfig, decompose
from netdecomp.generators import gnp

sizes = [128, 256, 512, 1024, 2048, 4096]
means = []
for n in sizes:
    totals = np.array([decompose(gnp(n, 10 / n, s), 2, 0.5, cfg=SimConfig(seed=s))[2].total for s in range(10)])
    means.append(totals.mean())
    print(f"n={n:5d}  rounds mean {totals.mean():5.2f}  min {totals.min()}  max {totals.max()}")

# %% the growth is nearly flat, compare with log2 n
means = np.array(means)
print("ratio last/first: %.2f   log2 ratio: %.2f" % (means[-1] / means[0], np.log2(sizes[-1]) / np.log2(sizes[0])))
