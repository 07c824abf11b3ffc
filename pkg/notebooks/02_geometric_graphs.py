"""
Random geometric graphs on the torus
====================================

Sample points, connect pairs within distance r, and look at the counts the
estimators are built from.
"""

# %%
import math

import numpy as np

from geodim import (
    DensitySpec,
    build_rgg,
    count_cherries,
    count_max_labeled_cherries,
    count_triangles,
    sample_points,
    shuffle_labels,
    vertex_stats,
    write_edge_list,
)

n, r = 20_000, 0.01
cloud = sample_points(DensitySpec("uniform-torus", 2), n, seed=1)
g = build_rgg(cloud, r)
print(g, "max degree", g.max_degree())

# %% [markdown]
# A vertex's degree is binomial(n - 1, pi r^2) on the torus.

# %%
deg = g.degrees()
print("mean degree", deg.mean(), "expected", (n - 1) * math.pi * r * r)

# %%
stats = vertex_stats(g)
tri = count_triangles(g)
print("triangles", tri, "sum of delta_i / 3", sum(s.delta for s in stats) / 3)

# %% [markdown]
# The max-labelled cherry count depends on the labelling; on average over
# random labellings it is a third of all cherries.

# %%
samples = [count_max_labeled_cherries(shuffle_labels(g, s)) for s in range(20)]
print(np.mean(samples), count_cherries(g) / 3)

# %%
print(write_edge_list(build_rgg(sample_points(DensitySpec("uniform-torus", 1), 6, seed=3), 0.2)))
