# coding: utf-8

# # Lifted constructions and connectivity
#
# Sign of normalized block sums, switched to a companion sign near the
# expected output slice when g is unbalanced.  Agreement approaches the
# Gaussian value as the block size grows.

# %%

from polymorph import parse_function
from polymorph.connectivity import decompose_product_factors, is_connected_distribution, reorder_for_connectivity
from polymorph.constructions import (
    QSpec,
    build_lower_bound_function,
    decay_ratios,
    empirical_agreement,
    fourier_decay_series,
    lift_inner,
)

and_min = parse_function("n=2 table=e")
for N in (10, 100, 1000):
    c = build_lower_bound_function(and_min, QSpec(), N, seed=0)
    print(N, empirical_agreement(and_min, c, 200_000, seed=N).probability)

# %%

rows = fourier_decay_series(lambda N: lift_inner(QSpec(), 1, N), 1, [4, 8, 16])
print([r.max_abs for r in rows], decay_ratios(rows))

# %% [markdown]
# Interleaving g between two coordinates of an indecomposable block gives a
# connected distribution.

# %%

g = parse_function("n=3 table=e8")
print(decompose_product_factors(g))
order, d = reorder_for_connectivity(g)
print(order, is_connected_distribution(d))
