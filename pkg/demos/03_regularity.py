# coding: utf-8

# # Regularity by greedy restriction
#
# A function is regular when no coordinate has large (noisy) influence.  The
# greedy procedure queries the most influential coordinate on each failing
# leaf until most leaves are regular.  A potential function bounds the
# number of rounds.

# %%

from polymorph import make_named
from polymorph.regularity import (
    RegularityConfig,
    jones_decision_tree,
    jones_junta,
    regularity_check,
    restriction_variance_profile,
    tree_regular_fraction,
)
from polymorph.reproduce import _xor_tribes

cfg = RegularityConfig(d=1, tau=0.05, delta=0.5, epsilon=0.1, biases=(0.5, 0.25))
f = _xor_tribes()
print(regularity_check(f, cfg, mode="noisy"))

# %%

tree, rep = jones_decision_tree(f, cfg)
print(tree.to_text()[:120], "...")
print("depth", tree.depth, "bound", cfg.round_bound)
print("potential", [round(v, 4) for v in rep.potential_trace])
print("rechecked", tree_regular_fraction(f, tree, cfg))

# %%

T, rep = jones_junta(f, cfg)
print("junta", T, rep.regular_fraction_per_bias)

# %% [markdown]
# Majority is already regular, and random restrictions of it keep most of
# their variance.

# %%

maj = make_named("majority", 11)
print(regularity_check(maj, RegularityConfig(d=2, tau=0.3)))
v = restriction_variance_profile(maj, 0.5, 1000, seed=0)
print((v >= 0.1).mean())
