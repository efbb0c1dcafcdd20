# coding: utf-8

# # Boolean functions and agreement
#
# Truth tables are stored as 0/1 arrays indexed by the input, with
# coordinate 1 as the least significant bit.  The +-1 view maps bit 0 to +1.

# %%

import numpy as np

from polymorph import agreement_exhaustive, agreement_monte_carlo, format_function, fourier_transform, make_named, parse_function

and2 = parse_function("n=2 table=8")
maj3 = make_named("majority", 3)
print(format_function(maj3), maj3.table)

# %% [markdown]
# Fourier coefficients in the +-1 view.  Majority puts weight 1/2 on each
# singleton and -1/2 on the top set.

# %%

e = fourier_transform(maj3)
for S, c in enumerate(e.coefficients):
    if abs(c) > 1e-12:
        print(f"{S:03b}", c)

# %% [markdown]
# The doctrinal paradox: three judges each vote on two premises, giving a
# 3x2 matrix.  Compare the majority of the judges' own conclusions (AND of
# each row) with the AND of the premise-wise majorities.  Exhaustive
# counting over all 64 matrices gives the exact fraction.

# %%

r = agreement_exhaustive(maj3, None, and2)
print(r.exact, float(r.exact))

# the same quantity by seeded sampling, with its Hoeffding half-width
mc = agreement_monte_carlo(maj3, None, and2, 200_000, seed=0)
print(mc.probability, "+/-", mc.halfwidth)

# %% [markdown]
# Characters are exact polymorphisms of XOR, while a random function agrees
# about half the time.

# %%

xor2 = parse_function("n=2 table=6")
chi = make_named("xor", 8, I={1, 4, 6})
print(agreement_exhaustive(chi, None, xor2).exact)

rng = np.random.default_rng(0)
from polymorph import BooleanFunction

f = BooleanFunction(10, rng.integers(0, 2, 1 << 10))
print(agreement_monte_carlo(f, None, xor2, 100_000, seed=1).probability)
