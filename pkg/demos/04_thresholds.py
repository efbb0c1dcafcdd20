# coding: utf-8

# # Gaussian thresholds
#
# For AND the best achievable agreement is an explicit Gaussian integral.
# We evaluate it with nested adaptive quadrature, compare against the
# arcsine upper bound, and estimate the sign-rule lower bound for other g.

# %%

from polymorph import parse_function
from polymorph.gaussian import (
    S_AND_REFERENCE,
    borell_upper_bound,
    gaussian_analog,
    s_and_inner,
    s_and_quadrature,
    s_sign_lower_estimate,
)

and_min = parse_function("n=2 table=e")
print(gaussian_analog(and_min).rho)
print(s_and_inner(0.0))

est = s_and_quadrature(1e-10)
print(est.value, est.error_bound, est.details["root"])

# %% [markdown]
# The published constant sits about 2.8e-9 below this value, well outside
# the certified error.  An mpmath run at 30 digits gives 0.8149753595137920.

# %%

print(est.value - S_AND_REFERENCE)

# %%

print("upper", borell_upper_bound(and_min).value)
print("sign rule", s_sign_lower_estimate(and_min, seed=0).value)

maj3 = parse_function("n=3 table=e8")
print(borell_upper_bound(maj3).value, s_sign_lower_estimate(maj3, seed=0).value)

# %% [markdown]
# When gamma keeps one sign the sign rule gains nothing over the trivial
# 1/2 + |E g|/2.  Exactly-one-of-three is such a case.

# %%

from polymorph import BooleanFunction

g = BooleanFunction.from_int(3, 0x16)
print(abs(g.pm.mean()) / 2 + 0.5, s_sign_lower_estimate(g, seed=0))
