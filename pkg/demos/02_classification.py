# coding: utf-8

# # Exact polymorphisms and their classification
#
# Brute-force enumeration finds every exact solution for small arities.  The
# template generator rebuilds the same set from the structural families, and
# match_case names the family each solution belongs to.

# %%

from collections import Counter

from polymorph import format_function, parse_function
from polymorph.classify import enumerate_exact, generate_family, match_case, product_form_decompose, stability_scan

and2 = parse_function("n=2 table=8")
for t in enumerate_exact("plain", and2, 2):
    print(format_function(t[0]), match_case("plain", t, and2).to_dict())

# %% [markdown]
# Set equality on a slightly bigger case, and the distribution of case labels.

# %%

g = parse_function("n=3 table=e8")
found = enumerate_exact("skew", g, 2)
print(len(found), found == generate_family("skew", g, 2))
print(Counter(match_case("skew", t, g).name for t in found))

# %% [markdown]
# Multi-function polymorphisms with a two-input g.

# %%

nor2 = parse_function("n=2 table=1")
sols = enumerate_exact("multi", nor2, 2)
print(len(sols), Counter(match_case("multi", t, nor2).name for t in sols))

# %%

# parities and single-point functions are the two product shapes
for text in ("n=3 table=96", "n=2 table=8", "n=3 table=e8"):
    print(text, product_form_decompose(parse_function(text)))

# %% [markdown]
# Approximate polymorphisms of majority.  Every f with zero defect is trivial,
# and the distance to the nearest trivial function stays proportional to the
# defect.

# %%

rows = stability_scan(g, 3)
rows.sort(key=lambda r: (r.delta, r.epsilon))
for r in rows[:6] + rows[-3:]:
    print(format_function(r.f), r.delta, r.epsilon)
