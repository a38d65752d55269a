# %% [markdown]
# # Support matrices, essentiality and the super-essential subset

# %%
from diffres.support import GenericSupportMatrix, is_essential, rank_generic, super_essential_subset
from diffres.textio import parse_system

system = parse_system("u00 + u01*y1*y2 ; u10 + u11*y1@1*y2@1 ; u20 + u21*y2")
M = GenericSupportMatrix(system)
print("rank (exact):        ", rank_generic(M, "exact"))
print("rank (probabilistic):", rank_generic(M, "probabilistic"))
print("essential:", is_essential(system, "exact"))

# %% [markdown]
# The first two polynomials already carry all the information: their support
# vectors are dependent while each alone is not.

# %%
print("super-essential T =", super_essential_subset(system, "exact", check_unique=True))
