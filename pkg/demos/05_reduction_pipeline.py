# %% [markdown]
# # Reduction to an algebraic sparse resultant
# Prolong, pick the minimal essential subset, specialise variables, change
# lattice coordinates, then solve one multihomogeneous block.

# %%
from diffres.reduction import resultant_via_reduction
from diffres.textio import emit_certificate, parse_system

system = parse_system(
    "u00 + u01*y1@1^2*y2@1^2*y3 + u02*y1^2*y2*y3 ; "
    "u10 + u11*y1@2^4*y2@2^4*y3@1^2 + u12*y1@1^2*y2@1*y3@1 ; "
    "u20 + u21*y1@1^2*y2@1^2*y3 + u22*y1^2*y2*y3 ; "
    "u30 + u31*y1@1*y3")
cert = resultant_via_reduction(system)
stages = cert.meta["stages"]
for key in ("T", "K", "essential_subset", "kept", "dropped", "smith", "degrees"):
    print(f"{key:>16}: {stages[key]}")

# %%
print(emit_certificate(cert, "text").decode(), end="")
print("subset blocks match the resultant:", cert.meta["subset_blocks_match"])
