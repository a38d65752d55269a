# %% [markdown]
# # Resultant by order/degree search
# Each candidate is a generic polynomial in the coefficients; the linear
# conditions come from substituting a generic zero.

# %%
from diffres.engine import attach_verification, search_resultant
from diffres.textio import emit_certificate, parse_system

system = parse_system("u00 + u01*y1^2 ; u10*y1@1 + u11*y1")
cert = search_resultant(system)
print(emit_certificate(cert, "text").decode(), end="")
print("orders:", cert.orders, "degree:", cert.degree)
print("search trace:", cert.meta["h"], "degree", cert.meta["d"], "cap", cert.meta["cap"])

# %% [markdown]
# Verification evaluates at random generic zeros and checks homogeneity per block.

# %%
attach_verification(cert, system)
print(emit_certificate(cert, "json").decode())
