# %% [markdown]
# # Laurent difference polynomials
# Parse a polynomial, apply the transform operator and take its norm form.

# %%
from diffres.diffpoly import norm_form, order_stats, to_string, transform
from diffres.textio import parse_poly

F, vt = parse_poly("u00 + u01*y1@1*y1^-2")
print("F          =", to_string(F, vt))
print("transform  =", to_string(transform(F, 2), vt))

# %% [markdown]
# The norm form clears negative exponents with the smallest monomial factor.

# %%
M, N = norm_form(F, vt)
print("multiplier =", M)
print("norm form  =", to_string(N, vt))
print("(ord, lord, eff) in y1:", order_stats(N, 0))
