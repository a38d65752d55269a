# %% [markdown]
# # Dense systems and mixed volumes

# %%
from diffres.polytope import Polytope, mixed_volume
from diffres.reduction import dense_degree_report, dense_resultant
from diffres.errors import SizeGuardExceeded

A = Polytope([(0, 0, 0), (2, 0, 0), (0, 2, 0)])
B = Polytope([(0, 0, 0), (0, 2, 0), (0, 0, 2)])
print("MV(A, B, A) =", mixed_volume([A, B, A]))

# %% [markdown]
# Degrees of the dense resultant come from mixed volumes even when the
# resultant itself is far too large to compute.

# %%
print(dense_degree_report(1, (1, 1), (2, 2)))
try:
    dense_resultant(1, (1, 1), (2, 2))
except SizeGuardExceeded as exc:
    print(exc)

# %%
cert, report = dense_resultant(1, (0, 1), (1, 1))
print(cert.resultant.degree(), cert.orders)
