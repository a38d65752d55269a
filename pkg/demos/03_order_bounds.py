# %% [markdown]
# # Jacobi numbers and order bounds

# %%
from diffres.jacobi import delete_row, jacobi_number, order_matrix, search_bounds
from diffres.textio import parse_system

system = parse_system("u00 + u01*y1*y1@1 ; u10 + u11*y1 ; u20 + u21*y2@1")
A = order_matrix(system)
print("order matrix:", A)
print("J =", [jacobi_number(delete_row(A, i)) for i in range(len(A))])

# %% [markdown]
# Every bound is collected in one report; `final` is the minimum used by the search.

# %%
report = search_bounds(system, "exact")
for key, value in report.as_dict().items():
    print(f"{key:>12} = {value}")
