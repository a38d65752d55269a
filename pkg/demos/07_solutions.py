# %% [markdown]
# # Solutions of specialised systems
# A vanishing resultant yields a candidate solution, which must still be checked.

# %%
from diffres.engine import reconstruct_solution, search_resultant, solution_residuals
from diffres.textio import parse_system

system = parse_system("u00 + u01*y1*y2 ; u10 + u11*y1*y2@1 ; u20 + u21*y2")
cert = search_resultant(system)
values = {(0, 0): 30, (0, 1): 5, (1, 0): 42, (1, 1): 7, (2, 0): 8, (2, 1): 4}
point = reconstruct_solution(cert, system, values)
print("candidate:", point, "residuals:", solution_residuals(system, values, point))

# %% [markdown]
# Here the resultant vanishes but the candidate fails the second equation.

# %%
system = parse_system("u00 + u01*y1^2 ; u10*y1@1 + u11*y1")
cert = search_resultant(system)
values = {(0, 0): -4, (0, 1): 1, (1, 0): 1, (1, 1): 1}
point = reconstruct_solution(cert, system, values)
print("candidate:", point, "residuals:", solution_residuals(system, values, point))
