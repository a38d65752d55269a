# %% [markdown]
# # Command line
# The same stages are available as subcommands; here they run in-process.

# %%
import os
import tempfile

from diffres.cli import main

with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False) as fh:
    fh.write("u00 + u01*y1*y2 ; u10 + u11*y1@1*y2@1 ; u20 + u21*y2")
for argv in (["super-essential"], ["jacobi"], ["resultant", "--engine", "reduction"]):
    print("$ diffres", " ".join(argv), "system.txt")
    main(argv + [fh.name])
os.unlink(fh.name)

# %%
main(["dense-resultant", "--orders", "1,1", "--degrees", "2,2"])
