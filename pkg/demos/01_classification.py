# %% [markdown]
# # Classifying generalized Cartan matrices
#
# A matrix is finite when every principal minor is positive, affine when the
# determinant vanishes but every proper principal minor is positive, and
# indefinite otherwise. A hyperbolic matrix is indefinite yet becomes finite
# or affine after deleting any single node.

# %%
from hyperpoincare import H48
from hyperpoincare.cartan import affine_cartan, determinant, finite_cartan, validate_gcm

for m in (validate_gcm([[2, -1], [-1, 2]], name="A2"), affine_cartan("D4"), H48()):
    print(f"{m.name:>10}  det={determinant(m.entries):>3}  {m.kind}  hyperbolic={m.hyperbolic}")

# %% Deleting one node of H48 at a time
h = H48()
for drop in range(1, 7):
    rest = [i for i in range(1, 7) if i != drop]
    print(drop, h.submatrix(rest).kind)

# %% The finite tables follow Bourbaki numbering
print(finite_cartan("B3").entries)
