# %% [markdown]
# # Counting Weyl group elements by length
#
# Each element w is stored as its image w(rho). Level k+1 is obtained by
# reflecting level-k images in the nodes where they are still positive.

# %%
import time

from hyperpoincare import H48, growth_series
from hyperpoincare.cartan import finite_cartan
from hyperpoincare.polyseries import finite_poincare

a4 = growth_series(finite_cartan("A4"), None)
print(a4.coeffs, a4.complete, a4.total)
assert a4.as_poly() == finite_poincare("A4")

# %% The hyperbolic example: the group is infinite, so truncate
start = time.perf_counter()
h = growth_series(H48(), 20)
print(h.coeffs)
print(f"{time.perf_counter() - start:.1f}s, complete={h.complete}")

# %% Progress records can be streamed while enumerating
import sys

growth_series(H48(), 6, checkpoint=sys.stdout)
