# %% [markdown]
# # Finite denominators
#
# Look for a finite type G and a polynomial Q with P(H) = P(G) / Q. The
# quotient P(G) / P(H) is computed as a series; it is accepted as a
# polynomial once its trailing `guard` coefficients vanish.

# %%
from hyperpoincare import H48, growth_series
from hyperpoincare.factorization import fit_denominator, search_denominator
from hyperpoincare.polyseries import render_poly

H = growth_series(H48(), 25).as_series()
fit = fit_denominator(H, "B5")
print(fit.finite_type, fit.observed_degree, fit.D)
print(render_poly(fit.Q))

# %% A5 has D = 15 and does not give a polynomial
print(fit_denominator(H, "A5"))

# %% Every finite type up to rank 5
for f in search_denominator(H, max_rank=5):
    print(f.finite_type, f.observed_degree)
