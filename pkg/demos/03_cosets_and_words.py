# %% [markdown]
# # Minimal coset representatives
#
# For a node subset J, an element is a minimal representative of its coset
# w W_J exactly when its rho-image stays positive on J.

# %%
from hyperpoincare import H48
from hyperpoincare.polyseries import finite_poincare, series_mul
from hyperpoincare.weylgrowth import growth_series, parabolic_coset_growth, reduced_words

h = H48()
R = parabolic_coset_growth(h, [1, 2, 3, 4], 10)
print("coset counts:", R.coeffs)

# %% P(W) = P(W_J) * R, coefficient by coefficient
W = growth_series(h, 10).as_series()
print(series_mul(finite_poincare("A4"), R.as_series()) == W)

# %% Reduced words of the first few representatives
for k in range(1, 4):
    print(k, reduced_words(h, k, J=[1, 2, 3, 4]))
