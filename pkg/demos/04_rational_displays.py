# %% [markdown]
# # Closed forms for coset series
#
# Dividing the growth series by a parabolic Poincaré polynomial gives the
# coset series, which can be compared with a proposed rational function.

# %%
from hyperpoincare import H48, growth_series
from hyperpoincare.catalog import published_constants
from hyperpoincare.factorization import RationalFunction, compute_R, rational_check
from hyperpoincare.polyseries import affine_poincare, finite_poincare, render_poly

pc = published_constants()
H = growth_series(H48(), 25).as_series()

R1 = compute_R(H, finite_poincare("A4"))
print(rational_check(RationalFunction(pc.r1_numerator, pc.r1_denominator), R1))

R2 = compute_R(H, finite_poincare("D5"))
print(rational_check(RationalFunction(pc.r2_numerator, pc.r2_denominator), R2))

# %% Nodes 2..6 form an affine D4 diagram; its series comes from the exponents
bott = affine_poincare("D4", 25)
R3 = compute_R(H, bott)
print(rational_check(RationalFunction(pc.r3_numerator, pc.r3_denominator), R3))
print("denominator:", render_poly(pc.r3_denominator))
