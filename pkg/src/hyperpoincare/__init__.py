"""Growth series of Kac-Moody Weyl groups and finite-denominator factorizations
of hyperbolic Poincaré series."""

from .cartan import (CartanMatrix, RationalMatrix, Weight, H48, affine_cartan, apply_word,
                     cartan_matrix, classify, finite_cartan, inverse_cartan, load_algebra,
                     reflect, validate_gcm, weyl_vector)
from .catalog import (CatalogEntry, VerificationReport, load_catalog, published_constants,
                      verify_entry)
from .factorization import (DenominatorFit, RationalFunction, compute_R, fit_denominator,
                            rational_check, search_denominator, verify_factorization)
from .polyseries import (FiniteType, IntPoly, TruncSeries, affine_poincare, finite_poincare,
                         finite_type, parse_poly, polynomial_terminates, render_poly,
                         series_div, series_mul)
from .weylgrowth import (GrowthSeries, finite_order, growth_series, parabolic_coset_growth,
                         reduced_words)

__version__ = "0.1.0"
