"""Cobordism invariants of odd-dimensional boundary links from Seifert-form
input: exact reduction to simple pieces, hermitian transport to number
fields, classical Witt invariants, and the covering construction with its
truncated linking pairing."""

from .rational import (QMatrix, QPoly, factor_rational_poly,
                       minimal_polynomial, rat, rat_str, real_root_data,
                       solve_or_kernel)
from .seifert import (SeifertForm, SeifertModule, SeifertMorphism,
                      direct_sum, dual_module, find_isomorphism, hom_space,
                      induced_form_on_subquotient, quotient_module,
                      spin_submodule, validate_form, validate_module)
from .devissage import (AnisotropicDecomposition, composition_series,
                        find_simple_submodule, is_simple, isotypic_group,
                        witt_reduce)
from .endofield import (HermitianFormOverE, NumberFieldWithInvolution,
                        as_number_field, endomorphism_ring,
                        involution_from_form, morita_transport)
from .wittinv import (InvariantReport, analyze_form, diagonalize,
                      discriminant_class, hasse_witt_over_q, hilbert_symbol,
                      invariant_report, norm_class_test_quadratic, signatures)
from .covering import (FlkPresentation, GroupRingElem, NCRationalSeries,
                       PairingValue, TruncatedSeries, blanchfield_pairing,
                       change_coefficients, cover_presentation,
                       linearize_presentation, magnus_expand,
                       seifert_from_flk, series_involution,
                       sigma_inverse_series, symmetry_witness,
                       truncated_cokernel_data)
from .primitives import (PrimitiveAnalysis, analyze_primitives,
                         hom_in_quotient, is_primitive, max_primitive_submodule,
                         min_coprimitive, trivial_socle)

__version__ = "0.1.0"
