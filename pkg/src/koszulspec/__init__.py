"""Exact Koszul homology, joint spectra and local multiplicity invariants."""
from .errors import (
    CapExceeded, DimensionMismatch, EmptyVariety, FieldError, InfiniteDimensional, KoszulSpecError,
    NonCommutingTuple, NonZeroComposition, NoStandardRepresentation, NotStabilized, ParseError,
    PointNotOnVariety, SpectrumNotSplit, UnsupportedCharacteristic,
)
from .field import GF, QQ, FieldSpec, Mod
from .poly import MultiPoly, point, poly_eval, poly_partial, poly_translate
from .parser import parse_poly
from .groebner import (
    GREVLEX, INFINITE, LEX, Ideal, MonomialOrder, buchberger, divide, ideal_power_sum, ideal_quotient,
    intersect, is_groebner, krull_dim, maximal_ideal, normal_form, quotient_dim, standard_monomials,
)
from .resolution import FreeModuleMap, FreeResolution, free_resolution, minimalize, syzygies
from .koszul import (
    ChainComplex, ExteriorBasis, HomologyReport, MatrixTuple, build_koszul, cone, homology_dims,
    induced_action, koszul_dims,
)
from .numerical import NumericalPolynomial, binom, fit_numerical_polynomial
from .spectra import (
    SpectrumSet, brute_force_spectrum, charpoly, check_projection, check_spectral_mapping, eigenvalues,
    point_spectrum, taylor_membership, taylor_spectrum, triangularize,
)
from .variety import (
    CyclicModule, cayley_hamilton_d1_check, h1_lower_bound, inflated_index, koszul_dims_direct_zero_dim,
    point_spectrum_membership, samuel_values, serre_check, tor_dims_at_point, tor_polynomial,
)

import types as _types

__all__ = [k for k, v in dict(globals()).items() if not k.startswith("_") and not isinstance(v, _types.ModuleType)]
