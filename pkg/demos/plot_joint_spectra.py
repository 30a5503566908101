"""
Joint spectra of commuting matrices
===================================

A tuple of commuting matrices has a joint spectrum: the points where its
Koszul complex fails to be exact. Polynomial maps carry the spectrum along.
"""

# %%
# A diagonal pair
# ---------------
from koszulspec import MatrixTuple, koszul_dims, taylor_spectrum

pair = MatrixTuple([[[0, 0], [0, 1]], [[0, 0], [0, 2]]])
print([tuple(str(c) for c in a) for a in taylor_spectrum(pair)])
print(koszul_dims(pair, (0, 0)))

# %%
# Spectral mapping
# ----------------
# The spectrum of ``(x + y, xy)`` is the image of the spectrum.
from koszulspec import check_spectral_mapping, parse_poly

qs = [parse_poly(t, ("x", "y")) for t in ("x + y", "x*y")]
print(check_spectral_mapping(pair, qs).equal)

# %%
# Simultaneous triangularization
# ------------------------------
import random

from koszulspec import triangularize
from koszulspec.suites import random_commuting_tuple

x = random_commuting_tuple(random.Random(1), 2, 3)
T = triangularize(x)
print(T.is_upper_triangular(), [tuple(str(c) for c in d) for d in T.diagonal])

# %%
# Over a finite field every point can be tested
# ----------------------------------------------
from koszulspec import GF, brute_force_spectrum

y = random_commuting_tuple(random.Random(2), 2, 3, GF(5))
print(taylor_spectrum(y).as_set() == brute_force_spectrum(y).as_set())
