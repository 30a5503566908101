"""
Samuel functions and multiplicities
===================================

``s(r) = dim P / (I + m^r)`` grows polynomially in ``r``. The top finite
difference of the fitted polynomial is the multiplicity, and minus the n-th
difference equals the index of the coordinate tuple at the point.
"""

# %%
# A cusp has multiplicity two
# ---------------------------
from koszulspec import CyclicModule, Ideal, samuel_values, serre_check

cusp = CyclicModule(Ideal.parse(["y^2 - x^3"], ("x", "y")))
table = samuel_values(cusp, (0, 0), 8)
print(table.values, "->", table.fitted)

# %%
# The index at the point is minus the second difference (zero for a curve).
rep = serre_check(cusp, (0, 0))
print(rep.index_at_point, rep.e, rep.serre_consistent)

# %%
# Tor against truncations
# -----------------------
# Tensoring a free resolution with ``P/m^r`` gives the Tor-polynomial, which
# reproduces the Samuel function when the variety is not all of space.
from koszulspec import tor_polynomial

surface = CyclicModule(Ideal.parse(["x*y + y*z + z*x"], ("x", "y", "z")))
print(tor_polynomial(surface, (0, 0, 0), 5).values)
print(samuel_values(surface, (0, 0, 0), 5).values)

# %%
# On the whole plane the Tor-polynomial vanishes and the index is -1.
plane = CyclicModule(Ideal([], ("x", "y")))
print(tor_polynomial(plane, (0, 0), 5).values, serre_check(plane, (0, 0)).index_at_point)
