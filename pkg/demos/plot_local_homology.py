"""
Koszul homology of a variety at a point
========================================

The coordinate ring of a variety carries the commuting tuple of coordinate
functions. Its Koszul homology at a point measures how singular or
non-reduced the variety is there.
"""

# %%
# A cone through the origin
# -------------------------
# ``xy + yz + zx = 0`` is a surface in three-space. At the origin only the
# first homology survives beyond degree zero, and the alternating sum vanishes.
from koszulspec import CyclicModule, Ideal, tor_dims_at_point

cone = CyclicModule(Ideal.parse(["x*y + y*z + z*x"], ("x", "y", "z")))
print(tor_dims_at_point(cone, (0, 0, 0)))

# %%
# Off the surface the complex is exact.
print(tor_dims_at_point(cone, (1, 1, 1)))

# %%
# A reduced point
# ---------------
# The point ideal gives binomial coefficients, the ranks of the exterior powers.
for n in range(1, 5):
    vars = ("x", "y", "z", "w")[:n]
    print(n, tor_dims_at_point(CyclicModule(Ideal.parse(list(vars), vars)), (0,) * n).d)

# %%
# Two independent pipelines
# -------------------------
# For a finite-dimensional quotient the same numbers come out of the
# multiplication matrices of the coordinates.
from koszulspec import koszul_dims_direct_zero_dim

fat = CyclicModule(Ideal.parse(["x^2", "x*y", "y^2"], ("x", "y")))
print(tor_dims_at_point(fat, (0, 0)).d, koszul_dims_direct_zero_dim(fat, (0, 0)).d)
