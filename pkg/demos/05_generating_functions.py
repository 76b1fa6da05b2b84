# Generating functions: finite polynomials from infinite sums, an exact
# check of a first-order PDE, and a numeric look at the closed form.

from refined_eulerian import series

# (1-x)^n sum_j j^(k-1) (j+1)^(n-k) x^j is a polynomial of degree < n
print(series.gf_nk(6, 3))
print(series.gf_nd(6, 2))
print(series.a_poly(5))

# the exponential generating function satisfies a PDE; compare every coefficient
print("PDE holds through x^8 y^9 z^8:", series.pde_check(8, 9, 8))

# a corrupted table is caught
from refined_eulerian import refined_first
bad = lambda n, d, k: refined_first(n, d, k) + ((n, d, k) == (4, 1, 2))
print("with one wrong entry:", series.pde_check(6, 6, 6, counts=bad))

# truncated triple sum vs. the integral formula, at a few points
for pt in [(0.3, 0.5, 0.2), (-0.5, 0.3, 0.15), (0.7, 0.8, -0.25)]:
    print(pt, "residual", series.gfall_numeric_check(*pt, n_max=18, tol=1e-6))

# the residual is governed by truncation
x, y, z = 0.3, 0.5, 0.4
exact = series.gfall_closed_form(x, y, z, 1e-13)
for m in range(2, 13, 2):
    print(m, abs(series.b_series_value(x, y, z, m) - exact))
