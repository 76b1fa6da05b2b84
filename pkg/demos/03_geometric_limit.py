# For fixed d and growing n the first letter approaches a geometric law
# with ratio p = d/(d+1). Watch the distance shrink.

from refined_eulerian import moments

for d in (1, 2, 3):
    print(f"d = {d}")
    for n in (8, 16, 32, 64, 80):
        sup = moments.geometric_ratio_sup(n, d)
        tvd = moments.tvd_geometric(n, d)
        print(f"  n = {n:3d}   sup |ratio - 1| = {float(sup):.3e}   TVD = {float(tvd):.3e}")

# the values are exact rationals; the float is only for printing
print(moments.tvd_geometric(6, 1))
