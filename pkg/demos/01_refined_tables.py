# Refined Eulerian numbers: counting permutations by descents and first letter.
#
# <n,d>_k is the number of permutations of 1..n with d descents that begin
# with k. Summing over k gives the usual Eulerian number <n,d>.

import numpy as np

from refined_eulerian import both_ends, eulerian, refined_first, refined_table
from refined_eulerian.oracle import enumerate_joint

# the n = 5 table, rows are d, columns are k
t = refined_table(5)
print(np.array(t.counts))

# every column sums to 4! because fixing the first letter leaves 4! orders
print("column sums:", t.column_sums())
print("row sums:   ", t.row_sums(), "== Eulerian row", tuple(eulerian(5, d) for d in range(5)))

# four independent ways to build the same table
for method in ("closed_form", "rec1", "rec2", "rec3"):
    print(method, refined_table(9, method).counts == refined_table(9).counts)

# and a brute-force check: tabulate all 9! permutations
joint = enumerate_joint(9)
print("brute force agrees:", joint.first_counts() == refined_table(9).counts)

# the numbers get big quickly; everything is exact Python integers
print("<30,14>_15 =", refined_first(30, 14, 15))

# fixing both ends: the count with first k and last l
print("6 letters, 2 descents, first 2, last 5:", both_ends(6, 2, 2, 5),
      "brute force:", enumerate_joint(6).count(2, 2, 5))
