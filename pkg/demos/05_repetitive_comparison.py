"""Compare the AR triangle ending at iS with the almost split sequence over a
truncated repetitive algebra, for k[x]/(x^2) and A2.

Takes about twenty seconds.
"""

from aralg import a2, dual_numbers, simple_module
from aralg.repetitive import happel_compare_stable

for A in (dual_numbers(), a2()):
    r1, r2, stable = happel_compare_stable(simple_module(A, 0), window=(-2, 2))
    print(f"== {A.name}: truncation indices {r1.indices}, enlarged {r2.indices}")
    print("  DTr over the truncation, by index:", r1.tau_dims)
    print("  middle term, by index:         ", r1.middle_dims)
    print("  split summand W:               ", r1.w_dims)
    for k, v in r1.checks.items():
        print(f"  {k:<30} {v}")
    print("  stable under enlargement:", stable)
