# Non-uniform families: the upper half of 2^[n] beats every point star on min degree.
from ekrdeg.families import chvatal_check, is_intersecting, upper_half

for n in (3, 5, 7, 9):
    for d in range(1, (n - 1) // 2 + 1):
        rep = chvatal_check(n, d)
        print(f"n={n} d={d}: max_i delta_d(G_i) = {rep.lhs}  <  delta_d(upper half) = {rep.rhs}"
              f"   [{rep.verdict.value}]")
    print("   upper half intersecting:", is_intersecting(upper_half(n)), " size:", len(upper_half(n)))
