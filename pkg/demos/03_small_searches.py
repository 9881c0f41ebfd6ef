# Branch-and-bound: can an intersecting family beat the star's minimum d-degree?
import sys

from ekrdeg.families import ekr_degree_bound, min_degree
from ekrdeg.search import SearchProblem, search_min_degree

cases = [(6, 3, 2, 2), (7, 3, 2, 1), (7, 3, 2, 2), (8, 3, 2, 2), (8, 4, 2, 4), (9, 4, 2, 6)]
for n, k, d, t in cases:
    out = search_min_degree(SearchProblem(n, k, d, t, time_limit=30))
    line = f"n={n} k={k} d={d} target={t} (star gives {ekr_degree_bound(n, k, d)}): {out.status.value:9s}" \
           f" nodes={out.nodes_explored:<7d} cuts={out.bound_cuts}"
    print(line)
    if out.witness is not None:
        print("   witness:", out.witness.as_lists(), " delta_d =", min_degree(out.witness, d)[0])

# n = 2k leaves room for a design to do better than the star; past 2k+2d-3 nothing does
if "--stretch" in sys.argv:
    out = search_min_degree(SearchProblem(9, 4, 2, 7, time_limit=600))
    print("(9,4,2) target 7:", out.status.value, out.nodes_explored)
