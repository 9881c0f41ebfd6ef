# Where does the weight of a family's indicator vector sit in the Kneser spectrum?
import numpy as np

from ekrdeg import families as fam
from ekrdeg.scheme import (
    eigenspace_dim, kneser_adjacency, kneser_eigenvalue, kneser_quadratic, spectral_profile,
)

# the Petersen graph is KG(5,2); compare closed forms with a float eigendecomposition
A = kneser_adjacency(5, 2)
vals, counts = np.unique(np.round(np.linalg.eigvalsh(A.astype(float)), 6), return_counts=True)
print("numpy spectrum   :", dict(zip(vals.tolist(), counts.tolist())))
print("closed form      :", {kneser_eigenvalue(5, 2, i): eigenspace_dim(5, i) for i in range(3)})

# a star puts everything into E_0 + E_1
for name, F in [("star(5,2,{1})", fam.star(5, 2, [1])),
                ("single {1,2}", fam.SetFamily.from_sets(5, [[1, 2]])),
                ("fano", fam.fano()),
                ("design 2-(6,3,2)", fam.design_2_6_3_2()),
                ("complete(7,3)", fam.complete(7, 3))]:
    prof = spectral_profile(F)
    pairs, _ = kneser_quadratic(F, prof)  # raises if the two routes disagree
    print(f"{name:18s} |F|={len(F):3d}  norms={[str(x) for x in prof.norms]}  disjoint pairs={pairs}")

# random families: the norms always sum to |F| and the first is |F|^2 / C(n,k)
rng = np.random.default_rng(7)
for _ in range(3):
    picks = rng.choice(84, size=int(rng.integers(5, 40)), replace=False)
    masks = list(fam.complete(9, 3).masks)
    F = fam.SetFamily(9, tuple(masks[i] for i in sorted(picks)))
    prof = spectral_profile(F)
    print(len(F), sum(prof.norms), prof.invariant_checks())
