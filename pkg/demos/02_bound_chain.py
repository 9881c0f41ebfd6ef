# Walk through the inequality chain for the minimum d-degree bound on a few families.
from fractions import Fraction

from ekrdeg import families as fam
from ekrdeg import lemmas
from ekrdeg.subsets import binom

n, k, d = 7, 3, 2
cs = lemmas.coefficients(n, k, d)
print("a =", [str(x) for x in cs.a], " b =", [str(x) for x in cs.b], " c, f, g =", cs.c, cs.f, cs.g)
for rep in (lemmas.claim1(n, k, d), lemmas.claim3(n, k, d), lemmas.claim2(n, k, d, 2)):
    print(f"{rep.lemma_id}: {rep.lhs} {rep.sense.value} {rep.rhs}  -> {rep.verdict.value}")

# the quadratic in |F| has its roots at the EKR size and the double-counting size
r1 = binom(n - 1, k - 1)
r2 = Fraction(binom(n - d - 1, k - d - 1) * binom(n, d), binom(k, d))
for m in (0, r2, r1, r1 + 1):
    comb, factored = lemmas.final_factorization(n, k, d, m)
    print(f"m={m!s:>3}: combined={comb}  factored={factored}")

# tight cases: the Hoffman value vanishes on a star in KG(5,2)
print("hoffman star(5,2,{1}) d=1:", lemmas.hoffman_slack(fam.star(5, 2, [1]), 1).rhs)

for F, dd in [(fam.fano(), 2), (fam.star(11, 4, [3]), 3), (fam.design_2_6_3_2(), 2)]:
    rep = lemmas.theorem_check(F, dd)
    print(f"\n{F!r} d={dd}: delta={rep.lhs} bound={rep.rhs} verdict={rep.verdict.value}")
    for key, val in rep.details.items():
        if hasattr(val, "verdict"):
            print(f"   {key:20s} {val.lhs} {val.sense.value} {val.rhs} ({val.verdict.value})")
        else:
            print(f"   {key:20s} {val}")
