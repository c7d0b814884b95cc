"""Above a = (5 + sqrt 7)/3 the same argument cannot work.

For a = 13/5 every e_{1,1}^d has a generator below it at some c < 2 + a/2,
so no single target obstructs.  Below the threshold the explicit
construction eventually fails, which is what the pipeline exploits.

Run: python3 demos/04_sharpness.py
"""

from fractions import Fraction

from toric_ech import BelowThreshold, sharpness_witness

for a in (Fraction(13, 5), Fraction(5, 2)):
    print(f"a = {a}")
    for d in range(1, 22):
        try:
            eps, lam = sharpness_witness(a, d)
            print(f"  d={d:2d}  eps={str(eps):>8s}  {lam}")
        except BelowThreshold:
            print(f"  d={d:2d}  no witness from the construction")
