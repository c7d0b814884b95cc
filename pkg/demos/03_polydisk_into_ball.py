"""Obstructing P(a,1) -> B(c) below c = 2 + a/2.

The pipeline counts every generator that can sit below e_{1,1}^d, shows the
counts stop at some d_a, and then runs the criterion on a power of e_{1,1}
too large for those pieces to cover.

Run: python3 demos/03_polydisk_into_ball.py
"""

from fractions import Fraction

from toric_ech import PipelineParams, obstruction_pipeline

for a, c in [(2, Fraction(29, 10)), (Fraction(9, 4), Fraction(31, 10))]:
    rep = obstruction_pipeline(PipelineParams(a, c))
    print(rep.markdown())
    print()
