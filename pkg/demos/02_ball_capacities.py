"""ECH capacities of a ball and the minimizers behind them.

Capacities of B(1) are the sorted sums m + n.  An index 2k has a unique
action minimizer exactly when 2k = d(d+3); otherwise a generator and its
mirror image tie.

Run: python3 demos/02_ball_capacities.py
"""

from toric_ech import Ball, capacities, minimal_generators

ball = Ball(1)
caps = capacities(ball, 20)
print("c_k(B(1)), k = 0..20:", [int(c) for c in caps])

for k in range(1, 15):
    mins = minimal_generators(ball, k)
    tag = "unique" if len(mins) == 1 else f"{len(mins)} minimizers"
    print(f"k={k:2d}  2k={2 * k:3d}  {tag:15s} {', '.join(map(str, mins))}")
