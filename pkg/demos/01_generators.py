"""Convex generators: parsing, invariants, products.

Run: python3 demos/01_generators.py
"""

from toric_ech import lattice_count, parse_generator, product, product_index_formula

lam = parse_generator("e_{1,0}^3 e_{2,1} e_{1,3}")
gam = parse_generator("e_{2,1} e_{0,1}^2")

for g in (lam, gam):
    s = g.stats
    lc = lattice_count(g)
    print(f"{g}: x={s.x} y={s.y} m={s.m} 2*area={s.doubled_area} L={s.L} I={s.index}")
    print(f"  counted points: {lc.interior} interior + {lc.boundary} boundary")

p = product(lam, gam)
print(f"\nproduct: {p}")
print(f"I(product) = {p.index}, from the factors alone: {product_index_formula(lam, gam)}")
