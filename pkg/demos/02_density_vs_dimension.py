"""How frequent are visible points?

Counting gcd-1 points in growing boxes approaches 1/zeta(n). For even n
zeta(n) has a closed form in Bernoulli numbers, and the Euler product
and plain partial sums give two more routes to the same number.
"""
import math
from pathlib import Path

from vislat import density_curve, empirical_density, zeta_euler_product, zeta_even_closed, zeta_partial
from vislat.render import render_density_curve

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

print("zeta(n) three ways:")
print(f"{'n':>3} {'Bernoulli':>20} {'partial sum 1e6':>20} {'Euler prod p<=1e5':>20}")
for n in (2, 4, 6, 8):
    print(f"{n:>3} {zeta_even_closed(n):>20.15f} {zeta_partial(n, 10**6):>20.15f} {zeta_euler_product(n, 10**5):>20.15f}")

print("\nEmpirical density in coefficient boxes:")
for n, radius in [(2, 50), (2, 200), (2, 500), (3, 20), (3, 50), (4, 12)]:
    est = empirical_density(n, radius)
    print(f"  n={n} R={radius:>3}: {est.empirical:.5f}  (1/zeta(n) = {est.theoretical:.5f})")

est = empirical_density(1, 100)
print(f"  n=1 R=100: {est.empirical:.5f}  (limit {est.theoretical}) -- two points out of 200")

curve = density_curve(12)
print("\n1/zeta(n) rises quickly towards 1:")
for n, v in curve:
    print(f"  n={n:>2}: {v:.6f}")
print(f"6/pi^2 = {6 / math.pi**2:.6f}")

(out / "density_curve.svg").write_bytes(render_density_curve(curve))
print(f"\nwrote {out / 'density_curve.svg'}")
