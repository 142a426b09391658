"""Bragg amplitudes of the visible points of Z^2.

Peaks sit at every rational point of the dual cell. Their amplitude only
depends on a = lcm of the denominators: it vanishes unless a is
squarefree and otherwise equals (6/pi^2) * mu(a) / prod_{p | a} (p^2 - 1).
The truncated Dirichlet series gives the same numbers.
"""
from pathlib import Path

from vislat import bragg_amplitude, bragg_map, closed_f, dirichlet_f, reduce_wavevector, sieve_mobius
from vislat.io import bragg_to_csv
from vislat.render import DotPlotSpec, render_bragg

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

table = sieve_mobius(30 * 10**5)
print(f"{'a':>3} {'series (1e5 terms)':>22} {'finite product':>22}")
for a in (1, 2, 3, 4, 5, 6, 10, 12, 30):
    print(f"{a:>3} {dirichlet_f(2, a, 10**5, table):>22.15f} {closed_f(2, a):>22.15f}")

print("\nOnly the denominators matter:")
for pairs in ([(1, 2), (0, 1)], [(1, 2), (1, 2)], [(5, 2), (-3, 2)], [(1, 3), (1, 2)], [(1, 4), (0, 1)]):
    k = reduce_wavevector(pairs)
    h = bragg_amplitude(k)
    print(f"  k = 2pi({k}): a = {h.a:>2}, H = {h.value:+.6f}")

amps = bragg_map(2, 12)
zero = sum(1 for b in amps if b.value == 0)
print(f"\nQ=12 map: {len(amps)} rational points, {zero} of them dark (non-squarefree a)")
(out / "bragg_q12.csv").write_text(bragg_to_csv(amps))
(out / "bragg_q12.svg").write_bytes(render_bragg(amps, DotPlotSpec(dot_scale=25.0)))
print(f"wrote {out / 'bragg_q12.csv'} and {out / 'bragg_q12.svg'}")
