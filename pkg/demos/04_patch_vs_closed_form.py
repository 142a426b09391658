"""Summing exp(-i k.x) over a finite patch of visible points.

Divided by the number of lattice sites in the patch, the structure
factor at a rational k should approach the Bragg amplitude H. It does,
but slowly and not monotonically, because the Möbius sums behind it
converge slowly.
"""
from vislat import bragg_amplitude, convergence_study, reduce_wavevector

for pairs in ([(0, 1), (0, 1)], [(1, 2), (0, 1)], [(1, 2), (1, 2)], [(1, 3), (0, 1)], [(1, 6), (1, 2)]):
    k = reduce_wavevector(pairs)
    h = bragg_amplitude(k).value
    rows = convergence_study(k, [50, 100, 200, 400])
    devs = "  ".join(f"R={r}: {d:.2e}" for r, d in rows)
    print(f"k = 2pi({k}), H = {h:+.5f}\n    {devs}")

# A denominator as large as 1013 behaves like an incommensurate k here.
k = reduce_wavevector([(1, 1013), (0, 1)])
print(f"\nH at 1/1013 is {bragg_amplitude(k).value:.2e}; patch deviation:",
      convergence_study(k, [100, 400]))
