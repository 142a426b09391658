"""Points visible to several observers at once.

No closed formula is known for these sets, so this only counts. The
result depends on where the observers sit relative to each other.
"""
from vislat.visibility import empirical_density, observer_density, visible_from_observers

print(visible_from_observers((3, 1), [(0, 0), (1, 0)]))
print(visible_from_observers((2, 0), [(0, 0), (0, 1)]))

base = empirical_density(2, 150).empirical
print(f"\none observer at the origin: {base:.4f}")
for second in [(1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (5, 3)]:
    est = observer_density(2, 150, [(0, 0), second])
    print(f"observers (0,0) and {second}: {est.empirical:.4f}   (square of single density: {base**2:.4f})")
