"""Visible points of the square lattice.

A lattice point m1*b1 + m2*b2 can be seen from the origin exactly when
gcd(m1, m2) = 1. This script lists a few, checks the symmetries of the
set, and draws a radius-20 patch to out/visible_points.svg.
"""
from pathlib import Path

from vislat import apply_automorphism, enumerate_visible, gl2_generators, is_visible, square_lattice
from vislat.render import DotPlotSpec, render_points

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)

lat = square_lattice(2)

print("Some points and whether they are visible:")
for p in [(1, 0), (2, 0), (3, 5), (6, 9), (0, 0)]:
    print(f"  {p}: {is_visible(p)}")

pts = enumerate_visible(lat, 2)
print(f"\nThe 5x5 box holds {len(pts)} visible points:")
print(pts.tolist())

print("\nIn one dimension only two points are ever visible:")
print(enumerate_visible(1, 1000).ravel().tolist())

# The set is carried to itself by GL(2, Z), not just by rotations:
# a shear maps visible points to visible points.
shear = gl2_generators()[1]
image = apply_automorphism(shear, enumerate_visible(lat, 10))
print("\nAll sheared points still visible:", all(is_visible(p) for p in image.tolist()))

svg = render_points(enumerate_visible(lat, 20), lat, DotPlotSpec(point_radius=3.0))
(out / "visible_points.svg").write_bytes(svg)
print(f"\nwrote {out / 'visible_points.svg'}")
