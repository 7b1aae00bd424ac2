"""Unit balls of a three-point quasi-metric space and their polars.

Run: python3 demos/unit_balls.py [output_dir]
Writes two SVG files when an output directory is given.
"""

# %%
import sys
from pathlib import Path

from slipfree.fixtures import skew_triangle, u_space
from slipfree.freespace import Molecule, dual_norm
from slipfree.polytope import bipolar_check, free_ball, render_svg, reversal_constant, slip_ball
from slipfree.rational import fmt


def show(points):
    return ", ".join("(" + ", ".join(fmt(c) for c in p) + ")" for p in points) or "none"


space = skew_triangle()
print("semi-Lipschitz ball vertices:", show(slip_ball(space).vertices))
free = free_ball(space)
print("free-space ball vertices:    ", show(free.vertices))

# %% each polar vertex is a molecule of norm 1; its negative can be cheaper or dearer
for v in free.vertices:
    Q = Molecule.from_vector(space, v)
    print(f"  {show([v])}: |Q| = {fmt(dual_norm(Q))}, |-Q| = {fmt(dual_norm(-Q))}")
print("reversal constant:", fmt(reversal_constant(space)))

# %% one-way distances with zeros give unbounded balls
u = u_space([0, 1, 2])
ub = free_ball(u)
print("u-space free ball vertices:", show(ub.vertices), " rays:", show(ub.rays))
print("u-space reversal constant:", fmt(reversal_constant(u)))
print("bipolar check:", bipolar_check(u).ok)

# %%
if len(sys.argv) > 1:
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    (out / "slip_ball.svg").write_text(render_svg(space))
    (out / "free_ball.svg").write_text(render_svg(space, polar=True))
    print("wrote", out / "slip_ball.svg", "and", out / "free_ball.svg")
