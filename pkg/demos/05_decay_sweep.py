"""sigma_1 on growing lattice balls and boxes, with the normalisation by
|closure|^(1/D) and the isoperimetric ratio of each set. The CLI `sweep`
subcommand writes the same table as CSV."""

from steklov_cayley import spectrum
from steklov_cayley.bounds import isoperimetric_ratio_of_graph
from steklov_cayley.families import zd_ball, zd_box

print(" r   |closure|  |dOmega|   sigma1   sigma1*|closure|^(1/2)  iso")
for r in range(1, 21, 2):
    g = zd_ball(2, r)
    s = spectrum(g).sigma1
    print(f"{r:2d} {g.n:10d} {g.b:9d} {s:9.5f} {s * g.n ** 0.5:14.4f} {isoperimetric_ratio_of_graph(g, 2).ratio:14.4f}")

print()
print("side  |closure|   sigma1   sigma1*|closure|^(1/3)")
for side in range(2, 9):
    g = zd_box((side,) * 3)
    s = spectrum(g).sigma1
    print(f"{side:4d} {g.n:10d} {s:9.5f} {s * g.n ** (1 / 3):12.4f}")
