"""Steklov spectrum of the family G_n: n interior vertices, two boundary vertices
joined to all of them. sigma_1 grows linearly, so no bound of the form C/|B|
can hold without a host graph."""

import numpy as np

from steklov_cayley import example_family_G, spectrum

# %% one member
g = example_family_G(5)
print("vertices", g.n, "edges", len(g.edges), "boundary", g.b)
s = spectrum(g)
print("eigenvalues", s.eigenvalues)
print("residuals", s.residuals)

# %% the whole family
ns = np.arange(1, 31)
sig = np.array([spectrum(example_family_G(int(n))).sigma1 for n in ns])
print("max |sigma1 - n| =", np.abs(sig - ns).max())
