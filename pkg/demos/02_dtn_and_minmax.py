"""The Dirichlet-to-Neumann matrix of a small lattice graph, checked against the
min-max (generalized eigenproblem) route that never forms the Schur complement."""

import numpy as np

from steklov_cayley import dtn_matrix, free_abelian, harmonic_extension, normal_derivative, spectrum
from steklov_cayley.families import induced
from steklov_cayley.steklov import oracle_spectrum

Z2 = free_abelian(2)

# an L-shaped tromino and its vertex boundary
g = induced(Z2, {(0, 0), (1, 0), (0, 1)})
print("interior", [g.labels[i] for i in g.interior_indices])
print("boundary", [g.labels[i] for i in g.boundary_indices])

# %% Lambda f is the outward flux of the harmonic extension of f
Lam = dtn_matrix(g)
f = np.zeros(g.b)
f[0] = 1.0
u = harmonic_extension(g, f)
print("Lambda e_0 via matrix :", np.round(Lam @ f, 6))
print("Lambda e_0 via flux   :", np.round(normal_derivative(g, u), 6))
print("row sums", np.abs(Lam.sum(axis=1)).max())

# %% two independent spectra
a = spectrum(g).eigenvalues
b = oracle_spectrum(g)
print("Schur   ", np.round(a, 8))
print("min-max ", np.round(b, 8))
print("max gap ", np.abs(a - b).max())

# %% the pure-Python Jacobi solver gives the same numbers
print("jacobi gap", np.abs(spectrum(g, method="jacobi").eigenvalues - a).max())
