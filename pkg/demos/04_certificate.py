"""Replaying the test-function argument on a lattice ball.

With the covering count from the growth constant (4225 in Z^2), every desk-size
graph has few enough boundary vertices that only the trivial bound d applies.
Overriding c1 with a small value exercises the two cutoff functions; the bound
is still rigorous because it is a Rayleigh quotient maximum over a
two-dimensional space of functions with disjoint supports."""

import numpy as np

from steklov_cayley import certify_sigma1
from steklov_cayley.families import heis_ball, zd_ball

g = zd_ball(2, 8)

cert = certify_sigma1(g)
print("default c1:", cert.c1, cert.branch, "bound", cert.certified_bound, "sigma1", round(cert.sigma1, 4))

for c1 in (3, 10, 20):
    cert = certify_sigma1(g, c1=c1)
    print(f"c1={c1:3d} alpha={float(cert.alpha):6.2f} R={cert.R} x0={cert.x0} "
          f"R(f1)={cert.rayleigh1:.4f} R(f2)={cert.rayleigh2:.4f} bound={cert.certified_bound:.4f}")

# %% where the two test functions live
cert = certify_sigma1(g, c1=3)
on1 = [g.labels[i] for i in np.flatnonzero(cert.f1)]
on2 = [g.labels[i] for i in np.flatnonzero(cert.f2)]
print(len(on1), "vertices under f1,", len(on2), "under f2, overlap:", set(on1) & set(on2))

# %% Heisenberg ball: too small a c1 leaves too little boundary outside B(x0, 3R)
for c1 in (3, 20):
    cert = certify_sigma1(heis_ball(3), c1=c1)
    print("heisenberg c1 =", c1, cert.branch, cert.certified_bound, cert.fallback_reason or "")
