"""Ball sizes in Z^1, Z^2, Z^3 and the discrete Heisenberg group, and the
constants that follow from them."""

import numpy as np

from steklov_cayley import free_abelian, growth_function, heisenberg
from steklov_cayley.bounds import constant_chain

for desc, n_max in [(free_abelian(1), 12), (free_abelian(2), 12), (free_abelian(3), 10), (heisenberg(), 12)]:
    est = growth_function(desc, n_max)
    n = np.array([s[0] for s in est.samples], float)
    v = np.array([s[1] for s in est.samples], float)
    tail = n >= n_max // 2
    slope = np.polyfit(np.log(n[tail]), np.log(v[tail]), 1)[0]
    chain = constant_chain(desc, est)
    print(f"{desc.kind}({desc.rank}) D={est.order} V={[int(x) for x in v[:6]]}... "
          f"slope={slope:.2f} C={est.growth_constant} c1={chain.c1} C_final={chain.C_final:.4g}")

# Heisenberg: the local slope creeps up toward 4 but is still well below it at these radii
est = growth_function(heisenberg(), 10)
V = dict(est.samples)
for n in (3, 4, 5):
    print(f"V({2 * n})/V({n}) = {V[2 * n] / V[n]:.2f}")
