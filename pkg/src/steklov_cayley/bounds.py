"""Upper bounds for sigma_1 on graphs included in polynomial-growth Cayley graphs.

Two kinds of bound live here:

* closed-form bounds ``C / |B|`` (growth order D <= 2) and
  ``C |V'|^((D-2)/D) / |B|`` (D >= 2), plus the two isoperimetric
  corollaries for induced graphs. The constant C is assembled from an
  empirical growth constant and is therefore only as good as the sampled
  scales it was measured on.
* a per-instance certificate: the two cutoff test functions around a ball
  that holds a fixed share of the boundary are built explicitly, and the
  larger of their Rayleigh quotients bounds sigma_1. This bound is rigorous
  for the instance at hand whatever the constants are, because it only uses
  the min-max principle on a two-dimensional test space.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cayley import (
    DEFAULT_BALL_CAP,
    GroupDescriptor,
    GrowthEstimate,
    ball_distances,
    covering_count,
    growth_function,
    neighbors,
)
from .graph_boundary import GraphWithBoundary, InducedSubsetSpec, vertex_boundary
from .steklov import SigmaOneUndefined, rayleigh, spectrum

__all__ = [
    "ConstantChain",
    "BoundCertificate",
    "IsoperimetricReport",
    "CorollaryBounds",
    "MissingHostLabels",
    "GapViolation",
    "SMALL_BOUNDARY",
    "TEST_FUNCTIONS",
    "constant_chain",
    "default_chain",
    "theorem1_bound",
    "corollary_bounds",
    "certify_sigma1",
    "isoperimetric_ratio",
    "isoperimetric_ratio_of_graph",
]

SMALL_BOUNDARY = "SmallBoundary"
TEST_FUNCTIONS = "TestFunctions"
DEFAULT_GROWTH_NMAX = 12

# separation scale and ball dilation used by the covering step
_A = Fraction(3)
_B = Fraction(1, 2)


class MissingHostLabels(ValueError):
    """The graph has no host labels, so host distances are unavailable."""


class GapViolation(RuntimeError):
    """The two test functions touch. Signals a bug, never a property of the input."""


@dataclass(frozen=True)
class ConstantChain:
    """Constants c1..c8 and the final constant, derived from a sampled growth function.

    All constants are empirical: they inherit the validity range of the
    growth samples (``n_max``).
    """

    D: int
    degree: int
    growth_constant: Fraction
    volume_constant: Fraction
    n_max: int
    c1: int
    c2: Fraction
    c3: Fraction
    c4: Fraction
    c5: Fraction
    c6: float
    c7: float
    c8: float

    @property
    def C_final(self) -> float:
        if self.D <= 2:
            return float(max(self.c5, self.c2))
        return max(self.c8, float(self.c2))

    def to_dict(self) -> dict:
        return {
            "D": self.D,
            "degree": self.degree,
            "growth_constant": float(self.growth_constant),
            "volume_constant": float(self.volume_constant),
            "n_max": self.n_max,
            "c1": self.c1,
            "c2": float(self.c2),
            "c3": float(self.c3),
            "c4": float(self.c4),
            "c5": float(self.c5),
            "c6": self.c6,
            "c7": self.c7,
            "c8": self.c8,
            "C_final": self.C_final,
        }


def constant_chain(desc: GroupDescriptor, growth: GrowthEstimate) -> ConstantChain:
    """Chain the proof constants from an empirical growth estimate of ``desc``."""
    D = desc.growth_order
    if growth.order != D:
        raise ValueError("growth estimate was computed for a different growth order")
    d = desc.degree
    C = growth.growth_constant
    c1 = covering_count(C, _A, _B, D)
    c2 = Fraction(d * (c1 + 1))
    c3 = max(growth.upper_constant, Fraction(d))
    c4 = c3 * c3 * 3**D / 2
    c5 = (c1 + 1) * c4
    c6 = float(c4) ** (2 / D)
    c7 = c6 * (float(c3) / 2) ** ((D - 2) / D)
    c8 = (c1 + 1) * c7
    return ConstantChain(D, d, C, growth.upper_constant, growth.n_max, c1, c2, c3, c4, c5, c6, c7, c8)


@lru_cache(maxsize=32)
def default_chain(desc: GroupDescriptor, n_max: int = DEFAULT_GROWTH_NMAX) -> ConstantChain:
    return constant_chain(desc, growth_function(desc, n_max))


def theorem1_bound(g: GraphWithBoundary, chain: ConstantChain, D: int | None = None) -> float:
    """C/|B| for D <= 2, C |V'|^((D-2)/D) / |B| otherwise."""
    D = chain.D if D is None else D
    b = g.b
    if b <= 1:
        raise SigmaOneUndefined("sigma_1 undefined: need |B| > 1")
    if D <= 2:
        return chain.C_final / b
    return chain.C_final * g.n ** ((D - 2) / D) / b


@dataclass(frozen=True)
class IsoperimetricReport:
    omega_size: int
    boundary_size: int
    closure_size: int
    D: int

    @property
    def ratio(self) -> float:
        return self.closure_size ** ((self.D - 1) / self.D) / self.boundary_size


def isoperimetric_ratio(spec: InducedSubsetSpec, D: int) -> IsoperimetricReport:
    """|closure|^((D-1)/D) / |vertex boundary| for a finite subset."""
    delta = vertex_boundary(spec)
    return IsoperimetricReport(len(spec.omega), len(delta), len(spec.omega) + len(delta), D)


def isoperimetric_ratio_of_graph(g: GraphWithBoundary, D: int) -> IsoperimetricReport:
    """Same as :func:`isoperimetric_ratio` for an already induced graph."""
    return IsoperimetricReport(g.n - g.b, g.b, g.n, D)


@dataclass(frozen=True)
class CorollaryBounds:
    boundary_form: float
    closure_form: float | None
    iso_constant: float


def corollary_bounds(
    g: GraphWithBoundary,
    chain: ConstantChain,
    D: int | None = None,
    iso_constant: float | None = None,
) -> CorollaryBounds:
    """Bounds in terms of |delta Omega| and of |closure of Omega| for an induced graph.

    The boundary form is ``C K^((D-2)/(D-1)) / |dOmega|^(1/(D-1))`` and the
    closure form ``C K / |closure|^(1/D)``, where C is the final chain
    constant and K an isoperimetric constant. When ``iso_constant`` is not
    given, the instance's own isoperimetric ratio is used, which is the
    smallest K valid for this graph.

    For D = 1 only the boundary form ``C / |dOmega|`` exists; the closure
    form is returned as None.
    """
    D = chain.D if D is None else D
    delta, closure = g.b, g.n
    if delta <= 1:
        raise SigmaOneUndefined("sigma_1 undefined: need |B| > 1")
    C = chain.C_final
    if D == 1:
        return CorollaryBounds(C / delta, None, 1.0 if iso_constant is None else iso_constant)
    K = isoperimetric_ratio_of_graph(g, D).ratio if iso_constant is None else iso_constant
    boundary_form = C * K ** ((D - 2) / (D - 1)) / delta ** (1 / (D - 1))
    closure_form = C * K / closure ** (1 / D)
    return CorollaryBounds(boundary_form, closure_form, K)


@dataclass
class BoundCertificate:
    """Replayed test-function bound for sigma_1 of one graph."""

    branch: str
    c1: int
    alpha: Fraction
    degree: int
    certified_bound: float
    R: int | None = None
    x0: tuple | None = None
    f1: np.ndarray | None = None
    f2: np.ndarray | None = None
    rayleigh1: float | None = None
    rayleigh2: float | None = None
    gap_verified: bool = False
    center_mass: int | None = None
    complement_mass: int | None = None
    search_size: int = 0
    fallback_reason: str | None = None
    sigma1: float | None = None

    @property
    def sound(self) -> bool | None:
        if self.sigma1 is None:
            return None
        return self.certified_bound >= self.sigma1 - 1e-9

    def to_dict(self) -> dict:
        return {
            "branch": self.branch,
            "alpha": [self.alpha.numerator, self.alpha.denominator],
            "c1": self.c1,
            "R": self.R,
            "x0": None if self.x0 is None else list(self.x0),
            "rayleigh1": self.rayleigh1,
            "rayleigh2": self.rayleigh2,
            "certified_bound": self.certified_bound,
            "gap_verified": self.gap_verified,
            "center_mass": self.center_mass,
            "complement_mass": self.complement_mass,
            "fallback_reason": self.fallback_reason,
            "sigma1": self.sigma1,
            "sound": self.sound,
        }


def _radius_for_mass(desc, x, bset, alpha: Fraction, limit: int, step) -> int | None:
    """Smallest r <= limit with |B(x, r) & bset| >= alpha, else None."""
    count = 1 if x in bset else 0
    if count >= alpha:
        return 0
    seen = {x}
    frontier = [x]
    for r in range(1, limit + 1):
        nxt = []
        for g in frontier:
            for h in step(g):
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if h in bset:
                        count += 1
        if count >= alpha:
            return r
        frontier = nxt
    return None


def _search_center(desc, labels, bset, alpha: Fraction, b: int):
    """Minimal radius R over all host vertices and the lexicographically least center.

    First pass over the graph's own vertices gives R'. A host vertex with
    r_x < R' is within R' - 1 of the boundary, so the second pass only needs
    the union of the balls of radius R' - 1 about boundary vertices.
    """
    step = lambda g: neighbors(g, desc)  # noqa: E731
    best = None
    minimizers: list = []
    searched = set()

    def visit(x):
        nonlocal best, minimizers
        searched.add(x)
        limit = b if best is None else best  # ties need the full radius
        r = _radius_for_mass(desc, x, bset, alpha, limit, step)
        if r is None:
            return
        if best is None or r < best:
            best, minimizers = r, [x]
        elif r == best:
            minimizers.append(x)

    for x in sorted(labels):
        visit(x)
    if best is None:
        raise RuntimeError("no radius reaches the boundary share; boundary labels are inconsistent")
    if best >= 1:
        extra = set()
        for beta in bset:
            extra.update(ball_distances(desc, beta, best - 1))
        for x in sorted(extra - searched):
            visit(x)
    return best, min(minimizers), searched


def _distance_to_outside(desc, dist0: dict, outer: int, depth: int) -> dict:
    """Host distance from points of B(x0, outer - 1) to the complement of that ball.

    Any path leaving the ball passes through the sphere of radius ``outer``,
    so a breadth-first search inward from that sphere, restricted to the
    ball, gives the exact distance. Only values up to ``depth`` are kept.
    """
    k = {y: 0 for y, r in dist0.items() if r == outer}
    frontier = list(k)
    for level in range(1, depth + 1):
        nxt = []
        for y in frontier:
            for h in neighbors(y, desc):
                if h not in k and dist0.get(h, outer + 1) < outer:
                    k[h] = level
                    nxt.append(h)
        frontier = nxt
    return k


def certify_sigma1(
    g: GraphWithBoundary,
    desc: GroupDescriptor | None = None,
    chain: ConstantChain | None = None,
    c1: int | None = None,
    compute_sigma1: bool = True,
    cap: int = DEFAULT_BALL_CAP,
) -> BoundCertificate:
    """Certified upper bound on sigma_1 by replaying the two-test-function argument.

    Parameters
    ----------
    g : GraphWithBoundary
        Graph with host labels on every vertex.
    desc : GroupDescriptor, optional
        Host group; defaults to ``g.host``.
    chain : ConstantChain, optional
        Supplies the covering count c1; defaults to :func:`default_chain`.
    c1 : int, optional
        Override of the covering count. The certificate stays rigorous for
        any value; a value below the true covering count may only force the
        small-boundary fallback.
    compute_sigma1 : bool
        Also solve for sigma_1 so the certificate carries a soundness flag.
    """
    if g.labels is None:
        raise MissingHostLabels("certification needs host labels on every vertex")
    desc = desc or g.host
    if desc is None:
        raise MissingHostLabels("no host group given and the graph declares none")
    b = g.b
    if b <= 1:
        raise SigmaOneUndefined("sigma_1 undefined: need |B| > 1")
    if c1 is None:
        chain = chain or default_chain(desc)
        c1 = chain.c1
    if c1 < 1:
        raise ValueError("c1 must be positive")
    d = desc.degree
    alpha = Fraction(b, c1 + 1)
    sigma1 = spectrum(g).sigma1 if compute_sigma1 else None

    if b <= c1 + 1:
        return BoundCertificate(SMALL_BOUNDARY, c1, alpha, d, float(d), sigma1=sigma1)

    labels = g.labels
    bidx = g.boundary_indices
    bset = {labels[i] for i in bidx}
    # alpha > 1 here, so no single vertex carries the share and R >= 1
    R, x0, searched = _search_center(desc, labels, bset, alpha, b)

    dist0 = ball_distances(desc, x0, 3 * R + 1, cap)
    k_out = _distance_to_outside(desc, dist0, 3 * R + 1, R)
    f1 = np.zeros(g.n)
    f2 = np.zeros(g.n)
    for i, y in enumerate(labels):
        r = dist0.get(y)
        if r is not None and r <= R:
            f1[i] = 1.0
        elif r is not None and r <= 2 * R:
            f1[i] = 1.0 - (r - R) / R
        if r is None or r > 3 * R:
            f2[i] = 1.0
        elif y in k_out and k_out[y] <= R:
            f2[i] = 1.0 - k_out[y] / R

    s1, s2 = f1 != 0, f2 != 0
    if np.any(s1 & s2):
        raise GapViolation(f"test functions overlap at {np.flatnonzero(s1 & s2).tolist()}")
    for i, j in g.edges:
        if (s1[i] and s2[j]) or (s2[i] and s1[j]):
            raise GapViolation(f"edge ({i}, {j}) joins the two supports")

    center_mass = sum(1 for y in bset if dist0.get(y, 3 * R + 2) <= R)
    complement_mass = sum(1 for y in bset if dist0.get(y, 3 * R + 2) > 3 * R)
    cert = BoundCertificate(
        TEST_FUNCTIONS, c1, alpha, d, float(d),
        R=R, x0=x0, f1=f1, f2=f2, gap_verified=True,
        center_mass=center_mass, complement_mass=complement_mass,
        search_size=len(searched), sigma1=sigma1,
    )
    if not complement_mass > alpha:
        cert.branch = SMALL_BOUNDARY
        cert.fallback_reason = "boundary mass outside B(x0, 3R) does not exceed alpha; c1 too small at this scale"
        return cert
    m1 = float(np.sum(f1[bidx] ** 2))
    m2 = float(np.sum(f2[bidx] ** 2))
    if m1 == 0.0 or m2 == 0.0:
        cert.branch = SMALL_BOUNDARY
        cert.fallback_reason = "a test function vanishes on the boundary"
        return cert
    cert.rayleigh1 = rayleigh(g, f1)
    cert.rayleigh2 = rayleigh(g, f2)
    cert.certified_bound = max(cert.rayleigh1, cert.rayleigh2)
    return cert
