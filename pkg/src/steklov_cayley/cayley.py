"""Cayley graphs of polynomial-growth groups.

Two families are built in: free abelian groups Z^D and the discrete
Heisenberg group. Elements are plain integer tuples; for the Heisenberg
group ``(x, y, z)`` stands for the upper unitriangular matrix with entries
x, z in the first row and y in the second.

The host graph is infinite, so it is only ever queried locally: balls,
spheres and distance fields are built by breadth-first search from a
center, multiplying on the right by generators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "DEFAULT_BALL_CAP",
    "FREE_ABELIAN",
    "HEISENBERG",
    "GroupDescriptor",
    "GrowthEstimate",
    "ResourceLimitError",
    "free_abelian",
    "heisenberg",
    "descriptor_from_dict",
    "identity",
    "multiply",
    "inverse",
    "ball",
    "ball_distances",
    "sphere_sizes",
    "growth_function",
    "covering_count",
    "word_distance",
    "separated_net",
    "covers",
    "neighbors",
]

Element = tuple[int, ...]

FREE_ABELIAN = "free_abelian"
HEISENBERG = "heisenberg"
DEFAULT_BALL_CAP = 10**6


class ResourceLimitError(RuntimeError):
    """A ball enumeration grew past the configured element cap."""


@dataclass(frozen=True)
class GroupDescriptor:
    """A finitely generated group together with a symmetric generating set.

    Parameters
    ----------
    kind : str
        ``"free_abelian"`` or ``"heisenberg"``.
    rank : int
        Number of coordinates of an element (D for Z^D, 3 for Heisenberg).
    generators : tuple of tuples
        The symmetric generating set S. Must not contain the identity.
    """

    kind: str
    rank: int
    generators: tuple[Element, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.kind not in (FREE_ABELIAN, HEISENBERG):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if self.kind == HEISENBERG and self.rank != 3:
            raise ValueError("Heisenberg elements have exactly 3 coordinates")
        gens = tuple(tuple(int(c) for c in s) for s in self.generators)
        if not gens:
            gens = _default_generators(self.kind, self.rank)
        object.__setattr__(self, "generators", gens)
        ident = (0,) * self.rank
        for s in gens:
            if len(s) != self.rank:
                raise ValueError(f"generator {s} has wrong length for rank {self.rank}")
        if ident in gens:
            raise ValueError("the identity may not be a generator")
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generators")
        gset = set(gens)
        for s in gens:
            if inverse(s, self) not in gset:
                raise ValueError(f"generating set is not symmetric: {s} has no inverse in S")

    @property
    def growth_order(self) -> int:
        return 4 if self.kind == HEISENBERG else self.rank

    @property
    def degree(self) -> int:
        """Vertex degree of the Cayley graph, |S|."""
        return len(self.generators)

    def identity(self) -> Element:
        return (0,) * self.rank

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.kind == FREE_ABELIAN:
            d["rank"] = self.rank
        if self.generators != _default_generators(self.kind, self.rank):
            d["generators"] = [list(s) for s in self.generators]
        return d


def _default_generators(kind: str, rank: int) -> tuple[Element, ...]:
    if kind == HEISENBERG:
        return ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0))
    gens = []
    for i in range(rank):
        for sign in (1, -1):
            e = [0] * rank
            e[i] = sign
            gens.append(tuple(e))
    return tuple(gens)


def free_abelian(rank: int, generators: Sequence[Sequence[int]] = ()) -> GroupDescriptor:
    return GroupDescriptor(FREE_ABELIAN, rank, tuple(tuple(s) for s in generators))


def heisenberg(generators: Sequence[Sequence[int]] = ()) -> GroupDescriptor:
    return GroupDescriptor(HEISENBERG, 3, tuple(tuple(s) for s in generators))


def descriptor_from_dict(d: dict) -> GroupDescriptor:
    """Build a descriptor from its JSON config form.

    ``{"kind": "free_abelian"|"heisenberg", "rank": int, "generators": [...]}``;
    ``rank`` is only read for free abelian groups.
    """
    if not isinstance(d, dict) or "kind" not in d:
        raise ValueError("group descriptor must be an object with a 'kind' key")
    kind = d["kind"]
    gens = d.get("generators") or ()
    if kind == HEISENBERG:
        return heisenberg(gens)
    if kind == FREE_ABELIAN:
        rank = d.get("rank")
        if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
            raise ValueError("free_abelian descriptor needs a positive integer 'rank'")
        return free_abelian(rank, gens)
    raise ValueError(f"unknown group kind {kind!r}")


def identity(desc: GroupDescriptor) -> Element:
    return desc.identity()


def _check(g: Sequence[int], desc: GroupDescriptor) -> None:
    if len(g) != desc.rank:
        raise ValueError(f"element {tuple(g)} does not belong to a {desc.kind} group of rank {desc.rank}")


def multiply(g: Sequence[int], h: Sequence[int], desc: GroupDescriptor) -> Element:
    """Group product g*h.

    >>> multiply((1, 0, 0), (0, 1, 0), heisenberg())
    (1, 1, 1)
    >>> multiply((0, 1, 0), (1, 0, 0), heisenberg())
    (1, 1, 0)
    """
    _check(g, desc)
    _check(h, desc)
    if desc.kind == HEISENBERG:
        return (g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1])
    return tuple(a + b for a, b in zip(g, h))


def inverse(g: Sequence[int], desc: GroupDescriptor) -> Element:
    _check(g, desc)
    if desc.kind == HEISENBERG:
        x, y, z = g
        return (-x, -y, x * y - z)
    return tuple(-a for a in g)


def _right_mul_fn(desc: GroupDescriptor):
    # unchecked fast path for BFS inner loops
    gens = desc.generators
    if desc.kind == HEISENBERG:
        def step(g):
            x, y, z = g
            return [(x + a, y + b, z + c + x * b) for a, b, c in gens]
    elif desc.rank == 1:
        def step(g):
            return [(g[0] + s[0],) for s in gens]
    elif desc.rank == 2:
        def step(g):
            x, y = g
            return [(x + a, y + b) for a, b in gens]
    else:
        def step(g):
            return [tuple(u + v for u, v in zip(g, s)) for s in gens]
    return step


def neighbors(g: Sequence[int], desc: GroupDescriptor) -> list[Element]:
    """The |S| neighbours g*s of g in the Cayley graph."""
    _check(g, desc)
    return _right_mul_fn(desc)(tuple(g))


def ball_distances(
    desc: GroupDescriptor,
    center: Sequence[int],
    radius: int,
    cap: int = DEFAULT_BALL_CAP,
) -> dict[Element, int]:
    """Word-metric distance from ``center`` for every element of the ball."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    _check(center, desc)
    step = _right_mul_fn(desc)
    c = tuple(center)
    dist = {c: 0}
    frontier = [c]
    for r in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for h in step(g):
                if h not in dist:
                    dist[h] = r
                    nxt.append(h)
        if len(dist) > cap:
            raise ResourceLimitError(
                f"ball of radius {r} has more than {cap} elements; lower the radius or raise the cap"
            )
        frontier = nxt
        if not frontier:
            break
    return dist


def ball(
    desc: GroupDescriptor,
    center: Sequence[int],
    radius: int,
    cap: int = DEFAULT_BALL_CAP,
) -> set[Element]:
    """All elements at word distance at most ``radius`` from ``center``."""
    return set(ball_distances(desc, center, radius, cap))


def sphere_sizes(desc: GroupDescriptor, radius: int, cap: int = DEFAULT_BALL_CAP) -> list[int]:
    """Sizes of the spheres of radius 0..radius about the identity."""
    counts = [0] * (radius + 1)
    for r in ball_distances(desc, desc.identity(), radius, cap).values():
        counts[r] += 1
    return counts


@dataclass(frozen=True)
class GrowthEstimate:
    """Sampled growth function V(n) = |B(n)| with an empirical two-sided constant.

    ``growth_constant`` is an exact rational: the largest of V(n)/n^D and
    n^D/V(n) over the samples. It is only valid at the sampled scales.
    """

    order: int
    samples: tuple[tuple[int, int], ...]
    growth_constant: Fraction

    @property
    def n_max(self) -> int:
        return self.samples[-1][0]

    @property
    def upper_constant(self) -> Fraction:
        """max V(n)/n^D, the volume constant in |B(x, n)| <= c n^D."""
        return max(Fraction(v, n**self.order) for n, v in self.samples)

    def ratios(self) -> list[tuple[int, int, Fraction, Fraction]]:
        D = self.order
        return [(n, v, Fraction(v, n**D), Fraction(n**D, v)) for n, v in self.samples]


def growth_function(desc: GroupDescriptor, n_max: int, cap: int = DEFAULT_BALL_CAP) -> GrowthEstimate:
    """Sample V(n) for n = 1..n_max with one breadth-first sweep."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    spheres = sphere_sizes(desc, n_max, cap)
    samples = []
    total = spheres[0]
    for n in range(1, n_max + 1):
        total += spheres[n]
        samples.append((n, total))
    D = desc.growth_order
    C = max(max(Fraction(v, n**D), Fraction(n**D, v)) for n, v in samples)
    return GrowthEstimate(D, tuple(samples), C)


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def covering_count(C, a, b, D: int) -> int:
    """Number of radius-bR balls that cover a radius-aR ball: ceil(C^2 ((2a+b)/b)^D).

    Arithmetic is exact (floats are converted to their exact binary value).

    >>> covering_count(1, 3, Fraction(1, 2), 1)
    13
    """
    C, a, b = _as_fraction(C), _as_fraction(a), _as_fraction(b)
    if C < 1 or a <= 0 or b <= 0 or D < 1:
        raise ValueError("need C >= 1, a > 0, b > 0, D >= 1")
    return math.ceil(C * C * ((2 * a + b) / b) ** D)


def word_distance(
    desc: GroupDescriptor,
    g: Sequence[int],
    h: Sequence[int],
    cap: int,
) -> int | None:
    """Cayley-graph distance from g to h, or None if it exceeds ``cap``.

    Computed as the length of g^-1 h by a breadth-first search from the
    identity that stops as soon as the target is reached.
    """
    if cap < 0:
        raise ValueError("cap must be non-negative")
    target = multiply(inverse(g, desc), h, desc)
    start = desc.identity()
    if target == start:
        return 0
    step = _right_mul_fn(desc)
    seen = {start}
    frontier = [start]
    for r in range(1, cap + 1):
        nxt = []
        for x in frontier:
            for y in step(x):
                if y == target:
                    return r
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return None


def separated_net(
    desc: GroupDescriptor,
    center: Sequence[int],
    radius: int,
    separation: int,
    cap: int = DEFAULT_BALL_CAP,
) -> list[Element]:
    """Greedy maximal subset of B(center, radius) with pairwise distance >= separation.

    Elements are scanned in (distance, coordinates) order. By maximality the
    balls of radius ``separation`` (indeed ``separation - 1``) about the
    returned points cover B(center, radius).
    """
    if separation < 1:
        raise ValueError("separation must be at least 1")
    dist = ball_distances(desc, center, radius, cap)
    order = sorted(dist, key=lambda g: (dist[g], g))
    blocked: set[Element] = set()
    net = []
    for y in order:
        if y in blocked:
            continue
        net.append(y)
        blocked.update(ball_distances(desc, y, separation - 1, cap))
    return net


def covers(
    desc: GroupDescriptor,
    centers: Iterable[Sequence[int]],
    radius: int,
    target: set[Element],
    cap: int = DEFAULT_BALL_CAP,
) -> bool:
    """True when the balls B(c, radius) over ``centers`` contain ``target``."""
    covered: set[Element] = set()
    for c in centers:
        covered.update(ball_distances(desc, c, radius, cap))
    return target <= covered
