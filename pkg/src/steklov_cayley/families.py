"""Standard subsets of Cayley graphs and the graphs they induce."""
from __future__ import annotations

import itertools

import numpy as np

from .cayley import DEFAULT_BALL_CAP, GroupDescriptor, ball, free_abelian, heisenberg, neighbors
from .graph_boundary import GraphWithBoundary, InducedSubsetSpec, induce

__all__ = [
    "zd_ball",
    "zd_box",
    "heis_ball",
    "interval",
    "random_connected_subset",
    "induced",
]


def induced(host: GroupDescriptor, omega) -> GraphWithBoundary:
    return induce(InducedSubsetSpec(host, frozenset(omega)))


def zd_ball(D: int, r: int, host: GroupDescriptor | None = None, cap: int = DEFAULT_BALL_CAP) -> GraphWithBoundary:
    """Graph induced by the word-metric ball of radius r about the origin of Z^D."""
    host = host or free_abelian(D)
    return induced(host, ball(host, host.identity(), r, cap))


def zd_box(sides, host: GroupDescriptor | None = None) -> GraphWithBoundary:
    """Graph induced by the box {0..s_1-1} x ... x {0..s_D-1}."""
    sides = tuple(int(s) for s in sides)
    if any(s < 1 for s in sides):
        raise ValueError("box sides must be positive")
    host = host or free_abelian(len(sides))
    return induced(host, itertools.product(*(range(s) for s in sides)))


def heis_ball(r: int, host: GroupDescriptor | None = None, cap: int = DEFAULT_BALL_CAP) -> GraphWithBoundary:
    host = host or heisenberg()
    return induced(host, ball(host, host.identity(), r, cap))


def interval(length: int) -> GraphWithBoundary:
    """Graph induced by {0, ..., length-1} in Z."""
    return zd_box((length,))


def random_connected_subset(host: GroupDescriptor, size: int, rng: np.random.Generator) -> frozenset:
    """A random connected subset of ``size`` elements containing the identity.

    Grown one element at a time by picking uniformly among the current
    outer neighbours, iterated in sorted order so a seeded generator gives a
    reproducible result.
    """
    if size < 1:
        raise ValueError("size must be positive")
    omega = {host.identity()}
    frontier = set(neighbors(host.identity(), host))
    while len(omega) < size:
        choices = sorted(frontier)
        pick = choices[int(rng.integers(len(choices)))]
        omega.add(pick)
        frontier.discard(pick)
        for h in neighbors(pick, host):
            if h not in omega:
                frontier.add(h)
    return frozenset(omega)
