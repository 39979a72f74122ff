"""Seeded random instance generators for oracle sweeps."""
from __future__ import annotations

import random
import string

from .ballots import Ballot, Election


def names(m: int) -> tuple[str, ...]:
    if m <= 26:
        return tuple(string.ascii_lowercase[:m])
    return tuple(f"c{i}" for i in range(m))


def random_total(rng: random.Random, m: int, n: int) -> Election:
    ballots = []
    for _ in range(n):
        order = list(range(m))
        rng.shuffle(order)
        ballots.append(Ballot.from_order(order))
    return Election(names(m), tuple(ballots))


def random_dichotomous(rng: random.Random, m: int, n: int) -> Election:
    ballots = tuple(
        Ballot.dichotomous([c for c in range(m) if rng.random() < 0.5], m) for _ in range(n)
    )
    return Election(names(m), ballots)


def random_single_peaked(rng: random.Random, m: int, n: int) -> Election:
    """Each voter picks a peak on a random axis and grows outwards at random."""
    axis = list(range(m))
    rng.shuffle(axis)
    ballots = []
    for _ in range(n):
        lo = hi = rng.randrange(m)
        order = [axis[lo]]
        while len(order) < m:
            go_left = hi == m - 1 or (lo > 0 and rng.random() < 0.5)
            if go_left:
                lo -= 1
                order.append(axis[lo])
            else:
                hi += 1
                order.append(axis[hi])
        ballots.append(Ballot.from_order(order))
    return Election(names(m), tuple(ballots), tuple(axis))


def random_single_crossing(rng: random.Random, m: int, n: int) -> Election:
    """Sample voters, in order, along a random maximal chain of adjacent swaps."""
    order = list(range(m))
    rng.shuffle(order)
    start_pos = {c: i for i, c in enumerate(order)}
    chain = [tuple(order)]
    while True:
        # adjacent pairs still in their starting relative order
        open_pairs = [i for i in range(m - 1) if start_pos[order[i]] < start_pos[order[i + 1]]]
        if not open_pairs:
            break
        i = rng.choice(open_pairs)
        order[i], order[i + 1] = order[i + 1], order[i]
        chain.append(tuple(order))
    picks = sorted(rng.randrange(len(chain)) for _ in range(n))
    return Election(names(m), tuple(Ballot.from_order(chain[i]) for i in picks))


def random_graph(rng: random.Random, n_vertices: int, p_edge: float = 0.5):
    from .forge import Graph

    edges = [(u, v) for u in range(n_vertices) for v in range(u + 1, n_vertices)
             if rng.random() < p_edge]
    return Graph(n_vertices, frozenset(edges))
