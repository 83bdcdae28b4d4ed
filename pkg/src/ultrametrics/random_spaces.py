"""Seeded generators of random dendrograms and ultrametric spaces."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .balls import Dendrogram, Leaf, Node, dendrogram_to_space
from .rational import as_rat
from .spaces import FiniteSpace

DEFAULT_POOL = tuple(Fraction(p, q) for p, q in [
    (1, 8), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1), (5, 4), (3, 2), (2, 1), (3, 1), (5, 1),
])


def random_dendrogram(rng: random.Random, labels: Sequence[str], levels: Sequence) -> Dendrogram:
    """A tree over ``labels`` whose node levels are drawn from ``levels``.

    Nodes at the lowest available level only get leaves as children, so a
    tree can always be completed no matter how the levels fall.
    """
    levels = sorted(set(as_rat(v) for v in levels))
    if not levels:
        raise ValueError("need at least one positive level")
    if levels[0] <= 0:
        raise ValueError("levels must be positive")

    def grow(block: list[str], cur: int) -> Dendrogram:
        if len(block) == 1:
            return Leaf(block[0])
        k = rng.randrange(cur)
        if k == 0:
            return Node(levels[0], tuple(Leaf(x) for x in block))
        m = rng.randint(2, min(len(block), 4))
        block = block[:]
        rng.shuffle(block)
        cuts = sorted(rng.sample(range(1, len(block)), m - 1))
        parts = [block[a:b] for a, b in zip([0] + cuts, cuts + [len(block)])]
        return Node(levels[k], tuple(grow(p, k) for p in parts))

    return grow(list(labels), len(levels))


def random_ultrametric(rng: random.Random, n: int, pool: Sequence = DEFAULT_POOL,
                       shuffle: bool = True) -> FiniteSpace:
    """Random ultrametric space on ``n`` points labeled ``p0..p{n-1}``.

    Levels are a random nonempty subset of ``pool``. With ``shuffle`` the
    label order is permuted, so it is not the tree's leaf order.
    """
    labels = [f"p{i}" for i in range(n)]
    k = rng.randint(1, len(pool))
    levels = rng.sample(list(pool), k)
    space = dendrogram_to_space(random_dendrogram(rng, labels, levels))
    order = list(space.labels)
    if shuffle:
        rng.shuffle(order)
    else:
        order = labels
    return space.restrict(order)
