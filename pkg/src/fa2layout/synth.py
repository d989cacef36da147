"""Seeded random graph generators used by the benchmark and the experiments."""

from __future__ import annotations

import numpy as np

from .graph import Graph, from_edges


def erdos_renyi(n: int, mean_degree: float = 10.0, seed: int = 0) -> Graph:
    """G(n, p) with ``p = mean_degree / (n - 1)``; each pair stored once as i -> j (i < j)."""
    rng = np.random.default_rng(seed)
    p = min(1.0, mean_degree / max(n - 1, 1))
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    edges = [(int(i), int(j), 1.0) for i, j in zip(iu[keep], ju[keep])]
    return from_edges(edges, nodes=[str(i) for i in range(n)], directed=False)


def block_labels(n: int, blocks: int) -> np.ndarray:
    return np.arange(n) * blocks // n


def planted_partition(n: int, blocks: int = 2, p_in: float = 0.5, p_out: float = 0.02,
                      seed: int = 0) -> Graph:
    rng = np.random.default_rng(seed)
    lab = block_labels(n, blocks)
    iu, ju = np.triu_indices(n, k=1)
    prob = np.where(lab[iu] == lab[ju], p_in, p_out)
    keep = rng.random(len(iu)) < prob
    edges = [(int(i), int(j), 1.0) for i, j in zip(iu[keep], ju[keep])]
    return from_edges(edges, nodes=[str(i) for i in range(n)], directed=False)


class WeightedBlockSeries:
    """Dense directed weighted networks with block structure, evolving by partial re-draws.

    Every ordered pair carries weight ``base * lognormal(0, sigma)`` where
    ``base`` is 1 within a block and ``inter`` across blocks, mimicking a
    variance-decomposition connectedness table. Each call to :meth:`step`
    re-draws the weights of a fraction of the pairs.
    """

    def __init__(self, n: int = 96, blocks: int = 6, inter: float = 0.05, sigma: float = 0.5,
                 seed: int = 0):
        self.n = n
        self.rng = np.random.default_rng(seed)
        lab = block_labels(n, blocks)
        src, tgt = np.nonzero(~np.eye(n, dtype=bool))
        self.src, self.tgt = src, tgt
        self.base = np.where(lab[src] == lab[tgt], 1.0, inter)
        self.sigma = sigma
        self.weights = self._draw(np.arange(len(src)))

    def _draw(self, idx):
        return self.base[idx] * self.rng.lognormal(0.0, self.sigma, size=len(idx))

    def graph(self) -> Graph:
        edges = [(int(s), int(t), float(w)) for s, t, w in zip(self.src, self.tgt, self.weights)]
        return from_edges(edges, nodes=[str(i) for i in range(self.n)], directed=True)

    def step(self, fraction: float = 0.02) -> Graph:
        k = max(1, round(fraction * len(self.weights)))
        idx = self.rng.choice(len(self.weights), size=k, replace=False)
        self.weights = self.weights.copy()
        self.weights[idx] = self._draw(idx)
        return self.graph()
