"""Randomised approximation of IS_k(G) by uniform k-subset sampling.

Sample ``i`` of a run is drawn from its own Philox stream keyed by the run
seed with ``i`` in the counter's high word, so any subset of the samples can
be regenerated (or evaluated out of order) without replaying the others.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import BudgetExceeded
from .graphs import BipartiteGraph

RNG_NAME = "numpy.random.Philox(key=seed, counter=[0, index, 0, 0])"
DEFAULT_SAMPLE_BUDGET = 2 ** 32


@dataclass(frozen=True)
class FptrasResult:
    estimate: Fraction
    samples_taken: int
    hits: int
    epsilon: Fraction
    seed: int
    rng: str = RNG_NAME

    def __post_init__(self):
        assert 0 <= self.hits <= self.samples_taken


def as_fraction(eps) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float (via its repr)."""
    if isinstance(eps, float):
        return Fraction(repr(eps))
    return Fraction(eps)


def sample_count(k: int, eps) -> int:
    """t = 10 * ceil(2^k / eps^2), computed without floating point."""
    eps = as_fraction(eps)
    num = (2 ** k) * eps.denominator ** 2
    den = eps.numerator ** 2
    return 10 * (-(-num // den))


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, index, 0, 0]))


def sample_k_subset(n: int, k: int, rng: np.random.Generator) -> list[int]:
    """Uniform size-k subset of range(n) by a partial Fisher-Yates shuffle."""
    if not 0 <= k <= n:
        raise ValueError(f"cannot draw {k} of {n}")
    if k == 0:
        return []
    idx = list(range(n))
    # offsets[i] is uniform on [0, n - i)
    offsets = rng.integers(0, np.arange(n, n - k, -1))
    for i, off in enumerate(offsets.tolist()):
        j = i + off
        idx[i], idx[j] = idx[j], idx[i]
    return idx[:k]


def _joint_adjacency(g: BipartiteGraph):
    nu = g.n_left
    adj = [set() for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].add(nu + v)
        adj[nu + v].add(u)
    return adj


def is_independent(adj, subset) -> bool:
    """At most C(k, 2) adjacency queries."""
    return not any(b in adj[a] for a, b in combinations(subset, 2))


def fptras_is_k(g: BipartiteGraph, k: int, eps, seed: int,
                budget: int = DEFAULT_SAMPLE_BUDGET) -> FptrasResult:
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {eps}")
    if k < 0:
        raise ValueError("k must be non-negative")
    n = g.n
    t = sample_count(k, eps)
    if t > budget:
        raise BudgetExceeded(f"{t} samples exceed the budget of {budget}")
    if k == 0:
        return FptrasResult(Fraction(1), t, t, eps, seed)  # the empty set always hits
    if k > n:
        return FptrasResult(Fraction(0), t, 0, eps, seed)  # C(n, k) = 0
    adj = _joint_adjacency(g)
    hits = 0
    for i in range(t):
        hits += is_independent(adj, sample_k_subset(n, k, sample_rng(seed, i)))
    return FptrasResult(Fraction(hits * math.comb(n, k), t), t, hits, eps, seed)
