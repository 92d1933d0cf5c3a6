"""Exact and Monte Carlo densities: coprime tuples, m-free integers, and the
finite-n laws of ``gcd`` of uniforms and of the m-th power radical.

Counts are exact integers; floating point only enters at the final division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import PrimeTable
from .convergence import SparsePmf, tv_distance

__all__ = [
    "Estimate",
    "coprime_tuple_count",
    "coprime_pair_count",
    "coprime_density_exact",
    "mfree_count",
    "mfree_density_exact",
    "gcd_counts",
    "gcd_law_exact",
    "radical_values",
    "radical_law_exact",
    "cesaro_gap",
    "mc_coprime_density",
]


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo frequency with its binomial standard error."""

    value: float
    stderr: float
    samples: int

    @classmethod
    def from_counts(cls, hits: int, samples: int) -> "Estimate":
        if samples < 1:
            raise ValueError("need at least one sample")
        p = hits / samples
        return cls(p, math.sqrt(p * (1.0 - p) / samples), samples)

    def z_score(self, target: float) -> float:
        se = self.stderr if self.stderr > 0 else math.sqrt(target * (1 - target) / self.samples)
        return (self.value - target) / se if se > 0 else 0.0


def _check(n: int, m: int, table: PrimeTable):
    if m < 2:
        raise ValueError("m must be at least 2")
    if n < 1:
        raise ValueError("n must be positive")
    if n > table.limit:
        raise ValueError(f"n={n} beyond sieve limit {table.limit}")


def coprime_tuple_count(n: int, m: int, table: PrimeTable) -> int:
    """Number of ``m``-tuples in ``{1..n}**m`` with gcd 1.

    Evaluates ``sum_k mu(k) floor(n/k)**m`` over the ``O(sqrt n)`` blocks
    on which ``floor(n/k)`` is constant, using Mertens prefix sums.
    """
    _check(n, m, table)
    M = table.mertens
    total = 0
    k = 1
    while k <= n:
        q = n // k
        hi = n // q
        total += q**m * (int(M[hi]) - int(M[k - 1]))
        k = hi + 1
    return total


def coprime_pair_count(n: int, table: PrimeTable) -> int:
    return coprime_tuple_count(n, 2, table)


def coprime_density_exact(n: int, m: int, table: PrimeTable) -> float:
    """Probability that ``m`` independent uniforms on ``1..n`` are coprime."""
    return coprime_tuple_count(n, m, table) / n**m


def mfree_count(n: int, m: int, table: PrimeTable) -> int:
    """How many ``k <= n`` have no prime power ``p**m`` dividing them."""
    _check(n, m, table)
    kmax = math.isqrt(n) if m == 2 else int(round(n ** (1.0 / m)))
    while kmax**m > n:
        kmax -= 1
    while (kmax + 1) ** m <= n:
        kmax += 1
    k = np.arange(1, kmax + 1, dtype=np.int64)
    mu = table.mobius[1:kmax + 1].astype(np.int64)
    return int(np.sum(mu * (n // k**m)))


def mfree_density_exact(n: int, m: int, table: PrimeTable) -> float:
    return mfree_count(n, m, table) / n


def gcd_counts(n: int, m: int) -> list[int]:
    """``counts[d]`` = number of tuples in ``{1..n}**m`` whose gcd is ``d``.

    Starts from ``floor(n/d)**m`` tuples divisible by ``d`` and removes, from
    the top down, those whose gcd is a proper multiple of ``d``.
    """
    if n ** m < 2**62:
        c = (n // np.arange(1, n + 1, dtype=np.int64)) ** m
        c = np.concatenate([[0], c])
        for d in range(n // 2, 0, -1):
            c[d] -= c[2 * d::d].sum()
        return c.tolist()
    c = [0] + [(n // d) ** m for d in range(1, n + 1)]
    for d in range(n // 2, 0, -1):
        c[d] -= sum(c[2 * d::d])
    return c


def gcd_law_exact(n: int, m: int, table: PrimeTable) -> SparsePmf:
    """Exact law of ``gcd(X_1, ..., X_m)`` for independent uniforms on ``1..n``."""
    _check(n, m, table)
    total = n**m
    counts = gcd_counts(n, m)
    return SparsePmf({d: counts[d] / total for d in range(1, n + 1) if counts[d]})


def radical_values(n: int, m: int) -> np.ndarray:
    """``r[k]`` = largest ``a`` with ``a**m | k``, for ``0 <= k <= n``.

    Every multiple of ``p**(j m)`` picks up one more factor ``p``.
    """
    r = np.ones(n + 1, dtype=np.int64)
    r[0] = 0
    a = 2
    while a**m <= n:
        if all(a % d for d in range(2, math.isqrt(a) + 1)):
            q = a**m
            while q <= n:
                r[q::q] *= a
                q *= a**m
        a += 1
    return r


def radical_law_exact(n: int, m: int, table: PrimeTable) -> SparsePmf:
    """Exact law of the m-th power radical of a uniform on ``1..n``."""
    _check(n, m, table)
    vals, counts = np.unique(radical_values(n, m)[1:], return_counts=True)
    return SparsePmf({a: c / n for a, c in zip(vals.tolist(), counts.tolist())})


def cesaro_gap(n: int, m: int, table: PrimeTable) -> float:
    """Total variation between the gcd law and the radical law at ``n``."""
    return tv_distance(gcd_law_exact(n, m, table), radical_law_exact(n, m, table))


def mc_coprime_density(n: int, m: int, samples: int, rng: np.random.Generator,
                       chunk: int = 1 << 20) -> Estimate:
    """Fraction of uniform ``m``-tuples on ``1..n`` with gcd 1."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if m < 2 or n < 1:
        raise ValueError("need n >= 1 and m >= 2")
    hits = 0
    left = samples
    while left:
        k = min(chunk, left)
        draws = rng.integers(1, n + 1, size=(k, m))
        hits += int(np.count_nonzero(np.gcd.reduce(draws, axis=1) == 1))
        left -= k
    return Estimate.from_counts(hits, samples)
