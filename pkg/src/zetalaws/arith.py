"""Exact integer arithmetic kernels.

Smallest-prime-factor sieve, factorization, Moebius function, p-adic
valuations, m-th power radicals, Dirichlet convolution and evaluation of
multiplicative functions given by their values on prime powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "PrimeTable",
    "Factorization",
    "MultiplicativeSpec",
    "sieve",
    "factorize",
    "moebius",
    "valuation",
    "power_radical",
    "dirichlet_convolve",
    "eval_multiplicative",
    "multiplicative_values",
    "is_prime",
    "ONE",
    "MOBIUS",
    "MOBIUS_SQUARED",
    "IDENTITY",
    "CHI4",
]

# Index arrays are int64; keep the table well inside that and inside memory.
MAX_SIEVE_LIMIT = 2**31 - 1


class PrimeTable:
    """Primes and least prime factors of every integer up to ``limit``.

    Instances are read-only once built and can be shared between workers.
    The Moebius array is derived lazily on first use.
    """

    def __init__(self, limit: int, smallest_factor: np.ndarray):
        self.limit = int(limit)
        smallest_factor.setflags(write=False)
        self.smallest_factor = smallest_factor
        primes = np.flatnonzero(smallest_factor == np.arange(limit + 1))
        primes = primes[primes >= 2].astype(np.int64)
        primes.setflags(write=False)
        self.primes = primes

    def __repr__(self):
        return f"PrimeTable(limit={self.limit}, primes={len(self.primes)})"

    def check_range(self, n: int):
        if n < 1 or n > self.limit:
            raise ValueError(f"{n} outside the sieve range 1..{self.limit}")

    @cached_property
    def mobius(self) -> np.ndarray:
        """``mobius[n] = mu(n)`` for ``0 <= n <= limit`` (entry 0 unused)."""
        mu = np.ones(self.limit + 1, dtype=np.int8)
        mu[0] = 0
        for p in self.primes.tolist():
            mu[p::p] *= -1
            if p * p <= self.limit:
                mu[p * p::p * p] = 0
        mu.setflags(write=False)
        return mu

    @cached_property
    def mertens(self) -> np.ndarray:
        """Prefix sums ``M(n) = sum_{k<=n} mu(k)``."""
        m = np.cumsum(self.mobius, dtype=np.int64)
        m.setflags(write=False)
        return m


def sieve(limit: int) -> PrimeTable:
    """Build a smallest-prime-factor table for ``2 <= n <= limit``."""
    limit = int(limit)
    if limit < 2:
        raise ValueError("sieve limit must be at least 2")
    if limit > MAX_SIEVE_LIMIT:
        raise ValueError(f"sieve limit above {MAX_SIEVE_LIMIT} is not supported")
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == 0:
            block = spf[p * p::p]
            block[block == 0] = p
    unset = spf == 0
    spf[unset] = np.flatnonzero(unset)
    return PrimeTable(limit, spf)


@dataclass(frozen=True)
class Factorization:
    """``value = prod(p**e for p, e in factors)`` with primes increasing."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def product(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


def factorize(n: int, table: PrimeTable) -> Factorization:
    """Factor ``n`` by walking its smallest-prime-factor chain."""
    n = int(n)
    table.check_range(n)
    spf = table.smallest_factor
    factors = []
    rest = n
    while rest > 1:
        p = int(spf[rest])
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        factors.append((p, e))
    return Factorization(n, tuple(factors))


def moebius(n: int, table: PrimeTable) -> int:
    f = factorize(n, table)
    if any(e >= 2 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def is_prime(p: int) -> bool:
    """Deterministic trial division; meant for moderate ``p``."""
    p = int(p)
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def valuation(p: int, n: int) -> int:
    """Largest ``e`` with ``p**e`` dividing ``n``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("valuation needs a positive integer")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def power_radical(m: int, n: int, table: PrimeTable) -> int:
    """Largest ``a`` such that ``a**m`` divides ``n``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    out = 1
    for p, e in factorize(n, table):
        out *= p ** (e // m)
    return out


def dirichlet_convolve(a: Sequence, b: Sequence) -> np.ndarray:
    """Dirichlet convolution of two sequences indexed from 1.

    Position ``i`` of each input holds the term of index ``i + 1``. Integer
    inputs give an exact integer result; anything else is computed in
    floating point.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 1 or a.shape != b.shape:
        raise ValueError("sequences must be one-dimensional and of equal length")
    N = len(a)
    if N < 1:
        raise ValueError("empty sequence")
    exact = a.dtype.kind in "iub" and b.dtype.kind in "iub"
    dtype = object if exact else np.result_type(a, b, np.float64)
    a = a.astype(dtype)
    b = b.astype(dtype)
    out = np.zeros(N, dtype=dtype)
    for d in range(1, N + 1):
        ad = a[d - 1]
        if ad == 0:
            continue
        out[d - 1::d] += ad * b[: N // d]
    if exact:
        return out.astype(np.int64) if _fits_int64(out) else out
    return out


def _fits_int64(arr: np.ndarray) -> bool:
    lim = 2**63 - 1
    return all(-lim <= int(x) <= lim for x in arr)


@dataclass(frozen=True)
class MultiplicativeSpec:
    """A multiplicative function given by its values on prime powers.

    ``value_at_prime_power(p, e)`` must accept an integer array of primes
    for ``p`` (and a plain int exponent ``e >= 1``) and return an array of
    the same shape, so that sums over all primes can be vectorized. Scalar
    ``p`` must also work.
    """

    name: str
    value_at_prime_power: Callable[[np.ndarray, int], np.ndarray]
    completely_multiplicative: bool = False

    def __call__(self, p, e):
        return self.value_at_prime_power(p, e)


def eval_multiplicative(spec: MultiplicativeSpec, f: Factorization) -> float:
    out = 1.0
    for p, e in f:
        out *= float(spec(p, e))
    return out


def multiplicative_values(spec: MultiplicativeSpec, table: PrimeTable, N: int | None = None) -> np.ndarray:
    """Values ``phi(n)`` for ``0 <= n <= N`` (entry 0 is set to 0).

    Works prime by prime: the integers with ``nu_p(n) == e`` get multiplied
    by ``phi(p**e)``.
    """
    N = table.limit if N is None else int(N)
    if N > table.limit:
        raise ValueError(f"N={N} beyond sieve limit {table.limit}")
    out = np.ones(N + 1, dtype=np.float64)
    out[0] = 0.0
    primes = table.primes[table.primes <= N]
    for p in primes.tolist():
        if p * p > N:
            break
        q, e = p, 1
        while q <= N:
            idx = np.arange(q, N + 1, q)
            idx = idx[(idx // q) % p != 0]
            out[idx] *= float(spec(p, e))
            q *= p
            e += 1
    # primes above sqrt(N) appear only with exponent 1
    big = primes[primes * primes > N]
    if len(big):
        vals = np.asarray(spec(big, 1), dtype=np.float64)
        for p, v in zip(big.tolist(), vals.tolist()):
            if v != 1.0:
                out[p::p] *= v
    return out


def _one(p, e):
    return np.ones_like(p, dtype=np.float64)


def _mobius(p, e):
    return np.full_like(p, -1.0 if e == 1 else 0.0, dtype=np.float64)


def _mobius_squared(p, e):
    return np.full_like(p, 1.0 if e == 1 else 0.0, dtype=np.float64)


def _identity(p, e):
    return np.asarray(p, dtype=np.float64) ** e


def _chi4(p, e):
    p = np.asarray(p)
    base = np.where(p % 2 == 0, 0.0, np.where(p % 4 == 1, 1.0, -1.0))
    return base**e


ONE = MultiplicativeSpec("one", _one, completely_multiplicative=True)
MOBIUS = MultiplicativeSpec("mobius", _mobius)
MOBIUS_SQUARED = MultiplicativeSpec("squarefree", _mobius_squared)
IDENTITY = MultiplicativeSpec("identity", _identity, completely_multiplicative=True)
CHI4 = MultiplicativeSpec("chi4", _chi4, completely_multiplicative=True)
