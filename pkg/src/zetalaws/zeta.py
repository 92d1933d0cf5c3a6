"""The Zeta (Zipf) law on the positive integers and its Euler products.

The law of parameter ``s > 1`` puts mass ``n**-s / zeta(s)`` on ``n``.
Under it ``P(n | X) = n**-s``, divisibility by coprime integers gives
independent events, and the exponents ``nu_p(X)`` are independent with
``1 + nu_p(X)`` geometric of parameter ``1 - p**-s``. Those facts drive
everything here: the product formula ``1/zeta(s) = prod_p (1 - p**-s)``, its
extension to multiplicative functions, and two exact samplers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import MultiplicativeSpec, PrimeTable, multiplicative_values

__all__ = [
    "MIN_S",
    "ZetaLaw",
    "ValuationVector",
    "DivergentSeriesError",
    "zeta_value",
    "pmf",
    "divisibility_prob",
    "sample",
    "sample_by_valuations",
    "sample_valuations_batch",
    "euler_product_inv_zeta",
    "euler_product_multiplicative",
    "expected_multiplicative",
    "dirichlet_series",
    "dirichlet_beta",
    "dirichlet_beta_partial_sum",
    "zeta_tail_bound",
]

# Below this the normalizer and the sampler's rejection rate blow up.
MIN_S = 1.01
# Double precision cannot certify absolute errors much below this.
MIN_TOLERANCE = 1e-14

_LOG_2_53 = 53 * math.log(2.0)


class DivergentSeriesError(ArithmeticError):
    """An inner prime-power series failed the convergence guard."""


def _check_s(s: float, lower: float = MIN_S):
    if not s > 1:
        raise ValueError(f"s={s}: the series diverges for s <= 1")
    if s < lower:
        raise ValueError(f"s={s} below supported minimum {lower}")


def zeta_tail_bound(s: float, K: int) -> float:
    """Upper bound ``K**(1-s)/(s-1)`` on ``zeta(s) - sum_{k<=K} k**-s``."""
    return K ** (1.0 - s) / (s - 1.0)


def zeta_value(s: float, tolerance: float = 1e-13) -> float:
    """Riemann zeta at real ``s > 1`` with absolute error below ``tolerance``.

    Sums ``K - 1`` terms directly, then adds the Euler-Maclaurin tail
    ``K**(1-s)/(s-1) + K**-s/2 + s K**(-s-1)/12``. The remainder is bounded
    by the next correction ``s(s+1)(s+2) K**(-s-3)/720`` and ``K`` is the
    smallest value that pushes it below half the tolerance.
    """
    if not s > 1:
        raise ValueError(f"s={s}: zeta diverges for s <= 1")
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    if tolerance < MIN_TOLERANCE:
        raise ValueError(f"tolerance below {MIN_TOLERANCE} is not certifiable in double precision")
    c = s * (s + 1) * (s + 2) / 720.0
    K = max(2, math.ceil((2 * c / tolerance) ** (1.0 / (s + 3))))
    k = np.arange(K - 1, 0, -1, dtype=np.float64)  # small terms first
    head = math.fsum((k ** -s).tolist())
    tail = K ** (1 - s) / (s - 1) + 0.5 * K**-s + s * K ** (-s - 1) / 12.0
    return head + tail


@dataclass(frozen=True)
class ZetaLaw:
    """Zeta law of parameter ``s``; ``zeta_s`` is filled in on construction."""

    s: float
    series_tolerance: float = 1e-13
    zeta_s: float = field(init=False)

    def __post_init__(self):
        _check_s(self.s)
        object.__setattr__(self, "zeta_s", zeta_value(self.s, self.series_tolerance))

    def truncated_pmf(self, K: int):
        """The law restricted to ``1..K``; the rest is left as deficiency."""
        from .convergence import SparsePmf

        n = np.arange(1, K + 1, dtype=np.float64)
        mass = n**-self.s / self.zeta_s
        return SparsePmf.truncated(dict(zip(range(1, K + 1), mass.tolist())))


def pmf(law: ZetaLaw, n):
    """``n**-s / zeta(s)``; ``n`` may be an array."""
    n = np.asarray(n, dtype=np.float64)
    out = n**-law.s / law.zeta_s
    return float(out) if out.ndim == 0 else out


def divisibility_prob(law: ZetaLaw, n):
    """``P(n | X) = n**-s``."""
    n = np.asarray(n, dtype=np.float64)
    out = n**-law.s
    return float(out) if out.ndim == 0 else out


def _large_int(logx: float) -> int:
    # floor(exp(logx)) to double precision for values past 2**53
    k = int(logx / math.log(2.0)) - 52
    mant = math.exp(logx - k * math.log(2.0))
    return int(mant) << k


def sample(law: ZetaLaw, rng: np.random.Generator, size: int | None = None):
    """Exact draws from the Zeta law by rejection from a Pareto envelope.

    A continuous Pareto candidate ``U**(-1/(s-1))`` is floored and accepted
    with probability proportional to pmf over envelope (Devroye's Zipf
    rejection scheme). The expected number of rounds stays small for
    ``s >= 1.5`` and grows as ``s`` approaches 1.

    Values below ``2**53`` are exact integers. Heavier tails (reachable for
    ``s`` close to 1) are returned as Python ints carrying double precision
    in their leading bits; the array then has ``dtype=object``.
    """
    n = 1 if size is None else int(size)
    am1 = law.s - 1.0
    b = 2.0**am1
    chunks = []
    have = 0
    while have < n:
        m = max(64, int(1.3 * (n - have)) + 16)
        u = 1.0 - rng.random(m)
        v = rng.random(m)
        logx = -np.log(u) / am1
        small = logx < _LOG_2_53
        x = np.floor(np.exp(np.where(small, logx, 0.0)))
        # x * ((1 + 1/x)**(s-1) - 1), tends to s - 1 for huge x
        xt = np.where(small, x * np.expm1(am1 * np.log1p(1.0 / x)), am1)
        t = np.where(small, (1.0 + 1.0 / x) ** am1, 1.0)
        keep = np.flatnonzero(v * xt / (b - 1.0) <= t / b)[: n - have]
        if small[keep].all():
            chunks.append(x[keep].astype(np.int64))
        else:
            chunk = np.empty(len(keep), dtype=object)
            for j, i in enumerate(keep.tolist()):
                chunk[j] = int(x[i]) if small[i] else _large_int(float(logx[i]))
            chunks.append(chunk)
        have += len(keep)
    out = np.concatenate(chunks)
    return int(out[0]) if size is None else out


@dataclass(frozen=True)
class ValuationVector:
    """Exponents ``nu_p`` for the primes ``p <= prime_bound`` (zeros omitted)."""

    prime_bound: int
    exponents: dict

    def exponent(self, p: int) -> int:
        return self.exponents.get(p, 0)

    @property
    def overflow(self) -> bool:
        bits = sum(e * math.log2(p) for p, e in self.exponents.items())
        return bits >= 63

    def value(self) -> int:
        if self.overflow:
            raise OverflowError("reconstructed integer does not fit in 64 bits")
        out = 1
        for p, e in self.exponents.items():
            out *= p**e
        return out


def _primes_up_to(bound: int, table: PrimeTable | None) -> np.ndarray:
    if table is None or table.limit < bound:
        from .arith import sieve

        table = sieve(max(bound, 2))
    return table.primes[table.primes <= bound]


def sample_by_valuations(law: ZetaLaw, prime_bound: int, rng: np.random.Generator,
                         table: PrimeTable | None = None) -> ValuationVector:
    """One draw of the independent exponents ``nu_p(X)``, ``p <= prime_bound``.

    Primes above the bound get exponent 0, so the reconstruction is a
    truncated version of the Zeta law, good for cross-checks only.
    """
    if prime_bound < 2:
        raise ValueError("prime_bound must be at least 2")
    primes = _primes_up_to(prime_bound, table)
    q = primes.astype(np.float64) ** -law.s
    e = rng.geometric(1.0 - q) - 1
    nz = np.flatnonzero(e)
    return ValuationVector(prime_bound, {int(primes[i]): int(e[i]) for i in nz})


def sample_valuations_batch(law: ZetaLaw, prime_bound: int, size: int, rng: np.random.Generator,
                            table: PrimeTable | None = None):
    """Many reconstructed draws of the truncated valuation representation.

    Returns ``(values, overflow)``: int64 values and a mask of draws whose
    product would not fit (their value entry is 0).

    Each prime is handled once for the whole batch: the number of draws
    divisible by ``p`` is binomial with parameter ``p**-s``, those draws are
    picked uniformly, and their exponents are geometric on ``{1, 2, ...}``.
    This has the same joint law as drawing every exponent separately.
    """
    primes = _primes_up_to(prime_bound, table)
    values = np.ones(size, dtype=np.int64)
    bits = np.zeros(size, dtype=np.float64)
    for p in primes.tolist():
        q = float(p) ** -law.s
        k = rng.binomial(size, q)
        if k == 0:
            continue
        idx = rng.choice(size, size=k, replace=False)
        e = rng.geometric(1.0 - q, size=k)
        bits[idx] += e * math.log2(p)
        ok = bits[idx] < 62.0
        # exact while the running product stays below 2**62
        values[idx[ok]] *= np.int64(p) ** e[ok]
    overflow = bits >= 62.0
    values[overflow] = 0
    return values, overflow


def euler_product_inv_zeta(s: float, table: PrimeTable) -> float:
    """``prod_{p <= table.limit} (1 - p**-s)``, which tends to ``1/zeta(s)``."""
    _check_s(s)
    x = table.primes.astype(np.float64) ** -s
    return math.exp(math.fsum(np.log1p(-x).tolist()))


def _local_factors(spec: MultiplicativeSpec, s: float, primes: np.ndarray, inner_terms: int,
                   guard: float) -> np.ndarray:
    """Per-prime sums ``sum_{j>=0} p**(-s j) phi(p**j)``."""
    x = primes.astype(np.float64) ** -s
    if spec.completely_multiplicative:
        r = x * np.asarray(spec(primes, 1), dtype=np.float64)
        if np.any(np.abs(r) >= 1):
            bad = int(primes[np.argmax(np.abs(r) >= 1)])
            raise DivergentSeriesError(f"{spec.name}: geometric ratio >= 1 at p={bad}")
        return 1.0 / (1.0 - r)
    if inner_terms < 1:
        raise ValueError("inner_terms must be >= 1")
    total = np.ones_like(x)
    live = np.arange(len(primes))
    xp = x.copy()
    last = np.zeros_like(x)
    with np.errstate(over="ignore", invalid="ignore"):
        for j in range(1, inner_terms + 1):
            term = xp[live] * np.asarray(spec(primes[live], j), dtype=np.float64)
            if not np.all(np.isfinite(term)):
                raise DivergentSeriesError(f"{spec.name}: non-finite prime-power term at j={j}")
            total[live] += term
            last[live] = np.abs(term)
            xp[live] *= x[live]
            # 4**-j never catches up with the smallest double before j ~ 540
            keep = xp[live] > 1e-300
            live = live[keep]
            if len(live) == 0:
                break
    if len(live) and np.any(last[live] > guard * np.maximum(1.0, np.abs(total[live]))):
        bad = int(primes[live[np.argmax(last[live] > guard * np.maximum(1.0, np.abs(total[live])))]])
        raise DivergentSeriesError(
            f"{spec.name}: inner series at p={bad} not converged after {inner_terms} terms")
    return total


def _product(factors: np.ndarray) -> float:
    if np.all(factors > 0):
        return math.exp(math.fsum(np.log(factors).tolist()))
    return float(np.prod(factors))


def euler_product_multiplicative(spec: MultiplicativeSpec, s: float, table: PrimeTable,
                                 inner_terms: int = 64, guard: float = 1e-12) -> float:
    """Truncated Euler product of ``sum_n phi(n) n**-s``.

    Multiplies, over primes up to the sieve limit, the local series
    ``sum_j p**(-s j) phi(p**j)`` cut after ``inner_terms`` terms, or the
    closed form ``1/(1 - p**-s phi(p))`` when ``spec`` is completely
    multiplicative. Raises :class:`DivergentSeriesError` if the last kept
    local term is still larger than ``guard`` relative to the local sum.
    """
    _check_s(s)
    return _product(_local_factors(spec, s, table.primes, inner_terms, guard))


def expected_multiplicative(spec: MultiplicativeSpec, law: ZetaLaw, table: PrimeTable,
                            inner_terms: int = 64, guard: float = 1e-12) -> float:
    """``E[phi(X)]`` for ``X`` Zeta-distributed, as a product over primes.

    Each prime contributes ``E[phi(p**N)]`` with ``1 + N`` geometric of
    parameter ``1 - p**-s``, i.e. ``(1 - p**-s)`` times the local series.
    Truncation and divergence guard as in :func:`euler_product_multiplicative`.
    """
    x = table.primes.astype(np.float64) ** -law.s
    local = _local_factors(spec, law.s, table.primes, inner_terms, guard)
    return _product((1.0 - x) * local)


def dirichlet_series(spec: MultiplicativeSpec, s: float, table: PrimeTable, N: int | None = None) -> float:
    """Partial sum ``sum_{n<=N} phi(n) n**-s`` by direct summation."""
    vals = multiplicative_values(spec, table, N)
    n = np.arange(len(vals), dtype=np.float64)
    n[0] = 1.0
    terms = vals[1:] * n[1:] ** -s
    return math.fsum(terms[::-1].tolist())


def dirichlet_beta_partial_sum(s: float, terms: int) -> float:
    k = np.arange(terms, dtype=np.float64)
    return math.fsum(((-1.0) ** k * (2 * k + 1) ** -s).tolist())


def dirichlet_beta(s: float, tolerance: float = 1e-13) -> float:
    """``beta(s) = sum_{k>=0} (-1)**k (2k+1)**-s``.

    Uses the Cohen-Rodriguez Villegas-Zagier acceleration: the terms form a
    moment sequence, so ``n`` weighted terms leave an error of at most
    ``2 / (3 + sqrt 8)**n``.
    """
    if not s > 0:
        raise ValueError(f"s={s}: the series does not converge for s <= 0")
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    if tolerance < MIN_TOLERANCE:
        raise ValueError(f"tolerance below {MIN_TOLERANCE} is not certifiable in double precision")
    n = math.ceil(math.log(2.0 / tolerance) / math.log(3.0 + math.sqrt(8.0))) + 1
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b, c, acc = -1.0, -d, 0.0
    for k in range(n):
        c = b - c
        acc += c * (2 * k + 1) ** -s
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1))
    return acc / d
