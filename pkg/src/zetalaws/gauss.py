"""Gaussian integers up to units.

Every nonzero ``z`` in Z[i] is ``i**k * (a + ib)`` for exactly one ``k`` and
one pair with ``a >= 0, b >= 1``; that pair is the :class:`GaussClass` of
``z``. On classes we have a Euclidean gcd, the representation count
``S'(n) = #{(a, b): a >= 0, b >= 1, a**2 + b**2 = n}``, the Zeta-type law
with masses ``N(x)**-s / (zeta(s) beta(s))``, and the coprimality
experiment whose limit is ``1 / (zeta(2) beta(2))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .arith import MultiplicativeSpec, PrimeTable, factorize
from .convergence import SparsePmf
from .densities import Estimate

__all__ = [
    "GaussInt",
    "GaussClass",
    "UNIT",
    "canonicalize",
    "gauss_gcd",
    "divides",
    "sum_two_squares_count",
    "SUM_TWO_SQUARES",
    "classes_of_norm",
    "unique_coprime_splitting_check",
    "ball_classes",
    "ball_class_array",
    "zeta_prime_normalizer",
    "zeta_prime_pmf",
    "zeta_prime_law",
    "batch_gcd",
    "GaussExperiment",
    "gauss_coprime_experiment",
    "DEFAULT_PROFILE_CLASSES",
]


@dataclass(frozen=True)
class GaussInt:
    re: int
    im: int

    def __mul__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    def __sub__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re - other.re, self.im - other.im)

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re or self.im)

    def divmod(self, other: "GaussInt") -> tuple["GaussInt", "GaussInt"]:
        """Division with quotient rounded to the nearest Gaussian integer.

        Ties round to even, so ``N(remainder) <= N(other) / 2``.
        """
        den = other.norm()
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian integer")
        num = self * other.conj()
        q = GaussInt(_round_half_even(num.re, den), _round_half_even(num.im, den))
        return q, self - q * other


def _round_half_even(num: int, den: int) -> int:
    q, r = divmod(num, den)
    twice = 2 * r
    if twice > den or (twice == den and q % 2 == 1):
        q += 1
    return q


class GaussClass(NamedTuple):
    """Canonical associate ``a + ib`` with ``a >= 0`` and ``b >= 1``."""

    a: int
    b: int

    def norm(self) -> int:
        return self.a * self.a + self.b * self.b

    def to_int(self) -> GaussInt:
        return GaussInt(self.a, self.b)

    def __str__(self):
        return f"{self.a}+{self.b}i"


UNIT = GaussClass(0, 1)


def canonicalize(z) -> GaussClass:
    """The class of ``z`` (a :class:`GaussInt`, a pair or a Python int)."""
    if isinstance(z, int):
        x, y = z, 0
    elif isinstance(z, GaussInt):
        x, y = z.re, z.im
    else:
        x, y = z
    if x == 0 and y == 0:
        raise ValueError("0 has no associate class")
    # multiply by i until Re >= 0 and Im > 0
    while not (x >= 0 and y > 0):
        x, y = -y, x
    return GaussClass(int(x), int(y))


def _as_int(z) -> GaussInt:
    if isinstance(z, GaussInt):
        return z
    if isinstance(z, int):
        return GaussInt(z, 0)
    return GaussInt(int(z[0]), int(z[1]))


def gauss_gcd(z, w) -> GaussClass:
    """Class of a gcd of ``z`` and ``w`` by the Euclidean algorithm."""
    z, w = _as_int(z), _as_int(w)
    if not z and not w:
        raise ValueError("gcd(0, 0) is undefined")
    while w:
        _, r = z.divmod(w)
        z, w = w, r
    return canonicalize(z)


def divides(z, x) -> bool:
    """Whether the class of ``z`` divides ``x``: ``gcd(z, x)`` is ``z``'s class."""
    return gauss_gcd(z, x) == canonicalize(z)


def _s_prime_local(p, e):
    p = np.asarray(p)
    return np.where(p == 2, 1.0, np.where(p % 4 == 1, e + 1.0, 1.0 if e % 2 == 0 else 0.0))


SUM_TWO_SQUARES = MultiplicativeSpec("S'", _s_prime_local)


def sum_two_squares_count(n: int, table: PrimeTable) -> int:
    """``S'(n)`` from the factorization of ``n``."""
    out = 1
    for p, e in factorize(n, table):
        if p % 4 == 1:
            out *= e + 1
        elif p % 4 == 3 and e % 2:
            return 0
    return out


def classes_of_norm(n: int) -> list[GaussClass]:
    out = []
    for a in range(math.isqrt(n) + 1):
        b2 = n - a * a
        b = math.isqrt(b2)
        if b >= 1 and b * b == b2:
            out.append(GaussClass(a, b))
    return out


def unique_coprime_splitting_check(cls: GaussClass, a: int, b: int, table: PrimeTable | None = None) -> bool:
    """Whether ``cls`` is a product of classes of norms ``a`` and ``b`` in exactly one way."""
    cls = canonicalize(tuple(cls))
    if a < 1 or b < 1 or cls.norm() != a * b or math.gcd(a, b) != 1:
        raise ValueError("need N(cls) = a*b with a, b coprime and positive")
    found = 0
    for x in classes_of_norm(a):
        for y in classes_of_norm(b):
            if canonicalize(x.to_int() * y.to_int()) == cls:
                found += 1
    return found == 1


def ball_class_array(r: float) -> np.ndarray:
    """``(k, 2)`` array of the classes with ``a**2 + b**2 <= r**2``, lexicographic."""
    if r < 1:
        raise ValueError("radius must be at least 1")
    bound = r * r if isinstance(r, int) else math.floor(r * r)
    rows = []
    for a in range(math.isqrt(bound) + 1):
        bmax = math.isqrt(bound - a * a)
        if bmax >= 1:
            bs = np.arange(1, bmax + 1, dtype=np.int64)
            rows.append(np.column_stack([np.full_like(bs, a), bs]))
    return np.concatenate(rows)


def ball_classes(r: float) -> list[GaussClass]:
    return [GaussClass(a, b) for a, b in ball_class_array(r).tolist()]


def zeta_prime_normalizer(s: float, tolerance: float = 1e-13) -> float:
    """``sum over classes of N(z)**-s``, equal to ``zeta(s) beta(s)``."""
    from .zeta import dirichlet_beta, zeta_value

    return zeta_value(s, tolerance) * dirichlet_beta(s, tolerance)


def zeta_prime_pmf(s: float, cls, normalizer: float) -> float:
    if not s > 1:
        raise ValueError("s must exceed 1")
    return GaussClass(*cls).norm() ** -s / normalizer


def zeta_prime_law(s: float, radius: float, normalizer: float | None = None) -> SparsePmf:
    """The class law truncated to a ball, remaining mass as deficiency."""
    if normalizer is None:
        normalizer = zeta_prime_normalizer(s)
    arr = ball_class_array(radius)
    mass = (arr[:, 0] ** 2 + arr[:, 1] ** 2).astype(np.float64) ** -s / normalizer
    return SparsePmf.truncated({(a, b): m for (a, b), m in zip(arr.tolist(), mass.tolist())})


def _round_half_even_arr(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    q, r = np.divmod(num, den)
    twice = 2 * r
    return q + ((twice > den) | ((twice == den) & (q % 2 == 1)))


def _canonicalize_arr(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x, y = x.copy(), y.copy()
    for _ in range(3):
        bad = ~((x >= 0) & (y > 0))
        if not bad.any():
            break
        x[bad], y[bad] = -y[bad], x[bad].copy()
    return x, y


def batch_gcd(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Row-wise class gcd of two ``(k, 2)`` integer arrays, none all-zero pairs.

    Same rounded-quotient Euclid as :func:`gauss_gcd`, run on all rows at
    once until every remainder vanishes.
    """
    zr, zi = z[:, 0].astype(np.int64), z[:, 1].astype(np.int64)
    wr, wi = w[:, 0].astype(np.int64), w[:, 1].astype(np.int64)
    if np.any((zr == 0) & (zi == 0) & (wr == 0) & (wi == 0)):
        raise ValueError("gcd(0, 0) is undefined")
    live = np.flatnonzero((wr != 0) | (wi != 0))
    while len(live):
        a, b, c, d = zr[live], zi[live], wr[live], wi[live]
        den = c * c + d * d
        qr = _round_half_even_arr(a * c + b * d, den)
        qi = _round_half_even_arr(b * c - a * d, den)
        rr = a - (qr * c - qi * d)
        ri = b - (qr * d + qi * c)
        zr[live], zi[live] = c, d
        wr[live], wi[live] = rr, ri
        live = live[(rr != 0) | (ri != 0)]
    x, y = _canonicalize_arr(zr, zi)
    return np.column_stack([x, y])


def _divisible_by(g: np.ndarray, cls: GaussClass) -> np.ndarray:
    # z | g  iff  g * conj(z) is divisible by N(z) componentwise
    a, b = cls
    nz = a * a + b * b
    re = g[:, 0] * a + g[:, 1] * b
    im = g[:, 1] * a - g[:, 0] * b
    return (re % nz == 0) & (im % nz == 0)


DEFAULT_PROFILE_CLASSES = (GaussClass(1, 1), GaussClass(1, 2), GaussClass(2, 1), GaussClass(0, 2),
                           GaussClass(0, 3), GaussClass(2, 2))


@dataclass(frozen=True)
class GaussExperiment:
    """Unit-gcd frequency plus empirical ``P(z | gcd)`` for a few classes."""

    n: int
    ball_size: int
    unit: Estimate
    profile: dict


def gauss_coprime_experiment(n: int, samples: int, rng: np.random.Generator,
                             profile_classes: Sequence = DEFAULT_PROFILE_CLASSES,
                             chunk: int = 1 << 18, ball: np.ndarray | None = None) -> GaussExperiment:
    """Gcd of two independent uniform classes of norm at most ``n**2``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if ball is None:
        ball = ball_class_array(n)
    classes = [GaussClass(*c) for c in profile_classes]
    unit_hits = 0
    hits = dict.fromkeys(classes, 0)
    left = samples
    while left:
        k = min(chunk, left)
        i = rng.integers(0, len(ball), size=k)
        j = rng.integers(0, len(ball), size=k)
        g = batch_gcd(ball[i], ball[j])
        unit_hits += int(np.count_nonzero((g[:, 0] == 0) & (g[:, 1] == 1)))
        for c in classes:
            hits[c] += int(np.count_nonzero(_divisible_by(g, c)))
        left -= k
    profile = {c: Estimate.from_counts(h, samples) for c, h in hits.items()}
    return GaussExperiment(n, len(ball), Estimate.from_counts(unit_hits, samples), profile)
