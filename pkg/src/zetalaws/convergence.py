"""Finitely supported laws, total variation distance and tightness tools.

Laws of interest here (Zeta laws) have infinite support. A truncated law is
kept as a :class:`SparsePmf` whose ``deficiency`` is the mass sitting
outside the tracked support, and distances involving it are reported as an
interval unless the missing mass is negligible.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

__all__ = [
    "NORMALIZATION_TOL",
    "DEFICIENCY_TOL",
    "SparsePmf",
    "TVInterval",
    "tv_distance",
    "tv_forms",
    "empirical_pmf",
    "tension_certificate",
    "CertificateError",
    "divisibility_profile",
]

NORMALIZATION_TOL = 1e-12
DEFICIENCY_TOL = 1e-9
_FORMS_TOL = 1e-12
_DENSE_PROFILE_LIMIT = 10**7


def _key_kind(key) -> str:
    if isinstance(key, (int, np.integer)) and not isinstance(key, bool):
        return "int"
    if isinstance(key, tuple) and len(key) == 2:
        return "pair"
    raise TypeError(f"unsupported support key {key!r}")


def _norm_key(key):
    if isinstance(key, tuple):
        return tuple(int(k) for k in key)
    return int(key)


@dataclass(frozen=True)
class SparsePmf:
    """Probability masses on integers or on ``(a, b)`` pairs.

    ``sum(mass) + deficiency`` must equal 1 to within ``1e-12``. All keys
    of one instance share a kind.
    """

    mass: dict
    deficiency: float = 0.0
    kind: str = field(init=False, compare=False)

    def __post_init__(self):
        masses = {}
        kinds = set()
        for k, v in self.mass.items():
            kinds.add(_key_kind(k))
            v = float(v)
            if not v >= 0 or not math.isfinite(v):
                raise ValueError(f"mass at {k!r} is {v}")
            masses[_norm_key(k)] = v
        if len(kinds) > 1:
            raise TypeError("integer and pair keys cannot be mixed in one law")
        if not self.deficiency >= 0:
            raise ValueError("deficiency must be non-negative")
        total = math.fsum(masses.values()) + self.deficiency
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"masses plus deficiency sum to {total!r}, not 1")
        object.__setattr__(self, "mass", masses)
        object.__setattr__(self, "deficiency", float(self.deficiency))
        object.__setattr__(self, "kind", kinds.pop() if kinds else "int")

    @classmethod
    def truncated(cls, mass: dict) -> "SparsePmf":
        """Law tracked on ``mass.keys()`` with the missing mass as deficiency."""
        total = math.fsum(float(v) for v in mass.values())
        if total > 1.0 + NORMALIZATION_TOL:
            raise ValueError(f"tracked mass {total} exceeds 1")
        return cls(mass, max(0.0, 1.0 - total))

    @classmethod
    def point(cls, key) -> "SparsePmf":
        return cls({key: 1.0})

    def __getitem__(self, key) -> float:
        return self.mass.get(_norm_key(key), 0.0)

    def __len__(self):
        return len(self.mass)

    @property
    def support(self) -> list:
        return sorted(self.mass)

    def prob(self, event: Iterable) -> float:
        """Tracked mass of a set of support points."""
        return math.fsum(self[k] for k in set(_norm_key(k) for k in event))

    def to_json(self) -> str:
        support = [[list(k) if isinstance(k, tuple) else k, v] for k, v in sorted(self.mass.items())]
        return json.dumps({"support": support, "deficiency": self.deficiency})

    @classmethod
    def from_json(cls, text: str) -> "SparsePmf":
        data = json.loads(text)
        mass = {(tuple(k) if isinstance(k, list) else k): v for k, v in data["support"]}
        return cls(mass, data.get("deficiency", 0.0))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "mass"])
        for k, v in sorted(self.mass.items()):
            writer.writerow([f"{k[0]}+{k[1]}i" if isinstance(k, tuple) else k, repr(v)])
        return buf.getvalue()


class TVInterval(NamedTuple):
    """Bracket for a distance that depends on where unallocated mass sits."""

    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower


def tv_forms(p: SparsePmf, q: SparsePmf) -> tuple[float, float]:
    """The two closed forms over the tracked support.

    Returns ``(half_abs, excess)`` with ``half_abs = 1/2 sum |p - q|`` and
    ``excess = sum (p - min(p, q))``. For normalized laws without deficiency
    they coincide; in general ``half_abs = excess + (dp - dq)/2``.
    """
    keys = set(p.mass) | set(q.mass)
    pm, qm = p.mass, q.mass
    diffs = [(pm.get(k, 0.0), qm.get(k, 0.0)) for k in keys]
    half_abs = 0.5 * math.fsum(abs(a - b) for a, b in diffs)
    excess = math.fsum(a - min(a, b) for a, b in diffs)
    return half_abs, excess


def tv_distance(p: SparsePmf, q: SparsePmf):
    """Total variation distance ``sup_A |p(A) - q(A)|``.

    Missing mass of either law is assumed to lie outside the union of the
    tracked supports, with unknown arrangement. That leaves the distance in
    ``[h + |dp - dq|/2, h + (dp + dq)/2]`` where ``h`` is the half sum of
    absolute differences on the tracked points. A float is returned when
    this bracket is narrower than ``1e-9`` (some deficiency is zero or
    negligible), otherwise a :class:`TVInterval`.
    """
    if not isinstance(p, SparsePmf) or not isinstance(q, SparsePmf):
        raise TypeError("tv_distance needs two SparsePmf laws")
    if p.mass and q.mass and p.kind != q.kind:
        raise TypeError("laws live on different spaces")
    half_abs, excess = tv_forms(p, q)
    dp, dq = p.deficiency, q.deficiency
    if abs(half_abs - (excess + 0.5 * (dp - dq))) > _FORMS_TOL:
        raise ArithmeticError("closed forms of the distance disagree")
    lower = half_abs + 0.5 * abs(dp - dq)
    upper = half_abs + 0.5 * (dp + dq)
    if upper - lower <= DEFICIENCY_TOL:
        return min(1.0, lower)
    return TVInterval(lower, min(1.0, upper))


def empirical_pmf(samples) -> SparsePmf:
    """Relative frequencies of the sample points.

    ``samples`` is a sequence of integers or of ``(a, b)`` pairs; an
    ``(N, 2)`` integer array is read as pairs.
    """
    arr = np.asarray(samples)
    if arr.size == 0:
        raise ValueError("no samples")
    if arr.dtype == object or arr.ndim == 1 and arr.dtype.kind not in "iu":
        counts: dict = {}
        for x in samples:
            x = _norm_key(x)
            counts[x] = counts.get(x, 0) + 1
        N = sum(counts.values())
        return SparsePmf({k: c / N for k, c in counts.items()})
    if arr.ndim == 2:
        keys, counts = np.unique(arr, axis=0, return_counts=True)
        N = len(arr)
        return SparsePmf({(int(a), int(b)): c / N for (a, b), c in zip(keys.tolist(), counts.tolist())})
    keys, counts = np.unique(arr, return_counts=True)
    N = len(arr)
    return SparsePmf({k: c / N for k, c in zip(keys.tolist(), counts.tolist())})


class CertificateError(ValueError):
    """No finite set can carry ``1 - epsilon`` of the mass."""


def tension_certificate(p: SparsePmf, epsilon: float) -> frozenset:
    """Smallest set ``F`` of support points with ``p(F) >= 1 - epsilon``.

    Points are taken by decreasing mass (ties by key), which minimizes the
    size of ``F``.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if p.deficiency > epsilon:
        raise CertificateError(f"deficiency {p.deficiency} exceeds epsilon {epsilon}")
    ranked = sorted(p.mass.items(), key=lambda kv: (-kv[1], kv[0]))
    need = 1.0 - epsilon
    chosen = []
    acc = []
    for k, v in ranked:
        chosen.append(k)
        acc.append(v)
        if math.fsum(acc) >= need - NORMALIZATION_TOL:
            break
    return frozenset(chosen)


def divisibility_profile(p: SparsePmf, n_max: int) -> dict[int, float]:
    """``{n: P(n | X)}`` for ``1 <= n <= n_max`` from an integer-valued law."""
    if p.kind != "int":
        raise TypeError("divisibility profile needs an integer-supported law")
    dense = {k: v for k, v in p.mass.items() if 0 < k <= _DENSE_PROFILE_LIMIT}
    sparse = {k: v for k, v in p.mass.items() if k > _DENSE_PROFILE_LIMIT}
    top = max(dense, default=1)
    arr = np.zeros(top + 1, dtype=np.float64)
    if dense:
        keys = np.fromiter(dense.keys(), dtype=np.int64, count=len(dense))
        arr[keys] = np.fromiter(dense.values(), dtype=np.float64, count=len(dense))
    out = {}
    for n in range(1, n_max + 1):
        total = math.fsum(arr[n::n].tolist()) if n <= top else 0.0
        if sparse:
            total += math.fsum(v for k, v in sparse.items() if k % n == 0)
        out[n] = total
    return out
