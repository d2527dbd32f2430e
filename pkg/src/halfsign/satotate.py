"""Sato-Tate angles, the measure (2/pi) sin^2, interval unions, sampling and K-S.

The eigenvalue at a good prime is written ``lambda(p) = 2 zeta cos(theta_p)``
with ``theta_p`` in ``[0, pi]``; powers follow the Chebyshev identity
``lambda(p^nu) = zeta^nu sin((nu+1) theta) / sin(theta)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .characters import RotationNumber

__all__ = [
    "DELIGNE_SLACK",
    "DeligneViolation",
    "AngleSet",
    "IntervalUnion",
    "angle_of",
    "angles_of",
    "chebyshev_u",
    "lambda_prime_power",
    "st_density",
    "st_cdf",
    "st_cdf_quadrature",
    "st_measure",
    "interval_union",
    "st_inverse_cdf",
    "counter_uniforms",
    "sample_angle",
    "sample_angles",
    "ks_distance",
    "kuiper_discrepancy",
    "form_angles",
]

# rounding slack tolerated above |lambda(p)/zeta| = 2 before calling it corruption
DELIGNE_SLACK = 1e-6


class DeligneViolation(ValueError):
    """A normalized eigenvalue lies outside ``[-2, 2]`` beyond rounding slack."""


def angle_of(x: float) -> float:
    """``theta`` in ``[0, pi]`` with ``2 cos(theta) = x``."""
    if abs(x) > 2 + DELIGNE_SLACK:
        raise DeligneViolation(f"|lambda(p)/zeta| = {abs(x)!r} exceeds 2")
    return math.acos(max(-1.0, min(1.0, x / 2)))


def angles_of(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    bad = np.abs(x) > 2 + DELIGNE_SLACK
    if bad.any():
        raise DeligneViolation(f"{int(bad.sum())} values exceed the Deligne bound, max {np.abs(x).max()!r}")
    return np.arccos(np.clip(x / 2, -1.0, 1.0))


def chebyshev_u(theta, nu: int):
    """``sin((nu+1) theta) / sin(theta)`` with the limits ``nu+1`` at 0 and ``(-1)^nu (nu+1)`` at pi."""
    th = np.asarray(theta, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sin((nu + 1) * th) / np.sin(th)
    out = np.where(th == 0.0, nu + 1.0, out)
    out = np.where(th == math.pi, (-1.0) ** nu * (nu + 1), out)
    return out if out.ndim else float(out)


def lambda_prime_power(theta, nu: int, zeta: RotationNumber):
    """``lambda(p^nu) = zeta^nu sin((nu+1) theta) / sin(theta)``; ``theta`` may be an array."""
    th = np.asarray(theta, dtype=float)
    if ((th < 0.0) | (th > math.pi)).any():
        raise ValueError("theta must lie in [0, pi]")
    if nu < 0:
        raise ValueError("nu must be >= 0")
    return (zeta**nu).to_complex() * chebyshev_u(theta, nu)


def st_density(theta):
    return 2.0 / math.pi * np.sin(theta) ** 2


def st_cdf(theta):
    """Sato-Tate distribution function ``(theta - sin(theta) cos(theta)) / pi``."""
    th = np.asarray(theta, dtype=float)
    out = (th - np.sin(th) * np.cos(th)) / math.pi
    return out if out.ndim else float(out)


def st_cdf_quadrature(theta: float) -> float:
    """Independent route: adaptive quadrature of the density on ``[0, theta]``."""
    val, _ = integrate.quad(st_density, 0.0, theta, epsabs=1e-13, epsrel=1e-13)
    return val


@dataclass(frozen=True)
class IntervalUnion:
    """Ascending, pairwise disjoint open subintervals of ``[0, pi]``."""

    intervals: tuple[tuple[float, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        prev = 0.0
        for a, b in self.intervals:
            if not (0.0 <= a < b <= math.pi + 1e-15) or a < prev:
                raise ValueError(f"intervals must be ascending, disjoint, inside [0, pi]: {self.intervals}")
            prev = b

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def measure(self) -> float:
        return st_measure(self)

    def contains(self, theta) -> np.ndarray | bool:
        th = np.asarray(theta, dtype=float)
        hit = np.zeros(th.shape, dtype=bool)
        for a, b in self.intervals:
            hit |= (th > a) & (th < b)
        return hit if hit.ndim else bool(hit)

    def is_subset_of(self, other: "IntervalUnion") -> bool:
        """Every interval here lies inside some interval of ``other``."""
        return all(any(c <= a and b <= d for c, d in other) for a, b in self)


def st_measure(U: IntervalUnion) -> float:
    return math.fsum(st_cdf(b) - st_cdf(a) for a, b in U)


def interval_union(nu: int, eps: float = 0.0, variant: str = "I") -> IntervalUnion:
    """The unions ``I_eps`` (``variant="I"``) and ``I'_eps`` (``variant="I'"``) for odd ``nu``.

    ``I_eps`` is where ``sin((nu+1) theta) > eps``; ``I'_eps`` where it is ``< -eps``.
    """
    if nu < 1 or nu % 2 == 0:
        raise ValueError(f"nu must be a positive odd integer, got {nu}")
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"eps must lie in [0, 1), got {eps}")
    if variant not in ("I", "I'"):
        raise ValueError(f"variant must be 'I' or \"I'\", got {variant!r}")
    a = math.asin(eps)
    m = nu + 1
    off = 0 if variant == "I" else 1
    out = []
    for j in range(1, m // 2 + 1):
        lo = ((2 * j - 2 + off) * math.pi + a) / m
        hi = ((2 * j - 1 + off) * math.pi - a) / m
        if hi <= lo:
            warnings.warn(f"interval j={j} is empty for eps={eps}; dropped", stacklevel=2)
            continue
        out.append((lo, min(hi, math.pi)))
    return IntervalUnion(tuple(out))


def st_inverse_cdf(u, tol: float = 1e-13) -> np.ndarray | float:
    """Solve ``st_cdf(theta) = u`` by bisection on ``[0, pi]`` (vectorized)."""
    u = np.asarray(u, dtype=float)
    if ((u < 0) | (u > 1)).any():
        raise ValueError("u must lie in [0, 1]")
    lo = np.zeros_like(u)
    hi = np.full_like(u, math.pi)
    # bracket shrinks by half each step
    steps = int(math.ceil(math.log2(math.pi / tol)))
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        below = st_cdf(mid) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    out = 0.5 * (lo + hi)
    out = np.where(u == 0.0, 0.0, np.where(u == 1.0, math.pi, out))
    return out if out.ndim else float(out)


_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _mix64(z: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer; uint64 arithmetic wraps
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def counter_uniforms(seed: int, keys) -> np.ndarray:
    """Uniforms in ``[0, 1)`` that depend only on ``(seed, key)``.

    Each key (a prime, or a sample index) is hashed independently, so the
    value drawn for a prime never depends on iteration order or chunking.
    """
    keys = np.asarray(keys, dtype=np.uint64)
    with np.errstate(over="ignore"):
        k = _mix64(np.array([seed & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64) + _GOLDEN)
        z = _mix64(k ^ (keys * _GOLDEN + _GOLDEN))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def sample_angles(seed: int, keys) -> np.ndarray:
    """Sato-Tate distributed angles, one per key, by inverse transform."""
    return st_inverse_cdf(counter_uniforms(seed, keys))


def sample_angle(rng: np.random.Generator) -> float:
    """One Sato-Tate angle from a numpy generator."""
    return float(st_inverse_cdf(rng.random()))


def _sorted_cdf(samples, cdf):
    x = np.sort(np.asarray(samples, dtype=float))
    if x.size == 0:
        raise ValueError("need at least one sample")
    F = np.asarray(cdf(x), dtype=float)
    n = x.size
    i = np.arange(1, n + 1)
    return (i / n - F).max(), (F - (i - 1) / n).max()


def ks_distance(samples, cdf=st_cdf) -> float:
    """``sup |F_emp - F|`` evaluated on both sides of every sample point."""
    dplus, dminus = _sorted_cdf(samples, cdf)
    return float(max(dplus, dminus))


def kuiper_discrepancy(samples, cdf=st_cdf) -> float:
    """Interval discrepancy ``D+ + D-`` (sup over intervals rather than initial segments)."""
    dplus, dminus = _sorted_cdf(samples, cdf)
    return float(max(dplus, 0.0) + max(dminus, 0.0))


@dataclass
class AngleSet:
    """Angles ``theta_p`` of a form at good primes, with fiber labels ``zeta = chi(p)``."""

    label: str
    primes: np.ndarray
    fiber_logs: np.ndarray
    chi_order: int
    theta: np.ndarray
    excluded: list[int] = field(default_factory=list)

    @property
    def n_endpoint(self) -> int:
        """How many angles sit exactly at 0 or pi."""
        return int(np.count_nonzero((self.theta == 0.0) | (self.theta == math.pi)))

    def stats(self) -> dict:
        out = {"label": self.label, "fibers": []}
        for j in range(self.chi_order):
            th = self.theta[self.fiber_logs == j]
            if th.size == 0:
                continue
            out["fibers"].append(
                {
                    "fiber": str(RotationNumber(j, self.chi_order)),
                    "n": int(th.size),
                    "ks": ks_distance(th),
                    "discrepancy": kuiper_discrepancy(th),
                }
            )
        out["n"] = int(self.theta.size)
        out["ks"] = ks_distance(self.theta)
        out["discrepancy"] = kuiper_discrepancy(self.theta)
        out["endpoint_angles"] = self.n_endpoint
        out["excluded_primes"] = list(self.excluded)
        return out


def form_angles(F, P, chi=None) -> AngleSet:
    """``theta_p = arccos(lambda(p) / (2 zeta))`` for good primes of ``P`` inside the table.

    ``chi`` must have order <= 2 so that ``lambda(p) / zeta`` is real for the
    catalog forms; default is the trivial character (``zeta = 1``).
    """
    from .modforms import lambda_normalized

    primes, logs, lam, excluded = [], [], [], []
    for p in P:
        if p >= F.order or not F.is_good(p) or (chi is not None and chi(p) is None):
            excluded.append(p)
            continue
        z = 1 if chi is None else chi(p).real_sign()
        primes.append(p)
        logs.append(0 if z == 1 else 1)
        lam.append(lambda_normalized(F, p) * z)
    order = 1 if chi is None else chi.order
    if chi is not None and chi.order > 2:
        raise ValueError("form_angles needs a character of order <= 2")
    return AngleSet(
        F.label,
        np.array(primes, dtype=np.int64),
        np.array(logs, dtype=np.int64),
        order,
        angles_of(lam),
        excluded,
    )
