"""Coefficient relation of the Shimura lift and the families a(t p^(2 nu)).

Everything here is exact integer arithmetic. Because the catalog forms have
trivial nebentypus, the half-integral character ``chi`` must satisfy
``chi^2 = 1``; its values, and those of the twist ``chi_{t,N}``, are then in
``{-1, 0, 1}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .arith import PrimeSet, factorize, moebius
from .characters import DirichletCharacter, RotationNumber, TwistedCharacter
from .modforms import NewformTable

__all__ = [
    "LiftContext",
    "PrimePowerValue",
    "HalfIntegralFamily",
    "lift_forward",
    "lift_inverse",
    "lift_forward_table",
    "lift_inverse_table",
    "specialize_prime_power",
    "build_family",
]


def _is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(abs(n)))


@dataclass(frozen=True)
class LiftContext:
    """Data of the correspondence: the lift ``F`` (weight ``2k``), ``chi`` mod ``4N``, and ``t``.

    The preimage is normalized so that ``a(t) = 1``.
    """

    F: NewformTable
    chi: DirichletCharacter
    t: int = 1

    def __post_init__(self):
        if self.F.weight % 2:
            raise ValueError("the lift must have even weight 2k")
        if self.chi.order > 2:
            raise ValueError(
                f"exact mode needs chi^2 trivial (order <= 2), got order {self.chi.order}; "
                "use the synthetic driver for higher-order characters"
            )
        if not _is_squarefree(self.t):
            raise ValueError(f"t must be a nonzero square-free integer, got {self.t}")

    @property
    def k(self) -> int:
        return self.F.weight // 2

    @property
    def N(self) -> int:
        return self.chi.N

    @property
    def twist(self) -> TwistedCharacter:
        return TwistedCharacter(self.chi, self.k, self.t)

    def chi_tN(self, d: int) -> int:
        return self.twist.real_value(d)

    def chi0(self, d: int) -> int:
        return self.twist.chi0(d)

    def is_good(self, p: int) -> bool:
        return (4 * self.N * self.t) % p != 0 and self.F.is_good(p)

    def describe(self) -> dict:
        return {
            "form": self.F.label,
            "weight": self.F.weight,
            "level": self.F.level,
            "k": self.k,
            "N": self.N,
            "t": self.t,
            "character": self.chi.spec,
            "character_order": self.chi.order,
            "notes": self.mismatches(),
        }

    def mismatches(self) -> list[str]:
        """Ways the catalog form differs from the level-2N setting; the formulas are applied regardless."""
        out = []
        if self.F.level != 2 * self.N:
            out.append(f"lift has level {self.F.level}, not 2N = {2 * self.N}")
        return out


def lift_forward(ctx: LiftContext, a_values: Mapping[int, int], n: int) -> int:
    """``A_t(n) = sum_{d | n} chi_{t,N}(d) d^(k-1) a(t n^2 / d^2)``.

    ``a_values[m]`` holds ``a(t m^2)``.
    """
    km1 = ctx.k - 1
    total = 0
    for d in _divisors(n):
        c = ctx.chi_tN(d)
        if c:
            m = n // d
            try:
                am = a_values[m]
            except (KeyError, IndexError):
                raise KeyError(f"missing a(t*{m}^2) needed for A_t({n})") from None
            total += c * d**km1 * am
    return total


def lift_inverse(ctx: LiftContext, n: int) -> int:
    """``a(t n^2) = sum_{d | n} mu(d) chi_{t,N}(d) d^(k-1) A(n / d)``."""
    if n >= ctx.F.order:
        raise IndexError(f"n={n} exceeds table order {ctx.F.order}")
    km1 = ctx.k - 1
    A = ctx.F.coeffs
    total = 0
    for d in _squarefree_divisors(n):
        c = ctx.chi_tN(d)
        if c:
            total += moebius(d) * c * d**km1 * A[n // d]
    return total


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return divs


def _squarefree_divisors(n: int) -> list[int]:
    divs = [1]
    for p, _ in factorize(n):
        divs += [d * p for d in divs]
    return divs


def _twist_table(ctx: LiftContext, M: int) -> list[int]:
    km1 = ctx.k - 1
    return [0] + [ctx.chi_tN(d) * d**km1 for d in range(1, M + 1)]


def _mobius_table(M: int) -> list[int]:
    mu = [1] * (M + 1)
    mu[0] = 0
    is_comp = bytearray(M + 1)
    for p in range(2, M + 1):
        if not is_comp[p]:
            for j in range(p, M + 1, p):
                if j > p:
                    is_comp[j] = 1
                mu[j] = -mu[j]
            for j in range(p * p, M + 1, p * p):
                mu[j] = 0
    return mu


def lift_inverse_table(ctx: LiftContext, M: int) -> list[int]:
    """``[a(t n^2) for n in 0..M]`` (index 0 unused) by a Dirichlet-convolution sieve."""
    if M >= ctx.F.order:
        raise IndexError(f"M={M} exceeds table order {ctx.F.order}")
    g = _twist_table(ctx, M)
    mu = _mobius_table(M)
    A = ctx.F.coeffs
    out = [0] * (M + 1)
    for d in range(1, M + 1):
        c = mu[d] * g[d]
        if c:
            for m in range(1, M // d + 1):
                out[d * m] += c * A[m]
    return out


def lift_forward_table(ctx: LiftContext, a_values, M: int) -> list[int]:
    """``[A_t(n) for n in 0..M]`` from ``a_values[m] = a(t m^2)``."""
    g = _twist_table(ctx, M)
    out = [0] * (M + 1)
    for d in range(1, M + 1):
        c = g[d]
        if c:
            for m in range(1, M // d + 1):
                out[d * m] += c * a_values[m]
    return out


@dataclass(frozen=True)
class PrimePowerValue:
    """``a(t p^(2 nu))`` at one good prime together with its normalizations."""

    p: int
    nu: int
    fiber: RotationNumber
    value: int  # a(t p^(2 nu))
    scalar: int  # a(t p^(2 nu)) / zeta^nu, an integer since zeta^nu = +-1
    normalized: float  # scalar / p^(nu (k - 1/2))
    normalized_float_path: float  # lambda(p^nu)/zeta^nu - chi0(p)/sqrt(p) lambda(p^(nu-1))/zeta^(nu-1)

    @property
    def sign(self) -> int:
        return (self.scalar > 0) - (self.scalar < 0)


def specialize_prime_power(ctx: LiftContext, nu: int, p: int) -> PrimePowerValue:
    if nu < 1 or nu % 2 == 0:
        raise ValueError(f"nu must be a positive odd integer, got {nu}")
    if not ctx.is_good(p):
        raise ValueError(f"p={p} is a bad prime for this context")
    F = ctx.F
    if p**nu >= F.order:
        raise IndexError(f"p^nu = {p}^{nu} exceeds table order {F.order}")
    k = ctx.k
    zeta = ctx.chi(p)
    z = zeta.real_sign()
    znu = z**nu
    A_hi, A_lo = F.coeffs[p**nu], F.coeffs[p ** (nu - 1)]
    value = A_hi - ctx.chi_tN(p) * p ** (k - 1) * A_lo
    scalar = value * znu
    normalized = scalar / p ** (nu * (k - 0.5))
    e = k - 0.5
    lam_hi = A_hi / p ** (nu * e) * znu
    lam_lo = A_lo / p ** ((nu - 1) * e) * z ** (nu - 1)
    float_path = lam_hi - ctx.chi0(p) / math.sqrt(p) * lam_lo
    return PrimePowerValue(p, nu, zeta, value, scalar, normalized, float_path)


@dataclass
class HalfIntegralFamily:
    """Per-prime sign data for ``{a(t p^(2 nu))}`` over good primes ``p <= x``.

    Columns are aligned and sorted by ``p``. ``fiber_logs[i] = j`` encodes
    ``zeta = chi(p) = exp(2 pi i j / chi_order)``. ``scalars`` holds the real
    number ``a(t p^(2 nu)) / zeta^nu``; in exact mode these are Python ints,
    in synthetic mode the normalized floats. ``pi_x`` counts every prime
    ``<= x`` including the excluded ones.
    """

    nu: int
    chi: DirichletCharacter
    x: int
    pi_x: int
    primes: np.ndarray
    fiber_logs: np.ndarray
    scalars: list
    normalized: np.ndarray
    signs: np.ndarray
    excluded_bad: list[int] = field(default_factory=list)
    excluded_range: list[int] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    near_zero: int = 0

    @property
    def chi_order(self) -> int:
        return self.chi.order

    @property
    def n_excluded(self) -> int:
        return len(self.excluded_bad) + len(self.excluded_range)

    def __len__(self) -> int:
        return len(self.primes)

    def fiber(self, i: int) -> RotationNumber:
        return RotationNumber(int(self.fiber_logs[i]), self.chi.order)

    def upto(self, y: int) -> "HalfIntegralFamily":
        """Restriction to primes ``<= y`` (exclusions restricted alike)."""
        n = int(np.searchsorted(self.primes, y, side="right"))
        bad = [p for p in self.excluded_bad if p <= y]
        rng = [p for p in self.excluded_range if p <= y]
        return HalfIntegralFamily(
            self.nu, self.chi, y, n + len(bad) + len(rng),
            self.primes[:n], self.fiber_logs[:n], self.scalars[:n],
            self.normalized[:n], self.signs[:n], bad, rng, dict(self.params),
        )


def build_family(ctx: LiftContext, nu: int, P: PrimeSet) -> HalfIntegralFamily:
    """Exact family over the primes of ``P``; primes with ``p^nu`` beyond the table are excluded."""
    if nu < 1 or nu % 2 == 0:
        raise ValueError(f"nu must be a positive odd integer, got {nu}")
    rows = []
    bad, out_of_range = [], []
    for p in P:
        if not ctx.is_good(p):
            bad.append(p)
        elif p**nu >= ctx.F.order:
            out_of_range.append(p)
        else:
            rows.append(specialize_prime_power(ctx, nu, p))
    if not rows:
        raise ValueError("no admissible primes: raise the table order or lower nu")
    r = ctx.chi.order
    return HalfIntegralFamily(
        nu=nu,
        chi=ctx.chi,
        x=P.limit,
        pi_x=len(P),
        primes=np.array([v.p for v in rows], dtype=np.int64),
        fiber_logs=np.array([int(v.fiber.value * r) for v in rows], dtype=np.int64),
        scalars=[v.scalar for v in rows],
        normalized=np.array([v.normalized for v in rows]),
        signs=np.array([v.sign for v in rows], dtype=np.int8),
        excluded_bad=bad,
        excluded_range=out_of_range,
        params={"mode": "exact", "nu": nu, **ctx.describe()},
    )
