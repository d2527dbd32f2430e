"""The exact and numerical identity suite run by ``halfsign verify``."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .characters import DirichletCharacter, RotationNumber
from .modforms import NewformTable, catalog_form, deligne_violations, verify_hecke
from .qseries import PowerSeries, euler_series, multiply_kronecker, multiply_schoolbook
from .satotate import (
    interval_union,
    lambda_prime_power,
    st_cdf,
    st_cdf_quadrature,
)
from .shimura import LiftContext, lift_forward_table, lift_inverse_table

__all__ = ["CheckResult", "CHECKS", "catalog_contexts", "run_suite"]

TRIG_TOL = 1e-10
CDF_TOL = 1e-12
MEASURE_TOL = 1e-12


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


def catalog_contexts(order: int) -> list[LiftContext]:
    """Lift contexts over every catalog form with trivial and quadratic ``chi``."""
    delta = catalog_form("delta", order)
    e11 = catalog_form("11a", order)
    f5 = catalog_form("5a", order)
    return [
        LiftContext(delta, DirichletCharacter(4, [0]), 1),
        LiftContext(delta, DirichletCharacter(4, [1]), 5),
        LiftContext(e11, DirichletCharacter(44, [0, 0]), 1),
        LiftContext(e11, DirichletCharacter(4, [0]), -3),
        LiftContext(f5, DirichletCharacter(20, [0, 0]), 1),
        LiftContext(f5, DirichletCharacter(20, [0, 2]), 3),
    ]


def check_series(order: int, corrupt: bool) -> CheckResult:
    n = min(order, 4096)
    e = euler_series(n)
    pent = set()
    k = 0
    while k * (3 * k - 1) // 2 < n or k * (3 * k + 1) // 2 < n:
        pent.add(k * (3 * k - 1) // 2)
        pent.add(k * (3 * k + 1) // 2)
        k += 1
    support_ok = all((c != 0) == (m in pent) for m, c in enumerate(e.coeffs))
    rng = random.Random(20240611)
    a = PowerSeries([rng.randint(-(10**40), 10**40) for _ in range(n)])
    b = PowerSeries([rng.randint(-(10**40), 10**40) for _ in range(n)])
    fast = multiply_kronecker(a, b)
    if corrupt:
        fast = PowerSeries([fast[0] + 1, *fast.coeffs[1:]])
    same = fast == multiply_schoolbook(a, b)
    return CheckResult(
        "series_multiply",
        support_ok and same,
        f"pentagonal support {'ok' if support_ok else 'BAD'}; fast==schoolbook at order {n}: {same}",
    )


def check_moebius(order: int, corrupt: bool) -> CheckResult:
    M = order - 1
    for ctx in catalog_contexts(order):
        a = lift_inverse_table(ctx, M)
        if corrupt:
            a[7] += 1
        back = lift_forward_table(ctx, a, M)
        if back[1:] != list(ctx.F.coeffs[1 : M + 1]):
            n = next(i for i in range(1, M + 1) if back[i] != ctx.F.coeffs[i])
            return CheckResult("moebius_roundtrip", False, f"{ctx.describe()} fails at n={n}")
        rng = random.Random(M)
        a2 = [0] + [rng.randint(-(10**12), 10**12) for _ in range(M)]
        # other direction: arbitrary a-values, forward then inverse
        fwd = lift_forward_table(ctx, a2, M)
        mu_ctx = LiftContext(NewformTable(ctx.F.label, ctx.F.weight, ctx.F.level, tuple(fwd)), ctx.chi, ctx.t)
        if lift_inverse_table(mu_ctx, M)[1:] != a2[1:]:
            return CheckResult("moebius_roundtrip", False, f"{ctx.describe()} inverse(forward) differs")
    return CheckResult("moebius_roundtrip", True, f"6 contexts, n <= {M}, both directions exact")


def _hecke(label: str):
    def check(order: int, corrupt: bool) -> CheckResult:
        F = catalog_form(label, order)
        if corrupt:
            F = F.with_coefficient(6, F.coeffs[6] + 1)
        rep = verify_hecke(F)
        return CheckResult(f"hecke_{label}", rep.ok, str(rep))

    return check


def check_deligne(order: int, corrupt: bool) -> CheckResult:
    bad = {}
    for label in ("delta", "11a", "5a"):
        F = catalog_form(label, order)
        if corrupt:
            F = F.with_coefficient(2, 10**9)
        v = deligne_violations(F)
        if v:
            bad[label] = v[:5]
    return CheckResult("deligne_bound", not bad, "A(p)^2 <= 4 p^(2k-1) exactly" if not bad else f"violations {bad}")


def check_trig(order: int, corrupt: bool) -> CheckResult:
    grid = np.linspace(0.0, math.pi, 1000)
    worst = 0.0
    for o in range(1, 9):
        for j in range(o):
            zeta = RotationNumber(j, o)
            z = zeta.to_complex()
            two_cos = 2 * z * np.cos(grid)
            prev, cur = np.ones_like(two_cos), two_cos
            for nu in range(1, 10):
                closed = lambda_prime_power(grid, nu, zeta)
                if corrupt and nu == 5:
                    closed = closed + 1e-6
                worst = max(worst, float(np.abs(closed - cur).max()))
                prev, cur = cur, two_cos * cur - z * z * prev
    return CheckResult(
        "trig_identity", worst <= TRIG_TOL, f"max |recursion - closed form| = {worst:.2e} (tol {TRIG_TOL:g})"
    )


def check_cdf(order: int, corrupt: bool) -> CheckResult:
    grid = np.linspace(0.0, math.pi, 1000)
    closed = st_cdf(grid)
    if corrupt:
        closed = closed + 1e-9
    quad = np.array([st_cdf_quadrature(th) for th in grid])
    worst = float(np.abs(closed - quad).max())
    return CheckResult("st_cdf_quadrature", worst <= CDF_TOL, f"max |closed - quad| = {worst:.2e} (tol {CDF_TOL:g})")


def check_measure(order: int, corrupt: bool) -> CheckResult:
    worst = 0.0
    for nu in range(1, 22, 2):
        for variant in ("I", "I'"):
            m = interval_union(nu, 0.0, variant).measure()
            if corrupt and nu == 7:
                m += 1e-9
            worst = max(worst, abs(m - 0.5))
    return CheckResult(
        "st_measure_half", worst <= MEASURE_TOL, f"max |mu(I_0) - 1/2| over odd nu <= 21 = {worst:.2e}"
    )


def check_monotone(order: int, corrupt: bool) -> CheckResult:
    eps = np.linspace(0.0, 0.95, 20)
    for nu in range(1, 22, 2):
        for variant in ("I", "I'"):
            unions = [interval_union(nu, float(e), variant) for e in eps]
            if corrupt:
                unions.reverse()
            for lo, hi in zip(unions, unions[1:]):
                if not hi.is_subset_of(lo) or hi.measure() > lo.measure():
                    return CheckResult("interval_monotonicity", False, f"nu={nu} {variant}: containment fails")
    return CheckResult("interval_monotonicity", True, "eps1 < eps2 => I_eps2 inside I_eps1, odd nu <= 21")


CHECKS: dict[str, Callable[[int, bool], CheckResult]] = {
    "series_multiply": check_series,
    "moebius_roundtrip": check_moebius,
    "hecke_delta": _hecke("delta"),
    "hecke_11a": _hecke("11a"),
    "hecke_5a": _hecke("5a"),
    "deligne_bound": check_deligne,
    "trig_identity": check_trig,
    "st_cdf_quadrature": check_cdf,
    "st_measure_half": check_measure,
    "interval_monotonicity": check_monotone,
}


def run_suite(order: int = 10001, fault: str | None = None) -> list[CheckResult]:
    """Run every identity group; ``fault`` names one group to feed corrupted input."""
    if fault is not None and fault not in CHECKS:
        raise ValueError(f"unknown check {fault!r}")
    return [fn(order, name == fault) for name, fn in CHECKS.items()]
