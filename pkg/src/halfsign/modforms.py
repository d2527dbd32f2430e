"""A small catalog of integral-weight eigenforms given by eta quotients."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .arith import sieve
from .qseries import EtaQuotient, expand_eta_quotient

__all__ = [
    "NewformTable",
    "HeckeReport",
    "CATALOG",
    "catalog_form",
    "lambda_normalized",
    "deligne_violations",
    "verify_hecke",
    "load_table_csv",
    "write_table_csv",
]


@dataclass(frozen=True)
class CatalogEntry:
    eta: EtaQuotient
    weight: int
    level: int


CATALOG: dict[str, CatalogEntry] = {
    "delta": CatalogEntry(EtaQuotient(((1, 24),)), 12, 1),
    "11a": CatalogEntry(EtaQuotient(((1, 2), (11, 2))), 2, 11),
    "5a": CatalogEntry(EtaQuotient(((1, 4), (5, 4))), 4, 5),
}


@dataclass(frozen=True)
class NewformTable:
    """Coefficients ``A(n)``, ``0 <= n < order``, of a normalized eigenform.

    ``weight`` is the integral weight ``2k``. The nebentypus is trivial
    modulo ``level`` for every form handled here, so ``chi^2(p)`` in the
    Hecke recursion is 1 at good primes and 0 at primes dividing the level.
    """

    label: str
    weight: int
    level: int
    coeffs: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def k(self) -> int:
        """Half the weight, i.e. the ``k`` of a weight ``k + 1/2`` preimage."""
        return self.weight // 2

    @property
    def normalization_exponent(self) -> float:
        return (self.weight - 1) / 2

    def A(self, n: int) -> int:
        if not 1 <= n < self.order:
            raise IndexError(f"A({n}) outside table of order {self.order}")
        return self.coeffs[n]

    def nebentypus(self, n: int) -> int:
        return 1 if math.gcd(n, self.level) == 1 else 0

    def is_good(self, p: int) -> bool:
        return self.level % p != 0

    def with_coefficient(self, n: int, value: int) -> "NewformTable":
        """Copy with ``A(n)`` replaced; used for fault injection."""
        c = list(self.coeffs)
        c[n] = value
        return NewformTable(self.label, self.weight, self.level, tuple(c))


def _validate_order(order: int) -> None:
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")


@lru_cache(maxsize=8)
def catalog_form(label: str, order: int) -> NewformTable:
    """Expand a catalog form to ``order`` coefficients (``A(0) .. A(order-1)``)."""
    _validate_order(order)
    try:
        entry = CATALOG[label]
    except KeyError:
        raise KeyError(f"unknown form {label!r}; known: {', '.join(CATALOG)}") from None
    series = expand_eta_quotient(entry.eta, order)
    return NewformTable(label, entry.weight, entry.level, series.coeffs)


def lambda_normalized(F: NewformTable, n: int) -> float:
    """``lambda(n) = A(n) / n^(k - 1/2)``."""
    return F.A(n) / n**F.normalization_exponent


def deligne_violations(F: NewformTable, limit: int | None = None) -> list[int]:
    """Good primes ``p <= limit`` with ``A(p)^2 > 4 p^(2k-1)`` (exact integers)."""
    limit = F.order - 1 if limit is None else min(limit, F.order - 1)
    out = []
    for p in sieve(limit):
        if F.is_good(p) and F.coeffs[p] ** 2 > 4 * p ** (F.weight - 1):
            out.append(p)
    return out


@dataclass
class HeckeReport:
    label: str
    limit: int
    multiplicative_pairs: int = 0
    recursion_checks: int = 0
    violation: tuple[str, tuple[int, int]] | None = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    def __str__(self) -> str:
        if self.ok:
            return (
                f"{self.label}: Hecke relations hold to {self.limit} "
                f"({self.multiplicative_pairs} coprime pairs, {self.recursion_checks} prime powers)"
            )
        kind, where = self.violation
        return f"{self.label}: {kind} violated at {where}"


def verify_hecke(F: NewformTable, limit: int | None = None) -> HeckeReport:
    """Check ``A(mn) = A(m)A(n)`` for coprime ``m, n`` and the prime-power recursion.

    Stops at the first violation: ``("multiplicativity", (m, n))`` or
    ``("recursion", (p, nu))`` where ``A(p^(nu+1))`` is wrong.
    """
    M = F.order - 1 if limit is None else min(limit, F.order - 1)
    if M < 100:
        raise ValueError("verify_hecke needs at least 100 coefficients")
    A = F.coeffs
    rep = HeckeReport(F.label, M)
    if A[1] != 1:
        rep.violation = ("normalization", (1, 1))
        return rep
    for m in range(2, math.isqrt(M) + 1):
        Am = A[m]
        for n in range(m + 1, M // m + 1):
            if math.gcd(m, n) != 1:
                continue
            rep.multiplicative_pairs += 1
            if A[m * n] != Am * A[n]:
                rep.violation = ("multiplicativity", (m, n))
                return rep
    w1 = F.weight - 1
    for p in sieve(M):
        p = int(p)
        chi = F.nebentypus(p)
        ap = A[p]
        prev, cur, nu = 1, ap, 1
        while p ** (nu + 1) <= M:
            rep.recursion_checks += 1
            expect = ap * cur - chi * p**w1 * prev
            nxt = A[p ** (nu + 1)]
            if nxt != expect:
                rep.violation = ("recursion", (p, nu))
                return rep
            prev, cur, nu = cur, nxt, nu + 1
    return rep


def write_table_csv(F: NewformTable, path, start: int = 1) -> None:
    with open(path, "w", newline="") as fh:
        _write_rows(F, fh, start)


def _write_rows(F: NewformTable, fh, start: int = 1) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["n", "coefficient"])
    for n in range(start, F.order):
        w.writerow([n, str(F.coeffs[n])])


def load_table_csv(path, label: str, weight: int, level: int, verify: bool = True) -> NewformTable:
    """Read ``n,coefficient`` rows (``n`` from 1, contiguous) and Hecke-check them."""
    rows = []
    with open(Path(path), newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if [h.strip() for h in header[:2]] != ["n", "coefficient"]:
            raise ValueError(f"{path}: expected header 'n,coefficient', got {header}")
        for i, row in enumerate(reader, start=1):
            n, c = int(row[0]), int(row[1])
            if n != i:
                raise ValueError(f"{path}: row {i} has n={n}; indices must run 1, 2, 3, ...")
            rows.append(c)
    F = NewformTable(label, weight, level, (0, *rows))
    if verify:
        rep = verify_hecke(F)
        if not rep.ok:
            raise ValueError(f"{path}: {rep}")
    return F
