"""Elementary arithmetic: segmented sieve, Moebius, divisors, Kronecker symbol."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PrimeSet",
    "sieve",
    "simple_sieve",
    "moebius",
    "factorize",
    "divisors",
    "prime_power_divisors",
    "kronecker",
]

_SEGMENT = 1 << 18


def simple_sieve(x: int) -> np.ndarray:
    """Plain Eratosthenes over ``[0, x]``; returns primes as int64."""
    if x < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(x + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(x) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    # primes in [lo, hi)
    flags = np.ones(hi - lo, dtype=bool)
    for p in base:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        flags[start - lo :: p] = False
    if lo <= 1:
        flags[: 2 - lo] = False
    return np.flatnonzero(flags).astype(np.int64) + lo


@dataclass(frozen=True)
class PrimeSet:
    """All primes ``<= limit`` in ascending order."""

    limit: int
    primes: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return (int(p) for p in self.primes)

    def __contains__(self, n) -> bool:
        i = np.searchsorted(self.primes, n)
        return bool(i < len(self.primes) and self.primes[i] == n)

    def pi(self, x: int | None = None) -> int:
        """Prime counting function, ``x <= limit``."""
        if x is None:
            return len(self.primes)
        if x > self.limit:
            raise ValueError(f"x={x} exceeds sieve limit {self.limit}")
        return int(np.searchsorted(self.primes, x, side="right"))

    def upto(self, x: int) -> "PrimeSet":
        return PrimeSet(x, self.primes[: self.pi(x)])


def sieve(x: int, threads: int = 1) -> PrimeSet:
    """Segmented sieve of Eratosthenes; memory ``O(sqrt(x) + segment)``.

    Segments may be processed on several threads; they are merged in
    ascending order so the result does not depend on ``threads``.
    """
    if x < 2:
        raise ValueError("sieve limit must be >= 2")
    base = simple_sieve(math.isqrt(x))
    bounds = [(lo, min(lo + _SEGMENT, x + 1)) for lo in range(0, x + 1, _SEGMENT)]
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda b: _sieve_segment(b[0], b[1], base), bounds))
    else:
        parts = [_sieve_segment(lo, hi, base) for lo, hi in bounds]
    primes = np.concatenate(parts)
    primes.setflags(write=False)
    return PrimeSet(x, primes)


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization ``[(p, e), ...]``; meant for small ``n``."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius needs n >= 1")
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) & 1 else 1


def prime_power_divisors(p: int, nu: int) -> list[int]:
    return [p**i for i in range(nu + 1)]


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n``, ascending."""
    if n < 1:
        raise ValueError("divisors needs n >= 1")
    f = factorize(n)
    if len(f) == 1:
        return prime_power_divisors(*f[0])
    divs = [1]
    for p, e in f:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def _jacobi(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol ``(a / n)`` for arbitrary integers ``a``, ``n``."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        if v & 1 and a % 8 in (3, 5):
            result = -result
        n >>= v
    return result * _jacobi(a, n)
