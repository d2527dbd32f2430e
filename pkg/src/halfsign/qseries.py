"""Exact truncated q-series over Python integers.

A :class:`PowerSeries` stores the coefficients of ``q^0 .. q^(order-1)``.
Every binary operation truncates to the smaller order of its operands, so
results are always exact modulo ``q^order``.

Multiplication has two routes that must agree bit for bit:

* :func:`multiply_schoolbook` is the quadratic Cauchy product, and it skips
  zero coefficients so sparse factors such as the Euler product stay cheap.
* :func:`multiply_kronecker` packs both series into one big integer per
  operand (Kronecker substitution) and lets the integer multiplier do the
  convolution. With ``gmpy2`` installed this is GMP's FFT multiply.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

try:  # pragma: no cover - exercised implicitly when gmpy2 is present
    import gmpy2

    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover
    gmpy2 = None
    _mpz = None

__all__ = [
    "PowerSeries",
    "EtaQuotient",
    "euler_series",
    "multiply",
    "multiply_schoolbook",
    "multiply_kronecker",
    "pow",
    "inverse",
    "expand_eta_quotient",
    "KRONECKER_THRESHOLD",
]

# Below this many coefficients in the shorter operand the schoolbook
# product wins; above it Kronecker substitution is used.
KRONECKER_THRESHOLD = 48

_builtin_pow = pow


class PowerSeries:
    """Truncated power series ``sum_{n < order} coeffs[n] q^n``.

    Instances are treated as immutable; coefficients are held in a tuple.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int], order: int | None = None):
        c = [int(x) for x in coeffs]
        if order is not None:
            if order < 1:
                raise ValueError("order must be >= 1")
            if len(c) < order:
                c.extend([0] * (order - len(c)))
            else:
                del c[order:]
        if not c:
            raise ValueError("a power series needs at least one coefficient")
        self._coeffs = tuple(c)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, n: int, order: int, c: int = 1) -> "PowerSeries":
        out = [0] * order
        if n < order:
            out[n] = c
        return cls(out)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __getitem__(self, n):
        return self._coeffs[n]

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self._coeffs[:8])
        more = ", ..." if self.order > 8 else ""
        return f"PowerSeries([{head}{more}], order={self.order})"

    def truncate(self, order: int) -> "PowerSeries":
        if order >= self.order:
            return self
        return PowerSeries(self._coeffs[:order])

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([a + b for a, b in zip(self._coeffs[:n], other._coeffs[:n])])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([a - b for a, b in zip(self._coeffs[:n], other._coeffs[:n])])

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-a for a in self._coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return PowerSeries([other * a for a in self._coeffs])
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PowerSeries":
        return pow(self, e)

    def shift(self, s: int) -> "PowerSeries":
        """Multiply by ``q^s`` keeping the order."""
        if s < 0:
            raise ValueError("negative shifts leave the power-series ring")
        if s == 0:
            return self
        n = self.order
        return PowerSeries([0] * min(s, n) + list(self._coeffs[: max(n - s, 0)]))

    def substitute(self, d: int, order: int | None = None) -> "PowerSeries":
        """Return ``f(q^d)`` truncated to ``order`` (default: same order)."""
        if d < 1:
            raise ValueError("substitution scale must be positive")
        order = self.order if order is None else order
        out = [0] * order
        for i, c in enumerate(self._coeffs):
            j = i * d
            if j >= order:
                break
            out[j] = c
        return PowerSeries(out)


def euler_series(order: int) -> PowerSeries:
    """Expand ``prod_{n>=1} (1 - q^n)`` to ``order`` terms by Euler's pentagonal theorem."""
    if order < 1:
        raise ValueError("order must be >= 1")
    out = [0] * order
    out[0] = 1
    k = 1
    while True:
        m1 = k * (3 * k - 1) // 2
        if m1 >= order:
            break
        s = -1 if k & 1 else 1
        out[m1] += s
        m2 = k * (3 * k + 1) // 2
        if m2 < order:
            out[m2] += s
        k += 1
    return PowerSeries(out)


def multiply_schoolbook(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    # iterate over the sparser operand
    if sum(1 for x in ac[:n] if x) > sum(1 for x in bc[:n] if x):
        ac, bc = bc, ac
    out = [0] * n
    for i in range(n):
        ai = ac[i]
        if not ai:
            continue
        for j in range(n - i):
            bj = bc[j]
            if bj:
                out[i + j] += ai * bj
    return PowerSeries(out)


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    """Evaluate ``sum c_i X^i`` at ``X = 2^(8 nbytes)`` for signed ``c_i``."""
    pos = b"".join(c.to_bytes(nbytes, "little") if c > 0 else bytes(nbytes) for c in coeffs)
    neg = b"".join((-c).to_bytes(nbytes, "little") if c < 0 else bytes(nbytes) for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, n: int, nbytes: int) -> list[int]:
    """Recover the low ``n`` signed digits of ``value`` in base ``2^(8 nbytes)``.

    Digits are assumed to satisfy ``|c| < 2^(8 nbytes - 1)``.
    """
    bits = 8 * nbytes
    half = 1 << (bits - 1)
    offset = int.from_bytes((half.to_bytes(nbytes, "little")) * n, "little")
    w = (value + offset) & ((1 << (bits * n)) - 1)
    raw = w.to_bytes(nbytes * n, "little")
    from_bytes = int.from_bytes
    return [
        from_bytes(raw[i : i + nbytes], "little") - half for i in range(0, nbytes * n, nbytes)
    ]


def multiply_kronecker(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order)
    ac, bc = a.coeffs[:n], b.coeffs[:n]
    ma = max(abs(x) for x in ac)
    mb = max(abs(x) for x in bc)
    if ma == 0 or mb == 0:
        return PowerSeries([0] * n)
    # |product coefficient| <= n * ma * mb, plus a sign bit
    bits = ma.bit_length() + mb.bit_length() + n.bit_length() + 1
    nbytes = (bits + 7) // 8
    square = ac == bc
    va = _pack(ac, nbytes)
    if _mpz is not None:
        za = _mpz(va)
        prod = int(za * za if square else za * _mpz(_pack(bc, nbytes)))
    else:
        prod = va * va if square else va * _pack(bc, nbytes)
    return PowerSeries(_unpack(prod, n, nbytes))


def multiply(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Truncated Cauchy product, order ``min(a.order, b.order)``."""
    n = min(a.order, b.order)
    if n <= KRONECKER_THRESHOLD:
        return multiply_schoolbook(a, b)
    return multiply_kronecker(a, b)


def inverse(a: PowerSeries) -> PowerSeries:
    """Multiplicative inverse by Newton iteration; constant term must be +1 or -1."""
    c0 = a.coeffs[0]
    if c0 not in (1, -1):
        raise ValueError("only series with constant term +1 or -1 are invertible here")
    n = a.order
    g = PowerSeries([c0])
    m = 1
    while m < n:
        m = min(2 * m, n)
        fm = a.truncate(m)
        e = multiply(fm, PowerSeries(g.coeffs, m))
        # g <- g (2 - f g)
        corr = [-x for x in e.coeffs]
        corr[0] += 2
        g = multiply(PowerSeries(g.coeffs, m), PowerSeries(corr))
    return g


def pow(a: PowerSeries, e: int) -> PowerSeries:
    """``a**e`` by binary exponentiation; negative ``e`` goes through :func:`inverse`."""
    if e < 0:
        return pow(inverse(a), -e)
    if e == 0:
        return PowerSeries.one(a.order)
    result = None
    base = a
    while True:
        if e & 1:
            result = base if result is None else multiply(result, base)
        e >>= 1
        if not e:
            break
        base = multiply(base, base)
    return result


@dataclass(frozen=True)
class EtaQuotient:
    """``prod eta(d z)^r`` given as ``((d, r), ...)``."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        facs = tuple((int(d), int(r)) for d, r in self.factors)
        for d, r in facs:
            if d < 1:
                raise ValueError(f"eta scale must be positive, got {d}")
            if r == 0:
                raise ValueError("eta exponents must be nonzero")
        object.__setattr__(self, "factors", facs)

    @property
    def leading_exponent(self) -> Fraction:
        return Fraction(sum(d * r for d, r in self.factors), 24)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)


def expand_eta_quotient(eq: EtaQuotient, order: int) -> PowerSeries:
    """q-expansion of an eta quotient with integral, nonnegative leading exponent."""
    if order < 1:
        raise ValueError("order must be >= 1")
    lead = eq.leading_exponent
    if lead.denominator != 1 or lead < 0:
        raise ValueError(
            f"eta quotient has leading exponent {lead}; need a nonnegative integer"
        )
    s = int(lead)
    if s >= order:
        return PowerSeries([0] * order)
    m = order - s
    result = PowerSeries.one(m)
    for d, r in eq.factors:
        base = euler_series(-(-m // d)).substitute(d, m)
        result = multiply(result, pow(base, r))
    return PowerSeries(result.coeffs, order).shift(s)
