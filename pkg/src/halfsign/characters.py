"""Dirichlet characters modulo 4N with exact values.

Values are roots of unity stored as rotation numbers ``r`` in ``[0, 1)``
meaning ``exp(2 pi i r)``. Characters are built by CRT from
``(Z/4Z)^* x prod (Z/pZ)^*`` with ``N`` odd and square-free, so each cyclic
component has a single generator and a character is just a vector of
exponents, one per component.
"""

from __future__ import annotations

import cmath
import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Sequence

import numpy as np

from .arith import PrimeSet, factorize, kronecker

__all__ = [
    "RotationNumber",
    "DirichletCharacter",
    "TwistedCharacter",
    "enumerate_characters",
    "character_from_spec",
    "fiber",
    "real_part_of_rotation",
    "unit_group_components",
]


@dataclass(frozen=True, order=True)
class RotationNumber:
    """The root of unity ``exp(2 pi i * value)`` with ``value`` reduced mod 1."""

    value: Fraction

    def __init__(self, num, den: int = 1):
        v = Fraction(num, den) % 1
        object.__setattr__(self, "value", v)

    @classmethod
    def parse(cls, text: str) -> "RotationNumber":
        return cls(Fraction(text))

    @property
    def num(self) -> int:
        return self.value.numerator

    @property
    def den(self) -> int:
        return self.value.denominator

    def __mul__(self, other: "RotationNumber") -> "RotationNumber":
        return RotationNumber(self.value + other.value)

    def __pow__(self, e: int) -> "RotationNumber":
        return RotationNumber(self.value * e)

    def conjugate(self) -> "RotationNumber":
        return RotationNumber(-self.value)

    @property
    def order(self) -> int:
        return self.den

    @property
    def is_real(self) -> bool:
        return self.den <= 2

    def real_sign(self) -> int:
        """``+1`` or ``-1`` for the real roots of unity."""
        if not self.is_real:
            raise ValueError(f"root of unity {self} is not real")
        return 1 if self.num == 0 else -1

    def to_complex(self) -> complex:
        # exact values at quarter turns keep reports free of 1e-17 noise
        q = self.value * 4
        if q.denominator == 1:
            return (1, 1j, -1, -1j)[int(q)]
        return cmath.exp(2j * math.pi * float(self.value))

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    phi = p - 1
    qs = [q for q, _ in factorize(phi)]
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in qs):
            return g
    raise ArithmeticError(f"no primitive root mod {p}")  # pragma: no cover


def _check_level(N: int) -> list[int]:
    if N < 1 or N % 2 == 0:
        raise ValueError(f"N must be odd and positive, got {N}")
    f = factorize(N) if N > 1 else []
    if any(e > 1 for _, e in f):
        raise ValueError(f"N must be square-free, got {N}")
    return [p for p, _ in f]


def unit_group_components(modulus: int) -> list[tuple[int, int, int]]:
    """Cyclic components of ``(Z/modulus)^*`` for ``modulus = 4N``.

    Returns ``(prime_modulus, order, generator mod modulus)`` triples with the
    2-part first, then odd primes ascending.
    """
    if modulus % 4:
        raise ValueError(f"modulus must be divisible by 4, got {modulus}")
    N = modulus // 4
    primes = _check_level(N)
    comps = []
    for q, order, g in [(4, 2, 3)] + [(p, p - 1, _primitive_root(p)) for p in primes]:
        # lift g mod q to a residue that is 1 modulo the cofactor
        cof = modulus // q
        lifted = (g * cof * pow(cof, -1, q) + q * pow(q, -1, cof) * 1) % modulus if cof > 1 else g
        comps.append((q, order, lifted))
    return comps


class DirichletCharacter:
    """Character modulo ``4N`` given by exponents on the CRT generators.

    ``chi(g_i) = exp(2 pi i e_i / o_i)`` where ``g_i`` generates the
    ``i``-th cyclic component of order ``o_i``.
    """

    def __init__(self, modulus: int, exponents: Sequence[int]):
        self.modulus = int(modulus)
        self.components = unit_group_components(self.modulus)
        if len(exponents) != len(self.components):
            raise ValueError(
                f"modulus {modulus} has {len(self.components)} components, "
                f"got {len(exponents)} exponents"
            )
        self.exponents = tuple(int(e) % o for e, (_, o, _) in zip(exponents, self.components))
        orders = [o // math.gcd(e, o) for e, (_, o, _) in zip(self.exponents, self.components)]
        self.order = reduce(math.lcm, orders, 1)

    @property
    def N(self) -> int:
        return self.modulus // 4

    @cached_property
    def log_table(self) -> np.ndarray:
        """``log_table[a] = j`` with ``chi(a) = exp(2 pi i j / order)``; ``-1`` off the units."""
        m, r = self.modulus, self.order
        table = np.zeros(m, dtype=np.int64)
        units = np.ones(m, dtype=bool)
        residues = np.arange(m)
        for (q, o, _), e in zip(self.components, self.exponents):
            g = 3 if q == 4 else _primitive_root(q)
            dlog = np.full(q, -1, dtype=np.int64)
            x = 1
            for k in range(o):
                dlog[x] = k
                x = x * g % q
            logs = dlog[residues % q]
            units &= logs >= 0
            # e/o as a multiple of 1/r: (e * r / o) is integral since r is a multiple of o/gcd(e,o)
            table = (table + logs * (e * r // o)) % r
        table[~units] = -1
        table.setflags(write=False)
        return table

    def __call__(self, a: int) -> RotationNumber | None:
        """``chi(a)`` as a rotation number, or ``None`` when ``gcd(a, modulus) > 1``."""
        j = int(self.log_table[a % self.modulus])
        if j < 0:
            return None
        return RotationNumber(j, self.order)

    def real_value(self, a: int) -> int:
        """``chi(a)`` as an integer in ``{-1, 0, 1}``; only for characters of order <= 2."""
        if self.order > 2:
            raise ValueError("real_value needs a character of order <= 2")
        j = int(self.log_table[a % self.modulus])
        return 0 if j < 0 else (1 if j == 0 else -1)

    @property
    def image(self) -> list[RotationNumber]:
        return [RotationNumber(j, self.order) for j in range(self.order)]

    @property
    def phi_modulus(self) -> int:
        return int(np.count_nonzero(self.log_table >= 0))

    def kernel(self) -> list[int]:
        return [int(a) for a in np.flatnonzero(self.log_table == 0)]

    def is_trivial(self) -> bool:
        return self.order == 1

    def __pow__(self, e: int) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, [x * e for x in self.exponents])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.exponents == other.exponents
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.exponents))

    def __repr__(self) -> str:
        exps = ",".join(map(str, self.exponents))
        return f"DirichletCharacter({self.modulus}:{exps}, order={self.order})"

    @property
    def spec(self) -> str:
        return f"{self.modulus}:{','.join(map(str, self.exponents))}"


class TwistedCharacter:
    """``chi_{t,N}(d) = chi(d) * kronecker((-1)^k N^2 t, d)``."""

    def __init__(self, base: DirichletCharacter, k: int, t: int):
        if t == 0:
            raise ValueError("t must be nonzero")
        self.base = base
        self.k = int(k)
        self.t = int(t)

    @property
    def N(self) -> int:
        return self.base.N

    @property
    def discriminant(self) -> int:
        return (-1) ** self.k * self.N**2 * self.t

    def chi0(self, d: int) -> int:
        """The quadratic factor ``((-1)^k N^2 t / d)``."""
        return kronecker(self.discriminant, d)

    def __call__(self, d: int) -> RotationNumber | None:
        v = self.base(d)
        s = self.chi0(d)
        if v is None or s == 0:
            return None
        return v if s == 1 else v * RotationNumber(1, 2)

    def real_value(self, d: int) -> int:
        return self.base.real_value(d) * self.chi0(d)


def enumerate_characters(modulus: int) -> list[DirichletCharacter]:
    """All ``phi(modulus)`` characters mod ``4N`` in lexicographic exponent order."""
    comps = unit_group_components(modulus)
    return [
        DirichletCharacter(modulus, exps)
        for exps in itertools.product(*(range(o) for _, o, _ in comps))
    ]


def character_from_spec(
    modulus: int, exponents: Sequence[int] | None = None, index: int | None = None
) -> DirichletCharacter:
    """Build a character from explicit exponents or an enumeration index."""
    if (exponents is None) == (index is None):
        raise ValueError("give exactly one of exponents or index")
    if exponents is not None:
        chi = DirichletCharacter(modulus, exponents)
        # textual input must be canonical: no silent reduction mod the component order
        if tuple(exponents) != chi.exponents:
            ranges = ", ".join(f"0..{o - 1}" for _, o, _ in chi.components)
            raise ValueError(f"exponents {tuple(exponents)} out of range ({ranges})")
        return chi
    chars = enumerate_characters(modulus)
    if not 0 <= index < len(chars):
        raise ValueError(f"character index {index} out of range 0..{len(chars) - 1}")
    return chars[index]


def fiber(chi: DirichletCharacter, zeta: RotationNumber, P: PrimeSet) -> np.ndarray:
    """Primes ``p`` in ``P`` with ``chi(p) = zeta`` (so ``p`` does not divide the modulus)."""
    j = zeta.value * chi.order
    if j.denominator != 1:
        warnings.warn(f"{zeta} is not in the image of {chi!r}; fiber is empty", stacklevel=2)
        return np.zeros(0, dtype=np.int64)
    logs = chi.log_table[P.primes % chi.modulus]
    return P.primes[logs == int(j)]


def real_part_of_rotation(
    zeta: RotationNumber, nu: int, phi: Fraction
) -> tuple[int, float]:
    """Sign and value of ``Re(zeta^nu exp(-i phi))`` with ``phi = phi_frac * pi``.

    The sign is exact: with ``d = nu*arg(zeta)/(2 pi) - phi/(2 pi)`` reduced
    mod 1, the real part is ``cos(2 pi d)``, which vanishes exactly at
    ``d = 1/4, 3/4``.
    """
    phi = Fraction(phi)
    if not 0 <= phi < 1:
        raise ValueError(f"phi must be a fraction of pi in [0, 1), got {phi}")
    d = (zeta.value * nu - phi / 2) % 1
    if d in (Fraction(1, 4), Fraction(3, 4)):
        return 0, 0.0
    sign = 1 if (d < Fraction(1, 4) or d > Fraction(3, 4)) else -1
    value = RotationNumber(d).to_complex().real
    return sign, float(value)
