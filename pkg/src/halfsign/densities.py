"""Empirical densities of the sign sets P_{>0}, P_{<0}, P_{!=0} and their predictions.

For a prime in the fiber ``chi(p) = zeta`` the scalar ``a(t p^(2 nu)) / zeta^nu``
is real, so

    Re(a(t p^(2 nu)) e^{-i phi}) = scalar * Re(zeta^nu e^{-i phi}),

and the sign of the left side is the product of two signs. The second one
is decided exactly from rational rotation numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arith import kronecker, sieve
from .characters import DirichletCharacter, RotationNumber, real_part_of_rotation
from .satotate import chebyshev_u, counter_uniforms, st_inverse_cdf
from .shimura import HalfIntegralFamily

__all__ = [
    "SCHEMA",
    "NEAR_ZERO",
    "SignCounts",
    "DensityReport",
    "classify_sign",
    "rotation_signs",
    "fiber_densities",
    "oscillation_report",
    "run_synthetic",
    "synthetic_family",
]

SCHEMA = "halfsign.density/1"

# synthetic scalars below this magnitude are counted as zero and reported
NEAR_ZERO = 1e-12

_LABEL = {1: "pos", -1: "neg", 0: "zero"}


def classify_sign(scalar_sign: int, zeta: RotationNumber, nu: int, phi: Fraction) -> str:
    """``"pos"``, ``"neg"`` or ``"zero"`` for ``Re(a e^{-i phi})`` given ``sign(a / zeta^nu)``."""
    rot, _ = real_part_of_rotation(zeta, nu, phi)
    s = int(np.sign(scalar_sign))
    return _LABEL[s * rot]


def rotation_signs(order: int, nu: int, phi: Fraction) -> np.ndarray:
    """``sign Re(zeta_j^nu e^{-i phi})`` for every ``zeta_j = exp(2 pi i j / order)``."""
    return np.array(
        [real_part_of_rotation(RotationNumber(j, order), nu, phi)[0] for j in range(order)],
        dtype=np.int8,
    )


@dataclass
class SignCounts:
    """Counts in one fiber ``chi(p) = zeta`` for primes ``p <= x``.

    ``n_pos``, ``n_neg``, ``n_zero`` count the sign of the real scalar
    ``a(t p^(2 nu)) / zeta^nu``. The ``phi_*`` properties give the signs of
    ``Re(a(t p^(2 nu)) e^{-i phi})`` obtained by multiplying with
    ``rotation_sign``.
    """

    fiber: RotationNumber
    n_pos: int
    n_neg: int
    n_zero: int
    rotation_sign: int
    rotation_value: float

    @property
    def n_fiber(self) -> int:
        return self.n_pos + self.n_neg + self.n_zero

    @property
    def is_zero_fiber(self) -> bool:
        return self.rotation_sign == 0

    @property
    def phi_pos(self) -> int:
        return {1: self.n_pos, -1: self.n_neg, 0: 0}[self.rotation_sign]

    @property
    def phi_neg(self) -> int:
        return {1: self.n_neg, -1: self.n_pos, 0: 0}[self.rotation_sign]

    @property
    def phi_zero(self) -> int:
        return self.n_fiber if self.rotation_sign == 0 else self.n_zero


@dataclass
class DensityReport:
    params: dict
    x: int
    pi_x: int
    chi_order: int
    fibers: list[SignCounts]
    excluded: list[int] = field(default_factory=list)
    near_zero: int = 0

    @property
    def n_pos(self) -> int:
        return sum(f.phi_pos for f in self.fibers)

    @property
    def n_neg(self) -> int:
        return sum(f.phi_neg for f in self.fibers)

    @property
    def n_zero(self) -> int:
        return sum(f.phi_zero for f in self.fibers)

    @property
    def n_nonzero(self) -> int:
        return self.n_pos + self.n_neg

    @property
    def nonzero_fibers(self) -> int:
        return sum(1 for f in self.fibers if not f.is_zero_fiber)

    def zero_fibers(self) -> list[RotationNumber]:
        return [f.fiber for f in self.fibers if f.is_zero_fiber]

    def density(self, count: int) -> float:
        return count / self.pi_x

    @property
    def predicted_fiber(self) -> float:
        """Predicted density of each of P_{>0}(zeta), P_{<0}(zeta): ``1 / (2 r_chi)``."""
        return 1.0 / (2 * self.chi_order)

    @property
    def predicted_nonzero(self) -> float:
        return self.nonzero_fibers / self.chi_order

    @property
    def predicted_pos(self) -> float:
        return self.predicted_nonzero / 2

    def fiber_deviation(self) -> float:
        """Largest ``|pi_{>0 or <0}(x, zeta) / pi(x) - 1/(2 r)|`` over all fibers."""
        d = 0.0
        for f in self.fibers:
            for c in (f.n_pos, f.n_neg):
                d = max(d, abs(c / self.pi_x - self.predicted_fiber))
        return d

    def halving_deviation(self) -> float:
        """``max(|d(P>0) - d(P!=0)/2|, |d(P<0) - d(P!=0)/2|)`` on empirical densities."""
        half = self.density(self.n_nonzero) / 2
        return max(abs(self.density(self.n_pos) - half), abs(self.density(self.n_neg) - half))

    def to_dict(self) -> dict:
        fibers = []
        for f in self.fibers:
            fibers.append(
                {
                    "fiber": str(f.fiber),
                    "n_fiber": f.n_fiber,
                    "n_pos": f.n_pos,
                    "n_neg": f.n_neg,
                    "n_zero": f.n_zero,
                    "rotation_sign": f.rotation_sign,
                    "rotation_value": f.rotation_value,
                    "zero_fiber": f.is_zero_fiber,
                    "phi_pos": f.phi_pos,
                    "phi_neg": f.phi_neg,
                    "phi_zero": f.phi_zero,
                    "fiber_density": f.n_fiber / self.pi_x,
                    "predicted_fiber_density": 1.0 / self.chi_order,
                    "density_pos": f.n_pos / self.pi_x,
                    "density_neg": f.n_neg / self.pi_x,
                    "predicted_sign_density": self.predicted_fiber,
                }
            )
        d_pos = self.density(self.n_pos)
        d_neg = self.density(self.n_neg)
        d_nz = self.density(self.n_nonzero)
        return {
            "schema": SCHEMA,
            "params": self.params,
            "x": self.x,
            "pi_x": self.pi_x,
            "chi_order": self.chi_order,
            "excluded_primes": len(self.excluded),
            "excluded_list": self.excluded[:100],
            "near_zero_scalars": self.near_zero,
            "fibers": fibers,
            "zero_fibers": [str(z) for z in self.zero_fibers()],
            "global": {
                "n_pos": self.n_pos,
                "n_neg": self.n_neg,
                "n_zero": self.n_zero,
                "n_nonzero": self.n_nonzero,
                "density_pos": d_pos,
                "density_neg": d_neg,
                "density_nonzero": d_nz,
                "predicted_density_pos": self.predicted_pos,
                "predicted_density_neg": self.predicted_pos,
                "predicted_density_nonzero": self.predicted_nonzero,
                "deviation_pos": abs(d_pos - self.predicted_pos),
                "deviation_neg": abs(d_neg - self.predicted_pos),
                "halving_deviation": self.halving_deviation(),
                "max_fiber_deviation": self.fiber_deviation(),
            },
        }


def _phi(phi) -> Fraction:
    phi = Fraction(phi)
    if not 0 <= phi < 1:
        raise ValueError(f"phi must be a fraction of pi in [0, 1), got {phi}")
    return phi


def fiber_densities(family: HalfIntegralFamily, phi) -> DensityReport:
    """Per-fiber and global sign counts of ``Re(a(t p^(2 nu)) e^{-i phi})``."""
    phi = _phi(phi)
    if len(family) == 0:
        raise ValueError("family is empty")
    r = family.chi_order
    fibers = []
    for j in range(r):
        zeta = RotationNumber(j, r)
        s = family.signs[family.fiber_logs == j]
        rot, val = real_part_of_rotation(zeta, family.nu, phi)
        fibers.append(
            SignCounts(
                zeta,
                int(np.count_nonzero(s > 0)),
                int(np.count_nonzero(s < 0)),
                int(np.count_nonzero(s == 0)),
                rot,
                val,
            )
        )
    params = dict(family.params)
    params["phi"] = str(phi)
    return DensityReport(
        params=params,
        x=family.x,
        pi_x=family.pi_x,
        chi_order=r,
        fibers=fibers,
        excluded=sorted(family.excluded_bad + family.excluded_range),
        near_zero=family.near_zero,
    )


def _alternations(signs: np.ndarray) -> int:
    s = signs[signs != 0]
    return int(np.count_nonzero(s[1:] != s[:-1])) if s.size > 1 else 0


def oscillation_report(
    family: HalfIntegralFamily, phis: Sequence, checkpoints: Sequence[float] = (0.25, 0.5, 1.0)
) -> list[dict]:
    """Sign alternations of ``Re(a(t p^(2 nu)) e^{-i phi})`` along ascending ``p``.

    For each ``phi``, counts are given at ``x * c`` for each checkpoint
    fraction ``c``. ``oscillatory_evidence`` means both signs occur and the
    alternation count strictly increases from one checkpoint to the next.
    """
    if len(family.primes) > 1 and np.any(np.diff(family.primes) <= 0):
        raise ValueError("family must be sorted by p")
    out = []
    for phi in phis:
        phi = _phi(phi)
        rot = rotation_signs(family.chi_order, family.nu, phi)
        signed = family.signs.astype(np.int8) * rot[family.fiber_logs]
        rows = []
        for c in checkpoints:
            y = int(family.x * c)
            n = int(np.searchsorted(family.primes, y, side="right"))
            s = signed[:n]
            rows.append(
                {
                    "x": y,
                    "n": n,
                    "n_pos": int(np.count_nonzero(s > 0)),
                    "n_neg": int(np.count_nonzero(s < 0)),
                    "n_zero": int(np.count_nonzero(s == 0)),
                    "alternations": _alternations(s),
                }
            )
        last = rows[-1]
        alts = [r["alternations"] for r in rows]
        growing = all(b > a for a, b in zip(alts, alts[1:]))
        out.append(
            {
                "phi": str(phi),
                "checkpoints": rows,
                "alternations": last["alternations"],
                "both_signs": last["n_pos"] > 0 and last["n_neg"] > 0,
                "oscillatory_evidence": last["n_pos"] > 0 and last["n_neg"] > 0 and growing,
            }
        )
    return out


def _prime_bound(n: int) -> int:
    # p_n < n (ln n + ln ln n) for n >= 6
    if n < 6:
        return 15
    return int(n * (math.log(n) + math.log(math.log(n)))) + 1


def synthetic_family(
    chi: DirichletCharacter,
    k: int,
    t: int,
    nu: int,
    x: int | None = None,
    seed: int = 0,
    n_primes: int | None = None,
) -> HalfIntegralFamily:
    """Monte-Carlo family: real fibers ``chi(p)``, angles drawn from Sato-Tate.

    Give either the cutoff ``x`` or the number ``n_primes`` of good primes
    wanted (then ``x`` is the largest of them). The scalar stored per prime is
    ``U_nu(theta_p) - chi0(p)/sqrt(p) U_{nu-1}(theta_p)`` where ``U`` is the
    Chebyshev ratio ``sin((n+1) theta)/sin(theta)``.
    """
    if nu < 1 or nu % 2 == 0:
        raise ValueError(f"nu must be a positive odd integer, got {nu}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if t == 0:
        raise ValueError("t must be nonzero")
    if (x is None) == (n_primes is None):
        raise ValueError("give exactly one of x or n_primes")
    N = chi.N
    bad_mod = 4 * N * abs(t)
    if n_primes is not None:
        if n_primes < 1:
            raise ValueError("n_primes must be positive")
        P = sieve(_prime_bound(n_primes + 64))
        good = P.primes[bad_mod % P.primes != 0][:n_primes]
        x = int(good[-1])
        P = P.upto(x)
    else:
        if x < 2:
            raise ValueError("x must be >= 2")
        P = sieve(x)
    primes = P.primes
    is_good = bad_mod % primes != 0
    gp = primes[is_good]
    if gp.size == 0:
        raise ValueError("no good primes below x")
    excluded = [int(p) for p in primes[~is_good]]
    logs = chi.log_table[gp % chi.modulus]
    theta = st_inverse_cdf(counter_uniforms(seed, gp))
    D = (-1) ** k * N * N * t
    chi0 = np.array([kronecker(D, int(p)) for p in gp], dtype=float)
    scalars = chebyshev_u(theta, nu) - chi0 / np.sqrt(gp) * chebyshev_u(theta, nu - 1)
    tiny = np.abs(scalars) < NEAR_ZERO
    signs = np.sign(scalars).astype(np.int8)
    signs[tiny] = 0
    return HalfIntegralFamily(
        nu=nu,
        chi=chi,
        x=int(x),
        pi_x=len(P),
        primes=gp,
        fiber_logs=logs,
        scalars=scalars.tolist(),
        normalized=scalars,
        signs=signs,
        excluded_bad=excluded,
        params={
            "mode": "synthetic",
            "character": chi.spec,
            "character_order": chi.order,
            "k": k,
            "N": N,
            "t": t,
            "nu": nu,
            "seed": seed,
        },
        near_zero=int(tiny.sum()),
    )


def run_synthetic(
    chi: DirichletCharacter,
    k: int,
    t: int,
    nu: int,
    phi,
    x: int | None = None,
    seed: int = 0,
    n_primes: int | None = None,
) -> DensityReport:
    """Synthetic experiment: build the Monte-Carlo family and tabulate its densities."""
    fam = synthetic_family(chi, k, t, nu, x=x, seed=seed, n_primes=n_primes)
    return fiber_densities(fam, phi)
