import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halfsign.arith import sieve
from halfsign.characters import DirichletCharacter, RotationNumber
from halfsign.densities import (
    SCHEMA,
    classify_sign,
    fiber_densities,
    oscillation_report,
    rotation_signs,
    run_synthetic,
    synthetic_family,
)
from halfsign.shimura import HalfIntegralFamily, LiftContext, build_family

ORDER4 = DirichletCharacter(20, [0, 1])
TRIVIAL4 = DirichletCharacter(4, [0])


def test_order4_character():
    assert ORDER4.order == 4 and ORDER4.N == 5


def test_classify_examples():
    one, i, minus = RotationNumber(0), RotationNumber(1, 4), RotationNumber(1, 2)
    assert classify_sign(5, one, 1, Fraction(0)) == "pos"
    assert classify_sign(-5, one, 1, Fraction(0)) == "neg"
    assert classify_sign(0, one, 1, Fraction(0)) == "zero"
    assert classify_sign(1, minus, 1, Fraction(0)) == "neg"
    assert classify_sign(1, minus, 3, Fraction(0)) == "neg"
    # i^1 e^0 is purely imaginary
    assert classify_sign(1, i, 1, Fraction(0)) == "zero"
    # i e^{-i pi/2} = 1
    assert classify_sign(1, i, 1, Fraction(1, 2)) == "pos"
    # e^{-i pi/4} has positive real part
    assert classify_sign(-1, one, 3, Fraction(1, 4)) == "neg"


@given(st.integers(1, 12), st.integers(0, 11), st.sampled_from([1, 3, 5, 7]), st.fractions(0, 1))
@settings(max_examples=200)
def test_rotation_sign_against_float(order, j, nu, phi):
    if phi == 1:
        return
    j %= order
    s = rotation_signs(order, nu, phi)[j]
    v = math.cos(2 * math.pi * j * nu / order - math.pi * phi)
    if abs(v) > 1e-9:
        assert s == (1 if v > 0 else -1)


def test_zero_fibers_order4():
    rep = run_synthetic(ORDER4, 2, 1, 1, Fraction(0), n_primes=5000, seed=1)
    assert [str(z) for z in rep.zero_fibers()] == ["1/4", "3/4"]
    assert rep.predicted_nonzero == 0.5 and rep.predicted_pos == 0.25
    for f in rep.fibers:
        if f.is_zero_fiber:
            assert f.phi_pos == f.phi_neg == 0 and f.phi_zero == f.n_fiber
    rep = run_synthetic(ORDER4, 2, 1, 1, Fraction(1, 4), n_primes=5000, seed=1)
    assert rep.zero_fibers() == [] and rep.predicted_nonzero == 1.0


def test_zero_fibers_nu3():
    # i^3 e^{-i pi/2} = -1, so no zero fibers at phi = 1/2
    rep = run_synthetic(ORDER4, 2, 1, 3, Fraction(1, 2), n_primes=2000)
    assert [str(z) for z in rep.zero_fibers()] == ["0/1", "1/2"]


@pytest.mark.parametrize("phi", [Fraction(0), Fraction(1, 4), Fraction(1, 3)])
def test_global_equals_sum(phi):
    rep = run_synthetic(ORDER4, 2, 3, 3, phi, x=30000, seed=4)
    assert rep.n_pos == sum(f.phi_pos for f in rep.fibers)
    assert rep.n_pos + rep.n_neg + rep.n_zero == sum(f.n_fiber for f in rep.fibers)
    assert sum(f.n_fiber for f in rep.fibers) + len(rep.excluded) == rep.pi_x == len(sieve(30000))
    d = rep.to_dict()
    assert d["schema"] == SCHEMA and d["global"]["n_pos"] == rep.n_pos
    assert d["excluded_primes"] == len(rep.excluded)


def test_exact_pi_accounting(delta_1e5, primes_1e5):
    fam = build_family(LiftContext(delta_1e5, TRIVIAL4, 1), 3, primes_1e5)
    rep = fiber_densities(fam, 0)
    assert sum(f.n_fiber for f in rep.fibers) + len(rep.excluded) == 9592


def test_delta_exact_halves(delta_1e5, primes_1e5):
    fam = build_family(LiftContext(delta_1e5, TRIVIAL4, 1), 1, primes_1e5)
    rep = fiber_densities(fam, 0)
    assert abs(rep.density(rep.n_pos) - 0.5) < 0.03
    assert abs(rep.density(rep.n_neg) - 0.5) < 0.03
    osc = oscillation_report(fam, [0])[0]
    assert osc["alternations"] >= 1000 and osc["oscillatory_evidence"]


def test_phi_half_symmetry(delta_1e5, primes_1e5):
    """On real fibers phi and 1 - phi swap the signs; phi = 1/2 gives zero everywhere."""
    fam = build_family(LiftContext(delta_1e5, TRIVIAL4, 1), 1, primes_1e5)
    a, b = fiber_densities(fam, Fraction(1, 3)), fiber_densities(fam, Fraction(2, 3))
    assert (a.n_pos, a.n_neg) == (b.n_neg, b.n_pos)
    c = fiber_densities(fam, Fraction(1, 2))
    assert c.n_nonzero == 0 and c.zero_fibers() == [RotationNumber(0)]


def _const_family(sign, n=200):
    P = sieve(5000)
    p = P.primes[1 : n + 1]
    s = np.full(p.size, sign, dtype=np.int8)
    return HalfIntegralFamily(
        1, TRIVIAL4, int(p[-1]), n + 1, p, np.zeros(p.size, dtype=np.int64),
        s.tolist(), s.astype(float), s, [2],
    )


def test_constant_family_no_oscillation():
    osc = oscillation_report(_const_family(1), [0, Fraction(1, 4)])
    for o in osc:
        assert o["alternations"] == 0 and not o["both_signs"] and not o["oscillatory_evidence"]
    assert osc[0]["checkpoints"][-1]["n_pos"] == 200


def test_oscillation_counts_monotone():
    fam = synthetic_family(ORDER4, 2, 1, 1, x=50000, seed=2)
    for o in oscillation_report(fam, [0, Fraction(1, 4)], checkpoints=(0.1, 0.3, 0.6, 1.0)):
        rows = o["checkpoints"]
        for key in ("n", "n_pos", "n_neg", "n_zero", "alternations"):
            vals = [r[key] for r in rows]
            assert vals == sorted(vals)


def test_scaling_invariance(delta_1e5, primes_1e5):
    fam = build_family(LiftContext(delta_1e5, TRIVIAL4, 1), 1, primes_1e5)
    scaled = HalfIntegralFamily(
        fam.nu, fam.chi, fam.x, fam.pi_x, fam.primes, fam.fiber_logs,
        [7 * s for s in fam.scalars], fam.normalized * 7, np.sign([7 * s for s in fam.scalars]).astype(np.int8),
        fam.excluded_bad,
    )
    assert fiber_densities(scaled, 0).to_dict()["global"] == fiber_densities(fam, 0).to_dict()["global"]


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_synthetic_convergence_trivial(seed):
    rep = run_synthetic(TRIVIAL4, 2, 1, 1, 0, n_primes=20000, seed=seed)
    n = rep.n_nonzero
    assert abs(rep.n_pos / n - 0.5) < 3 / math.sqrt(n)


def test_synthetic_determinism():
    a = run_synthetic(ORDER4, 2, 1, 3, Fraction(1, 4), n_primes=3000, seed=9).to_dict()
    b = run_synthetic(ORDER4, 2, 1, 3, Fraction(1, 4), n_primes=3000, seed=9).to_dict()
    assert a == b
    c = run_synthetic(ORDER4, 2, 1, 3, Fraction(1, 4), n_primes=3000, seed=10).to_dict()
    assert c != a


def test_synthetic_prefix_stable():
    """The value drawn for a prime does not depend on how far the run goes."""
    small = synthetic_family(ORDER4, 2, 1, 1, x=10000, seed=5)
    big = synthetic_family(ORDER4, 2, 1, 1, x=40000, seed=5)
    n = len(small)
    assert np.array_equal(big.primes[:n], small.primes)
    assert np.array_equal(big.normalized[:n], small.normalized)


def test_synthetic_n_primes():
    fam = synthetic_family(ORDER4, 2, 1, 1, n_primes=1234)
    assert len(fam) == 1234 and fam.x == int(fam.primes[-1])
    assert fam.excluded_bad == [2, 5]


def test_synthetic_errors():
    with pytest.raises(ValueError):
        synthetic_family(ORDER4, 2, 1, 2, x=100)
    with pytest.raises(ValueError):
        synthetic_family(ORDER4, 2, 1, 1)
    with pytest.raises(ValueError):
        synthetic_family(ORDER4, 2, 0, 1, x=100)
    with pytest.raises(ValueError):
        run_synthetic(ORDER4, 2, 1, 1, Fraction(3, 2), x=100)


def test_fiber_deviation_small():
    rep = run_synthetic(ORDER4, 2, 1, 1, Fraction(1, 4), n_primes=100000, seed=1)
    assert rep.fiber_deviation() < 0.02
    assert rep.halving_deviation() < 0.02
