"""Sign equidistribution experiments for half-integral weight coefficient families.

The families ``a(t p^(2 nu))`` are synthesized from an integral-weight
eigenform through the Shimura coefficient relation, then their signs are
tabulated fiber by fiber over the values of a Dirichlet character.
"""

__version__ = "0.1.0"

from .arith import PrimeSet, divisors, kronecker, moebius, sieve
from .characters import (
    DirichletCharacter,
    RotationNumber,
    TwistedCharacter,
    enumerate_characters,
    fiber,
    real_part_of_rotation,
)
from .densities import (
    DensityReport,
    SignCounts,
    classify_sign,
    fiber_densities,
    oscillation_report,
    run_synthetic,
    synthetic_family,
)
from .modforms import NewformTable, catalog_form, lambda_normalized, verify_hecke
from .qseries import EtaQuotient, PowerSeries, euler_series, expand_eta_quotient, multiply
from .satotate import (
    IntervalUnion,
    angle_of,
    interval_union,
    ks_distance,
    lambda_prime_power,
    sample_angle,
    st_cdf,
    st_measure,
)
from .shimura import (
    HalfIntegralFamily,
    LiftContext,
    build_family,
    lift_forward,
    lift_inverse,
    specialize_prime_power,
)
