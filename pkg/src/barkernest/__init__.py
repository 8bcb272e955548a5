"""Uncorrelated binary complementary sequences of 13-smooth lengths.

Complete complementary codes are generated from a Hadamard/delay
paraunitary product and extended to new lengths by CDOS doubling or by
nested Barker sign envelopes.
"""

__version__ = "0.1.0"

from .analysis import (  # noqa: E402
    CorrelationProfile,
    SidelobeMetrics,
    envelope_sac_oracle,
    fast_xcorr,
    metrics,
    sac,
    scc,
    xcorr,
)
from .core import (  # noqa: E402
    BarkerCode,
    BinarySequence,
    CCCDescriptor,
    ComplementarySet,
    CompleteComplementaryCode,
    GenericSet,
    barker,
    generate_ccc,
    nest_signs,
    sylvester_hadamard,
)
from .errors import *  # noqa: E402,F401,F403
from .extend import (  # noqa: E402
    ExtendedSet,
    NestingPlan,
    barker_extend,
    cdos_extend,
    count_feasible,
    min_multiplier,
    plan_length,
)
from .verify import are_uncorrelated, is_complementary, smoothness_oracle  # noqa: E402
