from __future__ import annotations

from typing import Final

CACHE_MAGIC: Final = "THETAZETA-PRIMECACHE"
"""First token of the prime cache header line."""
CACHE_VERSION: Final = "v1"
"""Cache format version written by this package."""
CHECKSUM_MODULUS: Final = 2**61 - 1
"""Modulus of the checkpoint checksum (a Mersenne prime)."""
MIN_DIGITS: Final = 15
"""Smallest accepted working precision in decimal digits."""
POLE_RADIUS: Final = 1e-9
"""Distance to a pole below which evaluation is refused."""
ENTIRE_SERIES_RADIUS: Final = 1e-3
"""|z - 1| below which (1 - 2^(1-z))/(z - 1) is summed as a power series."""
CRITICAL_STRIP_HEIGHT: Final = 4
"""Multiple of pi bounding |Im z| for the log-derivative decomposition."""
PROVEN_STRIP_HEIGHT: Final = 3
"""Multiple of pi bounding the region marked as proven in scan output."""
LISTED_ZERO_ORDINATES: Final[tuple[float, ...]] = (
    14.134,
    21.022,
    25.010,
    30.424,
    32.935,
    37.935,
    40.918,
    43.327,
    48.005,
    49.773,
)
"""Imaginary parts of the first nontrivial zeros as commonly tabulated, with the 37.935 entry kept verbatim."""
ZERO_FLAG_DISTANCE: Final = 0.01
"""A listed ordinate further than this from its refined value is flagged."""
CALIBRATION_TOLERANCE: Final = 0.05
"""Relative error allowed when the radius estimator is calibrated on known poles."""
MIN_USABLE_COEFFICIENTS: Final = 8
"""Fewest coefficients above the noise floor a radius estimate accepts."""
STEP_DENSITY_CONSTANT: Final = 1.25506
"""pi(t) <= 1.25506 t / ln t for t > 1."""
LI_DENSITY_CONSTANT: Final = 1.5
"""Li(t) <= 1.5 t / ln t for t >= 2."""
UNCONDITIONAL_DECAY: Final = 0.005
"""Constant c in |pi(t) - Li(t)| <= t exp(-c (ln t)^(3/5))."""
UNCONDITIONAL_EXPONENT: Final = 0.6
"""Exponent of ln t in the unconditional error term."""
MIN_TAIL_T: Final = 100
"""Smallest truncation at which the growth models for pi - Li are applied."""
EXIT_TOLERANCE: Final = 1
"""A residual exceeded its tolerance or an estimate could not be formed."""
EXIT_USAGE: Final = 2
"""Invalid arguments or a mathematical domain violation."""
EXIT_RESOURCE: Final = 3
"""Memory budget, cache lock or cache format failure."""
LOG_SERIES_CUTOFF: Final = 1e-3
"""|x| below which -log(1 - x) - x is summed as a power series."""
COUNTEREXAMPLE_FREQUENCY: Final = 12
"""Frequency omega of the oscillating counterexample 2 cos(omega ln t)/t^gamma."""
COUNTEREXAMPLE_GAMMA_BOUND: Final = 0.25
"""The counterexample exponent gamma must stay below this."""
