"""Membership tests for the classical and quantum correlation sets.

The classical set consists of the correlation vectors reachable with shared
randomness and local deterministic strategies.  It is cut out (inside the
box) by the eight CHSH combinations

    +-x1 +- x2 +- x3 +- x4   (odd number of minus signs)

each bounded by 2.  The quantum set consists of the vectors reachable by
measuring a shared quantum state; it is characterized by the same eight
combinations applied to the component arcsines, each bounded by pi.

Both systems are redundant: after canonicalization only one inequality can
bind.  `evaluate` computes all eight values anyway (callers want the full
report) and cross-checks the maximum against the canonical fast path.

`mu` is the component-wise rescaled arcsine map y_i = (2/pi) * asin(x_i).
It sends the quantum set exactly onto the classical one, which makes
"in quantum set" equivalent to "mu-image in classical set"; several tests
exploit that equivalence.

Array helpers (`chsh_combinations`, `classical_margins`, ...) operate on
float arrays of shape (..., 4) and vectorize over leading axes, which keeps
million-point sweeps cheap.  Scalar functions take CorrelationVector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corrvec import DEFAULT_TOLERANCE, CorrelationVector, canonicalize
from .errors import InternalCheckError

CLASSICAL_BOUND = 2.0
QUANTUM_BOUND = math.pi
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)

# The eight sign patterns with an odd number of minus signs.  Rows 0..3 have
# the single minus at positions 1..4; rows 4..7 are their negations.  The
# entries of `chsh_values` and `f_values` in reports follow this order.
_PATTERNS = (
    (-1.0, 1.0, 1.0, 1.0),
    (1.0, -1.0, 1.0, 1.0),
    (1.0, 1.0, -1.0, 1.0),
    (1.0, 1.0, 1.0, -1.0),
    (1.0, -1.0, -1.0, -1.0),
    (-1.0, 1.0, -1.0, -1.0),
    (-1.0, -1.0, 1.0, -1.0),
    (-1.0, -1.0, -1.0, 1.0),
)

SIGN_PATTERNS = np.array(_PATTERNS)
SIGN_PATTERNS.flags.writeable = False

_CROSS_CHECK_TOLERANCE = 1e-9


# ---------------------------------------------------------------------------
# array paths


def chsh_combinations(xs: np.ndarray) -> np.ndarray:
    """All eight CHSH combination values; input (..., 4), output (..., 8)."""
    xs = np.asarray(xs, dtype=float)
    return xs @ SIGN_PATTERNS.T


def arcsine_combinations(xs: np.ndarray) -> np.ndarray:
    """All eight combination values of component arcsines."""
    xs = np.asarray(xs, dtype=float)
    return np.arcsin(xs) @ SIGN_PATTERNS.T


def classical_margins(xs: np.ndarray) -> np.ndarray:
    """2 minus the largest CHSH combination; nonnegative inside the set."""
    return CLASSICAL_BOUND - chsh_combinations(xs).max(axis=-1)


def quantum_margins(xs: np.ndarray) -> np.ndarray:
    """pi minus the largest arcsine combination."""
    return QUANTUM_BOUND - arcsine_combinations(xs).max(axis=-1)


def mu_array(xs: np.ndarray) -> np.ndarray:
    """Component-wise (2/pi) * asin, mapping the quantum set onto the
    classical one.  Fixes 0 and +-1."""
    return (2.0 / np.pi) * np.arcsin(np.asarray(xs, dtype=float))


def mu_inverse_array(ys: np.ndarray) -> np.ndarray:
    """Component-wise sin(pi * y / 2), inverse of `mu_array`."""
    return np.sin(0.5 * np.pi * np.asarray(ys, dtype=float))


# ---------------------------------------------------------------------------
# scalar interface


@dataclass(frozen=True)
class MembershipReport:
    """Full record of one membership evaluation.

    `chsh_values` and `arcsine_values` list all eight combination values in
    the order of SIGN_PATTERNS.  Margins are bound minus largest value, so
    negative margins mean the vector is outside.  Membership verdicts embed
    the tolerance used at evaluation time.
    """

    in_classical: bool
    in_quantum: bool
    chsh_values: tuple[float, ...]
    arcsine_values: tuple[float, ...]
    classical_margin: float
    quantum_margin: float

    def to_json_dict(self) -> dict:
        return {
            "in_C": self.in_classical,
            "in_Q": self.in_quantum,
            "chsh_values": list(self.chsh_values),
            "f_values": list(self.arcsine_values),
            "margin_C": self.classical_margin,
            "margin_Q": self.quantum_margin,
        }


def evaluate(
    x: CorrelationVector, tolerance: float = DEFAULT_TOLERANCE
) -> MembershipReport:
    """Evaluate both membership systems and return the full report.

    The maxima of the eight-value systems are cross-checked against the
    single binding inequality of the canonical form; disagreement beyond
    1e-9 would indicate a library bug and raises InternalCheckError.
    """
    comps = x.as_tuple()
    asins = tuple(math.asin(v) for v in comps)
    chsh = tuple(
        p[0] * comps[0] + p[1] * comps[1] + p[2] * comps[2] + p[3] * comps[3]
        for p in _PATTERNS
    )
    fvals = tuple(
        p[0] * asins[0] + p[1] * asins[1] + p[2] * asins[2] + p[3] * asins[3]
        for p in _PATTERNS
    )
    max_chsh = max(chsh)
    max_f = max(fvals)

    z = canonicalize(x).canonical.as_tuple()
    fast_chsh = z[0] + z[1] + z[2] - z[3]
    fast_f = (
        math.asin(z[0]) + math.asin(z[1]) + math.asin(z[2]) - math.asin(z[3])
    )
    if (
        abs(fast_chsh - max_chsh) > _CROSS_CHECK_TOLERANCE
        or abs(fast_f - max_f) > _CROSS_CHECK_TOLERANCE
    ):
        raise InternalCheckError(
            "canonical fast path disagrees with the eight-value system: "
            f"chsh {fast_chsh!r} vs {max_chsh!r}, arcsine {fast_f!r} vs {max_f!r}"
        )

    classical_margin = CLASSICAL_BOUND - max_chsh
    quantum_margin = QUANTUM_BOUND - max_f
    return MembershipReport(
        in_classical=classical_margin >= -tolerance,
        in_quantum=quantum_margin >= -tolerance,
        chsh_values=chsh,
        arcsine_values=fvals,
        classical_margin=classical_margin,
        quantum_margin=quantum_margin,
    )


def in_classical(x: CorrelationVector, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Whether x lies in the classical set (within tolerance)."""
    return evaluate(x, tolerance).in_classical


def in_quantum(x: CorrelationVector, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Whether x lies in the quantum set (within tolerance)."""
    return evaluate(x, tolerance).in_quantum


def chsh_max(x: CorrelationVector) -> float:
    """Largest of the eight CHSH combination values."""
    comps = x.as_tuple()
    return max(
        p[0] * comps[0] + p[1] * comps[1] + p[2] * comps[2] + p[3] * comps[3]
        for p in _PATTERNS
    )


def mu(x: CorrelationVector) -> CorrelationVector:
    """Apply the rescaled arcsine map component-wise."""
    scale = 2.0 / math.pi
    return CorrelationVector(
        scale * math.asin(x.x1),
        scale * math.asin(x.x2),
        scale * math.asin(x.x3),
        scale * math.asin(x.x4),
    )


def mu_inverse(y: CorrelationVector) -> CorrelationVector:
    """Invert `mu` component-wise."""
    half_pi = 0.5 * math.pi
    return CorrelationVector(
        math.sin(half_pi * y.x1),
        math.sin(half_pi * y.x2),
        math.sin(half_pi * y.x3),
        math.sin(half_pi * y.x4),
    )
