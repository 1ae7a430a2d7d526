"""Independent brute-force and grid-scan verification oracles.

Nothing here reuses the decision logic of `membership` or `geometry`; the
point of this module is redundancy.  It provides:

* `lvt_oracle` - classical-set membership decided from the vertex
  description of the polytope instead of its facet inequalities.  The 16
  deterministic strategies collapse to 8 distinct vertices which split into
  plus/minus pairs of four mutually orthogonal vectors, so barycentric
  coordinates (and hence explicit convex weights) come from a closed-form
  orthogonal expansion; feasibility is the l1 condition on those
  coordinates.  A facet evaluation runs alongside and the two paths are
  cross-checked on every call.

* `curvature_positivity_scan` - verifies on a grid that the curvature
  expression controlling convexity of the curved boundary surface is
  positive.  The grid keeps a safety margin away from the domain edges
  where tangents and secants blow up; on that excluded shell every term of
  the expression diverges to +infinity, so positivity there needs no
  numerics (the per-axis factors 1/cos^2 and sin/cos^5 grow without bound
  while the remaining factors stay bounded below).

* `angle_sum_max_scan` - verifies on a grid that the folded arcsine sum
  asin(sin nu1) + ... + asin(sin nu4) under the closure constraint
  nu4 = nu1 + nu2 + nu3 (taken modulo 2*pi) never exceeds pi, which pins
  the extremal generators inside the quantum set.

* `ghz_contradiction` - the 64-case enumeration showing that no local
  +-1 assignment reproduces the four three-party correlators (1, 1, 1, -1)
  of the canonical parity argument.

Scan results are deterministic for fixed parameters, including under
worker-based grid partitioning (merges are associative with deterministic
tie-breaks).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import membership
from .corrvec import DEFAULT_TOLERANCE, CorrelationVector
from .errors import DomainError, InternalCheckError, PreconditionError

_PATH_AGREEMENT_TOLERANCE = 1e-9
_RECONSTRUCTION_TOLERANCE = 1e-12

CURVATURE_THRESHOLD = -1e-9
ANGLE_SUM_THRESHOLD = 1e-9

# Four mutually orthogonal strategy vertices; the full vertex set of the
# classical polytope is {+-row}.  Each row has squared norm 4.
_VERTEX_BASIS = np.array(
    [
        [1.0, 1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, 1.0, -1.0],
        [1.0, -1.0, -1.0, 1.0],
    ]
)
_VERTEX_BASIS.flags.writeable = False


# ---------------------------------------------------------------------------
# classical polytope oracle


def deterministic_strategy_vectors() -> np.ndarray:
    """Correlation vectors of all 16 deterministic strategies, shape (16, 4).

    Strategies assign fixed +-1 outcomes (a0, a1, b0, b1); the vector is
    (a0*b0, a0*b1, a1*b0, a1*b1).  Global flips of both parties collapse
    the 16 strategies onto 8 distinct vertices.
    """
    rows = [
        (a0 * b0, a0 * b1, a1 * b0, a1 * b1)
        for a0, a1, b0, b1 in itertools.product((1, -1), repeat=4)
    ]
    return np.array(rows, dtype=float)


def classical_vertices() -> np.ndarray:
    """The 8 distinct vertices of the classical polytope, shape (8, 4)."""
    return np.concatenate([_VERTEX_BASIS, -_VERTEX_BASIS], axis=0)


def classical_weights(
    x: CorrelationVector, tolerance: float = DEFAULT_TOLERANCE
) -> tuple[np.ndarray, np.ndarray]:
    """Explicit convex weights over the 8 vertices reproducing x.

    Returns (weights, vertices) with weights >= 0 summing to 1 and
    weights @ vertices == x; raises PreconditionError when x lies outside
    the classical polytope and no such weights exist.
    """
    coords = x.as_array() @ _VERTEX_BASIS.T / 4.0
    slack = 1.0 - float(np.abs(coords).sum())
    if slack < -0.5 * tolerance:
        raise PreconditionError(
            f"{x.as_tuple()!r} is outside the classical polytope"
        )
    vertices = classical_vertices()
    weights = np.zeros(8)
    for i, u in enumerate(coords):
        if u >= 0.0:
            weights[i] = u
        else:
            weights[4 + i] = -u
    # distribute any slack over the +-v1 pair, which sums to zero
    half = 0.5 * max(slack, 0.0)
    weights[0] += half
    weights[4] += half
    weights /= weights.sum()
    return weights, vertices


def lvt_oracle_batch(
    xs: np.ndarray, tolerance: float = DEFAULT_TOLERANCE
) -> np.ndarray:
    """Vectorized classical-set oracle; input (..., 4), output booleans.

    Vertex path: expand x in the orthogonal vertex basis and test the l1
    norm of the coordinates.  Facet path: the box bounds together with the
    eight CHSH combinations.  The two paths compute the same support value
    through different arithmetic and are compared on every call.
    """
    xs = np.asarray(xs, dtype=float)
    coords = xs @ _VERTEX_BASIS.T / 4.0
    vertex_value = np.abs(coords).sum(axis=-1)

    box_value = np.abs(xs).max(axis=-1)
    chsh_value = membership.chsh_combinations(xs).max(axis=-1)
    facet_value = np.maximum(box_value, 0.5 * chsh_value)

    disagreement = float(np.max(np.abs(vertex_value - facet_value)))
    if disagreement > _PATH_AGREEMENT_TOLERANCE:
        raise InternalCheckError(
            f"vertex and facet oracle paths disagree by {disagreement:.3e}"
        )
    return vertex_value <= 1.0 + 0.5 * tolerance


def lvt_oracle(x: CorrelationVector, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Classical-set membership by explicit vertex decomposition.

    When feasible, also rebuilds x from the constructed convex weights and
    confirms the reconstruction to 1e-12, keeping the oracle honest.
    """
    verdict = bool(lvt_oracle_batch(x.as_array(), tolerance)[()])
    if verdict:
        weights, vertices = classical_weights(x, tolerance)
        residual = float(np.abs(weights @ vertices - x.as_array()).max())
        if residual > max(_RECONSTRUCTION_TOLERANCE, tolerance):
            raise InternalCheckError(
                f"vertex reconstruction residual {residual:.3e} for "
                f"{x.as_tuple()!r}"
            )
    return verdict


# ---------------------------------------------------------------------------
# grid scans


@dataclass(frozen=True)
class ScanResult:
    """Outcome of a grid scan.

    `min_value` is the smallest margin-to-threshold found and `argmin` the
    grid point attaining it; `violations` counts grid points whose margin
    fell below the threshold, so passing scans have violations == 0.  For
    the maximum scan the margin is (pi - value), hence the scanned maximum
    equals pi - min_value.
    """

    grid_step: float
    min_value: float
    argmin: tuple[float, ...]
    violations: int

    def to_json_dict(self) -> dict:
        return {
            "grid_step": self.grid_step,
            "min_value": self.min_value,
            "argmin": list(self.argmin),
            "violations": self.violations,
        }


def curvature_expression(g1: float, g2: float, g3: float) -> float:
    """Curvature value at one point of the boundary chart.

    Positive on the admissible domain (|g_i| < pi/2, sum in (pi/2, 3pi/2)),
    which is what makes the curved boundary bulge outward and the set
    convex.
    """
    first = (
        math.sin(g1) / math.cos(g1) ** 5
        + math.sin(g2) / math.cos(g2) ** 5
        + math.sin(g3) / math.cos(g3) ** 5
    )
    weights = (
        1.0 / math.cos(g1) ** 2
        + 1.0 / math.cos(g2) ** 2
        + 1.0 / math.cos(g3) ** 2
    )
    return first - math.tan(g1 + g2 + g3) * weights**2


def folded_arcsine(value: float | np.ndarray) -> float | np.ndarray:
    """asin(sin(x)): the 2*pi-periodic fold of the identity onto
    [-pi/2, pi/2]."""
    return np.arcsin(np.sin(value))


def angle_sum_value(nu1: float, nu2: float, nu3: float) -> float:
    """Folded arcsine sum with nu4 closed by the constraint nu4 = nu1+nu2+nu3."""
    total = (
        folded_arcsine(nu1)
        + folded_arcsine(nu2)
        + folded_arcsine(nu3)
        + folded_arcsine(nu1 + nu2 + nu3)
    )
    return float(total)


def _grid_axis(limit: float, step: float) -> np.ndarray:
    count = int(math.floor(2.0 * limit / step)) + 1
    return -limit + step * np.arange(count)


def _merge_min(
    results: list[tuple[float, tuple[float, ...], int]],
) -> tuple[float, tuple[float, ...], int]:
    total_violations = sum(r[2] for r in results)
    candidates = [r for r in results if r[1] is not None]
    if not candidates:
        raise DomainError("scan grid is empty; decrease step or margin")
    best = min(candidates, key=lambda r: (r[0], r[1]))
    return best[0], best[1], total_violations


def _curvature_chunk(
    args: tuple[int, int, float, float, float],
) -> tuple[float, tuple[float, ...] | None, int]:
    start, stop, step, margin, threshold = args
    limit = 0.5 * math.pi - margin
    axis = _grid_axis(limit, step)
    low_sum = 0.5 * math.pi + margin
    high_sum = 1.5 * math.pi - margin

    sin_term = np.sin(axis) / np.cos(axis) ** 5
    weight_term = 1.0 / np.cos(axis) ** 2
    count = axis.size

    best = math.inf
    best_arg: tuple[float, ...] | None = None
    violations = 0
    for i in range(start, stop):
        totals = axis[i] + axis[:, None] + axis[None, :]
        mask = (totals >= low_sum) & (totals <= high_sum)
        if not mask.any():
            continue
        values = (
            sin_term[i] + sin_term[:, None] + sin_term[None, :]
        ) - np.tan(totals) * (
            weight_term[i] + weight_term[:, None] + weight_term[None, :]
        ) ** 2
        masked = np.where(mask, values, np.inf)
        violations += int((masked < threshold).sum())
        flat = int(np.argmin(masked))
        value = float(masked.flat[flat])
        if value < best:
            best = value
            best_arg = (
                float(axis[i]),
                float(axis[flat // count]),
                float(axis[flat % count]),
            )
    return best, best_arg, violations


def curvature_positivity_scan(
    step: float = 0.01,
    margin: float = 0.05,
    threshold: float = CURVATURE_THRESHOLD,
    workers: int = 1,
) -> ScanResult:
    """Scan the curvature expression over its admissible grid.

    The grid covers |g_i| <= pi/2 - margin restricted to
    g1 + g2 + g3 in [pi/2 + margin, 3pi/2 - margin].  Passing means
    min_value >= threshold (violations == 0).
    """
    _check_scan_params(step, margin)
    axis_size = _grid_axis(0.5 * math.pi - margin, step).size
    chunks = _chunk_ranges(axis_size, workers)
    args = [(a, b, step, margin, threshold) for a, b in chunks]
    results = _run_chunks(_curvature_chunk, args, workers)
    best, best_arg, violations = _merge_min(results)
    return ScanResult(
        grid_step=step, min_value=best, argmin=best_arg, violations=violations
    )


def _angle_sum_chunk(
    args: tuple[int, int, float, float],
) -> tuple[float, tuple[float, ...] | None, int]:
    start, stop, step, threshold = args
    axis = _grid_axis(math.pi, step)
    folded = np.arcsin(np.sin(axis))
    count = axis.size

    best = -math.inf
    best_arg: tuple[float, ...] | None = None
    violations = 0
    bound = math.pi + threshold
    for i in range(start, stop):
        totals = axis[i] + axis[:, None] + axis[None, :]
        values = folded[i] + folded[:, None] + folded[None, :] + np.arcsin(
            np.sin(totals)
        )
        violations += int((values > bound).sum())
        flat = int(np.argmax(values))
        value = float(values.flat[flat])
        if value > best:
            best = value
            best_arg = (
                float(axis[i]),
                float(axis[flat // count]),
                float(axis[flat % count]),
            )
    return best, best_arg, violations


def angle_sum_max_scan(
    step: float = 0.02,
    threshold: float = ANGLE_SUM_THRESHOLD,
    workers: int = 1,
) -> ScanResult:
    """Scan the constrained folded arcsine sum for its maximum.

    Grid: nu1, nu2, nu3 over [-pi, pi]; nu4 closed by the constraint.  The
    mathematical maximum is pi, reached on the diagonal through
    (pi/2, pi/2, pi/2), so a passing scan has min_value = pi - max >= -threshold
    with violations == 0, and attainment min_value <= 2 * step.
    """
    _check_scan_params(step, None)
    axis_size = _grid_axis(math.pi, step).size
    chunks = _chunk_ranges(axis_size, workers)
    args = [(a, b, step, threshold) for a, b in chunks]
    results = _run_chunks(_angle_sum_chunk, args, workers)

    total_violations = sum(r[2] for r in results)
    candidates = [r for r in results if r[1] is not None]
    if not candidates:
        raise DomainError("scan grid is empty; decrease step")
    best = max(candidates, key=lambda r: (r[0], [-a for a in r[1]]))
    return ScanResult(
        grid_step=step,
        min_value=math.pi - best[0],
        argmin=best[1],
        violations=total_violations,
    )


def _check_scan_params(step: float, margin: float | None) -> None:
    if not (math.isfinite(step) and step > 0.0):
        raise DomainError(f"step must be positive, got {step!r}")
    if margin is not None:
        if not (math.isfinite(margin) and 0.0 < margin < 0.5 * math.pi):
            raise DomainError(
                f"margin must lie strictly between 0 and pi/2, got {margin!r}"
            )


def _chunk_ranges(size: int, workers: int) -> list[tuple[int, int]]:
    pieces = max(1, min(workers, size)) if workers > 1 else 1
    bounds = np.linspace(0, size, pieces + 1).astype(int)
    return [
        (int(bounds[k]), int(bounds[k + 1]))
        for k in range(pieces)
        if bounds[k] < bounds[k + 1]
    ]


def _run_chunks(func, args: list, workers: int) -> list:
    if workers <= 1 or len(args) <= 1:
        return [func(a) for a in args]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, args))


# ---------------------------------------------------------------------------
# parity argument


def ghz_contradiction(relaxed: bool = False) -> bool:
    """Enumerate all 64 deterministic three-party +-1 assignments.

    Returns True when no assignment satisfies all four correlator
    constraints a0*b0*c1 = a0*b1*c0 = a1*b0*c0 = 1 and a1*b1*c1 = -1
    simultaneously (it cannot: the product of the first three forces
    a1*b1*c1 = +1).  With `relaxed` the fourth constraint is dropped and
    satisfying assignments exist, so the function returns False; that
    serves as a control for the enumeration itself.
    """
    for a0, a1, b0, b1, c0, c1 in itertools.product((1, -1), repeat=6):
        if a0 * b0 * c1 != 1 or a0 * b1 * c0 != 1 or a1 * b0 * c0 != 1:
            continue
        if relaxed or a1 * b1 * c1 == -1:
            return False
    return True
