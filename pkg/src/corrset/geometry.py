"""Extremal generators of the quantum set and constructive decomposition.

The quantum correlation set is the convex hull of a three-parameter family
of extremal points

    G(phi1, phi2, phi3) = (sin phi1, sin phi2, sin phi3, -sin(phi1+phi2+phi3)),

each realizable with a single entangled qubit pair.  `decompose` writes any
member of the quantum set as a convex combination of at most three such
generators.  The algorithm:

1. Canonicalize, so the working vector y satisfies y1 >= y2 >= y3 >= |y4|.
   In canonical position membership reduces to the single functional

       arcsine_sum(y) = asin y1 + asin y2 + asin y3 - asin y4 <= pi.

2. Walk the ray t -> t*y outward from the origin.  arcsine_sum(t*y) is
   nondecreasing in t for s-ordered y, so the ray leaves the set either
   through the curved arcsine boundary (bisect for the crossing, identify
   the hit point with a single generator via phi_i = asin x_i) or through
   the face y1 = 1 of the box (split the face point between the two
   generators that pin its fourth coordinate from below and above).

3. Mix in the zero generator G(0,0,0) to account for the radial scaling,
   and transport every generator back through the inverse symmetry op.
   Transport happens at the angle level: a generator is equivalently a
   4-tuple of angles (nu1..nu4) summing to a multiple of 2*pi via
   nu4 = -(phi1+phi2+phi3); permuting the four angles and adding pi at the
   flipped positions commutes with evaluation.

The weights are read off the ray parameter, so no linear programming is
involved anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corrvec import (
    DEFAULT_TOLERANCE,
    CorrelationVector,
    SymmetryOp,
    canonicalize,
    is_s_ordered,
)
from .errors import (
    BisectionError,
    InternalCheckError,
    NotInQuantumSetError,
    NotOnBoundaryError,
    NotSOrderedError,
    PreconditionError,
)

_TWO_PI = 2.0 * math.pi
_S_ORDER_SLACK = 1e-12
_BISECT_VALUE_TOLERANCE = 1e-12
_BISECT_MAX_ITERATIONS = 200
_RECONSTRUCTION_TOLERANCE = 1e-9
_WEIGHT_SUM_TOLERANCE = 1e-12
_ANGLE_SUM_TOLERANCE = 1e-9


def reduce_angle(phi: float) -> float:
    """Reduce an angle to the half-open interval (-pi, pi]."""
    r = math.remainder(phi, _TWO_PI)
    if r <= -math.pi:
        r += _TWO_PI
    return r + 0.0


@dataclass(frozen=True)
class GeneratorPoint:
    """One extremal generator, stored by its three defining angles.

    Angles are reduced to (-pi, pi] on construction; evaluation only feeds
    them to sine, so the reduction never changes the generated vector.
    """

    phi1: float
    phi2: float
    phi3: float

    def __post_init__(self) -> None:
        for name in ("phi1", "phi2", "phi3"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise PreconditionError(f"angle {name} is not finite: {v!r}")
            object.__setattr__(self, name, reduce_angle(v))

    @classmethod
    def origin(cls) -> "GeneratorPoint":
        """The zero generator G(0,0,0), evaluating to the origin."""
        return cls(0.0, 0.0, 0.0)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.phi1, self.phi2, self.phi3)

    def evaluate(self) -> CorrelationVector:
        """The correlation vector this generator produces."""
        return CorrelationVector(
            math.sin(self.phi1),
            math.sin(self.phi2),
            math.sin(self.phi3),
            -math.sin(self.phi1 + self.phi2 + self.phi3),
        )

    def angles(self) -> "AngleVector":
        """Equivalent 4-angle form with nu4 = -(phi1+phi2+phi3) mod 2*pi."""
        return AngleVector(
            self.phi1,
            self.phi2,
            self.phi3,
            reduce_angle(-(self.phi1 + self.phi2 + self.phi3)),
        )


@dataclass(frozen=True)
class AngleVector:
    """Four angles constrained to sum to a multiple of 2*pi.

    This is the symmetric way to write a generator: component i of the
    generated vector is sin(nu_i) for i = 1..3 and sin(nu4) for the fourth,
    and the closure constraint makes the two descriptions interchangeable.
    """

    nu1: float
    nu2: float
    nu3: float
    nu4: float

    def __post_init__(self) -> None:
        total = self.nu1 + self.nu2 + self.nu3 + self.nu4
        residual = math.remainder(total, _TWO_PI)
        if abs(residual) > _ANGLE_SUM_TOLERANCE:
            raise PreconditionError(
                f"angle sum {total!r} deviates from a multiple of 2*pi "
                f"by {residual!r}"
            )

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.nu1, self.nu2, self.nu3, self.nu4)

    def generator(self) -> GeneratorPoint:
        return GeneratorPoint(self.nu1, self.nu2, self.nu3)


@dataclass(frozen=True)
class Decomposition:
    """Convex combination of at most three generators.

    Weights are in [0, 1] and sum to 1 within 1e-12.  Zero-weight terms are
    never stored; `decompose` and `face_decompose` drop them on the fly.
    """

    terms: tuple[tuple[float, GeneratorPoint], ...]

    def __post_init__(self) -> None:
        terms = tuple((float(w), g) for w, g in self.terms)
        if not 1 <= len(terms) <= 3:
            raise PreconditionError(
                f"a decomposition has 1 to 3 terms, got {len(terms)}"
            )
        for w, _ in terms:
            if not 0.0 <= w <= 1.0:
                raise PreconditionError(f"weight {w!r} outside [0, 1]")
        total = math.fsum(w for w, _ in terms)
        if abs(total - 1.0) > _WEIGHT_SUM_TOLERANCE:
            raise PreconditionError(f"weights sum to {total!r}, not 1")
        object.__setattr__(self, "terms", terms)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for w, _ in self.terms)

    @property
    def generators(self) -> tuple[GeneratorPoint, ...]:
        return tuple(g for _, g in self.terms)

    def reconstruct(self) -> CorrelationVector:
        """Weighted sum of the evaluated generators."""
        acc = [0.0, 0.0, 0.0, 0.0]
        for w, g in self.terms:
            for i, v in enumerate(g.evaluate().as_tuple()):
                acc[i] += w * v
        # convex combinations of box points can overshoot by float dust only
        return CorrelationVector(*(min(1.0, max(-1.0, v)) for v in acc))

    def to_json_list(self) -> list[dict]:
        return [
            {"weight": w, "phi": [g.phi1, g.phi2, g.phi3]}
            for w, g in self.terms
        ]

    @classmethod
    def from_json_list(cls, data: list[dict]) -> "Decomposition":
        terms = tuple(
            (float(item["weight"]), GeneratorPoint(*item["phi"]))
            for item in data
        )
        return cls(terms)


def generator_values(phis: np.ndarray) -> np.ndarray:
    """Vectorized generator evaluation; input (..., 3), output (..., 4)."""
    phis = np.asarray(phis, dtype=float)
    values = np.sin(phis)
    last = -np.sin(phis.sum(axis=-1))
    return np.concatenate([values, last[..., None]], axis=-1)


def arcsine_sum(x: CorrelationVector) -> float:
    """The canonical membership functional asin x1 + asin x2 + asin x3 - asin x4.

    Only meaningful for s-ordered input, where it is the unique binding
    combination; anything else raises NotSOrderedError.
    """
    if not is_s_ordered(x, slack=_S_ORDER_SLACK):
        raise NotSOrderedError(
            f"{x.as_tuple()!r} does not satisfy x1 >= x2 >= x3 >= |x4|"
        )
    t = x.as_tuple()
    return math.asin(t[0]) + math.asin(t[1]) + math.asin(t[2]) - math.asin(t[3])


def boundary_to_generator(
    x: CorrelationVector, tolerance: float = DEFAULT_TOLERANCE
) -> GeneratorPoint:
    """Identify a point of the curved boundary with its unique generator.

    For s-ordered x with arcsine_sum(x) = pi the angles are simply
    phi_i = asin x_i; the closure of the angle sum reproduces the fourth
    component automatically.
    """
    value = arcsine_sum(x)
    if abs(value - math.pi) > tolerance:
        raise NotOnBoundaryError(
            f"arcsine sum {value!r} is not pi within tolerance {tolerance:g}"
        )
    t = x.as_tuple()
    return GeneratorPoint(math.asin(t[0]), math.asin(t[1]), math.asin(t[2]))


def face_decompose(
    x: CorrelationVector, tolerance: float = DEFAULT_TOLERANCE
) -> Decomposition:
    """Split a point of the face x1 = 1 between two extremal generators.

    With theta_i = asin x_i, the quantum set intersects the line over
    (1, x2, x3) in the segment

        x4 in [-cos(theta2 + theta3), cos(theta2 - theta3)],

    whose endpoints are generated by G(pi/2, theta2, theta3) and
    G(pi/2, theta2, pi - theta3).  The input's fourth coordinate picks the
    mixing weight.  Degenerate segments (endpoints closer than the
    tolerance) give a single term of weight 1.
    """
    if not is_s_ordered(x, slack=_S_ORDER_SLACK):
        raise NotSOrderedError(
            f"{x.as_tuple()!r} does not satisfy x1 >= x2 >= x3 >= |x4|"
        )
    t = x.as_tuple()
    if abs(t[0] - 1.0) > tolerance:
        raise PreconditionError(
            f"face decomposition needs x1 = 1 within tolerance, got {t[0]!r}"
        )
    value = arcsine_sum(x)
    if value > math.pi + tolerance:
        raise NotInQuantumSetError(
            f"point outside the quantum set: arcsine sum {value!r} > pi"
        )

    theta2 = math.asin(t[1])
    theta3 = math.asin(t[2])
    low = -math.cos(theta2 + theta3)
    high = math.cos(theta2 - theta3)
    g_low = GeneratorPoint(0.5 * math.pi, theta2, theta3)
    g_high = GeneratorPoint(0.5 * math.pi, theta2, math.pi - theta3)

    if high - low < tolerance:
        return Decomposition(((1.0, g_low),))

    lam = (t[3] - low) / (high - low)
    lam = min(1.0, max(0.0, lam))
    terms: list[tuple[float, GeneratorPoint]] = []
    if 1.0 - lam > 0.0:
        terms.append((1.0 - lam, g_low))
    if lam > 0.0:
        terms.append((lam, g_high))
    return Decomposition(tuple(terms))


def angle_transport(op: SymmetryOp, g: GeneratorPoint) -> GeneratorPoint:
    """Transport a generator through a symmetry op at the angle level.

    Expands to the 4-angle form, permutes the angles like the op permutes
    components, and adds pi at each sign-flipped position.  Since the op
    flips an even number of signs, the angle-sum constraint survives, and

        angle_transport(op, g).evaluate() == op.apply(g.evaluate())

    up to floating point roundoff.
    """
    nus = g.angles().as_tuple()
    q = op.source_indices()
    shifted = tuple(
        nus[q[i]] + (math.pi if op.signs[i] < 0 else 0.0) for i in range(4)
    )
    return GeneratorPoint(shifted[0], shifted[1], shifted[2])


def _ray_arcsine_sum(t: float, comps: tuple[float, float, float, float]) -> float:
    # clamp guards against t*comps[i] overshooting 1 by one ulp at t = 1/y1
    c0 = min(1.0, max(-1.0, t * comps[0]))
    c1 = min(1.0, max(-1.0, t * comps[1]))
    c2 = min(1.0, max(-1.0, t * comps[2]))
    c3 = min(1.0, max(-1.0, t * comps[3]))
    return math.asin(c0) + math.asin(c1) + math.asin(c2) - math.asin(c3)


def _bisect_boundary_crossing(
    comps: tuple[float, float, float, float], tolerance: float
) -> float:
    """Find t with arcsine_sum(t * y) = pi on a monotone bracket.

    The caller guarantees arcsine_sum(y) < pi < arcsine_sum(y / y1).
    Bisection stops once the functional is within 1e-12 of pi or the
    parameter interval collapses to 1e-12; if the residual still exceeds
    the decomposition tolerance afterwards the geometry is numerically
    pathological (the crossing hugs the box corner) and BisectionError
    is raised.
    """
    lo = 1.0
    hi = 1.0 / comps[0]
    mid = 0.5 * (lo + hi)
    for _ in range(_BISECT_MAX_ITERATIONS):
        mid = 0.5 * (lo + hi)
        value = _ray_arcsine_sum(mid, comps)
        if abs(value - math.pi) <= _BISECT_VALUE_TOLERANCE:
            return mid
        if value < math.pi:
            lo = mid
        else:
            hi = mid
        if hi - lo <= _BISECT_VALUE_TOLERANCE:
            break
    mid = 0.5 * (lo + hi)
    if abs(_ray_arcsine_sum(mid, comps) - math.pi) <= tolerance:
        return mid
    raise BisectionError(
        f"boundary crossing on the ray through {comps!r} did not converge"
    )


def decompose(
    x: CorrelationVector, tolerance: float = DEFAULT_TOLERANCE
) -> Decomposition:
    """Write a quantum-set member as a mixture of at most 3 generators.

    Raises NotInQuantumSetError outside the set.  The result reconstructs
    the input within 1e-9 per component; that bound is verified before
    returning and its failure (never observed for valid input) raises
    InternalCheckError.
    """
    form = canonicalize(x)
    y = form.canonical.as_tuple()

    f_y = (
        math.asin(y[0]) + math.asin(y[1]) + math.asin(y[2]) - math.asin(y[3])
    )
    margin = math.pi - f_y
    if margin < -tolerance:
        raise NotInQuantumSetError(
            f"{x.as_tuple()!r} lies outside the quantum set "
            f"(margin {margin:.3e})"
        )

    terms: tuple[tuple[float, GeneratorPoint], ...]
    if y[0] == 0.0:
        # the zero vector; s-order forces all components to vanish with y1
        terms = ((1.0, GeneratorPoint.origin()),)
    elif f_y >= math.pi - tolerance:
        # already on the curved boundary: single extremal term
        canonical_vec = form.canonical
        terms = ((1.0, boundary_to_generator(canonical_vec, tolerance)),)
    else:
        scale = y[0]  # reciprocal of the ray parameter of the box face
        z = CorrelationVector(1.0, y[1] / y[0], y[2] / y[0], y[3] / y[0])
        f_z = arcsine_sum(z)
        if f_z <= math.pi + tolerance:
            # the ray exits through the box face x1 = 1
            face = face_decompose(z, tolerance)
            scaled = tuple((w * scale, g) for w, g in face.terms)
            if 1.0 - scale > 0.0:
                scaled = scaled + ((1.0 - scale, GeneratorPoint.origin()),)
            terms = scaled
        else:
            # the ray exits through the curved boundary
            t_star = _bisect_boundary_crossing(y, tolerance)
            hit = CorrelationVector(
                min(1.0, t_star * y[0]),
                min(1.0, t_star * y[1]),
                min(1.0, t_star * y[2]),
                min(1.0, max(-1.0, t_star * y[3])),
            )
            weight = 1.0 / t_star
            generator = boundary_to_generator(hit, tolerance)
            if 1.0 - weight > 0.0:
                terms = (
                    (weight, generator),
                    (1.0 - weight, GeneratorPoint.origin()),
                )
            else:
                terms = ((1.0, generator),)

    inverse = form.op.inverse()
    if not inverse.is_identity:
        terms = tuple((w, angle_transport(inverse, g)) for w, g in terms)

    result = Decomposition(terms)
    residual = max(
        abs(a - b)
        for a, b in zip(result.reconstruct().as_tuple(), x.as_tuple())
    )
    if residual > _RECONSTRUCTION_TOLERANCE:
        raise InternalCheckError(
            f"decomposition residual {residual:.3e} exceeds "
            f"{_RECONSTRUCTION_TOLERANCE:g} for input {x.as_tuple()!r}"
        )
    return result
