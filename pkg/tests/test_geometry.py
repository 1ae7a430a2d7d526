"""Geometry tests: generators, faces, transport and the decomposition."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corrset.corrvec import CorrelationVector, canonicalize, full_symmetry_group
from corrset.errors import (
    NotInQuantumSetError,
    NotOnBoundaryError,
    NotSOrderedError,
    PreconditionError,
)
from corrset.geometry import (
    AngleVector,
    Decomposition,
    GeneratorPoint,
    angle_transport,
    arcsine_sum,
    boundary_to_generator,
    decompose,
    face_decompose,
    generator_values,
    reduce_angle,
)
from corrset.membership import evaluate, in_quantum, quantum_margins

T = 1.0 / math.sqrt(2.0)

angles = st.floats(min_value=-math.pi, max_value=math.pi, allow_nan=False)


def test_reduce_angle_range():
    for raw in (-7.0, -math.pi, 0.0, math.pi, 9.5, 2 * math.pi):
        folded = reduce_angle(raw)
        assert -math.pi < folded <= math.pi
        assert math.isclose(
            math.sin(folded), math.sin(raw), abs_tol=1e-12
        )


def test_generator_frozen_points():
    assert GeneratorPoint(math.pi / 2, 0, 0).evaluate().as_tuple() == pytest.approx(
        (1, 0, 0, -1), abs=1e-15
    )
    assert GeneratorPoint(
        math.pi / 2, math.pi / 2, math.pi / 2
    ).evaluate().as_tuple() == pytest.approx((1, 1, 1, 1), abs=1e-15)
    q = math.pi / 4
    assert GeneratorPoint(q, q, q).evaluate().as_tuple() == pytest.approx(
        (T, T, T, -T), abs=1e-15
    )
    assert GeneratorPoint.origin().evaluate().as_tuple() == (0, 0, 0, 0)


def test_generator_values_batch():
    phis = np.array([[math.pi / 2, 0, 0], [0, 0, 0]])
    got = generator_values(phis)
    assert got.shape == (2, 4)
    assert got[0] == pytest.approx([1, 0, 0, -1], abs=1e-15)
    assert got[1] == pytest.approx([0, 0, 0, 0], abs=0)


def test_generators_lie_in_quantum_set():
    rng = np.random.default_rng(2)
    phis = rng.uniform(-math.pi, math.pi, size=(100_000, 3))
    margins = quantum_margins(generator_values(phis))
    assert margins.min() >= -1e-9


def test_boundary_saturation():
    # angle triples whose sum lands in [pi/2, pi] sit on the arcsine boundary
    rng = np.random.default_rng(4)
    count = 0
    while count < 500:
        phi = rng.uniform(0, math.pi / 2, size=3)
        if not math.pi / 2 <= phi.sum() <= math.pi:
            continue
        count += 1
        x = GeneratorPoint(*phi).evaluate()
        assert abs(evaluate(x).quantum_margin) <= 1e-9


def test_arcsine_sum_values():
    assert arcsine_sum(CorrelationVector(1, 0, 0, 0)) == pytest.approx(
        math.pi / 2, abs=1e-15
    )
    assert arcsine_sum(CorrelationVector(T, T, T, -T)) == pytest.approx(
        math.pi, abs=1e-12
    )
    assert arcsine_sum(CorrelationVector(1, 1, 1, 1)) == pytest.approx(
        math.pi, abs=1e-12
    )
    assert arcsine_sum(CorrelationVector(0, 0, 0, 0)) == 0.0
    with pytest.raises(NotSOrderedError):
        arcsine_sum(CorrelationVector(0.1, 0.9, 0.0, 0.0))


def test_boundary_to_generator_examples():
    g = boundary_to_generator(CorrelationVector(T, T, T, -T))
    assert (g.phi1, g.phi2, g.phi3) == pytest.approx(
        (math.pi / 4,) * 3, abs=1e-12
    )
    g = boundary_to_generator(CorrelationVector(1, 1, 1, 1))
    assert (g.phi1, g.phi2, g.phi3) == pytest.approx(
        (math.pi / 2,) * 3, abs=1e-12
    )
    g = boundary_to_generator(CorrelationVector(1, 1, 0, 0))
    assert (g.phi1, g.phi2, g.phi3) == pytest.approx(
        (math.pi / 2, math.pi / 2, 0), abs=1e-12
    )


def test_boundary_to_generator_rejects_interior():
    with pytest.raises(NotOnBoundaryError):
        boundary_to_generator(CorrelationVector(0.5, 0, 0, 0))


def test_face_decompose_split():
    terms = face_decompose(CorrelationVector(1, 0, 0, 0)).terms
    assert len(terms) == 2
    (w_low, g_low), (w_high, g_high) = terms
    assert w_low == pytest.approx(0.5, abs=1e-12)
    assert w_high == pytest.approx(0.5, abs=1e-12)
    assert g_low.evaluate().as_tuple() == pytest.approx((1, 0, 0, -1), abs=1e-12)
    assert g_high.evaluate().as_tuple() == pytest.approx((1, 0, 0, 1), abs=1e-12)


def test_face_decompose_degenerate():
    y = 0.62
    terms = face_decompose(CorrelationVector(1, 1, y, y)).terms
    assert len(terms) == 1
    assert terms[0][0] == pytest.approx(1.0, abs=0)
    assert terms[0][1].evaluate().as_tuple() == pytest.approx(
        (1, 1, y, y), abs=1e-12
    )


def test_face_decompose_endpoint_collapses():
    # x4 at the lower face edge: the high-end term carries zero weight
    theta2, theta3 = 1.0, 0.5
    x = CorrelationVector(
        1.0, math.sin(theta2), math.sin(theta3), -math.cos(theta2 + theta3)
    )
    terms = face_decompose(x).terms
    assert len(terms) == 1
    assert terms[0][0] == pytest.approx(1.0, abs=1e-12)


def test_face_decompose_preconditions():
    with pytest.raises(PreconditionError):
        face_decompose(CorrelationVector(0.9, 0.1, 0.1, 0.0))
    with pytest.raises(NotSOrderedError):
        face_decompose(CorrelationVector(1.0, 0.3, 0.9, 0.0))


def test_decompose_frozen_examples():
    d = decompose(CorrelationVector(0.5, 0, 0, 0))
    assert sorted(d.weights) == pytest.approx([0.25, 0.25, 0.5], abs=1e-12)

    d = decompose(CorrelationVector(T, T, T, -T))
    assert len(d.terms) == 1
    assert d.weights[0] == pytest.approx(1.0, abs=0)

    d = decompose(CorrelationVector(0, 0, 0, 0))
    assert len(d.terms) == 1
    assert d.reconstruct().as_tuple() == (0, 0, 0, 0)


def test_decompose_rejects_outside_q():
    with pytest.raises(NotInQuantumSetError):
        decompose(CorrelationVector(1, 1, 1, -1))


def test_decompose_term_count_and_weights():
    rng = np.random.default_rng(9)
    for _ in range(300):
        phis = rng.uniform(-math.pi, math.pi, size=(3, 3))
        w = rng.dirichlet(np.ones(3))
        x = CorrelationVector(*(w @ generator_values(phis)))
        d = decompose(x)
        assert 1 <= len(d.terms) <= 3
        assert math.fsum(d.weights) == pytest.approx(1.0, abs=1e-12)
        residual = np.abs(
            np.array(d.reconstruct().as_tuple()) - np.array(x.as_tuple())
        ).max()
        assert residual <= 1e-9


@given(
    st.tuples(angles, angles, angles),
    st.tuples(angles, angles, angles),
    st.floats(min_value=0.0, max_value=1.0),
)
@settings(max_examples=100)
def test_decompose_round_trip_property(p, q, lam):
    a = np.array(GeneratorPoint(*p).evaluate().as_tuple())
    b = np.array(GeneratorPoint(*q).evaluate().as_tuple())
    x = CorrelationVector(*(lam * a + (1 - lam) * b))
    assert in_quantum(x)
    d = decompose(x)
    residual = np.abs(
        np.array(d.reconstruct().as_tuple()) - np.array(x.as_tuple())
    ).max()
    assert residual <= 1e-9


def test_angle_transport_coherence():
    rng = np.random.default_rng(13)
    group = full_symmetry_group()
    for _ in range(200):
        g = GeneratorPoint(*rng.uniform(-math.pi, math.pi, size=3))
        op = group[rng.integers(len(group))]
        moved = angle_transport(op, g)
        direct = op.apply(g.evaluate())
        assert np.abs(
            np.array(moved.evaluate().as_tuple())
            - np.array(direct.as_tuple())
        ).max() <= 1e-12


def test_angle_transport_sign_flip_example():
    # flipping the first two signs shifts the first two angles by pi
    flip12 = None
    for op in full_symmetry_group():
        if op.perm == (0, 1, 2, 3) and op.signs == (-1, -1, 1, 1):
            flip12 = op
            break
    assert flip12 is not None
    moved = angle_transport(flip12, GeneratorPoint.origin())
    assert moved.as_tuple() == pytest.approx((math.pi, math.pi, 0.0), abs=0)
    assert moved.evaluate().as_tuple() == pytest.approx(
        (0, 0, 0, 0), abs=1e-15
    )


def test_angle_transport_identity():
    g = GeneratorPoint(0.4, -1.1, 2.2)
    identity = full_symmetry_group()[0].compose(
        full_symmetry_group()[0].inverse()
    )
    moved = angle_transport(identity, g)
    assert moved.as_tuple() == pytest.approx(g.as_tuple(), abs=1e-15)


def test_angle_transport_swap_example():
    op_swap = None
    for op in full_symmetry_group():
        if op.perm == (3, 1, 2, 0) and op.signs == (1, 1, 1, 1):
            op_swap = op
            break
    assert op_swap is not None
    g = GeneratorPoint(math.pi / 2, 0, 0)
    moved = angle_transport(op_swap, g)
    assert moved.evaluate().as_tuple() == pytest.approx(
        (-1, 0, 0, 1), abs=1e-12
    )


def test_decompose_transport_consistency():
    # decomposing an orbit image reconstructs to the image
    rng = np.random.default_rng(17)
    group = full_symmetry_group()
    for _ in range(100):
        phis = rng.uniform(-math.pi, math.pi, size=(2, 3))
        w = rng.dirichlet(np.ones(2))
        x = CorrelationVector(*(w @ generator_values(phis)))
        op = group[rng.integers(len(group))]
        y = op.apply(x)
        d = decompose(y)
        residual = np.abs(
            np.array(d.reconstruct().as_tuple()) - np.array(y.as_tuple())
        ).max()
        assert residual <= 1e-9


def test_angle_vector_constraint():
    v = AngleVector(0.3, 0.4, 0.5, -1.2)
    assert v.generator().as_tuple() == pytest.approx((0.3, 0.4, 0.5), abs=0)
    with pytest.raises(ValueError):
        AngleVector(0.3, 0.4, 0.5, 0.0)
    # shifting one entry by 2*pi keeps the constraint
    AngleVector(0.3, 0.4, 0.5, -1.2 + 2 * math.pi)
    # the 3-angle and 4-angle forms agree componentwise on the sines
    four = GeneratorPoint(0.3, 0.4, 0.5).angles()
    assert math.sin(four.nu4) == pytest.approx(-math.sin(1.2), abs=1e-15)


def test_decomposition_validation():
    g = GeneratorPoint.origin()
    with pytest.raises(ValueError):
        Decomposition(terms=())
    with pytest.raises(ValueError):
        Decomposition(terms=((0.5, g),))
    with pytest.raises(ValueError):
        Decomposition(terms=((0.5, g), (0.25, g), (0.2, g), (0.05, g)))
    with pytest.raises(ValueError):
        Decomposition(terms=((1.5, g), (-0.5, g)))


def test_decomposition_json_round_trip():
    d = decompose(CorrelationVector(0.5, 0, 0, 0))
    back = Decomposition.from_json_list(d.to_json_list())
    assert back.weights == d.weights
    assert all(
        a.as_tuple() == b.as_tuple()
        for a, b in zip(back.generators, d.generators)
    )


def test_canonical_interior_bisection_path():
    # strictly inside Q, x1 < 1, so decompose must go through the ray search
    x = CorrelationVector(0.8, 0.45, 0.2, -0.1)
    assert in_quantum(x)
    cf = canonicalize(x)
    assert cf.canonical.x1 < 1.0
    d = decompose(x)
    assert math.fsum(d.weights) == pytest.approx(1.0, abs=1e-12)
    residual = np.abs(
        np.array(d.reconstruct().as_tuple()) - np.array(x.as_tuple())
    ).max()
    assert residual <= 1e-9
