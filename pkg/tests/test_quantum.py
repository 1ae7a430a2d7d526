"""Quantum realization tests: synthesis, expectation oracle and sampling."""

import math

import numpy as np
import pytest

from corrset.corrvec import CorrelationVector
from corrset.errors import DimensionError, InvariantViolationError
from corrset.geometry import Decomposition, GeneratorPoint, decompose
from corrset.membership import chsh_combinations, quantum_margins
from corrset.quantum import (
    PhaseParams,
    Realization,
    expectation,
    realize_generator,
    realize_mixture,
    sample_correlations,
    sample_quantum,
)

T = 1.0 / math.sqrt(2.0)
HALF_PI = 0.5 * math.pi


def max_component_gap(x: CorrelationVector, y: CorrelationVector) -> float:
    return max(abs(a - b) for a, b in zip(x.as_tuple(), y.as_tuple()))


def test_phase_params_frozen_points():
    p = PhaseParams.from_generator(GeneratorPoint(HALF_PI, 0.0, 0.0))
    assert (p.phi, p.alpha, p.beta) == pytest.approx(
        (0.0, -HALF_PI, -HALF_PI), abs=1e-15
    )
    values = [p.correlator(a, b) for a, b in ((0, 0), (0, 1), (1, 0), (1, 1))]
    assert values == pytest.approx([1, 0, 0, -1], abs=1e-15)

    # all-ones vector comes from the zero-phase assignment
    p = PhaseParams.from_generator(GeneratorPoint(HALF_PI, HALF_PI, HALF_PI))
    assert (p.phi, p.alpha, p.beta) == pytest.approx((0, 0, 0), abs=1e-15)
    assert p.correlator(1, 1) == 1.0


def test_phase_params_match_generator():
    rng = np.random.default_rng(1)
    for _ in range(500):
        g = GeneratorPoint(*rng.uniform(-math.pi, math.pi, size=3))
        p = PhaseParams.from_generator(g)
        want = g.evaluate().as_tuple()
        got = [p.correlator(a, b) for a, b in ((0, 0), (0, 1), (1, 0), (1, 1))]
        assert np.abs(np.array(got) - want).max() <= 1e-12


def test_realize_generator_fidelity():
    rng = np.random.default_rng(3)
    for _ in range(200):
        g = GeneratorPoint(*rng.uniform(-math.pi, math.pi, size=3))
        r = realize_generator(g)
        r.validate()
        assert r.dims == (2, 2)
        assert max_component_gap(expectation(r), g.evaluate()) <= 1e-12


def test_realize_generator_tsirelson():
    q = math.pi / 4
    r = realize_generator(GeneratorPoint(q, q, q))
    x = expectation(r)
    assert x.as_tuple() == pytest.approx((T, T, T, -T), abs=1e-12)
    assert chsh_combinations(np.array(x.as_tuple())).max() == pytest.approx(
        2 * math.sqrt(2), abs=1e-12
    )


def test_realize_mixture_dims_scale_with_terms():
    g1 = GeneratorPoint(HALF_PI, 0.0, 0.0)
    g2 = GeneratorPoint(0.3, -0.2, 0.9)
    g3 = GeneratorPoint(-1.0, 0.4, 0.1)
    two = realize_mixture(Decomposition(((0.5, g1), (0.5, g2))))
    assert two.dims == (4, 4)
    three = realize_mixture(Decomposition(((0.2, g1), (0.3, g2), (0.5, g3))))
    assert three.dims == (6, 6)
    single = realize_mixture(Decomposition(((1.0, g2),)))
    assert single.dims == (2, 2)


def test_realize_mixture_reproduces_mixture():
    rng = np.random.default_rng(5)
    for _ in range(100):
        gs = [GeneratorPoint(*rng.uniform(-math.pi, math.pi, size=3)) for _ in range(3)]
        w = rng.dirichlet(np.ones(3))
        d = Decomposition(tuple(zip(w.tolist(), gs)))
        r = realize_mixture(d)
        r.validate()
        mixed = np.array([w @ np.array([g.evaluate().as_tuple() for g in gs])])[0]
        assert np.abs(
            np.array(expectation(r).as_tuple()) - mixed
        ).max() <= 1e-12


def test_decompose_realize_round_trip():
    x = CorrelationVector(0.5, 0.0, 0.0, 0.0)
    r = realize_mixture(decompose(x))
    assert r.dims == (6, 6)
    assert max_component_gap(expectation(r), x) <= 1e-12


def test_expectation_validates_observables():
    r = realize_generator(GeneratorPoint(0.2, 0.4, -0.1))
    bad_a0 = r.a0.copy()
    bad_a0[0, 0] = 3.0
    broken = Realization(state=r.state, a0=bad_a0, a1=r.a1, b0=r.b0, b1=r.b1)
    with pytest.raises(InvariantViolationError, match="involution|hermitian"):
        expectation(broken)


def test_expectation_validates_state():
    r = realize_generator(GeneratorPoint(0.2, 0.4, -0.1))
    not_normalized = Realization(
        state=2.0 * r.state, a0=r.a0, a1=r.a1, b0=r.b0, b1=r.b1
    )
    with pytest.raises(InvariantViolationError, match="trace"):
        expectation(not_normalized)
    rng = np.random.default_rng(0)
    noise = rng.standard_normal(r.state.shape)
    indefinite = r.state - 0.5 * (noise + noise.T) / np.abs(noise).max()
    indefinite = indefinite / np.trace(indefinite).real
    with pytest.raises(InvariantViolationError, match="positive|hermitian"):
        expectation(
            Realization(state=indefinite, a0=r.a0, a1=r.a1, b0=r.b0, b1=r.b1)
        )


def test_realization_json_round_trip():
    r = realize_mixture(decompose(CorrelationVector(0.5, 0.25, 0.0, 0.125)))
    data = r.to_json_dict()
    assert set(data) == {"state", "A0", "A1", "B0", "B1", "dims"}
    back = Realization.from_json_dict(data)
    back.validate()
    assert max_component_gap(expectation(back), expectation(r)) == 0.0
    assert np.array_equal(back.state, r.state)


def test_sample_quantum_deterministic():
    x1, r1 = sample_quantum(seed=42, index=7)
    x2, r2 = sample_quantum(seed=42, index=7)
    assert x1 == x2
    assert np.array_equal(r1.state, r2.state)
    assert np.array_equal(r1.a0, r2.a0)
    x3, _ = sample_quantum(seed=42, index=8)
    assert x1 != x3
    x4, _ = sample_quantum(seed=43, index=7)
    assert x1 != x4


def test_sample_quantum_realization_consistent():
    for index in range(10):
        x, r = sample_quantum(dim_a=2, dim_b=3, seed=5, index=index)
        r.validate()
        assert r.dims == (2, 3)
        assert max_component_gap(expectation(r), x) <= 1e-9


def test_sample_correlations_matches_per_index():
    rows = sample_correlations(20, seed=9)
    assert rows.shape == (20, 4)
    for index in (0, 7, 19):
        x, _ = sample_quantum(seed=9, index=index)
        assert tuple(rows[index]) == x.as_tuple()


def test_sample_correlations_workers_agree():
    a = sample_correlations(64, dim_a=2, dim_b=2, seed=1)
    b = sample_correlations(64, dim_a=2, dim_b=2, seed=1, workers=3)
    assert np.array_equal(a, b)


def test_samples_stay_in_quantum_set():
    rows = sample_correlations(500, seed=21)
    assert quantum_margins(rows).min() >= -1e-7
    rows4 = sample_correlations(50, dim_a=4, dim_b=4, seed=22)
    assert quantum_margins(rows4).min() >= -1e-7


def test_dimension_limits():
    with pytest.raises(DimensionError):
        sample_quantum(dim_a=1, dim_b=2, seed=0)
    with pytest.raises(DimensionError):
        sample_quantum(dim_a=2, dim_b=9, seed=0)


def test_observable_laws_on_samples():
    _, r = sample_quantum(dim_a=3, dim_b=2, seed=13, index=2)
    for obs in (r.a0, r.a1, r.b0, r.b1):
        dim = obs.shape[0]
        assert np.abs(obs - obs.conj().T).max() <= 1e-12
        assert np.abs(obs @ obs - np.eye(dim)).max() <= 1e-12
