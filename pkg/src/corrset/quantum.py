"""Explicit quantum realizations of correlation vectors.

A single generator G(phi1, phi2, phi3) is realized on a qubit pair: with
phases derived from the angles,

    phi   = pi/2 - phi1,
    alpha = phi3 + phi1 - pi,
    beta  = phi2 + phi1 - pi,

the state (|00> + e^{i phi} |11>)/sqrt(2) measured with the off-diagonal
observables

    A_a = e^{i a alpha} |0><1| + e^{-i a alpha} |1><0|   (a = 0, 1)

and B_b built the same way from beta yields <A_a B_b> = cos(phi + a alpha
+ b beta), which reproduces the generator's components.

Mixtures are realized block-diagonally: party observables are direct sums
of the per-term qubit observables and the state is the weighted direct sum
of the per-term pair states, placed on the matching diagonal blocks of the
tensor product.  A k-term mixture therefore uses local dimension 2k.

Everything is a plain numpy complex array.  Random strategy sampling uses
numpy's PCG64 generator with explicit per-index stream splitting: sample
`index` of a run with seed s draws from

    Generator(PCG64(SeedSequence((s mod 2**64, index)))),

consuming, in order, the joint state vector (all real parts, then all
imaginary parts) followed by, for each of A0, A1, B0, B1: a complex square
matrix (reals, then imaginaries) fed to QR for a Haar unitary, then one
integer draw per dimension for the +-1 eigenvalue pattern.  Distinct
indices therefore never share a stream, which makes sampling order and
parallel chunking irrelevant to the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corrvec import CorrelationVector
from .errors import DimensionError, InvariantViolationError
from .geometry import Decomposition, GeneratorPoint, reduce_angle

_TRACE_TOLERANCE = 1e-12
_HERMITIAN_TOLERANCE = 1e-12
_INVOLUTION_TOLERANCE = 1e-12
_PSD_TOLERANCE = 1e-10
_IMAGINARY_TOLERANCE = 1e-10
_EIGENSOLVE_DIMENSION_LIMIT = 16

MIN_LOCAL_DIMENSION = 2
MAX_LOCAL_DIMENSION = 8


@dataclass(frozen=True)
class PhaseParams:
    """State and observable phases realizing one generator."""

    phi: float
    alpha: float
    beta: float

    @classmethod
    def from_generator(cls, g: GeneratorPoint) -> "PhaseParams":
        return cls(
            phi=reduce_angle(0.5 * math.pi - g.phi1),
            alpha=reduce_angle(g.phi3 + g.phi1 - math.pi),
            beta=reduce_angle(g.phi2 + g.phi1 - math.pi),
        )

    def correlator(self, a: int, b: int) -> float:
        """<A_a B_b> for this phase assignment."""
        return math.cos(self.phi + a * self.alpha + b * self.beta)


@dataclass(frozen=True, eq=False)
class Realization:
    """Concrete state and observables reproducing a correlation vector.

    `state` is a density matrix on the joint space of dimension
    dim_a * dim_b; `a0`, `a1`, `b0`, `b1` are the party observables.
    Invariants (checked by `validate`): the state is Hermitian, unit trace
    and positive semidefinite within 1e-10; every observable is Hermitian
    and squares to the identity within 1e-12.
    """

    state: np.ndarray
    a0: np.ndarray
    a1: np.ndarray
    b0: np.ndarray
    b1: np.ndarray

    @property
    def dims(self) -> tuple[int, int]:
        return (self.a0.shape[0], self.b0.shape[0])

    def validate(self) -> None:
        """Run all invariant checks; raise InvariantViolationError naming
        the first failed check."""
        dim_a, dim_b = self.dims
        joint = dim_a * dim_b
        if self.state.shape != (joint, joint):
            raise InvariantViolationError(
                f"check 'state-shape' failed: state is {self.state.shape}, "
                f"expected {(joint, joint)}"
            )
        for name, obs in (
            ("A0", self.a0),
            ("A1", self.a1),
            ("B0", self.b0),
            ("B1", self.b1),
        ):
            d = obs.shape[0]
            if obs.shape != (d, d):
                raise InvariantViolationError(
                    f"check 'observable-shape' failed for {name}"
                )
            if not np.all(np.isfinite(obs.view(float))):
                raise InvariantViolationError(
                    f"check 'observable-finite' failed for {name}"
                )
            if np.abs(obs - obs.conj().T).max() > _HERMITIAN_TOLERANCE:
                raise InvariantViolationError(
                    f"check 'observable-hermitian' failed for {name}"
                )
            square_residual = np.abs(obs @ obs - np.eye(d)).max()
            if square_residual > _INVOLUTION_TOLERANCE:
                raise InvariantViolationError(
                    f"check 'observable-involution' failed for {name}: "
                    f"|O^2 - I| = {square_residual:.3e}"
                )
        if not np.all(np.isfinite(self.state.view(float))):
            raise InvariantViolationError("check 'state-finite' failed")
        trace_residual = abs(np.trace(self.state) - 1.0)
        if trace_residual > _TRACE_TOLERANCE:
            raise InvariantViolationError(
                f"check 'state-trace' failed: |tr - 1| = {trace_residual:.3e}"
            )
        if np.abs(self.state - self.state.conj().T).max() > _HERMITIAN_TOLERANCE:
            raise InvariantViolationError("check 'state-hermitian' failed")
        if not _is_positive_semidefinite(self.state, _PSD_TOLERANCE):
            raise InvariantViolationError(
                "check 'state-positive' failed: smallest eigenvalue below "
                f"-{_PSD_TOLERANCE:g}"
            )

    def to_json_dict(self) -> dict:
        return {
            "state": _complex_matrix_to_json(self.state),
            "A0": _complex_matrix_to_json(self.a0),
            "A1": _complex_matrix_to_json(self.a1),
            "B0": _complex_matrix_to_json(self.b0),
            "B1": _complex_matrix_to_json(self.b1),
            "dims": list(self.dims),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Realization":
        try:
            realization = cls(
                state=_complex_matrix_from_json(data["state"]),
                a0=_complex_matrix_from_json(data["A0"]),
                a1=_complex_matrix_from_json(data["A1"]),
                b0=_complex_matrix_from_json(data["B0"]),
                b1=_complex_matrix_from_json(data["B1"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvariantViolationError(
                f"check 'serialization' failed: {exc}"
            ) from exc
        dims = data.get("dims")
        if dims is not None and tuple(dims) != realization.dims:
            raise InvariantViolationError(
                f"check 'dims' failed: declared {dims}, matrices give "
                f"{realization.dims}"
            )
        return realization


def _complex_matrix_to_json(matrix: np.ndarray) -> list:
    # row-major nesting, each entry as [re, im]
    return [
        [[float(entry.real), float(entry.imag)] for entry in row]
        for row in matrix
    ]


def _complex_matrix_from_json(data: list) -> np.ndarray:
    rows = []
    for row in data:
        rows.append([complex(entry[0], entry[1]) for entry in row])
    matrix = np.array(rows, dtype=complex)
    if matrix.ndim != 2:
        raise ValueError("matrix JSON must be a nested list of [re, im] pairs")
    return matrix


def _is_positive_semidefinite(matrix: np.ndarray, tolerance: float) -> bool:
    dim = matrix.shape[0]
    if dim <= _EIGENSOLVE_DIMENSION_LIMIT:
        return float(np.linalg.eigvalsh(matrix)[0]) >= -tolerance
    # larger matrices: cheap Gershgorin certificate first, Cholesky after
    radii = np.abs(matrix).sum(axis=1) - np.abs(np.diagonal(matrix))
    if float((np.real(np.diagonal(matrix)) - radii).min()) >= -tolerance:
        return True
    try:
        np.linalg.cholesky(matrix + tolerance * np.eye(dim))
        return True
    except np.linalg.LinAlgError:
        return False


def _phase_observable(theta: float) -> np.ndarray:
    return np.array(
        [[0.0, np.exp(1j * theta)], [np.exp(-1j * theta), 0.0]], dtype=complex
    )


def realize_generator(g: GeneratorPoint) -> Realization:
    """Two-qubit realization of a single generator."""
    params = PhaseParams.from_generator(g)
    amplitude = 1.0 / math.sqrt(2.0)
    psi = np.zeros(4, dtype=complex)
    psi[0] = amplitude
    psi[3] = amplitude * np.exp(1j * params.phi)
    return Realization(
        state=np.outer(psi, psi.conj()),
        a0=_phase_observable(0.0),
        a1=_phase_observable(params.alpha),
        b0=_phase_observable(0.0),
        b1=_phase_observable(params.beta),
    )


def realize_mixture(decomposition: Decomposition) -> Realization:
    """Block-diagonal realization of a generator mixture.

    Party dimension is 2 * (number of terms); a single term gives exactly
    `realize_generator` of that term.
    """
    terms = decomposition.terms
    if len(terms) == 1:
        return realize_generator(terms[0][1])

    count = len(terms)
    local = 2 * count
    joint = local * local
    a0 = np.zeros((local, local), dtype=complex)
    a1 = np.zeros((local, local), dtype=complex)
    b0 = np.zeros((local, local), dtype=complex)
    b1 = np.zeros((local, local), dtype=complex)
    state = np.zeros((joint, joint), dtype=complex)

    for k, (weight, generator) in enumerate(terms):
        block = realize_generator(generator)
        rows = slice(2 * k, 2 * k + 2)
        a0[rows, rows] = block.a0
        a1[rows, rows] = block.a1
        b0[rows, rows] = block.b0
        b1[rows, rows] = block.b1
        # the pair state of term k occupies the (k, k) diagonal sub-block
        # of the joint tensor product
        indices = [
            (2 * k + i) * local + (2 * k + j) for i in (0, 1) for j in (0, 1)
        ]
        state[np.ix_(indices, indices)] = weight * block.state

    return Realization(state=state, a0=a0, a1=a1, b0=b0, b1=b1)


def expectation(
    realization: Realization, *, validate: bool = True
) -> CorrelationVector:
    """Correlation vector tr(rho (A_a x B_b)) of a realization.

    Validates the realization invariants first (skippable for callers that
    just built a trusted one).  Each trace must be real within 1e-10; the
    real parts are clamped to [-1, 1].
    """
    if validate:
        realization.validate()
    rho = realization.state
    values = []
    for a_obs, b_obs in (
        (realization.a0, realization.b0),
        (realization.a0, realization.b1),
        (realization.a1, realization.b0),
        (realization.a1, realization.b1),
    ):
        product = np.kron(a_obs, b_obs)
        value = complex((rho * product.T).sum())
        if abs(value.imag) > _IMAGINARY_TOLERANCE:
            raise InvariantViolationError(
                f"check 'expectation-real' failed: imaginary residue "
                f"{value.imag:.3e}"
            )
        values.append(min(1.0, max(-1.0, value.real)))
    return CorrelationVector(*values)


def _check_dims(dim_a: int, dim_b: int) -> None:
    for name, dim in (("dim_a", dim_a), ("dim_b", dim_b)):
        if not MIN_LOCAL_DIMENSION <= dim <= MAX_LOCAL_DIMENSION:
            raise DimensionError(
                f"{name} = {dim} outside supported range "
                f"[{MIN_LOCAL_DIMENSION}, {MAX_LOCAL_DIMENSION}]"
            )


def _sample_stream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence((seed % 2**64, index)))
    )


def _random_observable(rng: np.random.Generator, dim: int) -> np.ndarray:
    raw = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(raw)
    diagonal = np.diagonal(r)
    # fix the QR phase ambiguity so the unitary is Haar distributed
    unitary = q * (diagonal / np.abs(diagonal))
    pattern = 1.0 - 2.0 * rng.integers(0, 2, size=dim)
    observable = (unitary * pattern) @ unitary.conj().T
    return 0.5 * (observable + observable.conj().T)


def _sample_parts(
    dim_a: int, dim_b: int, seed: int, index: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray, list[float]]:
    rng = _sample_stream(seed, index)
    joint = dim_a * dim_b
    psi = rng.standard_normal(joint) + 1j * rng.standard_normal(joint)
    psi /= np.linalg.norm(psi)
    a0 = _random_observable(rng, dim_a)
    a1 = _random_observable(rng, dim_a)
    b0 = _random_observable(rng, dim_b)
    b1 = _random_observable(rng, dim_b)

    matrix = psi.reshape(dim_a, dim_b)
    values = []
    for a_obs, b_obs in ((a0, b0), (a0, b1), (a1, b0), (a1, b1)):
        value = complex(
            np.vdot(matrix, a_obs @ matrix @ b_obs.T)
        )
        values.append(min(1.0, max(-1.0, value.real)))
    return psi, a0, a1, b0, b1, values


def sample_quantum(
    dim_a: int = 2, dim_b: int = 2, seed: int = 0, index: int = 0
) -> tuple[CorrelationVector, Realization]:
    """Draw one random quantum strategy and its correlation vector.

    The state is a Haar-like random pure state (normalized complex
    Gaussian); observables conjugate random +-1 eigenvalue patterns by
    Haar unitaries.  Deterministic in (seed, index); see the module
    docstring for the exact stream layout.
    """
    _check_dims(dim_a, dim_b)
    psi, a0, a1, b0, b1, values = _sample_parts(dim_a, dim_b, seed, index)
    realization = Realization(
        state=np.outer(psi, psi.conj()), a0=a0, a1=a1, b0=b0, b1=b1
    )
    return CorrelationVector(*values), realization


def _sample_chunk(args: tuple[int, int, int, int, int]) -> np.ndarray:
    start, stop, dim_a, dim_b, seed = args
    out = np.empty((stop - start, 4))
    for offset, index in enumerate(range(start, stop)):
        out[offset] = _sample_parts(dim_a, dim_b, seed, index)[5]
    return out


def sample_correlations(
    count: int,
    dim_a: int = 2,
    dim_b: int = 2,
    seed: int = 0,
    workers: int = 1,
) -> np.ndarray:
    """Correlation vectors of `count` random strategies, shape (count, 4).

    Row i equals sample_quantum(dim_a, dim_b, seed, index=i)[0]; per-index
    seed splitting makes the result independent of `workers`.
    """
    _check_dims(dim_a, dim_b)
    if count < 0:
        raise DimensionError(f"count must be nonnegative, got {count}")
    if workers <= 1 or count < 4 * workers:
        return _sample_chunk((0, count, dim_a, dim_b, seed))

    from concurrent.futures import ProcessPoolExecutor

    bounds = np.linspace(0, count, workers + 1).astype(int)
    chunks = [
        (int(bounds[k]), int(bounds[k + 1]), dim_a, dim_b, seed)
        for k in range(workers)
        if bounds[k] < bounds[k + 1]
    ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pieces = list(pool.map(_sample_chunk, chunks))
    return np.concatenate(pieces, axis=0)
