"""Finite-level GNS construction for an NC measure.

Classes of words of length <= N are represented in *quotient coordinates*:
columns of a factor F with gram ≈ F^H F, obtained from the Hermitian
eigendecomposition of the Gram matrix.  Inner products of classes are plain
dot products of their coordinate columns.
"""

from logging import getLogger

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict

from nclebesgue.core.errors import DepthExceededError, NCMeasureError
from nclebesgue.services.freemonoid import (
    basis_size,
    level_offset,
    level_ranks,
    prefixed_indices,
    reduce_pair,
    suffixed_indices,
    word_index,
)
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.reports import GnsReport, WanderingReport
from nclebesgue.types.word import Word

logger = getLogger(__name__)

DEFAULT_RANK_TOL = 1e-10
DEFAULT_WANDERING_TOL = 1e-12


class NotPositiveError(NCMeasureError): ...


def gram_matrix(measure: MomentTable, N: int) -> np.ndarray:
    """gram[α, β] = μ((L^α)* L^β) over words of length <= N, in packed order."""
    if N > measure.depth:
        raise DepthExceededError(f"Gram level {N} exceeds moment depth {measure.depth}")
    d = measure.d
    dim = basis_size(d, N)
    gram = np.zeros((dim, dim), dtype=complex)
    # Each stored γ fills every pair (α, αγ) at once.
    for gamma, value in measure.moments.items():
        if len(gamma) > N:
            continue
        for length in range(N - len(gamma) + 1):
            rows = level_offset(d, length) + level_ranks(d, length)
            cols = suffixed_indices(d, length, gamma)
            gram[rows, cols] = value
            if len(gamma):
                gram[cols, rows] = np.conj(value)
    return gram


def pair_moment(measure: MomentTable, alpha: Word, beta: Word) -> complex:
    """μ((L^α)* L^β) evaluated through the Cuntz-Toeplitz reduction."""
    reduction = reduce_pair(alpha, beta)
    if reduction.kind == "right_residual":
        return measure.moment(reduction.residual)
    if reduction.kind == "left_residual":
        return measure.adjoint_moment(reduction.residual)
    return 0j


class GnsSpace(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    measure: MomentTable
    N: int
    gram: np.ndarray
    rank_tol: float
    eigenvalues: np.ndarray
    factor: np.ndarray
    tol_abs: float

    @property
    def d(self) -> int:
        return self.measure.d

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @property
    def interior_dim(self) -> int:
        return level_offset(self.d, self.N)

    @property
    def rank(self) -> int:
        return self.factor.shape[0]

    @property
    def gram_min_eig(self) -> float:
        return float(self.eigenvalues[0]) if self.eigenvalues.size else 0.0

    @property
    def cyclic(self) -> np.ndarray:
        """Coordinates of I + N_μ."""
        return self.factor[:, 0]

    def coords(self, word: Word) -> np.ndarray:
        if len(word) > self.N:
            raise DepthExceededError(f"word {word} is longer than GNS level {self.N}")
        return self.factor[:, word_index(word, self.d)]

    def reconstruction_error(self) -> float:
        return float(np.linalg.norm(self.gram - self.factor.conj().T @ self.factor, 2))


def gns_space(measure: MomentTable, N: int, rank_tol: float = DEFAULT_RANK_TOL) -> GnsSpace:
    gram = gram_matrix(measure, N)
    eigenvalues, vectors = scipy.linalg.eigh(gram)
    lam_max = max(float(eigenvalues[-1]), 0.0)
    tol_abs = rank_tol * lam_max
    if eigenvalues[0] < -tol_abs * gram.shape[0]:
        raise NotPositiveError(
            f"Gram matrix at level {N} has eigenvalue {eigenvalues[0]:.3e} "
            f"below -{tol_abs * gram.shape[0]:.3e}"
        )
    keep = eigenvalues > tol_abs
    factor = np.sqrt(eigenvalues[keep])[:, None] * vectors[:, keep].conj().T
    logger.debug(f"GNS level {N}: dim {gram.shape[0]}, rank {int(keep.sum())}, tol {tol_abs:.2e}")
    return GnsSpace(
        measure=measure,
        N=N,
        gram=gram,
        rank_tol=rank_tol,
        eigenvalues=eigenvalues,
        factor=factor,
        tol_abs=tol_abs,
    )


def _orthonormal_range(matrix: np.ndarray, cut: float) -> np.ndarray:
    if matrix.size == 0:
        return np.zeros((matrix.shape[0], 0), dtype=complex)
    u, s, _ = scipy.linalg.svd(matrix, full_matrices=False)
    return u[:, s > cut]


def _singular_cut(space: GnsSpace) -> float:
    return max(np.sqrt(space.tol_abs), np.finfo(float).eps * max(space.rank, 1))


class GnsRowIsometry(BaseModel):
    """Π_1 ... Π_d in quotient coordinates, trusted on the interior subspace."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    shifts: list[np.ndarray]
    interior_basis: np.ndarray
    interior_dim: int

    @property
    def interior_rank(self) -> int:
        return self.interior_basis.shape[1]

    def isometry_defect(self) -> float:
        """max_{k,j} ‖Q^H Π_k^H Π_j Q − δ_kj I‖ on the interior subspace."""
        Q = self.interior_basis
        if Q.shape[1] == 0:
            return 0.0
        identity = np.eye(Q.shape[1])
        images = [shift @ Q for shift in self.shifts]
        defect = 0.0
        for k, left in enumerate(images):
            for j, right in enumerate(images):
                target = identity if k == j else 0.0
                defect = max(defect, float(np.linalg.norm(left.conj().T @ right - target, 2)))
        return defect


def _prefixed_interior(d: int, N: int, letter: int) -> np.ndarray:
    prefix = Word.of(letter)
    parts = [prefixed_indices(d, length, prefix) for length in range(N)]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def gns_row_isometry(space: GnsSpace) -> GnsRowIsometry:
    """Π_k sends the class of α (|α| <= N−1) to the class of kα.

    Π_k = F[:, kI] F_I^+ with I the interior words; on the complement of the
    interior classes it acts as 0.
    """
    F = space.factor
    interior = F[:, : space.interior_dim]
    if interior.size:
        u, s, vh = scipy.linalg.svd(interior, full_matrices=False)
        keep = s > _singular_cut(space)
    else:
        u = np.zeros((F.shape[0], 0), dtype=complex)
        s = np.zeros(0)
        vh = np.zeros((0, space.interior_dim), dtype=complex)
        keep = np.zeros(0, dtype=bool)
    pinv = (vh[keep].conj().T / s[keep]) @ u[:, keep].conj().T
    shifts = [
        F[:, _prefixed_interior(space.d, space.N, k)] @ pinv for k in range(1, space.d + 1)
    ]
    return GnsRowIsometry(
        shifts=shifts, interior_basis=u[:, keep], interior_dim=space.interior_dim
    )


def compressed_moments(
    space: GnsSpace,
    vector: np.ndarray,
    depth: int,
    isometry: GnsRowIsometry | None = None,
) -> MomentTable:
    """Moment table of α ↦ ⟨v, Π^α v⟩ for |α| <= depth."""
    if depth > space.N - 1:
        raise ValueError(f"depth {depth} must be <= N-1 = {space.N - 1}")
    isometry = isometry or gns_row_isometry(space)
    vector = np.asarray(vector, dtype=complex)
    level = vector[None, :]
    values = [level @ vector.conj()]
    for _ in range(depth):
        level = np.concatenate([level @ shift.T for shift in isometry.shifts])
        values.append(level @ vector.conj())
    moments = np.concatenate(values)
    moments[0] = moments[0].real
    return MomentTable.from_array(space.d, depth, moments)


def wandering_test(
    space: GnsSpace,
    vector: np.ndarray,
    depth: int | None = None,
    tol: float = DEFAULT_WANDERING_TOL,
    isometry: GnsRowIsometry | None = None,
) -> WanderingReport:
    depth = space.N - 1 if depth is None else depth
    table = compressed_moments(space, vector, depth, isometry)
    violation = max(
        (abs(value) for word, value in table.moments.items() if len(word) > 0), default=0.0
    )
    norm_squared = table.mass
    return WanderingReport(
        is_wandering=bool(violation <= tol and norm_squared > 0),
        max_violation=float(violation),
        norm_squared=float(norm_squared),
        depth=depth,
    )


class HelsonLowdenslagerVector(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vector: np.ndarray
    c_squared: float


def helson_lowdenslager_vector(space: GnsSpace) -> HelsonLowdenslagerVector:
    """(I − P_0)(I + N_μ), P_0 the projection onto the nonconstant monomial classes."""
    if space.rank == 0:
        return HelsonLowdenslagerVector(vector=np.zeros(0, dtype=complex), c_squared=0.0)
    cyclic = space.cyclic
    span = _orthonormal_range(space.factor[:, 1:], _singular_cut(space))
    residual = cyclic - span @ (span.conj().T @ cyclic)
    return HelsonLowdenslagerVector(
        vector=residual, c_squared=float(np.vdot(residual, residual).real)
    )


def column_extreme_distance(space: GnsSpace) -> float:
    """GNS distance from the class of ∅ to the span of the classes of nonempty words."""
    if space.N < 1:
        raise ValueError("column-extreme distance needs N >= 1")
    return float(np.sqrt(helson_lowdenslager_vector(space).c_squared))


def cuntz_defect(space: GnsSpace, isometry: GnsRowIsometry | None = None) -> float:
    """‖I − Σ_k Π_k Π_k^H‖ compressed to the interior subspace."""
    isometry = isometry or gns_row_isometry(space)
    Q = isometry.interior_basis
    if Q.shape[1] == 0:
        return 0.0
    defect = np.eye(space.rank, dtype=complex)
    for shift in isometry.shifts:
        defect -= shift @ shift.conj().T
    return float(np.linalg.norm(Q.conj().T @ defect @ Q, 2))


def gns_report(space: GnsSpace) -> GnsReport:
    isometry = gns_row_isometry(space)
    return GnsReport(
        gram_min_eig=space.gram_min_eig,
        rank=space.rank,
        interior_rank=isometry.interior_rank,
        column_extreme_distance=column_extreme_distance(space) if space.N >= 1 else 0.0,
        cuntz_defect=cuntz_defect(space, isometry),
        isometry_defect=isometry.isometry_defect(),
    )
