"""Lebesgue decomposition of an NC measure with respect to NC Lebesgue measure.

With λ = μ + m the Fock metric (identity) and the GNS(λ) metric G_λ form a
Hermitian pencil.  Directions whose Fock norm is small relative to their
λ-norm (pencil eigenvalue below a threshold) approximate the kernel of the
embedding F²_d(λ) → F²_d; removing them from the cyclic vector leaves the
absolutely continuous part.
"""

from logging import getLogger
from typing import Mapping

import numpy as np
import scipy.linalg

from nclebesgue.core.errors import NCMeasureError
from nclebesgue.services.fock import (
    FockTruncation,
    left_shift_matrix,
    right_multiplier_matrix,
    right_shift_matrix,
    symbol_degree,
)
from nclebesgue.services.freemonoid import basis_size
from nclebesgue.services.gns import (
    NotPositiveError,
    column_extreme_distance,
    cuntz_defect,
    gns_space,
    gram_matrix,
)
from nclebesgue.services.ncmeasure import (
    DEFAULT_POSITIVITY_TOL,
    add,
    nc_lebesgue,
    positivity_check,
)
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.reports import (
    ClassificationReport,
    DecompositionResult,
    FactorizationReport,
)

logger = getLogger(__name__)

MIN_PENCIL_EIGENVALUE = 1e-13
MAX_DEFAULT_THRESHOLD = 0.5


class IllConditionedError(NCMeasureError): ...


def default_threshold(N: int, mass: float = 1.0) -> float:
    """min(10/N, ½/(1 + μ(I))); for μ = t·m the whole pencil spectrum is 1/(1 + t)."""
    return min(10.0 / N, MAX_DEFAULT_THRESHOLD / (1.0 + max(mass, 0.0)))


def default_mass_tolerance(N: int) -> float:
    """Verdict tolerance relative to μ(I); the pencil bias is O(1/N)."""
    return min(0.25, 2.0 / (N + 1))


def _min_eigenvalue(table: MomentTable) -> float:
    return float(scipy.linalg.eigvalsh(gram_matrix(table, table.depth))[0])


def decompose(
    measure: MomentTable,
    N: int,
    threshold: float | None = None,
    N_out: int | None = None,
    positivity_tol: float = DEFAULT_POSITIVITY_TOL,
) -> DecompositionResult:
    if N < 1:
        raise ValueError(f"decomposition level must be >= 1, got {N}")
    if N > measure.depth:
        raise ValueError(f"level {N} exceeds moment depth {measure.depth}")
    N_out = N - 1 if N_out is None else N_out
    if not 0 <= N_out <= N - 1:
        raise ValueError(f"N_out must lie in [0, {N - 1}], got {N_out}")
    threshold = default_threshold(N, measure.mass) if threshold is None else threshold
    if not 0 < threshold < 1:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")

    report = positivity_check(measure, N, positivity_tol)
    if not report.is_positive:
        raise NotPositiveError(
            f"measure is not positive at level {N}: min eigenvalue {report.min_eigenvalue:.3e}"
        )

    lam = add(measure, nc_lebesgue(measure.d, measure.depth))
    gram = gram_matrix(lam, N)
    dim = gram.shape[0]
    # v = s G v; eigenvectors come out G-orthonormal.
    spectrum, vectors = scipy.linalg.eigh(np.eye(dim), gram)
    if spectrum[0] < MIN_PENCIL_EIGENVALUE:
        raise IllConditionedError(
            f"smallest pencil eigenvalue {spectrum[0]:.3e} is below {MIN_PENCIL_EIGENVALUE}"
        )
    if spectrum[-1] > 1 + 1e-8:
        logger.warning(f"pencil eigenvalue {spectrum[-1]:.6f} exceeds 1; Gram(μ) is not PSD")

    singular = spectrum < threshold
    images = gram @ vectors[:, singular]
    n_out = basis_size(measure.d, N_out)
    # ⟨e_∅, (I − Q) e_α⟩_λ with Q = V V^H G the λ-orthogonal projection.
    lam_ac = gram[0, :n_out] - images[0, :] @ images[:n_out, :].conj().T
    mu_ac_values = lam_ac.copy()
    mu_ac_values[0] -= 1.0
    mu_ac_values[0] = mu_ac_values[0].real

    mu_ac = MomentTable.from_array(measure.d, N_out, mu_ac_values)
    mu_s = MomentTable.from_array(measure.d, N_out, measure.to_array(N_out) - mu_ac_values)
    logger.debug(
        f"pencil at level {N}: dim {dim}, singular rank {int(singular.sum())}, "
        f"threshold {threshold:.4f}, spectrum [{spectrum[0]:.3e}, {spectrum[-1]:.3e}]"
    )
    return DecompositionResult(
        mu_ac=mu_ac,
        mu_s=mu_s,
        pencil_spectrum=[float(s) for s in spectrum],
        singular_rank=int(singular.sum()),
        threshold=threshold,
        N=N,
        N_out=N_out,
        ac_gram_min_eig=_min_eigenvalue(mu_ac),
        sing_gram_min_eig=_min_eigenvalue(mu_s),
    )


def verdict_for(ac_mass: float, sing_mass: float, tolerance: float) -> str:
    if sing_mass <= tolerance:
        return "AC"
    if abs(ac_mass) <= tolerance:
        return "SINGULAR"
    return "MIXED"


def classify(
    measure: MomentTable,
    N: int,
    threshold: float | None = None,
    mass_tolerance: float | None = None,
    result: DecompositionResult | None = None,
) -> ClassificationReport:
    result = result or decompose(measure, N, threshold)
    relative = default_mass_tolerance(N) if mass_tolerance is None else mass_tolerance
    tolerance = relative * measure.mass
    space = gns_space(measure, N)
    return ClassificationReport(
        ac_mass=result.ac_mass,
        sing_mass=result.sing_mass,
        column_extreme_distance=column_extreme_distance(space),
        cuntz_defect=cuntz_defect(space),
        mass_tolerance=tolerance,
        verdict=verdict_for(result.ac_mass, result.sing_mass, tolerance),
    )


def _interior(truncation: FockTruncation, degree: int) -> np.ndarray:
    """Words of length <= N−1−degree, where multiplier identities are exact."""
    length = truncation.N - 1 - degree
    if length < 0:
        raise ValueError(
            f"truncation level {truncation.N} leaves no interior for a degree-{degree} symbol"
        )
    return np.arange(basis_size(truncation.d, length))


def _compressed_norm(matrix, rows: np.ndarray) -> float:
    dense = matrix.toarray() if hasattr(matrix, "toarray") else np.asarray(matrix)
    return float(np.linalg.norm(dense[np.ix_(rows, rows)], 2))


def mk_factor_check(
    symbol: Mapping, truncation: FockTruncation
) -> FactorizationReport:
    """Residuals of F*F = G*G = 2I + T and F*G = T for F, G = R_1 A ± R_2, T = A*A − I."""
    if truncation.d < 2:
        raise ValueError("the asymmetric factorization needs d >= 2")
    A = right_multiplier_matrix(symbol, truncation)
    R1 = right_shift_matrix(1, truncation)
    R2 = right_shift_matrix(2, truncation)
    F = R1 @ A + R2
    G = R1 @ A - R2
    identity = np.eye(truncation.dim)
    T = (A.conj().T @ A).toarray() - identity
    rows = _interior(truncation, symbol_degree(symbol))
    return FactorizationReport(
        max_residual_FF=_compressed_norm((F.conj().T @ F).toarray() - 2 * identity - T, rows),
        max_residual_GG=_compressed_norm((G.conj().T @ G).toarray() - 2 * identity - T, rows),
        max_residual_FG=_compressed_norm((F.conj().T @ G).toarray() - T, rows),
    )


def popescu_factor_check(symbol: Mapping, truncation: FockTruncation) -> float:
    """max_{k,j} ‖L_k* T L_j − δ_kj T‖ on the interior for T = F(R)* F(R)."""
    F = right_multiplier_matrix(symbol, truncation)
    T = F.conj().T @ F
    rows = _interior(truncation, symbol_degree(symbol))
    shifts = [left_shift_matrix(k, truncation) for k in range(1, truncation.d + 1)]
    residual = 0.0
    for k, Lk in enumerate(shifts):
        for j, Lj in enumerate(shifts):
            difference = Lk.conj().T @ T @ Lj
            if k == j:
                difference = difference - T
            residual = max(residual, _compressed_norm(difference, rows))
    return residual
