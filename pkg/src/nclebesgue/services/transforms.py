"""NC Herglotz and Cauchy transforms, Szegő/Herglotz kernels, Cayley transform.

Series are summed over words up to length M at a strict row contraction and
returned together with a geometric bound on the discarded tail.  Herglotz
convention: H_μ(Z) = μ(I) I + 2 Σ_{α≠∅} conj(μ(L^{α†})) Z^α.
"""

from logging import getLogger
from typing import Mapping

import numpy as np
import scipy.linalg

from nclebesgue.core.errors import DepthExceededError, NCMeasureError
from nclebesgue.services.fock import symbol_degree
from nclebesgue.services.gns import gram_matrix, pair_moment
from nclebesgue.services.ncmeasure import scale, subtract
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.point import KernelEvaluation, MatrixPoint
from nclebesgue.types.reports import DominationReport
from nclebesgue.types.word import Word

logger = getLogger(__name__)

DEFAULT_SERIES_DEGREE = 60
DEFAULT_DOMINATION_TOL = 1e-10
MAX_RESOLVENT_CONDITION = 1e12


class NotStrictContractionError(NCMeasureError): ...


class SingularResolventError(NCMeasureError): ...


def _require_strict(point: MatrixPoint, label: str = "Z") -> float:
    row_norm = point.row_norm
    if row_norm >= 1.0:
        raise NotStrictContractionError(f"{label} has row norm {row_norm:.6g} >= 1")
    return row_norm


def _require_depth(measure: MomentTable, degree: int) -> None:
    if degree > measure.depth:
        raise DepthExceededError(f"series degree {degree} exceeds moment depth {measure.depth}")


def _require_alphabet(measure: MomentTable, point: MatrixPoint) -> None:
    if measure.d != point.d:
        raise ValueError(f"measure on {measure.d} generators evaluated at a {point.d}-tuple")


def _geometric_tail(ratio: float, degree: int) -> float:
    return ratio ** (degree + 1) / (1.0 - ratio)


def _monomial(
    point: MatrixPoint, letters: tuple[int, ...], cache: dict[tuple[int, ...], np.ndarray]
) -> np.ndarray:
    """Z^w = Z_{w_1} ... Z_{w_n}, memoized on suffixes."""
    if letters in cache:
        return cache[letters]
    start = 0
    while letters[start:] not in cache:
        start += 1
    value = cache[letters[start:]]
    for j in range(start - 1, -1, -1):
        value = point.matrices[letters[j] - 1] @ value
        cache[letters[j:]] = value
    return value


def _monomial_cache(point: MatrixPoint) -> dict[tuple[int, ...], np.ndarray]:
    return {(): np.eye(point.n, dtype=complex)}


def herglotz_eval(
    measure: MomentTable, point: MatrixPoint, degree: int = DEFAULT_SERIES_DEGREE
) -> KernelEvaluation:
    r = _require_strict(point)
    _require_depth(measure, degree)
    _require_alphabet(measure, point)
    cache = _monomial_cache(point)
    value = measure.moment(Word()) * np.eye(point.n, dtype=complex)
    for gamma, moment in measure.moments.items():
        if 0 < len(gamma) <= degree:
            value = value + 2 * np.conj(moment) * _monomial(point, gamma.letters[::-1], cache)
    return KernelEvaluation(
        value=value, tail_bound=2 * abs(measure.mass) * _geometric_tail(r, degree), degree=degree
    )


def cauchy_coefficients(
    measure: MomentTable, polynomial: Mapping[Word, complex], degree: int
) -> dict[Word, complex]:
    """c_α = μ((L^α)* p(L)) for |α| <= degree; only nonzero terms are produced."""
    coefficients: dict[Word, complex] = {}
    for beta, p_beta in polynomial.items():
        if p_beta == 0:
            continue
        # β = αγ: contributes μ(L^γ)
        for cut in range(min(len(beta), degree) + 1):
            alpha = Word(letters=beta.letters[:cut])
            gamma = Word(letters=beta.letters[cut:])
            coefficients[alpha] = coefficients.get(alpha, 0j) + p_beta * measure.moment(gamma)
        # α = βγ with γ nonempty: contributes conj μ(L^γ)
        for gamma, moment in measure.moments.items():
            if len(gamma) > 0 and len(beta) + len(gamma) <= degree:
                alpha = beta + gamma
                coefficients[alpha] = coefficients.get(alpha, 0j) + p_beta * np.conj(moment)
    return coefficients


def polynomial_norm(measure: MomentTable, polynomial: Mapping[Word, complex]) -> float:
    """‖p‖_μ = μ(p(L)* p(L))^{1/2}."""
    terms = [(w, c) for w, c in polynomial.items() if c != 0]
    total = sum(
        np.conj(a) * b * pair_moment(measure, alpha, beta)
        for alpha, a in terms
        for beta, b in terms
    )
    return float(np.sqrt(max(complex(total).real, 0.0)))


def cauchy_eval(
    measure: MomentTable,
    polynomial: Mapping[Word, complex],
    point: MatrixPoint,
    degree: int = DEFAULT_SERIES_DEGREE,
) -> KernelEvaluation:
    """(𝒞_μ p)(Z) = Σ_α Z^α μ((L^α)* p(L)), truncated at |α| <= degree."""
    r = _require_strict(point)
    _require_alphabet(measure, point)
    _require_depth(measure, max(degree, symbol_degree(polynomial)))
    cache = _monomial_cache(point)
    value = np.zeros((point.n, point.n), dtype=complex)
    for alpha, coefficient in cauchy_coefficients(measure, polynomial, degree).items():
        if coefficient != 0:
            value = value + coefficient * _monomial(point, alpha.letters, cache)
    bound = np.sqrt(max(measure.mass, 0.0)) * polynomial_norm(measure, polynomial)
    return KernelEvaluation(
        value=value, tail_bound=float(bound * _geometric_tail(r, degree)), degree=degree
    )


def szego_kernel_eval(
    Z: MatrixPoint, W: MatrixPoint, P: np.ndarray, degree: int = DEFAULT_SERIES_DEGREE
) -> KernelEvaluation:
    """K(Z, W)[P] = Σ_{|α|<=degree} Z^α P (W^α)^H, summed level by level."""
    r_z = _require_strict(Z, "Z")
    r_w = _require_strict(W, "W")
    if Z.d != W.d:
        raise ValueError(f"points with {Z.d} and {W.d} coordinates")
    P = np.atleast_2d(np.asarray(P, dtype=complex))
    if P.shape != (Z.n, W.n):
        raise ValueError(f"P must be {Z.n}x{W.n}, got {P.shape}")
    term = P
    total = P.copy()
    for _ in range(degree):
        term = sum(Zk @ term @ Wk.conj().T for Zk, Wk in zip(Z.matrices, W.matrices))
        total = total + term
    q = r_z * r_w
    return KernelEvaluation(
        value=total,
        tail_bound=float(np.linalg.norm(P, 2) * _geometric_tail(q, degree)),
        degree=degree,
    )


def herglotz_kernel_eval(
    measure: MomentTable,
    Z: MatrixPoint,
    W: MatrixPoint,
    P: np.ndarray,
    degree: int = DEFAULT_SERIES_DEGREE,
) -> KernelEvaluation:
    """K^H(Z, W)[P] = ½ K(Z, W)[H(Z) P + P H(W)^H]."""
    P = np.atleast_2d(np.asarray(P, dtype=complex))
    h_z = herglotz_eval(measure, Z, degree)
    h_w = herglotz_eval(measure, W, degree)
    inner = h_z.value @ P + P @ h_w.value.conj().T
    kernel = szego_kernel_eval(Z, W, inner, degree)
    q = Z.row_norm * W.row_norm
    bound = 0.5 * (
        kernel.tail_bound + (h_z.tail_bound + h_w.tail_bound) * np.linalg.norm(P, 2) / (1.0 - q)
    )
    return KernelEvaluation(value=0.5 * kernel.value, tail_bound=float(bound), degree=degree)


def cayley_to_schur(
    measure: MomentTable, point: MatrixPoint, degree: int = DEFAULT_SERIES_DEGREE
) -> KernelEvaluation:
    """B(Z) = (H(Z) − I)(H(Z) + I)^{-1}."""
    herglotz = herglotz_eval(measure, point, degree)
    identity = np.eye(point.n, dtype=complex)
    shifted = herglotz.value + identity
    if np.linalg.cond(shifted) > MAX_RESOLVENT_CONDITION:
        raise SingularResolventError(f"H(Z) + I is numerically singular at {point.matrices}")
    try:
        resolvent = scipy.linalg.inv(shifted)
    except scipy.linalg.LinAlgError as e:
        raise SingularResolventError(str(e)) from e
    value = (herglotz.value - identity) @ resolvent
    # B = I − 2(H + I)^{-1}; perturbing H by t moves the resolvent by at most t‖R‖²/(1 − t‖R‖).
    r_norm = float(np.linalg.norm(resolvent, 2))
    t = herglotz.tail_bound
    bound = 2 * t * r_norm**2 / (1 - t * r_norm) if t * r_norm < 1 else float("inf")
    return KernelEvaluation(value=value, tail_bound=bound, degree=degree)


def domination_check(
    mu: MomentTable,
    lam: MomentTable,
    t: float,
    N: int,
    tol: float = DEFAULT_DOMINATION_TOL,
) -> DominationReport:
    """μ <= t² λ tested at moment level: Gram(t²λ − μ) PSD."""
    difference = subtract(scale(lam, t**2), mu)
    min_eigenvalue = float(scipy.linalg.eigvalsh(gram_matrix(difference, N))[0])
    return DominationReport(holds=min_eigenvalue >= -tol, min_eigenvalue=min_eigenvalue)


def random_matrix_point(
    rng: np.random.Generator, d: int, n: int, radius: float
) -> MatrixPoint:
    """Gaussian d-tuple of n×n matrices rescaled to row norm ``radius``."""
    if not 0 < radius < 1:
        raise ValueError(f"radius must lie in (0, 1), got {radius}")
    raw = rng.standard_normal((d, n, n)) + 1j * rng.standard_normal((d, n, n))
    row_norm = np.linalg.norm(np.hstack(list(raw)), 2)
    return MatrixPoint(matrices=tuple(raw * (radius / row_norm)))
