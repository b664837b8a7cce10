"""Constructors, cone arithmetic and positivity for NC measures given by moments."""

import json
from itertools import product
from logging import getLogger
from pathlib import Path
from typing import Sequence

import numpy as np
import scipy.linalg
from pydantic import TypeAdapter, ValidationError

from nclebesgue.core.errors import NCMeasureError
from nclebesgue.services.fock import (
    FockTruncation,
    FockVector,
    TruncationOverflowError,
)
from nclebesgue.services.freemonoid import level_offset, suffixed_indices
from nclebesgue.services.gns import gram_matrix
from nclebesgue.types.measure import (
    ClassicalMeasureSpec,
    ClassicalSpec,
    MeasureSpec,
    MomentTable,
    ScalarPointSpec,
    SemicircleSpec,
    SumSpec,
    TableSpec,
    VacuumSpec,
    VectorStateSpec,
)
from nclebesgue.types.reports import PositivityReport
from nclebesgue.types.word import Word

logger = getLogger(__name__)

DEFAULT_POSITIVITY_TOL = 1e-10
DENSITY_TOL = 1e-9
# Upper bound on words enumerated for a scalar point with several nonzero coordinates.
MAX_POINT_WORDS = 2_000_000


class NotRowContractionError(NCMeasureError): ...


class NegativeDensityError(NCMeasureError): ...


class MeasureSpecError(NCMeasureError): ...


def nc_lebesgue(d: int, depth: int) -> MomentTable:
    """The vacuum state m(L^α) = δ_{α,∅}."""
    return MomentTable(d=d, depth=depth, moments={Word(): 1.0 + 0j})


def from_vector_state(x: FockVector, y: FockVector | None = None, depth: int = 0) -> MomentTable:
    """m_{x,y}(L^α) = ⟨x, L^α y⟩ for |α| <= depth."""
    y = x if y is None else y
    truncation = x.truncation
    if y.truncation != truncation:
        raise ValueError("x and y live in different truncations")
    support = y.support_length()
    if support >= 0 and depth + support > truncation.N:
        raise TruncationOverflowError(
            f"depth {depth} plus support length {support} exceeds truncation level {truncation.N}"
        )
    d = truncation.d
    x_conj = x.coefficients.conj()
    words = truncation.basis
    values = np.zeros(level_offset(d, depth + 1), dtype=complex)
    for beta_index in np.flatnonzero(y.coefficients):
        beta = words[beta_index]
        weight = y.coefficients[beta_index]
        for length in range(depth + 1):
            # L^α e_β = e_{αβ}
            start = level_offset(d, length)
            values[start : start + d**length] += weight * x_conj[suffixed_indices(d, length, beta)]
    table = MomentTable.from_array(d, depth, values)
    logger.debug(f"vector state: {len(table.moments)} nonzero moments to depth {depth}")
    return table


def from_scalar_point(z: Sequence[complex], depth: int, tol: float = 1e-12) -> MomentTable:
    """μ(L^α) = z^α for a (possibly boundary) scalar row contraction."""
    z = [complex(zk) for zk in z]
    row_norm_squared = sum(abs(zk) ** 2 for zk in z)
    if row_norm_squared > 1 + tol:
        raise NotRowContractionError(f"Σ|z_k|² = {row_norm_squared:.6g} > 1")
    letters = [k for k, zk in enumerate(z, start=1) if zk != 0]
    if len(letters) > 1:
        count = sum(len(letters) ** length for length in range(depth + 1))
        if count > MAX_POINT_WORDS:
            raise ValueError(
                f"{count} words over {len(letters)} letters to depth {depth}; lower the depth"
            )
    moments: dict[Word, complex] = {Word(): 1.0 + 0j}
    for length in range(1, depth + 1):
        for word_letters in product(letters, repeat=length):
            value = np.prod([z[k - 1] for k in word_letters])
            if value != 0:
                moments[Word(letters=word_letters)] = complex(value)
    return MomentTable(d=len(z), depth=depth, moments=moments)


def classical_moments(spec: ClassicalMeasureSpec, depth: int) -> np.ndarray:
    """∫ ζ^k dμ for k = 0..depth, exact for trigonometric-polynomial densities."""
    moments = np.zeros(depth + 1, dtype=complex)
    for k in range(depth + 1):
        a_k = spec.cosine[k] if k < len(spec.cosine) else 0.0
        b_k = spec.sine[k - 1] if 1 <= k <= len(spec.sine) else 0.0
        moments[k] = a_k if k == 0 else 0.5 * complex(a_k, b_k)
    for atom in spec.atoms:
        moments += atom.weight * atom.point ** np.arange(depth + 1)
    return moments


def check_density(spec: ClassicalMeasureSpec, tol: float = DENSITY_TOL) -> float:
    """Minimum of the density on a dense grid; raises when it dips below -tol."""
    if not spec.has_density:
        return 0.0
    samples = max(4096, 64 * (spec.degree + 1))
    theta = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    minimum = float(spec.density(theta).min())
    if minimum < -tol:
        raise NegativeDensityError(f"density reaches {minimum:.3e} on the circle")
    return minimum


def from_classical(spec: ClassicalMeasureSpec, depth: int) -> MomentTable:
    """The d = 1 moment table μ(S^k) = ∫ ζ^k dμ."""
    check_density(spec)
    values = classical_moments(spec, depth)
    values[0] = values[0].real
    moments = {Word(letters=(1,) * k): complex(v) for k, v in enumerate(values) if v != 0}
    return MomentTable(d=1, depth=depth, moments=moments)


def add(mu: MomentTable, lam: MomentTable) -> MomentTable:
    if mu.d != lam.d:
        raise ValueError(f"cannot add measures on {mu.d} and {lam.d} generators")
    depth = min(mu.depth, lam.depth)
    total: dict[Word, complex] = {}
    for table in (mu, lam):
        for word, value in table.moments.items():
            if len(word) <= depth:
                total[word] = total.get(word, 0j) + value
    return MomentTable.from_mapping(mu.d, depth, total)


def scale(mu: MomentTable, t: float) -> MomentTable:
    if t < 0:
        raise ValueError(f"scale factor must be >= 0, got {t}")
    return MomentTable.from_mapping(mu.d, mu.depth, {w: t * v for w, v in mu.moments.items()})


def subtract(mu: MomentTable, lam: MomentTable) -> MomentTable:
    """Signed difference; used for domination tests, not a cone operation."""
    if mu.d != lam.d:
        raise ValueError(f"cannot subtract measures on {mu.d} and {lam.d} generators")
    return add(mu, MomentTable.from_mapping(lam.d, lam.depth, {w: -v for w, v in lam.moments.items()}))


def positivity_check(
    mu: MomentTable, N: int | None = None, tol: float = DEFAULT_POSITIVITY_TOL
) -> PositivityReport:
    N = mu.depth if N is None else N
    min_eigenvalue = float(scipy.linalg.eigvalsh(gram_matrix(mu, N))[0])
    return PositivityReport(
        is_positive=min_eigenvalue >= -tol, min_eigenvalue=min_eigenvalue, N=N, tol=tol
    )


_measure_spec_adapter = TypeAdapter(MeasureSpec)


def load_measure_spec(path: str | Path) -> MeasureSpec:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        return _measure_spec_adapter.validate_python(raw)
    except FileNotFoundError as e:
        raise MeasureSpecError(f"measure spec not found: {path}") from e
    except json.JSONDecodeError as e:
        raise MeasureSpecError(f"{path} is not valid JSON: {e}") from e
    except ValidationError as e:
        raise MeasureSpecError(f"invalid measure spec {path}:\n{e}") from e


def _parse_words(mapping: dict[str, complex], d: int) -> dict[Word, complex]:
    try:
        return {Word.parse(text, d): value for text, value in mapping.items()}
    except ValueError as e:
        raise MeasureSpecError(str(e)) from e


def build_measure(spec: MeasureSpec, depth: int | None = None) -> MomentTable:
    """Moment table described by a spec, to ``depth`` (default: the spec's own)."""
    depth = spec.depth if depth is None else depth
    if isinstance(spec, VacuumSpec):
        return nc_lebesgue(spec.d, depth)
    if isinstance(spec, VectorStateSpec):
        x_words = _parse_words(spec.x, spec.d)
        y_words = _parse_words(spec.y, spec.d) if spec.y is not None else x_words
        # ⟨x, L^α y⟩ vanishes once |α| exceeds the longest word of x.
        active = min(depth, max(len(w) for w in x_words))
        support = max(len(w) for w in (*x_words, *y_words))
        truncation = FockTruncation(d=spec.d, N=active + support)
        x = FockVector.from_mapping(truncation, x_words)
        y = FockVector.from_mapping(truncation, y_words)
        table = from_vector_state(x, y, active)
        return MomentTable(d=spec.d, depth=depth, moments=table.moments)
    if isinstance(spec, ScalarPointSpec):
        return from_scalar_point(spec.point, depth)
    if isinstance(spec, ClassicalSpec):
        return from_classical(spec.measure, depth)
    if isinstance(spec, SemicircleSpec):
        from nclebesgue.services.classical import semicircle_moments

        return semicircle_moments(spec.upper, depth)
    if isinstance(spec, TableSpec):
        moments = _parse_words(spec.moments, spec.d)
        too_long = [w for w in moments if len(w) > spec.depth]
        if too_long:
            raise MeasureSpecError(f"moments {too_long} exceed the declared depth {spec.depth}")
        if depth > spec.depth:
            raise MeasureSpecError(f"table spec only defines moments to depth {spec.depth}")
        return MomentTable.from_mapping(spec.d, depth, moments)
    if isinstance(spec, SumSpec):
        weights = spec.weights or [1.0] * len(spec.terms)
        total = None
        for term, weight in zip(spec.terms, weights):
            table = scale(build_measure(term, depth), weight)
            total = table if total is None else add(total, table)
        return total
    raise MeasureSpecError(f"unsupported measure spec kind {getattr(spec, 'kind', spec)!r}")


def buildable_depth(spec: MeasureSpec, depth: int, max_words: int = MAX_POINT_WORDS) -> int:
    """Largest depth ≤ ``depth`` at which ``build_measure(spec, ·)`` stays within ``max_words``.

    Table specs stop at their declared depth; a scalar point with k ≥ 2 nonzero
    coordinates has (k^{D+1} − 1)/(k − 1) words to depth D.
    """
    if isinstance(spec, TableSpec):
        return min(depth, spec.depth)
    if isinstance(spec, ScalarPointSpec):
        k = sum(1 for zk in spec.point if complex(zk) != 0)
        if k < 2:
            return depth
        reachable, count = 0, 1 + k
        while reachable < depth and count <= max_words:
            reachable += 1
            count += k ** (reachable + 1)
        return reachable
    if isinstance(spec, SumSpec):
        return min(buildable_depth(term, depth, max_words) for term in spec.terms)
    return depth
