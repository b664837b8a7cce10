import logging

import numpy as np

from nclebesgue.services.transforms import (
    cauchy_eval,
    cayley_to_schur,
    herglotz_eval,
    random_matrix_point,
)
from nclebesgue.types.measure import MomentTable
from nclebesgue.types.point import KernelEvaluation, MatrixPoint
from nclebesgue.types.word import Word

logger = logging.getLogger(__name__)

SWEEP_RADIUS = 0.8
SWEEP_MATRIX_SIZE = 2


def default_point(d: int) -> list[complex]:
    return [0.5] + [0.0] * (d - 1)


def _is_contractive(schur: KernelEvaluation) -> bool:
    return float(np.linalg.norm(schur.value, 2)) <= 1.0 + schur.tail_bound + 1e-12


def _capped_degree(measure: MomentTable, degree: int) -> int:
    if degree > measure.depth:
        logger.warning(
            f"series degree {degree} exceeds moment depth {measure.depth}; "
            f"truncating at {measure.depth}"
        )
        return measure.depth
    return degree


def schur_sweep(measure: MomentTable, degree: int, samples: int, seed: int) -> dict:
    """‖B(Z)‖ ≤ 1 on ``samples`` seeded random strict matrix points."""
    degree = _capped_degree(measure, degree)
    rng = np.random.default_rng(seed)
    norms, tails, contractive = [], [], True
    for _ in range(samples):
        point = random_matrix_point(rng, measure.d, SWEEP_MATRIX_SIZE, SWEEP_RADIUS)
        schur = cayley_to_schur(measure, point, degree)
        norms.append(float(np.linalg.norm(schur.value, 2)))
        tails.append(schur.tail_bound)
        contractive = contractive and _is_contractive(schur)
    logger.info(
        f"Schur sweep over {samples} points (seed {seed}): max ‖B‖ = {max(norms):.6f}, "
        f"contractive={contractive}"
    )
    return {
        "samples": samples,
        "seed": seed,
        "radius": SWEEP_RADIUS,
        "matrix_size": SWEEP_MATRIX_SIZE,
        "degree": degree,
        "max_norm": max(norms),
        "max_tail_bound": max(tails),
        "contractive": contractive,
    }


def evaluate_transforms(
    measure: MomentTable,
    point: list[complex] | None,
    degree: int,
    samples: int = 0,
    seed: int = 0,
) -> dict:
    """H, B = Cayley(H) and 𝒞_μ1 at one scalar point, with their tail bounds.

    With ``samples`` > 0 a seeded sweep also checks ‖B‖ ≤ 1 at random matrix points.
    """
    z = point if point is not None else default_point(measure.d)
    if len(z) != measure.d:
        raise ValueError(f"point has {len(z)} coordinates, measure has d={measure.d}")
    degree = _capped_degree(measure, degree)
    at = MatrixPoint.from_scalars(z)
    herglotz = herglotz_eval(measure, at, degree)
    schur = cayley_to_schur(measure, at, degree)
    cauchy = cauchy_eval(measure, {Word(): 1.0}, at, degree)
    contractive = _is_contractive(schur)
    logger.info(
        f"H{tuple(z)} = {herglotz.scalar:.6f} (tail {herglotz.tail_bound:.2e}), "
        f"B = {schur.scalar:.6f}"
    )
    record = {
        "point": [[c.real, c.imag] for c in map(complex, z)],
        "herglotz": herglotz.to_record(),
        "cayley": schur.to_record(),
        "cauchy_of_one": cauchy.to_record(),
    }
    if samples > 0:
        record["schur_sweep"] = schur_sweep(measure, degree, samples, seed)
        contractive = contractive and record["schur_sweep"]["contractive"]
    record["schur_contractive"] = contractive
    return record
