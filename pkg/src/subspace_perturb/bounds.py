"""The computable error bound and its ingredients.

For noise level eps = max_i ||Z_i||_2 and signal floor delta = min_i
sigma_min(V_i), the estimation error in chordal distance is at most

    eps * sqrt(2 r (m - r)) / (delta * sigma(B)),

where sigma(B) is the smallest singular value of the normal matrix.  The
per-projection diagnostic eps * sqrt(2 r) / delta bounds both the projector
perturbation and the normal-vector error, and feeds the intermediate checks.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyList, InvalidDimensions, NonPositiveDenominator, RankDeficient
from .estimator import ProjectionSet, build_normal_matrix, estimate_subspace
from .linalg import SubspaceBasis, chordal_distance, rank_tolerance


@dataclass(frozen=True)
class BoundReport:
    """Every ingredient of the error bound for one projection set.

    epsilon/bound are None when the set carries no noise matrices (real-data
    mode); d_G is None when no ground truth was supplied.
    """

    epsilon: float | None
    delta: float
    sigma_B: float
    bound: float | None
    sqrt_r: float
    d_G: float | None


def epsilon_of(z_list) -> float:
    """Largest spectral norm over the noise matrices."""
    z_list = list(z_list)
    if not z_list:
        raise EmptyList("no noise matrices")
    return max(float(np.linalg.norm(np.asarray(z, dtype=np.float64), 2)) for z in z_list)


def delta_of(v_list) -> float:
    """Smallest singular value over the observed projection bases."""
    v_list = list(v_list)
    if not v_list:
        raise EmptyList("no projection matrices")
    out = math.inf
    for i, v in enumerate(v_list):
        v = np.asarray(v, dtype=np.float64)
        values = np.linalg.svd(v, compute_uv=False)
        if values[-1] <= rank_tolerance(v.shape, values[0]):
            raise RankDeficient(f"projection {i} is rank deficient", index=i)
        out = min(out, float(values[-1]))
    return out


def theorem1_bound(epsilon: float, delta: float, sigma_B: float, m: int, r: int) -> float:
    """eps * sqrt(2 r (m - r)) / (delta * sigma(B))."""
    if r < 1 or r >= m:
        raise InvalidDimensions(f"need 1 <= r < m, got m={m}, r={r}")
    if delta <= 0 or sigma_B <= 0:
        raise NonPositiveDenominator(f"delta={delta}, sigma_B={sigma_B}")
    return epsilon * math.sqrt(2 * r * (m - r)) / (delta * sigma_B)


def projection_bound(epsilon: float, delta: float, r: int) -> float:
    """Per-projection diagnostic eps * sqrt(2 r) / delta.

    Bounds ||P_{U_i} - P_{V_i}||_F and, after sign alignment, the normal
    error ||a_i - b_i||.
    """
    if delta <= 0:
        raise NonPositiveDenominator(f"delta={delta}")
    return epsilon * math.sqrt(2 * r) / delta


def bound_report(ps: ProjectionSet, ground_truth: SubspaceBasis | None = None) -> BoundReport:
    """Estimate the subspace and assemble the full bound report.

    epsilon (and with it the bound) needs ps.z_list; without it those fields
    come back None and only the data-computable quantities are filled in.
    d_G is reported when a ground-truth basis is supplied.
    """
    m, r = ps.pattern.m, ps.pattern.r
    normal = build_normal_matrix(ps, use="observed")
    estimate = estimate_subspace(normal)
    delta = delta_of(ps.v_list)
    sigma_B = float(np.linalg.svd(normal.matrix, compute_uv=False)[-1])

    epsilon = bound = None
    if ps.z_list is not None:
        epsilon = epsilon_of(ps.z_list)
        bound = theorem1_bound(epsilon, delta, sigma_B, m, r)

    d_g = None
    if ground_truth is not None:
        d_g = chordal_distance(ground_truth, estimate)

    return BoundReport(
        epsilon=epsilon,
        delta=delta,
        sigma_B=sigma_B,
        bound=bound,
        sqrt_r=math.sqrt(r),
        d_G=d_g,
    )
