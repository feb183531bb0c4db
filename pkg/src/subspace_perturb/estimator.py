"""The kernel estimator: stack lifted hyperplane normals, take the complement.

Each observed projection V_i spans a hyperplane of R^{r+1}; its unit normal,
scattered back into R^m on the coordinates of Omega_i, becomes one column of
the normal matrix B.  When the pattern satisfies C1-C3, the orthogonal
complement of span(B) is the unique r-dim subspace agreeing with every
observed projection, and that is the estimate.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EchelonDegenerate,
    IdentifiabilityFailure,
    IndexOutOfRange,
    RankDeficient,
)
from .linalg import (
    SubspaceBasis,
    hyperplane_normal,
    rank_tolerance,
    singular_spectrum,
)
from .sampling import SamplingPattern


@dataclass(frozen=True)
class ProjectionSet:
    """Observed projection bases, optionally paired with ground truth.

    v_list holds one (r+1) x r matrix per projection; u_list and z_list, when
    present, are the noiseless bases and the noise with V_i = U_i + Z_i.
    """

    pattern: SamplingPattern
    v_list: tuple
    u_list: tuple | None = None
    z_list: tuple | None = None

    def __post_init__(self):
        v_list = tuple(np.asarray(v, dtype=np.float64) for v in self.v_list)
        object.__setattr__(self, "v_list", v_list)
        for name in ("u_list", "z_list"):
            val = getattr(self, name)
            if val is not None:
                object.__setattr__(
                    self, name, tuple(np.asarray(x, dtype=np.float64) for x in val)
                )
        n = self.pattern.n_projections
        if len(self.v_list) != n:
            raise DimensionMismatch(
                f"got {len(self.v_list)} projection matrices for {n} coordinate sets"
            )
        for i, (om, v) in enumerate(zip(self.pattern.omegas, self.v_list)):
            if v.shape != (len(om), self.pattern.r):
                raise DimensionMismatch(
                    f"V[{i}] has shape {v.shape}, expected ({len(om)}, {self.pattern.r})"
                )
        if self.u_list is not None and self.z_list is not None:
            for i, (u, z, v) in enumerate(zip(self.u_list, self.z_list, self.v_list)):
                if not np.allclose(u + z, v, atol=1e-12, rtol=0):
                    raise ValueError(f"V[{i}] != U[{i}] + Z[{i}]")


@dataclass(frozen=True)
class NormalMatrix:
    """m x N matrix of lifted unit normals, one column per projection."""

    matrix: np.ndarray
    pattern: SamplingPattern


def restrict_rows(U, omega) -> np.ndarray:
    """Select the rows of U indexed by omega, in omega order."""
    U = np.asarray(U, dtype=np.float64)
    omega = list(omega)
    if any(i < 0 or i >= U.shape[0] for i in omega):
        raise IndexOutOfRange(f"omega {omega} outside [0, {U.shape[0]})")
    return U[omega, :]


def lift(b_omega, omega, m: int) -> np.ndarray:
    """Scatter a length-|omega| vector into R^m, zeros elsewhere."""
    b_omega = np.asarray(b_omega, dtype=np.float64)
    omega = list(omega)
    if len(omega) != b_omega.shape[0]:
        raise DimensionMismatch(
            f"vector length {b_omega.shape[0]} != |omega| = {len(omega)}"
        )
    if any(i < 0 or i >= m for i in omega):
        raise IndexOutOfRange(f"omega {omega} outside [0, {m})")
    out = np.zeros(m)
    out[omega] = b_omega
    return out


def noiseless_projections(U, pattern: SamplingPattern) -> ProjectionSet:
    """ProjectionSet for exact (zero-noise) observations of span(U)."""
    U = np.asarray(U, dtype=np.float64)
    u_list = tuple(restrict_rows(U, om) for om in pattern.omegas)
    z_list = tuple(np.zeros_like(u) for u in u_list)
    return ProjectionSet(pattern=pattern, v_list=u_list, u_list=u_list, z_list=z_list)


def build_normal_matrix(ps: ProjectionSet, use: str = "observed") -> NormalMatrix:
    """Assemble B (from observed V_i) or its noiseless counterpart A.

    For the noiseless variant, each column is sign-aligned against the
    corresponding observed normal so the pair has nonnegative inner product;
    this only matters for diagnostics (the span, singular values, and the
    estimate are all sign-invariant).

    Raises RankDeficient (carrying the projection index) when any selected
    matrix is not a hyperplane basis.
    """
    if use not in ("observed", "noiseless"):
        raise ValueError(f"unknown source {use!r}")
    if use == "noiseless":
        if ps.u_list is None:
            raise ValueError("projection set has no noiseless bases")
        mats = ps.u_list
    else:
        mats = ps.v_list

    m = ps.pattern.m
    cols = []
    for i, (M, om) in enumerate(zip(mats, ps.pattern.omegas)):
        try:
            b = hyperplane_normal(M)
        except RankDeficient as exc:
            raise RankDeficient(
                f"projection {i} is rank deficient: {exc}", rank=exc.rank, index=i
            ) from exc
        cols.append(lift(b, om, m))
    matrix = np.column_stack(cols)

    if use == "noiseless":
        observed = build_normal_matrix(ps, use="observed").matrix
        signs = np.where(np.sum(matrix * observed, axis=0) < 0, -1.0, 1.0)
        matrix = matrix * signs
    return NormalMatrix(matrix=matrix, pattern=ps.pattern)


def estimate_subspace(normal: NormalMatrix) -> SubspaceBasis:
    """The estimate: orthogonal complement of the normal matrix's span.

    Requires numerical rank(B) = m - r, in which case the complement is the
    unique r-dim subspace whose every restriction agrees with the observed
    projections.  A larger kernel means the projections do not pin down a
    single subspace, so we raise instead of truncating.
    """
    B = normal.matrix
    m = normal.pattern.m
    r = normal.pattern.r
    spec = singular_spectrum(B)
    rank = spec.numerical_rank()
    if rank != m - r:
        raise IdentifiabilityFailure(
            f"normal matrix has numerical rank {rank}, need {m - r}: "
            f"kernel dimension {m - rank} != {r}",
            rank=rank,
            expected_rank=m - r,
        )
    return SubspaceBasis(ambient_dim=m, dim=r, basis=spec.left_vectors[:, m - r:])


def echelon_alpha(U_omega) -> np.ndarray:
    """Coefficients alpha of the column-echelon basis [I; alpha^T] of a projection.

    Column operations bring a generic (r+1) x r basis to the form with an
    identity on top and alpha^T as the last row; then (alpha^T, -1)^T spans
    the null space.  Raises EchelonDegenerate when the leading r x r block is
    numerically singular (the echelon form does not exist).
    """
    U_omega = np.asarray(U_omega, dtype=np.float64)
    rows, cols = U_omega.shape
    if rows != cols + 1:
        raise DimensionMismatch(f"expected (r+1) x r, got {rows} x {cols}")
    top = U_omega[:cols, :]
    values = np.linalg.svd(top, compute_uv=False)
    if values[-1] <= rank_tolerance(top.shape, values[0]):
        raise EchelonDegenerate("leading r x r block is numerically singular")
    # [T; beta^T] @ T^{-1} = [I; (T^{-T} beta)^T]
    return np.linalg.solve(top.T, U_omega[cols, :])
