"""Dense linear-algebra primitives for subspace estimation.

Every operation in this module goes through one full (not thin) singular
value decomposition, so projectors, normals, and orthogonal complements all
come out of the same factorization with consistent tolerances.  All
computation is in 64-bit floating point.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, RankDeficient

_EPS = np.finfo(np.float64).eps

# Column orthonormality tolerance accepted by SubspaceBasis.
ORTHONORMAL_TOL = 1e-10


def rank_tolerance(shape, sigma_max: float) -> float:
    """Scale-aware threshold below which singular values count as zero.

    Uses the standard max(rows, cols) * eps * sigma_max rule, so "numerical
    rank" means the same thing for every matrix size in the pipeline.
    """
    return max(shape) * _EPS * sigma_max


def _as_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got ndim={M.ndim}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix contains NaN or Inf entries")
    return M


@dataclass(frozen=True)
class SingularSpectrum:
    """Full singular value decomposition M = L diag(values) R^T.

    ``values`` is nonincreasing with length min(rows, cols); ``left_vectors``
    is rows x rows and ``right_vectors`` is cols x cols, so orthogonal
    complements can be read off the trailing columns.
    """

    values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray

    @property
    def spectral_norm(self) -> float:
        return float(self.values[0]) if self.values.size else 0.0

    @property
    def sigma_min(self) -> float:
        """Smallest singular value over min(rows, cols)."""
        return float(self.values[-1]) if self.values.size else 0.0

    def numerical_rank(self) -> int:
        shape = (self.left_vectors.shape[0], self.right_vectors.shape[0])
        tol = rank_tolerance(shape, self.spectral_norm)
        return int(np.sum(self.values > tol))


def singular_spectrum(M) -> SingularSpectrum:
    """Full SVD of a dense matrix.

    Parameters
    ----------
    M : array_like, shape (rows, cols)
        Nonempty real matrix with finite entries.

    Returns
    -------
    SingularSpectrum
    """
    M = _as_matrix(M)
    if M.size == 0:
        raise ValueError("matrix is empty")
    left, values, right_t = np.linalg.svd(M, full_matrices=True)
    return SingularSpectrum(values=values, left_vectors=left, right_vectors=right_t.T)


@dataclass(frozen=True)
class SubspaceBasis:
    """A point on the Grassmannian: an orthonormal basis of an r-dim subspace.

    Parameters
    ----------
    ambient_dim : int
        Dimension m of the surrounding space.
    dim : int
        Subspace dimension r, with r <= m.
    basis : ndarray, shape (m, r)
        Columns orthonormal to within ``ORTHONORMAL_TOL``.
    """

    ambient_dim: int
    dim: int
    basis: np.ndarray

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=np.float64)
        object.__setattr__(self, "basis", basis)
        if basis.shape != (self.ambient_dim, self.dim):
            raise DimensionMismatch(
                f"basis shape {basis.shape} != ({self.ambient_dim}, {self.dim})"
            )
        if self.dim > self.ambient_dim:
            raise DimensionMismatch(f"dim {self.dim} exceeds ambient {self.ambient_dim}")
        gram = basis.T @ basis
        if not np.allclose(gram, np.eye(self.dim), atol=ORTHONORMAL_TOL):
            raise ValueError("basis columns are not orthonormal")

    @classmethod
    def from_span(cls, M) -> "SubspaceBasis":
        """Orthonormal basis for the column span of a full-column-rank matrix."""
        M = _as_matrix(M)
        spec = singular_spectrum(M)
        k = M.shape[1]
        tol = rank_tolerance(M.shape, spec.spectral_norm)
        if k > 0 and spec.values[k - 1] <= tol:
            raise RankDeficient(
                f"matrix has numerical rank {spec.numerical_rank()} < {k}",
                rank=spec.numerical_rank(),
            )
        return cls(ambient_dim=M.shape[0], dim=k, basis=spec.left_vectors[:, :k])

    def projector(self) -> np.ndarray:
        """The orthogonal projection operator onto this subspace."""
        return self.basis @ self.basis.T


def projection_operator(M) -> np.ndarray:
    """Orthogonal projector P onto the column span of M.

    Parameters
    ----------
    M : array_like, shape (m, k)
        Must have full column rank.

    Returns
    -------
    ndarray, shape (m, m)
        Symmetric idempotent P with P @ M = M.

    Raises
    ------
    RankDeficient
        If the smallest singular value of M is at or below the rank tolerance.
    """
    return SubspaceBasis.from_span(M).projector()


def chordal_distance(s1: SubspaceBasis, s2: SubspaceBasis) -> float:
    """Chordal distance on the Grassmannian: ||P1 - P2||_F / sqrt(2).

    For equal dimensions r the value lies in [0, sqrt(r)].  Computed from
    the explicit projector difference, which stays accurate for nearby
    subspaces where Gram-based shortcuts cancel catastrophically.
    """
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}"
        )
    diff = s1.projector() - s2.projector()
    return float(np.linalg.norm(diff, "fro") / np.sqrt(2.0))


def hyperplane_normal(V) -> np.ndarray:
    """Unit normal of the hyperplane spanned by an (r+1) x r matrix.

    The returned b satisfies V^T b = 0 and ||b|| = 1, with the sign fixed so
    the first entry larger than 1e-12 in magnitude is positive (the normal is
    only defined up to sign; a fixed convention keeps outputs deterministic).

    Raises
    ------
    RankDeficient
        If V is not full column rank, i.e. its span is not a hyperplane.
    DimensionMismatch
        If V is not (r+1) x r.
    """
    V = _as_matrix(V)
    rows, cols = V.shape
    if rows != cols + 1:
        raise DimensionMismatch(f"expected an (r+1) x r matrix, got {rows} x {cols}")
    spec = singular_spectrum(V)
    tol = rank_tolerance(V.shape, spec.spectral_norm)
    if spec.sigma_min <= tol:
        raise RankDeficient(
            f"projection matrix has numerical rank {spec.numerical_rank()} < {cols}; "
            "its span is not a hyperplane",
            rank=spec.numerical_rank(),
        )
    b = spec.left_vectors[:, -1]
    for entry in b:
        if abs(entry) > 1e-12:
            if entry < 0:
                b = -b
            break
    return b


def orthogonal_complement(M) -> SubspaceBasis:
    """Orthonormal basis of the orthogonal complement of span(M).

    For a full-column-rank m x k matrix this returns an m x (m-k) basis W
    with M^T W = 0, taken from the trailing left singular vectors of the same
    full decomposition used everywhere else.

    Raises
    ------
    RankDeficient
        If the numerical rank of M is below k (the rank found is reported).
    """
    M = _as_matrix(M)
    m, k = M.shape
    spec = singular_spectrum(M)
    rank = spec.numerical_rank()
    if rank < k:
        raise RankDeficient(
            f"matrix has numerical rank {rank}, expected full column rank {k}",
            rank=rank,
        )
    return SubspaceBasis(ambient_dim=m, dim=m - k, basis=spec.left_vectors[:, k:])
