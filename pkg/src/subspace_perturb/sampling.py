"""Sampling patterns {Omega_i} and their identifiability conditions.

A pattern is identifiable when:

  C1. every projection uses exactly r+1 coordinates,
  C2. there are N = m - r projections,
  C3. every nonempty subset of ell projections covers >= ell + r coordinates.

C3 is checked either by brute-force subset enumeration (exact, exponential)
or by a randomized generic-rank certificate (cheap, sound up to measure-zero
draws).  Coordinates are 0-based everywhere, including the JSON file format.
"""

import json
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from .errors import InvalidDimensions, RankDeficient, TooFewProjections

# Largest N for which `validate(mode="auto")` still enumerates all 2^N - 1
# subsets; beyond this the generic-rank certificate takes over.
BRUTE_FORCE_LIMIT = 22


@dataclass(frozen=True)
class SamplingPattern:
    """Coordinate sets {Omega_i} for an r-dim subspace of R^m.

    ``omegas`` holds N sorted, duplicate-free tuples of indices in [0, m).
    """

    m: int
    r: int
    omegas: tuple

    def __post_init__(self):
        if self.m < 1:
            raise InvalidDimensions(f"ambient dimension m={self.m} must be >= 1")
        omegas = tuple(tuple(int(i) for i in om) for om in self.omegas)
        object.__setattr__(self, "omegas", omegas)
        if len(omegas) < 1:
            raise InvalidDimensions("pattern needs at least one projection")
        for k, om in enumerate(omegas):
            if any(i < 0 or i >= self.m for i in om):
                raise InvalidDimensions(
                    f"omega[{k}] has an index outside [0, {self.m})"
                )
            if list(om) != sorted(set(om)):
                raise InvalidDimensions(f"omega[{k}] must be sorted and duplicate-free")

    @property
    def n_projections(self) -> int:
        return len(self.omegas)

    def as_mask(self) -> np.ndarray:
        """The 0/1 matrix whose i-th column marks the coordinates of Omega_i."""
        mask = np.zeros((self.m, self.n_projections), dtype=np.int8)
        for i, om in enumerate(self.omegas):
            mask[list(om), i] = 1
        return mask

    def to_dict(self) -> dict:
        return {"m": self.m, "r": self.r, "omegas": [list(om) for om in self.omegas]}

    @classmethod
    def from_dict(cls, d: dict) -> "SamplingPattern":
        return cls(m=int(d["m"]), r=int(d["r"]), omegas=tuple(tuple(om) for om in d["omegas"]))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "SamplingPattern":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking C1-C3 on a pattern.

    ``violating_subset`` is present only when C3 fails under brute force; it
    is the lexicographically smallest list of projection indices whose union
    covers fewer than len(subset) + r coordinates.
    """

    c1_ok: bool
    c2_ok: bool
    c3_ok: bool
    c3_method: str  # "brute_force" | "generic_rank"
    violating_subset: tuple | None = None

    @property
    def all_ok(self) -> bool:
        return self.c1_ok and self.c2_ok and self.c3_ok


def _check_dims(m: int, r: int) -> None:
    if r < 1 or r >= m:
        raise InvalidDimensions(f"need 1 <= r < m, got m={m}, r={r}")


def gen_omega1(m: int, r: int) -> SamplingPattern:
    """Maximal-overlap pattern: a block of all-ones rows over an identity.

    Column i uses coordinates {0..r-1} plus the unique coordinate r+i, so
    every pair of projections shares exactly r coordinates.
    """
    _check_dims(m, r)
    omegas = tuple(tuple(range(r)) + (r + i,) for i in range(m - r))
    return SamplingPattern(m=m, r=r, omegas=omegas)


def gen_omega2(m: int, r: int) -> SamplingPattern:
    """Staircase pattern: column i uses the band {i, i+1, ..., i+r}.

    Overlap decays with column distance; once m - r > r + 1 the first and
    last projections share no coordinates at all.
    """
    _check_dims(m, r)
    omegas = tuple(tuple(range(i, i + r + 1)) for i in range(m - r))
    return SamplingPattern(m=m, r=r, omegas=omegas)


def _c3_brute_force(pattern: SamplingPattern):
    """Exact C3 check; returns (ok, violating subset or None).

    Enumerates all 2^N - 1 subsets in depth-first lexicographic order over
    sorted index tuples, so the first violation found is the
    lexicographically smallest one regardless of how the search runs.
    """
    n = pattern.n_projections
    r = pattern.r
    masks = []
    for om in pattern.omegas:
        bits = 0
        for i in om:
            bits |= 1 << i
        masks.append(bits)

    def descend(subset, union, start):
        if union.bit_count() < len(subset) + r:
            return subset
        for j in range(start, n):
            hit = descend(subset + (j,), union | masks[j], j + 1)
            if hit is not None:
                return hit
        return None

    for i in range(n):
        hit = descend((i,), masks[i], i + 1)
        if hit is not None:
            return False, hit
    return True, None


def c3_generic_rank(pattern: SamplingPattern, rng_seed: int, trials: int = 3) -> bool:
    """Randomized C3 certificate via the rank of a generic noiseless normal matrix.

    Draws a Gaussian basis, builds the noiseless normal matrix A (zero
    noise), and checks rank(A) == N.  A single full-rank witness proves C3:
    if C3 failed, some subset of columns would be forced into a subspace of
    dimension below the subset size, making A rank-deficient for *every*
    basis.  Conversely a rank-deficient generic draw indicates violation with
    probability 1, so we only report failure after every trial is deficient.

    Degenerate draws (a projection that is not a hyperplane) are retried up
    to 3 times before counting as a failed trial.
    """
    from .estimator import build_normal_matrix, noiseless_projections  # import here: estimator uses SamplingPattern

    n = pattern.n_projections
    rng = np.random.default_rng(rng_seed)
    for _ in range(max(1, trials)):
        for attempt in range(3):
            basis = rng.standard_normal((pattern.m, pattern.r))
            try:
                ps = noiseless_projections(basis, pattern)
                normal = build_normal_matrix(ps, use="noiseless")
            except RankDeficient:
                if attempt == 2:
                    raise
                continue
            break
        values = np.linalg.svd(normal.matrix, compute_uv=False)
        tol = max(normal.matrix.shape) * np.finfo(np.float64).eps * values[0]
        if int(np.sum(values > tol)) == n:
            return True
    return False


def validate(pattern: SamplingPattern, mode: str = "auto", rng_seed: int = 0) -> ValidationReport:
    """Check conditions C1-C3 and report the outcome of each.

    Parameters
    ----------
    pattern : SamplingPattern
    mode : {"auto", "brute", "generic"}
        How to decide C3.  "auto" enumerates subsets exactly while
        N <= BRUTE_FORCE_LIMIT and falls back to the generic-rank
        certificate beyond that.  Patterns violating C1 are always checked
        by brute force (the rank certificate needs hyperplanes).
    rng_seed : int
        Seed for the generic-rank draws; identical inputs and seed give
        identical reports.
    """
    if mode not in ("auto", "brute", "generic"):
        raise ValueError(f"unknown mode {mode!r}")
    c1 = all(len(om) == pattern.r + 1 for om in pattern.omegas)
    c2 = pattern.n_projections == pattern.m - pattern.r

    use_brute = mode == "brute" or (mode == "auto" and pattern.n_projections <= BRUTE_FORCE_LIMIT)
    if not c1 and not use_brute:
        # The rank certificate needs hyperplane projections, so C1 violators
        # can only be checked exactly; refuse to enumerate 2^N subsets unless
        # the caller asked for brute force explicitly.
        if pattern.n_projections > BRUTE_FORCE_LIMIT:
            raise ValueError(
                "pattern violates C1 and has too many projections for the "
                "automatic exact C3 check; pass mode='brute' to force it"
            )
        use_brute = True

    if use_brute:
        c3, violator = _c3_brute_force(pattern)
        return ValidationReport(
            c1_ok=c1, c2_ok=c2, c3_ok=c3, c3_method="brute_force",
            violating_subset=violator,
        )
    c3 = c3_generic_rank(pattern, rng_seed=rng_seed)
    return ValidationReport(c1_ok=c1, c2_ok=c2, c3_ok=c3, c3_method="generic_rank")


def overlap_stats(pattern: SamplingPattern) -> dict:
    """Pairwise overlap statistics |Omega_i & Omega_j| over all i < j."""
    n = pattern.n_projections
    if n < 2:
        raise TooFewProjections(f"need at least 2 projections, got {n}")
    sets = [frozenset(om) for om in pattern.omegas]
    overlaps = [len(a & b) for a, b in combinations(sets, 2)]
    return {
        "max_overlap": max(overlaps),
        "mean_overlap": float(np.mean(overlaps)),
        "disjoint_pairs": sum(1 for v in overlaps if v == 0),
    }
