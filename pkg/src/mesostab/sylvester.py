"""Semi-definiteness verdicts for symmetric matrices.

Two routes are provided: the exhaustive principal-minor sweep (exponential,
guarded) and the cheap leading-minor certificate that is valid for symmetric
matrices with zero row sums and maximal rank. The leading-minor shortcut is
a certificate only; when it refuses, the matrix is classified by its
eigenvalues so that the verdict kind stays meaningful.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .numerics import (
    EIG_REL_TOL,
    REL_TOL,
    GuardLimitError,
    det_partial_pivot,
    eig_tolerance,
    eigen_rank,
    hadamard_bound,
    require_symmetric,
    require_zero_row_sums,
)

POSITIVE_DEFINITE = "positive-definite"
POSITIVE_SEMI_DEFINITE = "positive-semi-definite"
NEGATIVE_DEFINITE = "negative-definite"
NEGATIVE_SEMI_DEFINITE = "negative-semi-definite"
INDEFINITE = "indefinite"

DEFAULT_N_MAX = 20


@dataclass(frozen=True)
class MinorWitness:
    """A principal minor that certifies a verdict: subset is 1-based."""

    subset: tuple[int, ...]
    value: float


@dataclass(frozen=True)
class VectorWitness:
    """A vector whose quadratic form certifies a verdict."""

    vector: tuple[float, ...]
    value: float


Witness = Union[MinorWitness, VectorWitness]


@dataclass(frozen=True)
class DefinitenessVerdict:
    kind: str
    rank_estimate: int
    witness: Optional[Witness] = None

    @property
    def is_psd(self) -> bool:
        return self.kind in (POSITIVE_DEFINITE, POSITIVE_SEMI_DEFINITE)


def _classify_by_eigenvalues(L: np.ndarray, rel: float = EIG_REL_TOL) -> tuple[str, int, np.ndarray]:
    w = np.linalg.eigvalsh(L)
    tol = eig_tolerance(L, rel)
    pos = int(np.count_nonzero(w > tol))
    neg = int(np.count_nonzero(w < -tol))
    rank = pos + neg
    n = L.shape[0]
    if neg == 0:
        kind = POSITIVE_DEFINITE if pos == n else POSITIVE_SEMI_DEFINITE
    elif pos == 0:
        kind = NEGATIVE_DEFINITE if neg == n else NEGATIVE_SEMI_DEFINITE
    else:
        kind = INDEFINITE
    return kind, rank, w


def is_psd_full(L: np.ndarray, n_max: int = DEFAULT_N_MAX, rel: float = REL_TOL) -> DefinitenessVerdict:
    """Classify by the full sweep over all nonempty principal minors.

    Positive semi-definite means every principal minor clears ``-tol`` where
    tol scales with the Hadamard bound of each submatrix. The witness is the
    first subset, sizes ascending then lexicographic, whose minor breaks the
    positive side (or, failing that, the negative side). The sweep is
    refused above ``n_max`` since it takes 2^n - 1 determinants.
    """
    L = require_symmetric(L)
    n = L.shape[0]
    if n > n_max:
        raise GuardLimitError(
            f"exhaustive minor sweep refused: n={n} exceeds n_max={n_max} (override n_max to force)"
        )
    first_pos_violation: Optional[MinorWitness] = None
    first_neg_violation: Optional[MinorWitness] = None
    all_pos_strict = True
    all_neg_strict = True
    for k in range(1, n + 1):
        combos = np.array(list(itertools.combinations(range(n), k)))
        subs = L[combos[:, :, None], combos[:, None, :]]
        dets = np.linalg.det(subs)
        tols = rel * np.prod(np.sqrt((subs * subs).sum(axis=2)), axis=1)
        sign = -1.0 if k % 2 else 1.0
        pos_bad = dets < -tols
        neg_bad = sign * dets < -tols
        if first_pos_violation is None and pos_bad.any():
            at = int(np.argmax(pos_bad))
            first_pos_violation = MinorWitness(tuple(int(v) + 1 for v in combos[at]), float(dets[at]))
        if first_neg_violation is None and neg_bad.any():
            at = int(np.argmax(neg_bad))
            first_neg_violation = MinorWitness(tuple(int(v) + 1 for v in combos[at]), float(dets[at]))
        if not (dets > tols).all():
            all_pos_strict = False
        if not (sign * dets > tols).all():
            all_neg_strict = False
    rank = eigen_rank(L)
    if first_pos_violation is None:
        kind = POSITIVE_DEFINITE if all_pos_strict else POSITIVE_SEMI_DEFINITE
        return DefinitenessVerdict(kind, rank)
    if first_neg_violation is None:
        kind = NEGATIVE_DEFINITE if all_neg_strict else NEGATIVE_SEMI_DEFINITE
        return DefinitenessVerdict(kind, rank, first_pos_violation)
    return DefinitenessVerdict(INDEFINITE, rank, first_pos_violation)


def is_psd_zero_row_sum(L: np.ndarray, rel: float = REL_TOL) -> DefinitenessVerdict:
    """Certificate for PSD with rank n-1, valid for zero-row-sum matrices.

    Strict positivity of the n-1 leading principal minors certifies the
    verdict at the cost of n determinants instead of 2^n. When some leading
    minor fails the strict threshold, nothing combinatorial can be
    concluded, so the returned kind falls back to the eigenvalue
    classification; the failing leading minor is attached when it is
    negative outright, otherwise an eigenvector with a disqualifying
    quadratic form serves as the witness.
    """
    L = require_zero_row_sums(require_symmetric(L), rel)
    n = L.shape[0]
    for k in range(1, n):
        sub = L[:k, :k]
        minor = det_partial_pivot(sub)
        threshold = rel * hadamard_bound(sub)
        if minor <= threshold:
            kind, rank, w = _classify_by_eigenvalues(L)
            witness: Optional[Witness]
            if minor < -threshold:
                witness = MinorWitness(tuple(range(1, k + 1)), minor)
            elif kind in (INDEFINITE, NEGATIVE_SEMI_DEFINITE, NEGATIVE_DEFINITE):
                vecs = np.linalg.eigh(L)[1]
                v = vecs[:, 0]
                witness = VectorWitness(tuple(float(x) for x in v), float(w[0]))
            else:
                witness = None
            return DefinitenessVerdict(kind, rank, witness)
    return DefinitenessVerdict(POSITIVE_SEMI_DEFINITE, n - 1)


def certifies_psd_max_rank(verdict: DefinitenessVerdict, n: int) -> bool:
    """True when a verdict asserts PSD with a simple zero eigenvalue."""
    return verdict.kind == POSITIVE_SEMI_DEFINITE and verdict.rank_estimate == n - 1 and verdict.witness is None


def _is_pd_cholesky(a: np.ndarray) -> bool:
    if a.size == 0:
        return True
    try:
        np.linalg.cholesky(a)
        return True
    except np.linalg.LinAlgError:
        return False


@dataclass(frozen=True)
class EquivalenceReport:
    """Joint evaluation of five tests that must agree on zero-row-sum input."""

    eigen_psd_max_rank: bool
    proper_minors_positive: bool
    proper_submatrices_pd: bool
    leading_minors_positive: bool
    reduced_block_pd: bool

    def values(self) -> tuple[bool, bool, bool, bool, bool]:
        return (
            self.eigen_psd_max_rank,
            self.proper_minors_positive,
            self.proper_submatrices_pd,
            self.leading_minors_positive,
            self.reduced_block_pd,
        )

    def names(self) -> tuple[str, ...]:
        return (
            "eigen_psd_max_rank",
            "proper_minors_positive",
            "proper_submatrices_pd",
            "leading_minors_positive",
            "reduced_block_pd",
        )

    @property
    def all_agree(self) -> bool:
        return len(set(self.values())) == 1

    def disagreements(self) -> tuple[tuple[str, str], ...]:
        names, vals = self.names(), self.values()
        return tuple(
            (names[a], names[b])
            for a, b in itertools.combinations(range(5), 2)
            if vals[a] != vals[b]
        )


def check_equivalences(L: np.ndarray, n_max: int = DEFAULT_N_MAX, rel: float = REL_TOL) -> EquivalenceReport:
    """Evaluate each of the five equivalent maximal-rank PSD tests on its own.

    The tests: eigenvalue PSD with rank n-1; every proper principal minor
    strictly positive; every proper principal submatrix positive definite
    (Cholesky); the n-1 leading minors strictly positive; the leading
    (n-1)-block positive definite. Any disagreement signals a bug, which is
    exactly what the matching property test asserts.
    """
    L = require_zero_row_sums(require_symmetric(L), rel)
    n = L.shape[0]
    if n > n_max:
        raise GuardLimitError(
            f"proper-minor sweep refused: n={n} exceeds n_max={n_max} (override n_max to force)"
        )
    w = np.linalg.eigvalsh(L)
    tol = eig_tolerance(L)
    cond_i = bool(w[0] >= -tol and np.count_nonzero(np.abs(w) > tol) == n - 1)

    cond_ii = True
    cond_iii = True
    for k in range(1, n):
        for combo in itertools.combinations(range(n), k):
            sub = L[np.ix_(combo, combo)]
            if cond_ii and det_partial_pivot(sub) <= rel * hadamard_bound(sub):
                cond_ii = False
            if cond_iii and not _is_pd_cholesky(sub):
                cond_iii = False
        if not cond_ii and not cond_iii:
            break

    cond_iv = True
    for k in range(1, n):
        sub = L[:k, :k]
        if det_partial_pivot(sub) <= rel * hadamard_bound(sub):
            cond_iv = False
            break

    cond_v = _is_pd_cholesky(L[: n - 1, : n - 1])
    return EquivalenceReport(cond_i, cond_ii, cond_iii, cond_iv, cond_v)
