"""Open quantum random walks on distance sets.

A walk is a family of completely positive trace-preserving maps, one per
jump distance k, acting on block-diagonal states.  Each map is given by
Kraus blocks B[i,j;k] on the degree-of-freedom space (moving the block at
position j to position i under a jump of distance k), subject to the
completeness condition sum_i B[i,j;k]^* B[i,j;k] = 1 for every (j, k).

Word-order convention, fixed globally because it is easy to get backwards:

* ``walk_distribution`` applies the maps in word order: word (k1, ..., kn)
  means apply the k1-map first.
* ``produced_tensor`` reads the constant Q[k, l] off the two-step walk that
  applies the l-map first and the k-map second (the product z_k o z_l).
* ``mixture_distribution`` therefore folds the *reversed* word through the
  tensor: the walk (k1, ..., kn) decomposes through the fold of
  (kn, ..., k1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import TruncationExceededError
from .hypergroups import (
    EPS_PROB,
    StructureTensor,
    Word,
    multi_constants,
    structure_tensor,
)
from .parallel import pmap

# Completeness and block-decomposition residuals: chains of <= 4 products.
EPS_KRAUS = 1e-8
EPS_HB = 1e-8
# Minimum eigenvalue allowed below zero for a positive-semidefinite block.
EPS_PSD = 1e-10


def _as_block(matrix, h_dim: int) -> np.ndarray:
    arr = np.asarray(matrix, dtype=complex)
    if arr.shape != (h_dim, h_dim):
        raise ValueError(f"block has shape {arr.shape}, expected ({h_dim}, {h_dim})")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class KrausFamily:
    """Sparse Kraus blocks B[i,j;k]; an absent block is the zero matrix.

    ``truncation_radius`` tags families realized from a truncated tensor:
    blocks in rows (k, j) with k + j beyond the radius are an arbitrary
    completion (kept only so each map stays trace preserving) and nothing
    computed through them is certified.
    """

    d_size: int
    h_dim: int
    blocks: Mapping[tuple[int, int, int], np.ndarray]
    truncation_radius: int | None = None

    def block(self, i: int, j: int, k: int) -> np.ndarray:
        found = self.blocks.get((i, j, k))
        if found is not None:
            return found
        return np.zeros((self.h_dim, self.h_dim), dtype=complex)

    @cached_property
    def _by_distance(self) -> dict[int, list[tuple[int, int, np.ndarray]]]:
        table: dict[int, list[tuple[int, int, np.ndarray]]] = {}
        for (i, j, k), mat in sorted(self.blocks.items()):
            table.setdefault(k, []).append((i, j, mat))
        return table


def kraus_family(
    d_size: int,
    h_dim: int,
    blocks: Mapping[tuple[int, int, int], "np.ndarray"],
    truncation_radius: int | None = None,
) -> KrausFamily:
    """Build a family from an (i, j, k) -> matrix map, dropping zero blocks."""
    if d_size <= 0 or h_dim <= 0:
        raise ValueError("d_size and h_dim must be positive")
    stored: dict[tuple[int, int, int], np.ndarray] = {}
    for (i, j, k), matrix in blocks.items():
        for idx in (i, j, k):
            if not (0 <= idx < d_size):
                raise ValueError(f"block index {(i, j, k)} out of range")
        arr = _as_block(matrix, h_dim)
        if np.abs(arr).max() == 0.0:
            continue
        stored[(i, j, k)] = arr
    return KrausFamily(
        d_size=d_size,
        h_dim=h_dim,
        blocks=stored,
        truncation_radius=truncation_radius,
    )


@dataclass(frozen=True)
class KrausReport:
    passed: bool
    max_residual: float
    worst_slot: tuple[int, int] | None
    tolerance: float

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"completeness: {status}  max residual {self.max_residual:.3e} "
            f"at (j, k)={self.worst_slot}  tol {self.tolerance:.1e}"
        )


def validate_kraus(family: KrausFamily, tol: float = EPS_KRAUS) -> KrausReport:
    """Check sum_i B[i,j;k]^* B[i,j;k] = 1 for every (j, k), in max norm."""
    eye = np.eye(family.h_dim, dtype=complex)
    sums: dict[tuple[int, int], np.ndarray] = {}
    for (i, j, k), mat in family.blocks.items():
        acc = sums.setdefault((j, k), np.zeros_like(eye))
        acc += mat.conj().T @ mat
    worst, worst_slot = -1.0, None
    for j, k in itertools.product(range(family.d_size), repeat=2):
        total = sums.get((j, k), np.zeros_like(eye))
        residual = float(np.abs(total - eye).max())
        if residual > worst:
            worst, worst_slot = residual, (j, k)
    return KrausReport(worst <= tol, worst, worst_slot, tol)


@dataclass(frozen=True)
class BlockState:
    """Block-diagonal density operator: one PSD block per position, total trace 1."""

    blocks: tuple[np.ndarray, ...]

    @property
    def d_size(self) -> int:
        return len(self.blocks)

    @property
    def h_dim(self) -> int:
        return self.blocks[0].shape[0]


def block_state(blocks: Sequence[np.ndarray], validate: bool = True) -> BlockState:
    if not blocks:
        raise ValueError("state needs at least one block")
    h = np.asarray(blocks[0]).shape[0]
    mats = tuple(_as_block(b, h) for b in blocks)
    if validate:
        total = 0.0
        for idx, mat in enumerate(mats):
            if np.abs(mat - mat.conj().T).max() > EPS_PSD:
                raise ValueError(f"block {idx} is not Hermitian")
            eigmin = float(np.linalg.eigvalsh((mat + mat.conj().T) / 2).min())
            if eigmin < -EPS_PSD:
                raise ValueError(f"block {idx} has negative eigenvalue {eigmin}")
            total += float(mat.trace().real)
        if abs(total - 1.0) > EPS_PROB:
            raise ValueError(f"total trace is {total}, not 1")
    return BlockState(blocks=mats)


def point_state(rho0: np.ndarray, site: int, d_size: int) -> BlockState:
    """State rho0 concentrated at one position."""
    rho0 = np.asarray(rho0, dtype=complex)
    h = rho0.shape[0]
    blocks = [np.zeros((h, h), dtype=complex) for _ in range(d_size)]
    blocks[site] = rho0
    return block_state(blocks)


def maximally_mixed_state(h_dim: int, d_size: int, site: int = 0) -> BlockState:
    return point_state(np.eye(h_dim, dtype=complex) / h_dim, site, d_size)


def state_from_density(rho: np.ndarray, h_dim: int, d_size: int) -> BlockState:
    """Extract the diagonal blocks rho_j of a full density matrix.

    Off-diagonal blocks are discarded: every walk step and every distribution
    depends only on the diagonal blocks, so nothing observable is lost.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (h_dim * d_size, h_dim * d_size):
        raise ValueError(f"density matrix has shape {rho.shape}")
    blocks = [
        rho[j * h_dim : (j + 1) * h_dim, j * h_dim : (j + 1) * h_dim]
        for j in range(d_size)
    ]
    return block_state(blocks)


def step(family: KrausFamily, k: int, state: BlockState) -> BlockState:
    """One application of the distance-k map: rho'_i = sum_j B rho_j B^*."""
    if state.d_size != family.d_size or state.h_dim != family.h_dim:
        raise ValueError("state and family dimensions disagree")
    if not (0 <= k < family.d_size):
        raise IndexError(f"distance {k} out of range")
    out = [np.zeros((family.h_dim, family.h_dim), dtype=complex) for _ in range(family.d_size)]
    for i, j, mat in family._by_distance.get(k, ()):
        out[i] += mat @ state.blocks[j] @ mat.conj().T
    return block_state(out)


def distribution(state: BlockState) -> np.ndarray:
    """Measured position distribution: the block traces."""
    return np.array([float(b.trace().real) for b in state.blocks])


def walk_distribution(family: KrausFamily, word: Word, state0: BlockState) -> np.ndarray:
    """Distribution after applying the maps of ``word`` in order to ``state0``."""
    state = state0
    for k in word:
        state = step(family, k, state)
    return distribution(state)


def produced_tensor(family: KrausFamily, state0: BlockState) -> StructureTensor:
    """Structure constants read off the two-step walk distributions.

    Entry Q[k, l, m] is the mass at position m after applying the l-map and
    then the k-map to the initial state.  On a truncated family only the
    certified rows (k + l within the radius) are produced.
    """
    one_step = [step(family, l, state0) for l in range(family.d_size)]
    radius = family.truncation_radius
    entries = []
    for k, l in itertools.product(range(family.d_size), repeat=2):
        if radius is not None and k + l > radius:
            continue
        probs = distribution(step(family, k, one_step[l]))
        for m, p in enumerate(probs):
            if p > 1e-14:
                entries.append((k, l, m, float(p)))
    return structure_tensor(family.d_size, entries, truncation_radius=radius)


def realize(
    tensor_or_hypergroup,
    h_dim: int = 1,
    isometries: Mapping[tuple[int, int, int], np.ndarray] | Callable | None = None,
    rho0: np.ndarray | None = None,
) -> tuple[KrausFamily, BlockState]:
    """Build the walk whose two-step statistics reproduce the given constants.

    Blocks are B[i,j;k] = sqrt(Q[k,j,i]) U[i,j;k] with isometries U (identity
    by default), and the initial state is rho0 at position 0 (maximally mixed
    by default).  The input must be row stochastic; rows of a truncated
    tensor that are out of range get an arbitrary deterministic completion so
    each map stays trace preserving, and the family is tagged with the same
    truncation radius.
    """
    tensor: StructureTensor = getattr(tensor_or_hypergroup, "tensor", tensor_or_hypergroup)
    if h_dim <= 0:
        raise ValueError("h_dim must be positive")
    d = tensor.size
    eye = np.eye(h_dim, dtype=complex)

    def isometry(i: int, j: int, k: int) -> np.ndarray:
        if isometries is None:
            return eye
        if callable(isometries):
            u = isometries(i, j, k)
        else:
            u = isometries.get((i, j, k))
        if u is None:
            return eye
        u = _as_block(u, h_dim)
        if np.abs(u.conj().T @ u - eye).max() > EPS_KRAUS:
            raise ValueError(f"supplied matrix for {(i, j, k)} is not an isometry")
        return u

    blocks: dict[tuple[int, int, int], np.ndarray] = {}
    for k in range(d):
        for j in range(d):
            if tensor.defined(k, j):
                for i, q in tensor.row(k, j).items():
                    if q == 0:
                        continue
                    blocks[(i, j, k)] = np.sqrt(float(q)) * isometry(i, j, k)
            else:
                # Arbitrary completion outside the certified rows.
                blocks[(abs(j - k), j, k)] = eye
    if rho0 is None:
        rho0 = eye / h_dim
    family = kraus_family(d, h_dim, blocks, truncation_radius=tensor.truncation_radius)
    return family, point_state(rho0, 0, d)


@dataclass(frozen=True)
class HBReport:
    """Residuals of the block-decomposition identity over all index tuples."""

    passed: bool
    max_residual: float
    worst_tuple: tuple[int, int, int, int] | None
    tolerance: float
    checked: int
    skipped: int = 0

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"block decomposition: {status}  max residual {self.max_residual:.3e} "
            f"at (i, j, k, l)={self.worst_tuple}  tol {self.tolerance:.1e} "
            f"({self.checked} tuples)"
        )


def check_hb(
    family: KrausFamily, tensor: StructureTensor, tol: float = EPS_HB
) -> HBReport:
    """Operator identity equivalent to walk distributions folding through Q:

        sum_m B[m,j;l]^* B[i,m;k]^* B[i,m;k] B[m,j;l]
            == sum_m Q[k,l,m] B[i,j;m]^* B[i,j;m]

    for all i, j, k, l.  On truncated inputs, tuples needing rows beyond the
    radius are skipped and counted.
    """
    if family.d_size != tensor.size:
        raise ValueError(f"size mismatch: family {family.d_size}, tensor {tensor.size}")
    d, h = family.d_size, family.h_dim
    radius_values = [
        r for r in (family.truncation_radius, tensor.truncation_radius) if r is not None
    ]
    radius = min(radius_values) if radius_values else None

    grams: dict[tuple[int, int, int], np.ndarray] = {}

    def gram(i: int, j: int, k: int) -> np.ndarray:
        key = (i, j, k)
        found = grams.get(key)
        if found is None:
            mat = family.block(i, j, k)
            found = grams[key] = mat.conj().T @ mat
        return found

    def scan(pair: tuple[int, int]) -> tuple[float, tuple | None, int, int]:
        k, l = pair
        worst, worst_tuple, checked, skipped = -1.0, None, 0, 0
        for i, j in itertools.product(range(d), repeat=2):
            if radius is not None and j + k + l > radius:
                skipped += 1
                continue
            lhs = np.zeros((h, h), dtype=complex)
            for m in range(d):
                outer = family.block(m, j, l)
                if not outer.any():
                    continue
                lhs += outer.conj().T @ gram(i, m, k) @ outer
            try:
                q_row = tensor.row(k, l)
            except TruncationExceededError:
                skipped += 1
                continue
            rhs = np.zeros((h, h), dtype=complex)
            for m, q in q_row.items():
                rhs += float(q) * gram(i, j, m)
            residual = float(np.abs(lhs - rhs).max())
            checked += 1
            if residual > worst:
                worst, worst_tuple = residual, (i, j, k, l)
        return worst, worst_tuple, checked, skipped

    results = pmap(scan, itertools.product(range(d), repeat=2))
    worst, worst_tuple = -1.0, None
    checked = skipped = 0
    for w, t, c, s in results:
        checked += c
        skipped += s
        if w > worst:
            worst, worst_tuple = w, t
    return HBReport(
        passed=worst <= tol,
        max_residual=max(worst, 0.0),
        worst_tuple=worst_tuple,
        tolerance=tol,
        checked=checked,
        skipped=skipped,
    )


def mixture_distribution(
    family: KrausFamily,
    tensor: StructureTensor,
    word: Word,
    state0: BlockState,
) -> np.ndarray:
    """Distribution of the Q-mixture sum_m Q[kn,...,k1; m] M_m(state0).

    The fold runs over the reversed word, matching the order in which the
    walk applies its maps.
    """
    coeffs = multi_constants(tensor, tuple(reversed(tuple(word))))
    out = np.zeros(family.d_size)
    for m, coeff in enumerate(coeffs):
        c = float(coeff)
        if c == 0.0:
            continue
        out += c * distribution(step(family, m, state0))
    return out


@dataclass(frozen=True)
class IndependenceVerdict:
    """Outcome of the sufficient-condition tests for linear independence.

    kind is "condition2" (delta-pattern column of isometries), "condition1"
    (a sampled vector separates the blocks of some column), or
    "inconclusive" (neither sufficient condition was established; the true
    status is undecided).
    """

    kind: str
    j0: int | None = None
    xi0: np.ndarray | None = None


def check_linear_independence(
    family: KrausFamily, trials: int = 8, seed: int = 0
) -> IndependenceVerdict:
    """Try the two sufficient conditions for independence of the maps.

    Condition 2 is structural: some column j0 has B[i,j0;k] = delta(i,k) U_k
    with isometric U_k.  Condition 1 is sampled: for some j0 and random unit
    vector xi0, the vectors {B[i,j0;k] xi0}_k are linearly independent for
    every i (tested by singular values over ``trials`` seeded draws).
    """
    d, h = family.d_size, family.h_dim
    eye = np.eye(h, dtype=complex)
    for j0 in range(d):
        ok = True
        for i, k in itertools.product(range(d), repeat=2):
            mat = family.block(i, j0, k)
            if i != k:
                if np.abs(mat).max() > EPS_KRAUS:
                    ok = False
                    break
            elif np.abs(mat.conj().T @ mat - eye).max() > EPS_KRAUS:
                ok = False
                break
        if ok:
            return IndependenceVerdict(kind="condition2", j0=j0)

    if d <= h:
        rng = np.random.default_rng(seed)
        for j0 in range(d):
            for _ in range(trials):
                xi = rng.standard_normal(h) + 1j * rng.standard_normal(h)
                xi /= np.linalg.norm(xi)
                if all(_columns_independent(family, i, j0, xi) for i in range(d)):
                    return IndependenceVerdict(kind="condition1", j0=j0, xi0=xi)
    return IndependenceVerdict(kind="inconclusive")


def _columns_independent(family: KrausFamily, i: int, j0: int, xi: np.ndarray) -> bool:
    cols = np.column_stack([family.block(i, j0, k) @ xi for k in range(family.d_size)])
    sv = np.linalg.svd(cols, compute_uv=False)
    return bool(sv.min() > 1e-8 * max(1.0, sv.max()))


def scalar_isometry_defect(matrix: np.ndarray) -> float:
    """Distance of B^*B from the nearest nonnegative multiple of the identity.

    Zero exactly when the matrix is a scalar multiple of an isometry.
    """
    matrix = np.asarray(matrix, dtype=complex)
    gram = matrix.conj().T @ matrix
    scale = float(gram.trace().real) / matrix.shape[1]
    return float(np.abs(gram - scale * np.eye(matrix.shape[1])).max())
