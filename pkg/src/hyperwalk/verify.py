"""Brute-force oracles and randomized harnesses tying the three computation
routes together: graph path sums, algebra folds, and quantum walk
compositions.

Randomness comes from numpy's seedable default_rng (PCG64); every report is
deterministic given its seed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import ConditionSViolatedError
from .graphs import (
    PointedGraph,
    SphereTable,
    build_spheres,
    check_condition_s,
    path_sum_distribution,
    transition_family,
    wildberger_tensor,
)
from .hypergroups import (
    EPS_PROB,
    Hypergroup,
    StructureTensor,
    derive_involution,
    multi_constants,
    tensor_difference,
    validate_hypergroup,
)
from .oqrw import (
    BlockState,
    KrausFamily,
    block_state,
    kraus_family,
    mixture_distribution,
    point_state,
    produced_tensor,
    realize,
    check_hb,
    validate_kraus,
    walk_distribution,
)
from .parallel import pmap


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one oracle run: worst residual over all checked cases."""

    checked_cases: int
    max_residual: float
    worst_case: tuple | None
    passed: bool
    tolerance: float
    note: str = ""

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        out = (
            f"{status}: {self.checked_cases} cases, max residual "
            f"{self.max_residual:.3e} (tol {self.tolerance:.1e})"
        )
        if self.worst_case is not None:
            out += f", worst case {self.worst_case}"
        if self.note:
            out += f" [{self.note}]"
        return out


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_unitary(dim: int, rng) -> np.ndarray:
    """Haar-ish unitary from the QR of a complex Gaussian matrix."""
    rng = _rng(rng)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def random_block_state(h_dim: int, d_size: int, seed) -> BlockState:
    """Random full-support state: blocks A_i A_i^* scaled to total trace 1."""
    if h_dim <= 0 or d_size <= 0:
        raise ValueError("dimensions must be positive")
    rng = _rng(seed)
    blocks = []
    for _ in range(d_size):
        a = rng.standard_normal((h_dim, h_dim)) + 1j * rng.standard_normal((h_dim, h_dim))
        blocks.append(a @ a.conj().T)
    total = sum(float(b.trace().real) for b in blocks)
    return block_state([b / total for b in blocks])


def random_kraus_family(d_size: int, h_dim: int, seed) -> KrausFamily:
    """Random dense completeness-satisfying family.

    Per column (j, k), raw Gaussian blocks are whitened by the inverse square
    root of their Gram sum, which makes sum_i B^*B the identity exactly (up
    to roundoff).
    """
    rng = _rng(seed)
    blocks: dict[tuple[int, int, int], np.ndarray] = {}
    for j, k in itertools.product(range(d_size), repeat=2):
        raws = [
            rng.standard_normal((h_dim, h_dim)) + 1j * rng.standard_normal((h_dim, h_dim))
            for _ in range(d_size)
        ]
        gram = sum(r.conj().T @ r for r in raws)
        w, v = np.linalg.eigh(gram)
        whiten = v @ np.diag(w ** -0.5) @ v.conj().T
        for i, raw in enumerate(raws):
            blocks[(i, j, k)] = raw @ whiten
    return kraus_family(d_size, h_dim, blocks)


def spanning_states(h_dim: int) -> list[tuple[tuple, np.ndarray]]:
    """Labelled density matrices spanning the Hermitian operators.

    Matrix units symmetrized: the diagonal projectors, then for each pair
    a < b the real combination (E_aa+E_bb+E_ab+E_ba)/2 and its imaginary
    counterpart (E_aa+E_bb-iE_ab+iE_ba)/2.
    """
    out = []
    for a in range(h_dim):
        mat = np.zeros((h_dim, h_dim), dtype=complex)
        mat[a, a] = 1.0
        out.append((("diag", a), mat))
    for a in range(h_dim):
        for b in range(a + 1, h_dim):
            real = np.zeros((h_dim, h_dim), dtype=complex)
            real[a, a] = real[b, b] = 0.5
            real[a, b] = real[b, a] = 0.5
            out.append((("real", a, b), real))
            imag = np.zeros((h_dim, h_dim), dtype=complex)
            imag[a, a] = imag[b, b] = 0.5
            imag[a, b] = -0.5j
            imag[b, a] = 0.5j
            out.append((("imag", a, b), imag))
    return out


def _words(letters: Sequence[int], length: int) -> Iterator[tuple[int, ...]]:
    yield from itertools.product(letters, repeat=length)


def _budgeted_words(
    letters: Sequence[int], max_len: int, budget: int | None
) -> Iterator[tuple[int, ...]]:
    for n in range(1, max_len + 1):
        for word in _words(letters, n):
            if budget is None or sum(word) <= budget:
                yield word


def verify_theorem_2_4(
    graph: PointedGraph | SphereTable,
    max_word_len: int,
    mode: str = "exact",
    path_cap: int = 10_000_000,
) -> VerificationReport:
    """Path sums versus algebra folds on a condition-(S) graph.

    For every word up to ``max_word_len`` the exhaustive jump-path
    distribution must coincide with the fold of the sphere-count constants:
    identically in exact mode, within 1e-12 in float mode.
    """
    if mode not in ("exact", "float"):
        raise ValueError("mode must be 'exact' or 'float'")
    table = graph if isinstance(graph, SphereTable) else build_spheres(graph)
    condition = check_condition_s(table)
    if not condition.passed:
        raise ConditionSViolatedError(str(condition))
    tensor = wildberger_tensor(table)
    fold_tensor = tensor if mode == "exact" else tensor.to_float()
    tolerance = 0.0 if mode == "exact" else 1e-12
    budget = table.graph.window_radius

    worst, witness, cases = 0.0, None, 0
    for word in _budgeted_words(table.index_set, max_word_len, budget):
        paths = path_sum_distribution(table, word, path_cap=path_cap)
        fold = multi_constants(fold_tensor, word)
        if mode == "exact":
            residual = float(max(abs(p - f) for p, f in zip(paths, fold)))
        else:
            residual = max(
                abs(float(p) - float(f)) for p, f in zip(paths, fold)
            )
        cases += 1
        if residual > worst:
            worst, witness = residual, (word,)
    return VerificationReport(
        checked_cases=cases,
        max_residual=worst,
        worst_case=witness,
        passed=worst <= tolerance,
        tolerance=tolerance,
        note=mode,
    )


def verify_corollary_2_6(
    hypergroup: Hypergroup, max_word_len: int, tol: float = 1e-12
) -> VerificationReport:
    """Products of transition matrices versus folds of the constants.

    For every word (t1, ..., tn): P_{t1} P_{t2} ... P_{tn} must equal
    sum_m q[t1,...,tn; m] P_m, and the base row of the product must equal
    the fold vector itself.
    """
    tensor = hypergroup.tensor
    family = transition_family(tensor)
    mats = family.matrices
    float_tensor = tensor.to_float()

    worst, witness, cases = 0.0, None, 0
    for n in range(1, max_word_len + 1):
        for word in _words(range(tensor.size), n):
            product = mats[word[0]].copy()
            for t in word[1:]:
                product = product @ mats[t]
            coeffs = multi_constants(float_tensor, word)
            expected = sum(c * mats[m] for m, c in enumerate(coeffs))
            residual = float(np.abs(product - expected).max())
            residual = max(
                residual,
                float(np.abs(product[0, :] - np.array(coeffs)).max()),
            )
            cases += 1
            if residual > worst:
                worst, witness = residual, (word,)
    return VerificationReport(
        checked_cases=cases,
        max_residual=worst,
        worst_case=witness,
        passed=worst <= tol,
        tolerance=tol,
    )


def verify_theorem_5_1(
    family: KrausFamily,
    tensor: StructureTensor,
    max_word_len: int = 4,
    n_states: int = 10,
    seed: int = 0,
    tol: float = 1e-9,
    min_gap: float = 1e-8,
) -> VerificationReport:
    """Walk distributions versus Q-mixture distributions.

    If the block-decomposition identity holds, every walk distribution (all
    words up to ``max_word_len``, ``n_states`` seeded random states) must
    equal the mixture through the reversed-word fold, within ``tol``.  If the
    identity fails, the scan instead looks for the guaranteed witness: a
    basis state (position m, spanning density) and a length-2 word whose two
    distributions differ by at least ``min_gap``.
    """
    hb = check_hb(family, tensor)
    d, h = family.d_size, family.h_dim

    if hb.passed:
        rng = _rng(seed)
        states = [random_block_state(h, d, rng) for _ in range(n_states)]
        radii = [
            r
            for r in (family.truncation_radius, tensor.truncation_radius)
            if r is not None
        ]
        budget = min(radii) if radii else None
        words = list(_budgeted_words(range(d), max_word_len, budget))

        def scan(word):
            worst_local, witness_local = -1.0, None
            for idx, state in enumerate(states):
                walked = walk_distribution(family, word, state)
                mixed = mixture_distribution(family, tensor, word, state)
                residual = float(np.abs(walked - mixed).max())
                if residual > worst_local:
                    worst_local, witness_local = residual, (word, idx)
            return worst_local, witness_local

        worst, witness = -1.0, None
        for w, wit in pmap(scan, words):
            if w > worst:
                worst, witness = w, wit
        return VerificationReport(
            checked_cases=len(words) * len(states),
            max_residual=max(worst, 0.0),
            worst_case=witness,
            passed=worst <= tol,
            tolerance=tol,
            note="decomposition holds; walk == mixture",
        )

    # Identity fails: hunt for the distribution mismatch it guarantees.
    cases = 0
    for m in range(d):
        for label, rho in spanning_states(h):
            state = point_state(rho, m, d)
            for word in _words(range(d), 2):
                if tensor.truncation_radius is not None and sum(word) > tensor.truncation_radius:
                    continue
                walked = walk_distribution(family, word, state)
                mixed = mixture_distribution(family, tensor, word, state)
                gap = float(np.abs(walked - mixed).max())
                cases += 1
                if gap >= min_gap:
                    return VerificationReport(
                        checked_cases=cases,
                        max_residual=gap,
                        worst_case=(m, label, word),
                        passed=True,
                        tolerance=min_gap,
                        note="decomposition fails; converse witness found",
                    )
    return VerificationReport(
        checked_cases=cases,
        max_residual=0.0,
        worst_case=None,
        passed=False,
        tolerance=min_gap,
        note="decomposition fails but no distribution witness found",
    )


def verify_roundtrip(
    hypergroup: Hypergroup,
    h_dim: int,
    seed: int = 0,
    isometries: str = "identity",
    tol: float = EPS_PROB,
) -> VerificationReport:
    """Realize the constants as a walk, read them back, and compare.

    Checks the realized family's completeness, the produced constants
    against the originals (within ``tol``), the involution derived from the
    produced tensor against the stored one, and the full axiom validation of
    the produced tensor.
    """
    tensor = hypergroup.tensor
    if isometries == "identity":
        iso = None
    elif isometries == "random":
        rng = _rng(seed)
        iso = {}
        for k, j in sorted(tensor.defined_pairs()):
            for i in sorted(tensor.row(k, j)):
                iso[(i, j, k)] = random_unitary(h_dim, rng)
    else:
        raise ValueError("isometries must be 'identity' or 'random'")

    family, state = realize(hypergroup, h_dim=h_dim, isometries=iso)
    kraus_ok = validate_kraus(family).passed
    produced = produced_tensor(family, state)
    residual, worst = tensor_difference(produced, tensor)

    derived = derive_involution(produced, partial=True)
    involution_ok = all(
        s is None or s == hypergroup.involution[i] for i, s in enumerate(derived)
    )
    axioms_ok = validate_hypergroup(produced, hypergroup.involution).passed

    passed = kraus_ok and involution_ok and axioms_ok and residual <= tol
    notes = []
    if not kraus_ok:
        notes.append("completeness failed")
    if not involution_ok:
        notes.append("involution mismatch")
    if not axioms_ok:
        notes.append("produced tensor failed validation")
    return VerificationReport(
        checked_cases=sum(1 for _ in tensor.defined_pairs()),
        max_residual=residual,
        worst_case=worst,
        passed=passed,
        tolerance=tol,
        note="; ".join(notes) or f"{isometries} isometries, h_dim={h_dim}",
    )
