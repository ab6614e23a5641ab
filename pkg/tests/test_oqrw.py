import itertools

import numpy as np
import pytest

from hyperwalk import (
    block_state,
    check_hb,
    check_linear_independence,
    distribution,
    kraus_family,
    mixture_distribution,
    multi_constants,
    point_state,
    produced_tensor,
    realize,
    scalar_isometry_defect,
    state_from_density,
    step,
    tensor_difference,
    validate_kraus,
    walk_distribution,
)
from hyperwalk import presets
from hyperwalk.verify import random_block_state, random_unitary


def delta_family(d_size, h_dim=1):
    """B[i,j;k] = delta(i,k) identity: every map relocates all mass to k."""
    eye = np.eye(h_dim, dtype=complex)
    blocks = {(k, j, k): eye for j in range(d_size) for k in range(d_size)}
    return kraus_family(d_size, h_dim, blocks)


def test_kraus_family_construction_errors():
    with pytest.raises(ValueError, match="shape"):
        kraus_family(2, 2, {(0, 0, 0): np.eye(3)})
    with pytest.raises(ValueError, match="out of range"):
        kraus_family(2, 2, {(2, 0, 0): np.eye(2)})
    with pytest.raises(ValueError, match="positive"):
        kraus_family(0, 2, {})


def test_validate_kraus_pass_and_fail():
    assert validate_kraus(presets.c4_qubit_family()).passed
    assert validate_kraus(delta_family(3, 2)).passed

    b = 1.1 * np.array([[1, 1], [0, 1]], dtype=complex) / np.sqrt(3)
    c = np.array([[1, 0], [-1, 1]], dtype=complex) / np.sqrt(3)
    bad = kraus_family(2, 2, {(0, 1, 1): b, (1, 1, 1): c,
                              (0, 0, 0): np.eye(2), (1, 1, 0): np.eye(2),
                              (0, 0, 1): np.eye(2)})
    report = validate_kraus(bad)
    assert not report.passed
    assert report.worst_slot == (1, 1)
    # The scaled block inflates its Gram term by the factor 1.1^2 - 1.
    assert report.max_residual == pytest.approx(0.21 * np.abs(b.conj().T @ b).max() / 1.21)


def test_block_state_invariants():
    with pytest.raises(ValueError, match="Hermitian"):
        block_state([np.array([[0.5, 1.0], [0.0, 0.5]])])
    with pytest.raises(ValueError, match="eigenvalue"):
        block_state([np.diag([1.5, -0.5])])
    with pytest.raises(ValueError, match="trace"):
        block_state([np.diag([0.45, 0.45])])


def test_step_moves_point_mass():
    fam = presets.c4_qubit_family()
    state = presets.diagonal_qubit_state(0.3)
    out = step(fam, 1, state)
    probs = distribution(out)
    assert np.abs(probs - np.array([0.0, 1.0, 0.0])).max() < 1e-15
    assert np.abs(out.blocks[1] - state.blocks[0]).max() < 1e-15


def test_step_identity_map():
    fam = delta_family(3, 2)
    # The distance-0 map of the delta family relocates to 0; build a true
    # identity map instead: B[j,j;0] = 1.
    eye = np.eye(2, dtype=complex)
    blocks = {(j, j, 0): eye for j in range(3)}
    blocks.update({(k, j, k): eye for j in range(3) for k in (1, 2)})
    fam = kraus_family(3, 2, blocks)
    state = random_block_state(2, 3, seed=7)
    out = step(fam, 0, state)
    for before, after in zip(state.blocks, out.blocks):
        assert np.abs(before - after).max() < 1e-15


def test_stationary_family_one_step():
    fam = presets.stationary_family()
    state = presets.stationary_start_state()
    for k in (0, 1):
        probs = distribution(step(fam, k, state))
        assert np.abs(probs - np.array([5 / 12, 7 / 12])).max() < 1e-12


def test_distribution_basics():
    state = point_state(np.diag([0.25, 0.75]).astype(complex), 1, 3)
    assert np.abs(distribution(state) - np.array([0, 1, 0])).max() < 1e-15
    uniform = block_state([np.eye(2, dtype=complex) / 8 for _ in range(4)])
    assert np.abs(distribution(uniform) - 0.25).max() < 1e-15


def test_walk_distribution_c4_qubit():
    fam = presets.c4_qubit_family()
    for x in (0.0, 0.5, 1.0):
        probs = walk_distribution(fam, (1, 1), presets.diagonal_qubit_state(x))
        expected = np.array([(2 - x) / 3, 0.0, (1 + x) / 3])
        assert np.abs(probs - expected).max() < 1e-12


def test_walk_stationarity():
    fam = presets.stationary_family()
    state = presets.stationary_start_state()
    p1 = distribution(step(fam, 0, state))
    for n in (1, 2, 3):
        for word in itertools.product(range(2), repeat=n):
            assert np.abs(walk_distribution(fam, word, state) - p1).max() < 1e-12


def test_produced_tensor_c4_qubit():
    fam = presets.c4_qubit_family()
    for x in (0.0, 0.5, 1.0):
        tensor = produced_tensor(fam, presets.diagonal_qubit_state(x))
        assert abs(tensor.entry(1, 1, 0) - (2 - x) / 3) < 1e-12
        assert abs(tensor.entry(1, 1, 2) - (1 + x) / 3) < 1e-12
        assert abs(tensor.entry(1, 2, 1) - 1) < 1e-12
        assert abs(tensor.entry(2, 1, 1) - 1) < 1e-12
        assert abs(tensor.entry(2, 2, 0) - 1) < 1e-12
        for j in range(3):
            assert abs(tensor.entry(0, j, j) - 1) < 1e-12
            assert abs(tensor.entry(j, 0, j) - 1) < 1e-12


def test_produced_tensor_left_zero_family():
    # Both maps preserve the maximally mixed block sum, so the produced rows
    # depend only on the second-applied map: the commuting-pair traces for
    # distance 0, and the flat split for distance 1.
    fam = presets.left_zero_family()
    tensor = produced_tensor(fam, presets.stationary_start_state())
    a0, a1 = presets.commuting_pair()
    expected_zero = [
        float(np.trace(a0 @ a0.conj().T).real) / 2,
        float(np.trace(a1 @ a1.conj().T).real) / 2,
    ]
    for l in range(2):
        assert abs(tensor.entry(0, l, 0) - expected_zero[0]) < 1e-12
        assert abs(tensor.entry(0, l, 1) - expected_zero[1]) < 1e-12
        assert abs(tensor.entry(1, l, 0) - 0.5) < 1e-12
        assert abs(tensor.entry(1, l, 1) - 0.5) < 1e-12
    assert expected_zero == pytest.approx([5 / 12, 7 / 12])


def test_realize_scalar_blocks(c4):
    fam, state = realize(c4, h_dim=1)
    assert validate_kraus(fam).passed
    assert abs(fam.block(0, 1, 1)[0, 0] - np.sqrt(0.5)) < 1e-15
    assert abs(fam.block(2, 1, 1)[0, 0] - np.sqrt(0.5)) < 1e-15
    assert abs(fam.block(1, 1, 2)[0, 0] - 1.0) < 1e-15
    produced = produced_tensor(fam, state)
    residual, _ = tensor_difference(produced, c4.tensor)
    assert residual < 1e-12


def test_realize_group_roundtrip(z3):
    fam, state = realize(z3, h_dim=2)
    produced = produced_tensor(fam, state)
    residual, _ = tensor_difference(produced, z3.tensor)
    assert residual < 1e-12


def test_realize_rejects_non_isometry(c4):
    bad = {(0, 1, 1): np.array([[1.0, 0.0], [0.0, 0.5]], dtype=complex)}
    with pytest.raises(ValueError, match="isometry"):
        realize(c4, h_dim=2, isometries=bad)


def test_realize_truncated_lattice(zlattice8):
    fam, state = realize(zlattice8, h_dim=1)
    assert fam.truncation_radius == 8
    assert validate_kraus(fam).passed
    produced = produced_tensor(fam, state)
    assert produced.truncation_radius == 8
    residual, _ = tensor_difference(produced, zlattice8.tensor)
    assert residual < 1e-12
    # A budgeted walk from the base matches the reversed-word fold.
    word = (1, 1, 1)
    probs = walk_distribution(fam, word, state)
    fold = multi_constants(zlattice8.tensor, tuple(reversed(word)))
    assert np.abs(probs - np.array([float(q) for q in fold])).max() < 1e-12


def test_check_hb_pass_cases(c4, s3_classes):
    assert check_hb(presets.left_zero_family(), presets.lo2_tensor()).max_residual < 1e-12
    for h in (c4, s3_classes):
        fam, _ = realize(h, h_dim=2)
        assert check_hb(fam, h.tensor).passed
    # The left-zero tensor is associative, so its realization passes too.
    lo2 = presets.lo2_tensor()
    fam, _ = realize(lo2, h_dim=2)
    assert check_hb(fam, lo2).passed


def test_check_hb_fails_on_non_associative():
    pert = presets.perturbed_c4_tensor()
    fam, _ = realize(pert, h_dim=2)
    report = check_hb(fam, pert)
    assert not report.passed
    assert report.max_residual > 1e-3
    assert report.worst_tuple is not None


def test_check_hb_size_mismatch(c4):
    with pytest.raises(ValueError, match="size mismatch"):
        check_hb(presets.left_zero_family(), c4.tensor)


def test_mixture_matches_walk_under_hb(c4):
    fam, _ = realize(c4, h_dim=2)
    state = random_block_state(2, 3, seed=11)
    for word in ((0,), (1, 1), (1, 1, 2), (2, 1, 2, 1)):
        walked = walk_distribution(fam, word, state)
        mixed = mixture_distribution(fam, c4.tensor, word, state)
        assert np.abs(walked - mixed).max() < 1e-12


def test_mixture_single_letter_is_one_step(c4):
    fam, _ = realize(c4, h_dim=2)
    state = random_block_state(2, 3, seed=5)
    for k in range(3):
        mixed = mixture_distribution(fam, c4.tensor, (k,), state)
        assert np.abs(mixed - distribution(step(fam, k, state))).max() < 1e-15


def test_mixture_uses_reversed_word():
    # The left-zero constants make the reversal observable: folding
    # (k2, k1) keeps the mass at k2, the last-applied map.
    fam = presets.left_zero_family()
    tensor = presets.lo2_tensor()
    state = presets.stationary_start_state()
    mixed = mixture_distribution(fam, tensor, (1, 0), state)
    fold = multi_constants(tensor, (0, 1))
    direct = sum(
        float(q) * distribution(step(fam, m, state)) for m, q in enumerate(fold)
    )
    assert np.abs(mixed - direct).max() < 1e-15


def test_linear_independence_verdicts(c4):
    fam, _ = realize(c4, h_dim=2)
    assert check_linear_independence(fam).kind == "condition2"
    assert check_linear_independence(delta_family(3, 2)).kind == "condition2"
    verdict = check_linear_independence(presets.left_zero_family(), seed=1)
    assert verdict.kind == "condition1"
    assert verdict.j0 is not None and verdict.xi0 is not None
    assert check_linear_independence(presets.stationary_family()).kind == "inconclusive"


def test_realized_and_recovered_is_isomorphic(z3):
    from hyperwalk import Hypergroup, check_isomorphism, derive_involution

    fam, state = realize(z3, h_dim=2)
    produced = produced_tensor(fam, state)
    recovered = Hypergroup.build(produced, derive_involution(produced))
    assert check_isomorphism(recovered, z3, (0, 1, 2))


def test_scalar_isometry_defect(c4):
    fam, _ = realize(c4, h_dim=2)
    for mat in fam.blocks.values():
        assert scalar_isometry_defect(mat) < 1e-12
    a0, _ = presets.commuting_pair()
    assert scalar_isometry_defect(a0) > 0.05


def test_state_from_density_extracts_blocks():
    rng = np.random.default_rng(4)
    blocks = [rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(3)]
    blocks = [b @ b.conj().T for b in blocks]
    total = sum(float(b.trace().real) for b in blocks)
    blocks = [b / total for b in blocks]
    full = np.zeros((6, 6), dtype=complex)
    for j, b in enumerate(blocks):
        full[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = b
    # Off-diagonal junk must be ignored.
    full[0, 3] = 0.1
    full[3, 0] = 0.1
    state = state_from_density(full, 2, 3)
    for want, got in zip(blocks, state.blocks):
        assert np.abs(want - got).max() < 1e-15


def test_trace_and_psd_preserved_along_walk():
    fam = presets.c4_qubit_family()
    state = random_block_state(2, 3, seed=2)
    for k in (1, 2, 1, 0, 1):
        state = step(fam, k, state)
        assert abs(sum(float(b.trace().real) for b in state.blocks) - 1.0) < 1e-9
        for b in state.blocks:
            assert np.linalg.eigvalsh((b + b.conj().T) / 2).min() > -1e-10


def test_random_unitary_isometries_keep_roundtrip(c4):
    rng = np.random.default_rng(9)
    iso = {}
    for k, j in sorted(c4.tensor.defined_pairs()):
        for i in sorted(c4.tensor.row(k, j)):
            iso[(i, j, k)] = random_unitary(3, rng)
    fam, state = realize(c4, h_dim=3, isometries=iso)
    produced = produced_tensor(fam, state)
    residual, _ = tensor_difference(produced, c4.tensor)
    assert residual < 1e-12
