"""Density-matrix validation, reductions, dephasing, and state files."""

import numpy as np
import pytest

from purity_bounds import (
    DensityMatrix,
    DimMismatch,
    NotHermitian,
    NotPSD,
    NotUnitTrace,
    StateFileError,
    dephase,
    load_state_json,
    partial_trace,
    random_mixed_state,
    save_state_json,
    tensor_product,
    trace_power,
    validate_density,
)

from oracles import entropy_bits, loop_partial_trace


def test_accepts_valid_diagonal():
    rho = validate_density(np.diag([0.7, 0.3]), 2)
    assert rho.dims == (2,)
    assert abs(rho.purity - 0.58) < 1e-12
    assert np.allclose(rho.spectrum(), [0.7, 0.3])
    assert abs(entropy_bits(rho.spectrum()) - 0.8812908992306927) < 1e-12


def test_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        validate_density([[0.5, 0.5], [0.2, 0.5]], 2)


def test_rejects_bad_trace():
    with pytest.raises(NotUnitTrace):
        validate_density(np.diag([0.7, 0.7]), 2)


def test_rejects_negative_eigenvalue():
    # hermitian, unit trace, but indefinite
    with pytest.raises(NotPSD) as err:
        validate_density([[0.6, 0.6], [0.6, 0.4]], 2)
    assert err.value.magnitude < -1e-10


def test_rank_one_projector_spectrum():
    rho = validate_density([[0.5, 0.5], [0.5, 0.5]], 2)
    assert np.allclose(rho.spectrum(), [1.0, 0.0], atol=1e-12)
    assert abs(rho.purity - 1.0) < 1e-12


def test_dims_product_must_match():
    with pytest.raises(DimMismatch):
        validate_density(np.eye(4) / 4.0, (2, 3))
    with pytest.raises(DimMismatch):
        validate_density(np.eye(6) / 6.0, 4)


def test_matrix_is_write_protected():
    rho = validate_density(np.eye(2) / 2.0, 2)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 5.0


def test_partial_trace_against_loop_oracle():
    rng = np.random.default_rng(42)
    for dims in [(2, 2), (2, 3), (3, 2), (2, 2, 2)]:
        for _ in range(5):
            rho = random_mixed_state(dims, 3, rng)
            for keep in range(len(dims)):
                mine = partial_trace(rho, keep)
                ref = loop_partial_trace(rho.mat, dims, keep)
                assert np.max(np.abs(mine.mat - ref)) < 1e-12
                assert mine.dims == (dims[keep],)


def test_partial_trace_multi_keep():
    rng = np.random.default_rng(43)
    rho = random_mixed_state((2, 2, 2), 2, rng)
    mine = partial_trace(rho, (0, 2))
    ref = loop_partial_trace(rho.mat, (2, 2, 2), (0, 2))
    assert np.max(np.abs(mine.mat - ref)) < 1e-12
    assert mine.dims == (2, 2)


def test_partial_trace_of_product_state():
    a = validate_density(np.diag([0.9, 0.1]), 2)
    b = validate_density(np.diag([0.6, 0.4]), 2)
    joint = validate_density(tensor_product(a.mat, b.mat), (2, 2))
    assert np.allclose(partial_trace(joint, 0).mat, a.mat, atol=1e-14)
    assert np.allclose(partial_trace(joint, 1).mat, b.mat, atol=1e-14)


def test_dephase_properties():
    """Dephasing keeps the diagonal, kills the rest, never raises purity."""
    rng = np.random.default_rng(44)
    for _ in range(300):
        d = int(rng.integers(2, 6))
        rho = random_mixed_state((d,), int(rng.integers(1, 4)), rng)
        rd = dephase(rho)
        assert np.allclose(np.diagonal(rd.mat), np.diagonal(rho.mat))
        off = rd.mat - np.diag(np.diagonal(rd.mat))
        assert np.max(np.abs(off)) == 0.0
        assert rd.purity <= rho.purity + 1e-12
        # dephasing is idempotent
        assert np.array_equal(dephase(rd).mat, rd.mat)


def test_trace_power_is_spectral_power_sum():
    rng = np.random.default_rng(45)
    for _ in range(50):
        rho = random_mixed_state((4,), 2, rng)
        eigs = rho.spectrum()
        for k in (2, 3, 4, 5):
            assert abs(trace_power(rho, k) - np.sum(eigs ** k)) < 1e-12


def test_trace_power_rejects_low_order():
    rho = validate_density(np.eye(2) / 2.0, 2)
    with pytest.raises(Exception):
        trace_power(rho, 1)


def test_purity_of_maximally_mixed():
    for d in (2, 3, 4, 8):
        rho = validate_density(np.eye(d) / d, d)
        assert abs(rho.purity - 1.0 / d) < 1e-14


def test_state_json_round_trip(tmp_path):
    rng = np.random.default_rng(46)
    rho = random_mixed_state((2, 3), 4, rng)
    path = tmp_path / "state.json"
    save_state_json(rho, path)
    back = load_state_json(path)
    assert back.dims == rho.dims
    assert np.array_equal(back.mat, rho.mat)
    assert f"{back.purity:.12g}" == f"{rho.purity:.12g}"


def test_state_json_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("not json at all")
    with pytest.raises(StateFileError):
        load_state_json(p)
    p.write_text('{"dims": [2]}')
    with pytest.raises(StateFileError):
        load_state_json(p)
    with pytest.raises(StateFileError):
        load_state_json(tmp_path / "missing.json")


def test_tensor_product_matches_kron():
    a = np.arange(4.0).reshape(2, 2)
    b = np.eye(3)
    assert np.array_equal(tensor_product(a, b), np.kron(a, b))
