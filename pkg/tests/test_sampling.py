"""Samplers: distribution sanity, determinism, and invariant preservation."""

import numpy as np

from entmon.sampling import (
    haar_unitary,
    random_mixed,
    random_product_pure,
    random_pure,
    random_separable,
)
from entmon.states import Dims, partial_transpose


def test_haar_unitary_is_unitary():
    u = haar_unitary(4, np.random.default_rng(0))
    np.testing.assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-12)


def test_random_pure_unit_norm():
    psi = random_pure(Dims(2, 3), np.random.default_rng(1))
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) < 1e-12


def test_random_mixed_rank():
    rho = random_mixed(Dims(2, 2), 2, np.random.default_rng(2))
    ev = np.linalg.eigvalsh(rho.matrix)
    assert np.sum(ev > 1e-10) == 2


def test_random_separable_is_ppt():
    rng = np.random.default_rng(3)
    for _ in range(50):
        rho = random_separable(Dims(2, 2), 4, rng)
        assert np.linalg.eigvalsh(partial_transpose(rho, "A"))[0] >= -1e-9


def test_fixed_seed_is_bit_identical():
    a = random_pure(Dims(2, 2), np.random.default_rng(42))
    b = random_pure(Dims(2, 2), np.random.default_rng(42))
    assert np.array_equal(a.amplitudes, b.amplitudes)
    ma = random_mixed(Dims(2, 2), 3, np.random.default_rng(42))
    mb = random_mixed(Dims(2, 2), 3, np.random.default_rng(42))
    assert np.array_equal(ma.matrix, mb.matrix)


def test_samplers_hold_invariants_over_many_draws():
    # Type invariants are enforced at construction, so surviving the
    # constructor is the check; 10k consecutive draws must all pass.
    rng = np.random.default_rng(2024)
    dims = Dims(2, 3)
    for i in range(10_000):
        if i % 3 == 0:
            random_pure(dims, rng)
        elif i % 3 == 1:
            random_mixed(dims, 1 + i % 6, rng)
        else:
            random_separable(dims, 1 + i % 4, rng)


def test_product_pure_reduction_is_pure():
    psi = random_product_pure(Dims(2, 2), np.random.default_rng(9))
    from entmon.states import partial_trace

    red = partial_trace(psi.density(), "A")
    assert red.is_pure()
