import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sjgeo.cmatrix import (
    SingularMatrix,
    bracket_form,
    hermitian_pd_margin,
    is_hermitian_pd,
    mat_from_json,
    mat_inverse,
    mat_to_json,
    max_abs,
    trace,
)


def _rand_complex(rng, rows, cols):
    return rng.uniform(-1, 1, (rows, cols)) + 1j * rng.uniform(-1, 1, (rows, cols))


def test_inverse_identity():
    assert max_abs(mat_inverse(np.eye(3)) - np.eye(3)) == 0.0


def test_inverse_scalar():
    assert mat_inverse(np.array([[2.0]]))[0, 0] == pytest.approx(0.5)


def test_inverse_residual_random():
    rng = np.random.default_rng(0)
    for _ in range(25):
        m = np.eye(3) + 0.5 * _rand_complex(rng, 3, 3)
        assert max_abs(m @ mat_inverse(m) - np.eye(3)) < 1e-10 * max(1.0, max_abs(m))


def test_inverse_involution():
    rng = np.random.default_rng(1)
    m = np.eye(3) + 0.5 * _rand_complex(rng, 3, 3)
    assert max_abs(mat_inverse(mat_inverse(m)) - m) < 1e-10


@pytest.mark.filterwarnings("ignore::scipy.linalg.LinAlgWarning")
def test_singular_raises():
    with pytest.raises(SingularMatrix):
        mat_inverse(np.array([[1.0, 2.0], [2.0, 4.0]]))
    with pytest.raises(SingularMatrix):
        mat_inverse(np.zeros((2, 2)))


def test_trace_values():
    assert trace(np.eye(4)) == 4
    assert trace(np.diag([1 + 1j, 2])) == pytest.approx(3 + 1j)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_trace_cyclic(seed):
    rng = np.random.default_rng(seed)
    a = _rand_complex(rng, 3, 3)
    b = _rand_complex(rng, 3, 3)
    assert abs(trace(a @ b) - trace(b @ a)) < 1e-12 * (1 + max_abs(a) * max_abs(b))


def test_bracket_form_identity():
    assert max_abs(bracket_form(np.eye(2), np.eye(2)) - np.eye(2)) == 0.0
    assert max_abs(bracket_form(np.eye(2), 2 * np.eye(2)) - 4 * np.eye(2)) == 0.0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_bracket_form_preserves_symmetry(seed):
    rng = np.random.default_rng(seed)
    a = _rand_complex(rng, 3, 3)
    a = a + a.T
    b = _rand_complex(rng, 3, 2)
    out = bracket_form(a, b)
    assert max_abs(out - out.T) < 1e-12 * (1 + max_abs(out))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_transpose_of_product(seed):
    # t(AB) = tB tA for commuting entries; identical sums up to BLAS
    # reassociation of the additions
    rng = np.random.default_rng(seed)
    a = _rand_complex(rng, 2, 3)
    b = _rand_complex(rng, 3, 4)
    assert max_abs((a @ b).T - b.T @ a.T) < 1e-15


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_transpose_shuffle_identity(seed):
    # t(A t(BC)) = B t(A tC) on conforming triples
    rng = np.random.default_rng(seed)
    k, l, nn, mm = 2, 4, 3, 5
    a = _rand_complex(rng, k, l)
    b = _rand_complex(rng, nn, mm)
    c = _rand_complex(rng, mm, l)
    lhs = (a @ (b @ c).T).T
    rhs = b @ (a @ c.T).T
    assert max_abs(lhs - rhs) < 1e-13 * (1 + max_abs(lhs))


def test_hermitian_pd():
    assert is_hermitian_pd(np.eye(3))
    assert not is_hermitian_pd(np.diag([1.0, -1.0]))
    w = 0.5 * np.eye(2)
    assert is_hermitian_pd(np.eye(2) - w.conj().T @ w)
    assert hermitian_pd_margin(np.eye(2) - w.conj().T @ w) == pytest.approx(0.75)


def test_json_roundtrip():
    rng = np.random.default_rng(3)
    m = _rand_complex(rng, 2, 3)
    obj = mat_to_json(m)
    assert obj["rows"] == 2 and obj["cols"] == 3 and len(obj["data"]) == 6
    assert max_abs(mat_from_json(obj) - m) == 0.0


def test_json_rejects_bad_count():
    with pytest.raises(ValueError):
        mat_from_json({"rows": 2, "cols": 2, "data": [[1.0, 0.0]]})
