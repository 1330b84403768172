import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contaaa.errors import InvalidMatrix
from contaaa.kernels import arrowhead_pencil_eigenvalues, min_singular_vector


def cleared_roots(diag, top):
    """Roots of sum_j top_j prod_{k != j} (x - diag_k), via numpy's companion matrix."""
    p = np.zeros(1, dtype=complex)
    for j in range(diag.size):
        term = np.array([top[j]], dtype=complex)
        for k in range(diag.size):
            if k != j:
                term = np.polymul(term, [1, -diag[k]])
        p = np.polyadd(p, term)
    p = np.trim_zeros(p, "f")
    return np.roots(p) if p.size > 1 else np.zeros(0)


def random_rect(rng, complex_):
    cols = int(rng.integers(1, 9))
    rows = cols + int(rng.integers(0, 8))
    A = rng.standard_normal((rows, cols))
    if complex_:
        A = A + 1j * rng.standard_normal((rows, cols))
    return A


class TestMinSingularVector:
    def test_all_ones(self):
        w = min_singular_vector(np.ones((5, 2)))
        assert np.allclose(w, np.array([1, -1]) / np.sqrt(2))

    def test_single_column(self):
        assert np.allclose(min_singular_vector(np.array([[1.0], [2.0], [3.0]])), [1.0])

    def test_diagonal_like(self):
        w = min_singular_vector(np.array([[1.0, 0], [0, 2], [0, 0]]))
        assert np.allclose(w, [1, 0])

    @pytest.mark.parametrize("complex_", [False, True])
    def test_beats_random_unit_vectors(self, rng, complex_):
        for _ in range(20):
            A = random_rect(rng, complex_)
            w = min_singular_vector(A)
            assert abs(np.linalg.norm(w) - 1) < 1e-13
            best = np.linalg.norm(A @ w)
            V = rng.standard_normal((100, A.shape[1]))
            if complex_:
                V = V + 1j * rng.standard_normal(V.shape)
            V /= np.linalg.norm(V, axis=1, keepdims=True)
            others = np.linalg.norm(V @ A.T, axis=1)
            assert np.all(best <= others + 1e-12 * np.linalg.norm(A, 2))

    def test_phase_normalised(self, rng):
        A = rng.standard_normal((9, 4)) + 1j * rng.standard_normal((9, 4))
        w = min_singular_vector(A)
        k = np.argmax(np.abs(w))
        assert w[k].imag == 0 and w[k].real > 0
        # unaffected by a global phase on A
        assert np.allclose(min_singular_vector(A * np.exp(0.7j)), w)

    @pytest.mark.parametrize("A", [np.ones(3), np.ones((2, 3)), np.array([[1.0, np.nan], [0, 1], [1, 1]])])
    def test_invalid(self, A):
        with pytest.raises(InvalidMatrix):
            min_singular_vector(A)


class TestArrowhead:
    @pytest.mark.parametrize(
        "diag, top, expected",
        [([-1, 1], [1, 1], [0.0]), ([-1, 1], [1, -1], []), ([0, 2], [1, 1], [1.0])],
    )
    def test_examples(self, diag, top, expected):
        lam = arrowhead_pencil_eigenvalues(np.array(diag, float), np.array(top, float))
        assert np.allclose(np.sort_complex(lam), expected, atol=1e-14)
        assert lam.size == len(expected)

    def test_against_polynomial_roots(self, rng):
        for _ in range(200):
            m = int(rng.integers(2, 6))
            diag = rng.standard_normal(m) + 1j * rng.standard_normal(m)
            top = rng.standard_normal(m) + 1j * rng.standard_normal(m)
            lam = arrowhead_pencil_eigenvalues(diag, top)
            ref = cleared_roots(diag, top)
            assert lam.size == ref.size == m - 1
            for z in ref:
                assert np.min(np.abs(lam - z)) <= 1e-8 * max(1.0, abs(z))

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.tuples(st.floats(-3, 3), st.floats(0.1, 2) | st.floats(-2, -0.1)), min_size=2, max_size=6,
                    unique_by=lambda t: round(t[0], 3)))
    def test_real_data_gives_conjugate_pairs(self, pairs):
        diag = np.array([p[0] for p in pairs])
        top = np.array([p[1] for p in pairs])
        lam = arrowhead_pencil_eigenvalues(diag, top)
        scale = max(1.0, np.max(np.abs(lam), initial=0))
        for z in lam:
            assert np.min(np.abs(lam - np.conj(z))) <= 1e-10 * scale

    def test_too_small(self):
        with pytest.raises(InvalidMatrix):
            arrowhead_pencil_eigenvalues(np.array([1.0]), np.array([1.0]))
