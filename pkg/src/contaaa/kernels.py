"""Dense linear-algebra primitives: minimal singular vector and arrowhead pencil eigenvalues."""

import numpy as np
import scipy.linalg

from .errors import InvalidMatrix, KernelFailure

# Eigenvalues beyond this magnitude are treated as the pencil's infinite eigenvalues.
INFINITE_EIG_CUTOFF = 1e14


def min_singular_vector(A):
    """Unit vector w minimizing ||A w||_2.

    The result is the right singular vector belonging to the smallest
    singular value. Its sign (or complex phase) is fixed so that the first
    entry of largest modulus is real and nonnegative, which makes repeated
    runs bit-for-bit reproducible.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[1] < 1:
        raise InvalidMatrix(f"expected a 2-D matrix with at least one column, got shape {A.shape}")
    if A.shape[0] < A.shape[1]:
        raise InvalidMatrix(f"need rows >= cols, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidMatrix("matrix has non-finite entries")
    try:
        _, _, vh = np.linalg.svd(A, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise KernelFailure(f"SVD did not converge: {exc}") from exc
    w = vh[-1].conj()
    k = int(np.argmax(np.abs(w)))
    if np.iscomplexobj(w):
        w = w * (abs(w[k]) / w[k])
        w[k] = abs(w[k])
    elif w[k] < 0:
        w = -w
    return w


def arrowhead_pencil_eigenvalues(diag, top_row):
    """Finite roots of sum_j top_row[j] / (x - diag[j]).

    These are the finite generalized eigenvalues of the (m+1)x(m+1) pencil
    (B, E) with B = [[0, top_row], [1, diag(diag)]] and E = diag(0, 1, ..., 1).
    """
    diag = np.asarray(diag)
    top_row = np.asarray(top_row)
    m = diag.size
    if m < 2 or top_row.size != m:
        raise InvalidMatrix("arrowhead pencil needs m >= 2 and matching lengths")
    dtype = np.result_type(diag, top_row, float)
    B = np.zeros((m + 1, m + 1), dtype=dtype)
    B[0, 1:] = top_row
    B[1:, 0] = 1
    B[np.arange(1, m + 1), np.arange(1, m + 1)] = diag
    E = np.eye(m + 1, dtype=dtype)
    E[0, 0] = 0
    if not (np.all(np.isfinite(B))):
        raise InvalidMatrix("pencil has non-finite entries")
    try:
        lam = scipy.linalg.eigvals(B, E, overwrite_a=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise KernelFailure(f"generalized eigenvalue solver failed: {exc}") from exc
    keep = np.isfinite(lam) & (np.abs(lam) <= INFINITE_EIG_CUTOFF)
    return lam[keep]
