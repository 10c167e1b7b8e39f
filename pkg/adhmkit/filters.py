import numpy as np


def _scale(M: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(M)))


def is_square(M: np.ndarray) -> bool:
    return M.ndim == 2 and M.shape[0] == M.shape[1]


def is_hermitian(M: np.ndarray, tol: float = 1e-10) -> bool:
    """
    Check whether a matrix is Hermitian
    :param M: a square matrix
    :param tol: tolerance relative to max(1, ||M||)
    :return: True if ||M - M^dagger|| <= tol * max(1, ||M||). False, otherwise
    """
    return is_square(M) and np.linalg.norm(M - M.conj().T) <= tol * _scale(M)


def is_anti_hermitian(M: np.ndarray, tol: float = 1e-10) -> bool:
    """
    Check whether a matrix is anti-Hermitian
    :param M: a square matrix
    :param tol: tolerance relative to max(1, ||M||)
    :return: True if ||M + M^dagger|| <= tol * max(1, ||M||). False, otherwise
    """
    return is_square(M) and np.linalg.norm(M + M.conj().T) <= tol * _scale(M)


def is_unitary(M: np.ndarray, tol: float = 1e-10) -> bool:
    """
    Check whether a matrix is unitary
    :param M: a square matrix
    :param tol: absolute tolerance on ||M^dagger M - I||
    :return: True if M is unitary within tol. False, otherwise
    """
    return is_square(M) and np.linalg.norm(M.conj().T @ M - np.eye(M.shape[0])) <= tol


def commute(A: np.ndarray, B: np.ndarray, tol: float = 1e-10) -> bool:
    """
    Check whether two square matrices commute
    :return: True if ||[A, B]|| <= tol * max(1, ||A|| ||B||). False, otherwise
    """
    scale = max(1.0, float(np.linalg.norm(A) * np.linalg.norm(B)))
    return np.linalg.norm(A @ B - B @ A) <= tol * scale


def is_upper_triangular(M: np.ndarray, tol: float = 1e-9) -> bool:
    return np.linalg.norm(np.tril(M, -1)) <= tol * _scale(M)
