"""
Array kernels shared by the real-valued and the integer inference paths.

All tensors are batch-first: ``(N, C, H, W)`` for feature maps.
"""

from typing import Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def conv_output_hw(h: int, w: int, kernel: int, stride: int, padding: int) -> Tuple[int, int]:
    return (h + 2 * padding - kernel) // stride + 1, (w + 2 * padding - kernel) // stride + 1


def _pad(x: np.ndarray, padding: int) -> np.ndarray:
    if not padding:
        return x
    return np.pad(x, ((0, 0), (0, 0), (padding, padding), (padding, padding)))


def _windows(x: np.ndarray, kernel: int, stride: int) -> np.ndarray:
    # (N, C, H', W', k, k)
    return sliding_window_view(x, (kernel, kernel), axis=(2, 3))[:, :, ::stride, ::stride]


def im2col(x: np.ndarray, kernel: int, stride: int, padding: int) -> np.ndarray:
    """Unfold ``(N, C, H, W)`` into ``(N, H'*W', C*k*k)`` patches."""
    n, c = x.shape[:2]
    win = _windows(_pad(x, padding), kernel, stride)
    oh, ow = win.shape[2], win.shape[3]
    return win.transpose(0, 2, 3, 1, 4, 5).reshape(n, oh * ow, c * kernel * kernel)


def col2im(cols: np.ndarray, x_shape: Tuple[int, ...], kernel: int, stride: int, padding: int) -> np.ndarray:
    """Adjoint of :func:`im2col`: scatter-add patch gradients back to the input."""
    n, c, h, w = x_shape
    oh, ow = conv_output_hw(h, w, kernel, stride, padding)
    patches = cols.reshape(n, oh, ow, c, kernel, kernel).transpose(0, 3, 1, 2, 4, 5)
    padded = np.zeros((n, c, h + 2 * padding, w + 2 * padding), dtype=cols.dtype)
    for i in range(kernel):
        for j in range(kernel):
            padded[:, :, i:i + stride * oh:stride, j:j + stride * ow:stride] += patches[..., i, j]
    if padding:
        return padded[:, :, padding:-padding, padding:-padding]
    return padded


def max_pool(x: np.ndarray, kernel: int, stride: int) -> np.ndarray:
    return _windows(x, kernel, stride).max(axis=(4, 5))


def max_pool_backward(grad: np.ndarray, x: np.ndarray, kernel: int, stride: int) -> np.ndarray:
    """Route each window's gradient to its first maximal element."""
    win = _windows(x, kernel, stride)
    n, c, oh, ow = win.shape[:4]
    arg = win.reshape(n, c, oh, ow, kernel * kernel).argmax(axis=-1)
    dx = np.zeros_like(x, dtype=grad.dtype)
    for i in range(kernel):
        for j in range(kernel):
            hit = arg == i * kernel + j
            dx[:, :, i:i + stride * oh:stride, j:j + stride * ow:stride] += grad * hit
    return dx


def avg_pool(x: np.ndarray, kernel: int, stride: int) -> np.ndarray:
    return _windows(x, kernel, stride).mean(axis=(4, 5))


def avg_pool_backward(grad: np.ndarray, x_shape: Tuple[int, ...], kernel: int, stride: int) -> np.ndarray:
    n, c, oh, ow = grad.shape
    dx = np.zeros(x_shape, dtype=grad.dtype)
    share = grad / (kernel * kernel)
    for i in range(kernel):
        for j in range(kernel):
            dx[:, :, i:i + stride * oh:stride, j:j + stride * ow:stride] += share
    return dx


def avg_pool_int(x: np.ndarray, kernel: int, stride: int) -> np.ndarray:
    """Integer window average, rounded half away from zero."""
    total = _windows(np.asarray(x, dtype=np.int64), kernel, stride).sum(axis=(4, 5))
    count = kernel * kernel
    mag = (2 * np.abs(total) + count) // (2 * count)
    return np.where(total < 0, -mag, mag)
