"""Split large point weights into a fixed number of small-weight layers."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["WeightSplit", "split_weight", "split_weights"]


def split_weight(w: int, chunk_bits: int, layers: int) -> list[int]:
    """Base-``2**chunk_bits`` digits of ``w``, least significant first.

    >>> split_weight(37, 4, 2)
    [5, 2]
    """
    mask = (1 << chunk_bits) - 1
    return [(w >> (k * chunk_bits)) & mask for k in range(layers)]


@dataclass(frozen=True, eq=False)
class WeightSplit:
    """Layered copy of a weighted point set.

    ``layers[k]`` has the same points with weight ``(w >> k*chunk_bits) mod
    modulus``; any linear query answer is recovered by :meth:`combine`.
    """

    eps: float
    chunk_bits: int
    layers: tuple[np.ndarray, ...]

    @property
    def modulus(self) -> int:
        return 1 << self.chunk_bits

    def combine(self, answers) -> int | np.ndarray:
        """``sum_k answers[k] << k*chunk_bits`` (works on scalars or arrays)."""
        total = sum(np.asarray(a, dtype=np.int64) << (k * self.chunk_bits)
                    for k, a in enumerate(answers))
        return int(total) if np.ndim(total) == 0 else total


def split_weights(points, eps: float, *, n: int | None = None,
                  weight_bits: int | None = None) -> WeightSplit:
    """Split the last column of ``points`` into ``ceil(1/eps)`` layers.

    Parameters
    ----------
    points : array-like of shape (m, k)
        Coordinates followed by a nonnegative integer weight.
    eps : float in (0, 1]
    n : int, optional
        Size of the problem the chunk width is derived from (default ``m``).
    weight_bits : int, optional
        Bit budget the layers must cover; defaults to
        ``max(ceil(log2 n), bit_length(max weight))``.  Each layer holds
        ``ceil(eps * weight_bits)`` bits.
    """
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    arr = np.asarray(points, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] < 2:
        raise ValueError("expected rows of coordinates followed by a weight")
    w = arr[:, -1]
    if w.size and w.min() < 0:
        raise ValueError("weights must be nonnegative")
    n = len(arr) if n is None else n
    top = int(w.max()).bit_length() if w.size else 0
    if weight_bits is None:
        weight_bits = max(math.ceil(math.log2(n)) if n > 1 else 1, top)
    elif weight_bits < top:
        raise ValueError(f"weight_bits={weight_bits} cannot hold weight {int(w.max())}")
    chunk = max(1, math.ceil(eps * weight_bits))
    count = math.ceil(1 / eps)
    mask = (1 << chunk) - 1
    layers = []
    for k in range(count):
        layer = arr.copy()
        layer[:, -1] = (w >> (k * chunk)) & mask
        layers.append(layer)
    return WeightSplit(eps, chunk, tuple(layers))
