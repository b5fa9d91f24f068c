"""
Kuratowski embedding of a finite metric space into the sup-norm space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metric import FiniteMetricSpace


@dataclass
class EmbeddedPointSet:
    """Labelled points of l-infinity; row ``i`` is the image of ``labels[i]``."""

    labels: list
    coords: np.ndarray

    def sup_distance(self, i: int, j: int):
        diff = self.coords[i] - self.coords[j]
        return max(abs(v) for v in diff)

    def distance_matrix(self) -> np.ndarray:
        C = self.coords
        if C.dtype == object:
            n = len(self.labels)
            out = np.empty((n, n), dtype=object)
            for i in range(n):
                for j in range(n):
                    out[i, j] = self.sup_distance(i, j)
            return out
        return np.abs(C[:, None, :] - C[None, :, :]).max(axis=2)


def kuratowski_embed(m: FiniteMetricSpace, basepoint) -> EmbeddedPointSet:
    """
    Isometric embedding ``z -> d(z, .) - d(z0, .)`` into ``l-infinity_n``.

    Coordinates inherit the exactness of the metric: Fractions or integral
    floats stay exact under the subtraction.

    Raises
    ------
    KeyError
        For a basepoint that is not a label of ``m``.
    """
    b = m.index(basepoint)
    d = m.d
    return EmbeddedPointSet(list(m.labels), d - d[b][None, :])
