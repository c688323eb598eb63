"""Point-set alignment helpers for comparing curves up to rigid motion."""

from __future__ import annotations

import numpy as np


def translation_deviation(points, reference, allow_reversal=False):
    """Max deviation after the best translation of points onto reference.

    With ``allow_reversal`` the reversed point order is also tried and the
    smaller deviation returned (curves are point sets; parameter direction
    is not intrinsic).
    """
    P = np.asarray(points, dtype=float)
    Q = np.asarray(reference, dtype=float)

    def dev(A):
        shift = (Q - A).mean(axis=0)
        return float(np.linalg.norm(A + shift - Q, axis=1).max())

    best = dev(P)
    if allow_reversal:
        best = min(best, dev(P[::-1]))
    return best


def rigid_deviation(points, reference, allow_reversal=False):
    """Max deviation after the best proper rigid motion (rotation + translation).

    Standard SVD registration restricted to det(R) = +1.
    """
    Q = np.asarray(reference, dtype=float)
    Qc = Q - Q.mean(axis=0)

    def dev(A):
        Ac = A - A.mean(axis=0)
        U, _, Vt = np.linalg.svd(Ac.T @ Qc)
        flip = np.sign(np.linalg.det(U @ Vt))
        R = (U @ np.diag([1.0, 1.0, flip]) @ Vt).T
        return float(np.linalg.norm(Ac @ R.T - Qc, axis=1).max())

    P = np.asarray(points, dtype=float)
    best = dev(P)
    if allow_reversal:
        best = min(best, dev(P[::-1]))
    return best
