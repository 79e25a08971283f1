"""Projective changes of coordinates between two models of the same curve.

``match_coordinates`` finds every T in PGL_n(Q) that carries one point set
onto another (as sets) and pulls the target model's equations back into
the source model's ideal.  No labels are used: candidates come from
sending a fixed projective frame of source points to ordered tuples of
target points.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .model import CanonicalModel, ideal_contains
from .points import normalize


def _general_position(frame: Sequence[Sequence[int]]) -> bool:
    n = len(frame[0])
    return all(linalg.rank(list(sub)) == n for sub in itertools.combinations(frame, n))


def _frame(points: Sequence[Sequence[int]], n: int):
    for combo in itertools.combinations(points, n + 1):
        if _general_position(combo):
            return combo
    return None


def _transform(src, dst) -> list[list[Fraction]] | None:
    """Exact T with T src[i] ~ dst[i] for a frame of n + 1 points."""
    n = len(src[0])
    A = [[src[j][i] for j in range(n)] for i in range(n)]
    B = [[dst[j][i] for j in range(n)] for i in range(n)]
    mu = linalg.solve(A, src[n])
    nu = linalg.solve(B, dst[n])
    if mu is None or nu is None or 0 in mu or 0 in nu:
        return None
    # T = B diag(nu/mu) A^{-1}
    Ainv = [linalg.solve(A, [int(i == j) for i in range(n)]) for j in range(n)]
    Ainv = [[Ainv[j][i] for j in range(n)] for i in range(n)]
    D = [nu[k] / mu[k] for k in range(n)]
    return [[sum(B[i][k] * D[k] * Ainv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def apply(T: Sequence[Sequence], p: Sequence[int]) -> tuple[int, ...]:
    n = len(p)
    img = [sum(Fraction(T[i][j]) * p[j] for j in range(n)) for i in range(n)]
    return normalize(linalg.scale_to_integers(img)) if any(img) else None


def integral(T: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    flat = linalg.scale_to_integers([x for row in T for x in row])
    n = len(T)
    return [list(flat[i * n:(i + 1) * n]) for i in range(n)]


def pullback_model(model: CanonicalModel, T: Sequence[Sequence[int]]) -> list:
    """Polynomials F(T x) for each F of ``model``."""
    n = len(T)
    rows = [[T[i][k] for i in range(n)] for k in range(n)]
    return [p.pullback(rows) for p in model.polys]


def match_coordinates(src_model: CanonicalModel, src_pts, dst_model: CanonicalModel, dst_pts):
    """All integer matrices T (up to scale) with T(src_pts) = dst_pts and
    dst_model o T inside the ideal of src_model."""
    n = src_model.gPlus
    src_pts = [normalize(p) for p in src_pts]
    dst = {normalize(p) for p in dst_pts}
    if len(dst) != len(src_pts):
        return []
    frame = _frame(src_pts, n)
    if frame is None:
        raise ValueError("source points contain no projective frame")
    dst_list = sorted(dst)
    dst_arr = np.array(dst_list, dtype=float)
    dst_unit = dst_arr / np.linalg.norm(dst_arr, axis=1)[:, None]
    src_arr = np.array(src_pts, dtype=float).T
    A = np.array(frame[:n], dtype=float).T
    mu = np.linalg.solve(A, np.array(frame[n], dtype=float))
    Ainv = np.linalg.inv(A)
    found = []
    for tup in itertools.permutations(dst_list, n + 1):
        B = np.array(tup[:n], dtype=float).T
        if abs(np.linalg.det(B)) < 1e-9:
            continue
        nu = np.linalg.solve(B, np.array(tup[n], dtype=float))
        if np.any(np.abs(mu) < 1e-12):
            continue
        Tf = B @ np.diag(nu / mu) @ Ainv
        img = Tf @ src_arr
        norms = np.linalg.norm(img, axis=0)
        if np.any(norms < 1e-12):
            continue
        img = img / norms
        cos = np.abs(dst_unit @ img)
        if not np.all(cos.max(axis=0) > 1 - 1e-9):
            continue
        T = _transform([list(p) for p in frame], [list(p) for p in tup])
        if T is None:
            continue
        if {apply(T, p) for p in src_pts} != dst:
            continue
        Ti = integral(T)
        if all(ideal_contains(src_model, f) for f in pullback_model(dst_model, Ti)):
            if Ti not in found:
                found.append(Ti)
    return found
