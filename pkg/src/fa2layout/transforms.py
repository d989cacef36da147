"""Rigid and similarity transforms on N x 2 layout matrices.

Scale and rotate are anchored at the layout centroid unless a pivot is given.
All functions return new arrays.
"""

from __future__ import annotations

import math

import numpy as np


def _as_layout(layout) -> np.ndarray:
    arr = np.array(layout, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"layout must be N x 2, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("layout contains non-finite entries")
    return arr


def centroid(layout) -> np.ndarray:
    arr = _as_layout(layout)
    if len(arr) == 0:
        return np.zeros(2)
    return arr.mean(axis=0)


def scale_positions(layout, factor: float, pivot=None) -> np.ndarray:
    """Map each point p to ``c + factor * (p - c)``; pairwise distances scale by ``factor``."""
    if not factor > 0:
        raise ValueError(f"scale factor must be > 0, got {factor}")
    arr = _as_layout(layout)
    c = centroid(arr) if pivot is None else np.asarray(pivot, dtype=float)
    return c + factor * (arr - c)


def rotate_positions(layout, degrees: float, pivot=None) -> np.ndarray:
    """Rotate counterclockwise by ``degrees`` about ``pivot`` (default: centroid)."""
    arr = _as_layout(layout)
    c = centroid(arr) if pivot is None else np.asarray(pivot, dtype=float)
    theta = math.radians(degrees)
    cos, sin = math.cos(theta), math.sin(theta)
    rot = np.array([[cos, -sin], [sin, cos]])
    return c + (arr - c) @ rot.T


def translate_to(layout, target_center) -> np.ndarray:
    arr = _as_layout(layout)
    return arr - centroid(arr) + np.asarray(target_center, dtype=float)
