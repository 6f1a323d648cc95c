"""Deterministic triangulations of the unit square and unit disk."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import MeshError
from ..params import DomainGeometry, UNIT_DISK, UNIT_SQUARE


@dataclass
class Mesh:
    domain: DomainGeometry
    h: float
    vertices: np.ndarray  # (nv, 2)
    triangles: np.ndarray  # (nt, 3) int, CCW
    boundary: np.ndarray  # (nv,) bool

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_triangles(self) -> int:
        return self.triangles.shape[0]


def _signed_areas(vertices, triangles):
    p = vertices[triangles]
    return 0.5 * (
        (p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1])
        - (p[:, 2, 0] - p[:, 0, 0]) * (p[:, 1, 1] - p[:, 0, 1])
    )


def _orient_ccw(vertices, triangles):
    areas = _signed_areas(vertices, triangles)
    flip = areas < 0
    triangles[flip, 1], triangles[flip, 2] = triangles[flip, 2].copy(), triangles[flip, 1].copy()
    if np.any(_signed_areas(vertices, triangles) <= 0):
        raise MeshError("degenerate triangle (zero area)")
    return triangles


def min_angle_deg(mesh: Mesh) -> float:
    p = mesh.vertices[mesh.triangles]
    angles = []
    for i in range(3):
        a = p[:, (i + 1) % 3] - p[:, i]
        b = p[:, (i + 2) % 3] - p[:, i]
        cosv = np.sum(a * b, axis=1) / (np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1))
        angles.append(np.degrees(np.arccos(np.clip(cosv, -1.0, 1.0))))
    return float(np.min(angles))


def unit_square_mesh(m: int) -> Mesh:
    """m x m grid of squares, each split along the same diagonal."""
    if m < 2:
        raise MeshError("need at least 2 cells per side")
    xs = np.linspace(0.0, 1.0, m + 1)
    xx, yy = np.meshgrid(xs, xs, indexing="ij")
    vertices = np.column_stack([xx.ravel(), yy.ravel()])

    def vid(i, j):
        return i * (m + 1) + j

    tris = []
    for i in range(m):
        for j in range(m):
            v00, v10 = vid(i, j), vid(i + 1, j)
            v01, v11 = vid(i, j + 1), vid(i + 1, j + 1)
            tris.append((v00, v10, v11))
            tris.append((v00, v11, v01))
    triangles = _orient_ccw(vertices, np.array(tris, dtype=np.int32))
    eps = 1e-12
    boundary = (
        (vertices[:, 0] < eps)
        | (vertices[:, 0] > 1 - eps)
        | (vertices[:, 1] < eps)
        | (vertices[:, 1] > 1 - eps)
    )
    return Mesh(UNIT_SQUARE, math.sqrt(2.0) / m, vertices, triangles, boundary)


def unit_disk_mesh(n_rings: int) -> Mesh:
    """Concentric rings with 6*i vertices on ring i; boundary exactly on the circle."""
    if n_rings < 2:
        raise MeshError("need at least 2 rings")
    verts = [(0.0, 0.0)]
    ring_start = [0]
    for i in range(1, n_rings + 1):
        ring_start.append(len(verts))
        r = i / n_rings
        cnt = 6 * i
        for j in range(cnt):
            th = 2.0 * math.pi * j / cnt
            verts.append((r * math.cos(th), r * math.sin(th)))
    vertices = np.array(verts)

    tris = []
    for i in range(1, n_rings + 1):
        out0, n_out = ring_start[i], 6 * i
        if i == 1:
            for j in range(n_out):
                tris.append((0, out0 + j, out0 + (j + 1) % n_out))
            continue
        in0, n_in = ring_start[i - 1], 6 * (i - 1)
        # merge-walk the two rings by angle
        j = l = 0
        while j < n_out or l < n_in:
            adv_out = j < n_out and (
                l >= n_in or (j + 1) / n_out <= (l + 1) / n_in
            )
            if adv_out:
                tris.append((in0 + l % n_in, out0 + j, out0 + (j + 1) % n_out))
                j += 1
            else:
                tris.append((in0 + l % n_in, out0 + j % n_out, in0 + (l + 1) % n_in))
                l += 1
    triangles = _orient_ccw(vertices, np.array(tris, dtype=np.int32))
    boundary = np.zeros(len(vertices), dtype=bool)
    boundary[ring_start[n_rings]:] = True
    # longest edge over the mesh
    p = vertices[triangles]
    edges = np.concatenate(
        [p[:, 1] - p[:, 0], p[:, 2] - p[:, 1], p[:, 0] - p[:, 2]]
    )
    h = float(np.max(np.linalg.norm(edges, axis=1)))
    return Mesh(UNIT_DISK, h, vertices, triangles, boundary)
