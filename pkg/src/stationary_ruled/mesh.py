"""ASCII mesh and CSV writers.

Meshes are Wavefront-style text (``v x y z`` and ``f i j k`` with 1-based
indices). Floats are written with 17 significant digits so that files
round-trip exactly and are identical across runs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

FLOAT_FMT = ".17g"


def fmt(x) -> str:
    x = float(x)
    return "nan" if math.isnan(x) else format(x, FLOAT_FMT)


@dataclass(frozen=True)
class Mesh:
    """Triangle mesh with a per-vertex scalar channel; faces are 0-based."""

    vertices: np.ndarray  # (n, 3)
    faces: np.ndarray  # (m, 3)
    scalars: np.ndarray  # (n,)

    def __post_init__(self):
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= len(self.vertices)):
            raise ValueError("face index out of range")
        if not np.all(np.isfinite(self.vertices)):
            raise ValueError("mesh vertices must be finite")


def grid_mesh(X: np.ndarray, scalars: np.ndarray | None = None) -> Mesh:
    """Triangulate samples ``X`` of shape ``(3, ns, nt)``.

    Non-finite samples are dropped together with every face that uses them.
    """
    _, ns, nt = X.shape
    scalars = np.full((ns, nt), np.nan) if scalars is None else np.asarray(scalars, dtype=float)
    keep = np.all(np.isfinite(X), axis=0)
    index = -np.ones((ns, nt), dtype=int)
    index[keep] = np.arange(int(keep.sum()))
    i, j = np.meshgrid(np.arange(ns - 1), np.arange(nt - 1), indexing="ij")
    a, b = index[i, j], index[i + 1, j]
    c, d = index[i + 1, j + 1], index[i, j + 1]
    tris = np.stack([np.stack([a, b, c], -1), np.stack([a, c, d], -1)], axis=-2).reshape(-1, 3)
    tris = tris[np.all(tris >= 0, axis=1)]
    return Mesh(X[:, keep].T.copy(), tris, scalars[keep])


def write_obj(path, mesh: Mesh) -> None:
    lines = [f"v {fmt(x)} {fmt(y)} {fmt(z)}" for x, y, z in mesh.vertices]
    lines += [f"f {i + 1} {j + 1} {k + 1}" for i, j, k in mesh.faces]
    Path(path).write_text("\n".join(lines) + "\n")


def read_obj(path):
    """``(vertices, faces)`` with 0-based faces."""
    verts, faces = [], []
    for line in Path(path).read_text().splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            verts.append([float(v) for v in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(v) - 1 for v in parts[1:4]])
    return np.array(verts), np.array(faces, dtype=int)


def write_csv(path, header, rows) -> None:
    out = [",".join(header)]
    for row in rows:
        out.append(",".join(v if isinstance(v, str) else fmt(v) for v in row))
    Path(path).write_text("\n".join(out) + "\n")


def write_scalars(path, mesh: Mesh, name: str = "residual") -> None:
    write_csv(path, ["vertex", name], ([str(i + 1), v] for i, v in enumerate(mesh.scalars)))


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return None if not math.isfinite(obj) else float(obj)
    return obj


def write_json(path, doc) -> None:
    Path(path).write_text(json.dumps(_clean(doc), indent=2, sort_keys=True) + "\n")
