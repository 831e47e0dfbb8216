"""Built-in triangle mesh fixtures: platonic solids and subdivided spheres."""

from __future__ import annotations

import math

from .graphs import TriMesh


def tetrahedron() -> TriMesh:
    """Regular tetrahedron: 4 vertices, 4 faces."""
    s = 1.0 / math.sqrt(3.0)
    vertices = (
        (s, s, s),
        (s, -s, -s),
        (-s, s, -s),
        (-s, -s, s),
    )
    triangles = ((0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2))
    return TriMesh(vertices, triangles)


def octahedron() -> TriMesh:
    """Regular octahedron: 6 vertices, 12 edges, 8 faces."""
    vertices = (
        (1.0, 0.0, 0.0),
        (-1.0, 0.0, 0.0),
        (0.0, 1.0, 0.0),
        (0.0, -1.0, 0.0),
        (0.0, 0.0, 1.0),
        (0.0, 0.0, -1.0),
    )
    triangles = (
        (0, 2, 4),
        (2, 1, 4),
        (1, 3, 4),
        (3, 0, 4),
        (2, 0, 5),
        (1, 2, 5),
        (3, 1, 5),
        (0, 3, 5),
    )
    return TriMesh(vertices, triangles)


def icosahedron() -> TriMesh:
    """Regular icosahedron: 12 vertices, 30 edges, 20 faces."""
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    norm = math.sqrt(1.0 + phi * phi)
    a, b = 1.0 / norm, phi / norm
    vertices = (
        (-a, b, 0.0), (a, b, 0.0), (-a, -b, 0.0), (a, -b, 0.0),
        (0.0, -a, b), (0.0, a, b), (0.0, -a, -b), (0.0, a, -b),
        (b, 0.0, -a), (b, 0.0, a), (-b, 0.0, -a), (-b, 0.0, a),
    )
    triangles = (
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    )
    return TriMesh(vertices, triangles)


def _normalized(p: tuple[float, float, float]) -> tuple[float, float, float]:
    n = math.sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2])
    return (p[0] / n, p[1] / n, p[2] / n)


def subdivide(mesh: TriMesh, project_to_sphere: bool = False) -> TriMesh:
    """4-to-1 midpoint subdivision; each face splits into four.

    With ``project_to_sphere`` the new midpoints (and originals) are pushed
    onto the unit sphere, which keeps subdivided solids round.
    """
    vertices = [
        _normalized(v) if project_to_sphere else v for v in mesh.vertices
    ]
    midpoint: dict[tuple[int, int], int] = {}

    def mid(u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        if key not in midpoint:
            pu, pv = vertices[key[0]], vertices[key[1]]
            p = ((pu[0] + pv[0]) / 2, (pu[1] + pv[1]) / 2, (pu[2] + pv[2]) / 2)
            if project_to_sphere:
                p = _normalized(p)
            midpoint[key] = len(vertices)
            vertices.append(p)
        return midpoint[key]

    triangles = []
    for a, b, c in mesh.triangles:
        ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
        triangles.extend([(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)])
    return TriMesh(tuple(vertices), tuple(triangles))


def subdivided_sphere(levels: int = 2) -> TriMesh:
    """Icosphere with ``20 * 4**levels`` faces (320 at the default level)."""
    mesh = icosahedron()
    for _ in range(levels):
        mesh = subdivide(mesh, project_to_sphere=True)
    return mesh
