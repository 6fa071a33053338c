"""Newton polytope of the degree-N monomials of a weight system.

Lattice points are the a in Z^4_{>=0} with sum(q_i a_i) = N; the hull is
computed after projecting to the first three coordinates (injective on the
hyperplane), entirely over integers: incremental insertion with exact
orientation predicates, then coplanar triangles are regrouped into facet
polygons so that edges are the true 1-faces.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .singularity import WeightSystem


class EmptySupportError(ValueError):
    """No lattice points satisfy the degree equation."""


class DegenerateDimensionError(ValueError):
    """The point set does not affinely span dimension 3."""


Point4 = tuple[int, int, int, int]
Point3 = tuple[int, int, int]


def enumerate_points(w: WeightSystem) -> list[Point4]:
    """All exponent vectors of degree-N monomials, lexicographically sorted."""
    q = w.integral_weights
    n = w.level
    pts = []
    for a0 in range(n // q[0] + 1):
        r0 = n - q[0] * a0
        for a1 in range(r0 // q[1] + 1):
            r1 = r0 - q[1] * a1
            for a2 in range(r1 // q[2] + 1):
                r2 = r1 - q[2] * a2
                if r2 % q[3] == 0:
                    pts.append((a0, a1, a2, r2 // q[3]))
    if not pts:
        raise EmptySupportError(f"no monomials of degree {n}")
    return sorted(pts)


def _sub(a: Point3, b: Point3) -> Point3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross(a: Point3, b: Point3) -> Point3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a: Point3, b: Point3) -> int:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _orient(p: Point3, q: Point3, r: Point3, s: Point3) -> int:
    """Sign of det(q-p, r-p, s-p)."""
    d = _dot(_cross(_sub(q, p), _sub(r, p)), _sub(s, p))
    return (d > 0) - (d < 0)


@dataclass(frozen=True)
class NewtonPolytope:
    points: tuple[Point4, ...]
    vertices: tuple[Point4, ...]
    edges: tuple[tuple[int, int], ...]  # index pairs into vertices
    facet_planes: tuple[tuple[Point3, int], ...]  # (inward normal n, c): n.x >= c

    def edge_endpoints(self) -> list[tuple[Point4, Point4]]:
        return [(self.vertices[i], self.vertices[j]) for i, j in self.edges]

    def contains(self, point: Point4) -> bool:
        p3 = point[:3]
        return all(_dot(n, p3) >= c for n, c in self.facet_planes)


def _initial_simplex(pts: list[Point3]):
    p0 = pts[0]
    p1 = next((p for p in pts if p != p0), None)
    if p1 is None:
        return None
    p2 = next((p for p in pts if _cross(_sub(p1, p0), _sub(p, p0)) != (0, 0, 0)), None)
    if p2 is None:
        return None
    p3 = next((p for p in pts if _orient(p0, p1, p2, p) != 0), None)
    if p3 is None:
        return None
    return [pts.index(p0), pts.index(p1), pts.index(p2), pts.index(p3)]


def _triangulated_hull(pts: list[Point3]) -> list[tuple[int, int, int]]:
    """Indices of an (outward-oriented) triangulated convex hull."""
    seed = _initial_simplex(pts)
    if seed is None:
        raise DegenerateDimensionError("points do not affinely span dimension 3")
    i0, i1, i2, i3 = seed
    if _orient(pts[i0], pts[i1], pts[i2], pts[i3]) > 0:
        i1, i2 = i2, i1  # make pts[i3] lie on the negative side
    faces = [(i0, i1, i2), (i0, i3, i1), (i0, i2, i3), (i1, i3, i2)]

    def visible(face, idx):
        a, b, c = face
        return _orient(pts[a], pts[b], pts[c], pts[idx]) > 0

    for idx in range(len(pts)):
        if idx in seed:
            continue
        vis = [f for f in faces if visible(f, idx)]
        if not vis:
            continue
        vis_set = set(vis)
        horizon = []
        for a, b, c in vis:
            for e in ((a, b), (b, c), (c, a)):
                horizon.append(e)
        # horizon edges appear once among visible faces
        edge_count: dict[tuple[int, int], int] = {}
        for e in horizon:
            key = (min(e), max(e))
            edge_count[key] = edge_count.get(key, 0) + 1
        faces = [f for f in faces if f not in vis_set]
        for a, b, c in vis:
            for e in ((a, b), (b, c), (c, a)):
                if edge_count[(min(e), max(e))] == 1:
                    faces.append((e[0], e[1], idx))
    return faces


def _canonical_plane(pts: list[Point3], face) -> tuple[Point3, int]:
    a, b, c = face
    n = _cross(_sub(pts[b], pts[a]), _sub(pts[c], pts[a]))
    g = gcd(gcd(abs(n[0]), abs(n[1])), abs(n[2]))
    n = (n[0] // g, n[1] // g, n[2] // g)
    # orient inward: outward triangles satisfy orient(...) > 0 for outside pts
    n = (-n[0], -n[1], -n[2])
    return n, _dot(n, pts[a])


def _hull_2d(points: list[Point3], normal: Point3) -> list[Point3]:
    """Convex polygon (strict vertices, cyclic order) of coplanar 3D points."""
    # project onto the two coordinates least aligned with the normal
    ax = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != ax]
    flat = sorted({(p[keep[0]], p[keep[1]], p) for p in points})
    uniq = [t[2] for t in flat]
    if len(uniq) < 3:
        return uniq

    def cross2(o, a, b):
        return (a[keep[0]] - o[keep[0]]) * (b[keep[1]] - o[keep[1]]) - (
            a[keep[1]] - o[keep[1]]
        ) * (b[keep[0]] - o[keep[0]])

    lower: list[Point3] = []
    for p in uniq:
        while len(lower) > 1 and cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point3] = []
    for p in reversed(uniq):
        while len(upper) > 1 and cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def convex_hull(points: list[Point4]) -> NewtonPolytope:
    """Exact hull with vertices and true 1-faces of the Newton polytope."""
    pts4 = sorted(set(points))
    proj = [p[:3] for p in pts4]
    lift = {p3: p4 for p3, p4 in zip(proj, pts4)}
    if len(lift) != len(pts4):
        raise ValueError("projection to the first three coordinates is not injective")
    tris = _triangulated_hull(proj)

    facets: dict[tuple[Point3, int], set[Point3]] = {}
    for face in tris:
        plane = _canonical_plane(proj, face)
        facets.setdefault(plane, set()).update(proj[i] for i in face)
    # each facet polygon is the 2D hull of all points on its plane
    for (n, c), members in facets.items():
        members.update(p for p in proj if _dot(n, p) == c)

    vertex_set: set[Point3] = set()
    edge_set: set[tuple[Point3, Point3]] = set()
    for (n, c), members in facets.items():
        poly = _hull_2d(sorted(members), n)
        vertex_set.update(poly)
        for a, b in zip(poly, poly[1:] + poly[:1]):
            edge_set.add((min(a, b), max(a, b)))

    vertices4 = tuple(sorted(lift[v] for v in vertex_set))
    index = {v: i for i, v in enumerate(vertices4)}
    edges = tuple(
        sorted(
            (min(index[lift[a]], index[lift[b]]), max(index[lift[a]], index[lift[b]]))
            for a, b in edge_set
        )
    )
    poly = NewtonPolytope(
        points=tuple(pts4),
        vertices=vertices4,
        edges=edges,
        facet_planes=tuple(sorted(facets.keys())),
    )
    assert all(poly.contains(p) for p in pts4)
    return poly


def newton_polytope(w: WeightSystem) -> NewtonPolytope:
    return convex_hull(enumerate_points(w))


def edge_lattice_count(p: NewtonPolytope) -> int:
    """l(Delta^[1]): lattice points on the union of edges.

    Interior points per edge come from the gcd of the coordinate differences;
    vertices are counted once.
    """
    interior = 0
    for v, u in p.edge_endpoints():
        diff = [abs(a - b) for a, b in zip(v, u)]
        g = 0
        for d in diff:
            g = gcd(g, d)
        interior += g - 1
    return interior + len(p.vertices)
