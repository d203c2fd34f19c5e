"""Independent oracles the tests check the library against.

Nothing here calls the library's surface, homology, or enumeration
code. Shared conventions (coordinate layout, gluing record shape) are
reimplemented from scratch so that agreement means two separate
computations produced the same answer, not one computation ran twice.
"""

from itertools import combinations

import numpy as np


class UF:
    """Minimal union-find, local to the oracles."""

    def __init__(self, items=()):
        self.parent = {}
        for x in items:
            self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        p.setdefault(x, x)
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def same(self, a, b):
        return self.find(a) == self.find(b)

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


# ---------------------------------------------------------------------------
# 3D surface cell counts by raw orbit counting.

_FACES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def _omitted(face):
    return ({0, 1, 2, 3} - set(face)).pop()


def _pair_offset(a, b):
    """Block offset (4..6) of the quad type separating {a,b} off."""
    lo, hi = min(a, b), max(a, b)
    if lo == 0:
        return 3 + hi
    return 3 + ({1, 2, 3} - {lo, hi}).pop()


def _crossing_offsets(a, b):
    return {4, 5, 6} - {_pair_offset(a, b)}


def _block(v, t):
    return v[7 * t: 7 * (t + 1)]


def _quad(block):
    for k in (4, 5, 6):
        if block[k]:
            return k, block[k]
    return None, 0


def _edge_w(block, a, b):
    qoff, q = _quad(block)
    w = block[a] + block[b]
    if qoff in _crossing_offsets(a, b):
        w += q
    return w


def _arc_count(block, x, d):
    qoff, q = _quad(block)
    n = block[x]
    if qoff == _pair_offset(x, d):
        n += q
    return n


def _point_slot(v, t, x, y, p_from_x):
    a, b = min(x, y), max(x, y)
    w = _edge_w(_block(v, t), a, b)
    p = p_from_x if x == a else w + 1 - p_from_x
    return (t, a, b, p)


def _disk_of_arc(v, t, x, d, depth):
    block = _block(v, t)
    if depth <= block[x]:
        return ("tri", t, x, depth)
    qoff, q = _quad(block)
    j = depth - block[x]
    if x != 0 and x != qoff - 3:
        j = q + 1 - j
    return ("quad", t, j)


def surface_cell_counts(tri, v):
    """(V, E, F, chi, components, boundary circles) for an admissible
    solution vector, rebuilt from named point/arc/disk slots.
    """
    nt = tri.tet_count
    points = UF()
    arcs = UF()
    all_disks = []
    for t in range(nt):
        block = _block(v, t)
        qoff, q = _quad(block)
        for x in range(4):
            all_disks.extend(("tri", t, x, i)
                             for i in range(1, block[x] + 1))
        all_disks.extend(("quad", t, j) for j in range(1, q + 1))
        for a, b in combinations(range(4), 2):
            for p in range(1, _edge_w(block, a, b) + 1):
                points.find((t, a, b, p))
        for face in _FACES:
            d = _omitted(face)
            for x in face:
                for k in range(1, _arc_count(block, x, d) + 1):
                    arcs.find((t, face, x, k))

    for (ta, fa), (tb, fb), vmap in tri.interior_face_pairs():
        da, db = _omitted(fa), _omitted(fb)
        for x in fa:
            for k in range(1, _arc_count(_block(v, ta), x, da) + 1):
                arcs.union((ta, fa, x, k), (tb, fb, vmap[x], k))
        for x, y in combinations(fa, 2):
            w = _edge_w(_block(v, ta), x, y)
            for p in range(1, w + 1):
                points.union(_point_slot(v, ta, x, y, p),
                             _point_slot(v, tb, vmap[x], vmap[y], p))

    V = len(points.groups())
    arc_groups = arcs.groups()
    E = len(arc_groups)
    F = len(all_disks)

    comp = UF(all_disks)
    for members in arc_groups.values():
        disks_here = [_disk_of_arc(v, t, x, _omitted(face), k)
                      for (t, face, x, k) in members]
        for other in disks_here[1:]:
            comp.union(disks_here[0], other)
    components = len(comp.groups()) if all_disks else 0

    interior = set()
    for (ta, fa), (tb, fb), _ in tri.interior_face_pairs():
        interior.add((ta, fa))
        interior.add((tb, fb))
    boundary_arcs = [a for a in arc_groups.values()
                     if len(a) == 1 and (a[0][0], a[0][1]) not in interior]
    circle_uf = UF(a[0] for a in boundary_arcs)
    endpoint_map = {}
    for (slot,) in boundary_arcs:
        t, face, x, k = slot
        for other in face:
            if other != x:
                pt = points.find(_point_slot(v, t, x, other, k))
                endpoint_map.setdefault(pt, []).append(slot)
    for incident in endpoint_map.values():
        assert len(incident) == 2, incident
        circle_uf.union(*incident)
    circles = len(circle_uf.groups())
    return V, E, F, V - E + F, components, circles


# ---------------------------------------------------------------------------
# 2D curve components by endpoint-position arithmetic.

def trace_curve_components(surf, v):
    arcs = set()
    for i in range(surf.triangle_count):
        for x in range(3):
            for d in range(1, v[3 * i + x] + 1):
                arcs.add((i, x, d))

    def endpoint(i, x, d, other):
        e = (min(x, other), max(x, other))
        ax = v[3 * i + x]
        ao = v[3 * i + other]
        pos = d if x == e[0] else ax + ao + 1 - d
        return (i, e, pos)

    point_arcs = {}
    for (i, x, d) in arcs:
        for other in range(3):
            if other == x:
                continue
            point_arcs.setdefault(endpoint(i, x, d, other), []).append(
                (i, x, d))
    uf = UF(arcs)
    for (i, e), (j, je), vmap in surf.interior_edge_pairs():
        total = v[3 * i + e[0]] + v[3 * i + e[1]]
        for pos in range(1, total + 1):
            jpos = pos if vmap[e[0]] == je[0] else total + 1 - pos
            (a,) = point_arcs[(i, e, pos)]
            (b,) = point_arcs[(j, je, jpos)]
            uf.union(a, b)
    return len(uf.groups()) if arcs else 0


def triangle_component_uf(surf):
    """Flood fill of triangles across interior edge gluings."""
    uf = UF(range(surf.triangle_count))
    for (i, _), (j, _), _ in surf.interior_edge_pairs():
        uf.union(i, j)
    return uf


def random_surface(rng, max_triangles=6):
    """Random valid bounded 2D triangulation (possibly disconnected)."""
    from normsurf.curves2d import SurfaceTriangulation

    n = rng.randint(1, max_triangles)
    names = [f"T{k}" for k in range(n)]
    spots = [(k, e) for k in range(n) for e in ((0, 1), (0, 2), (1, 2))]
    rng.shuffle(spots)
    records = []
    used = set()
    for a in range(0, len(spots) - 1, 2):
        if rng.random() < 0.45:
            continue
        s1, s2 = spots[a], spots[a + 1]
        if s1 in used or s2 in used or s1 == s2:
            continue
        used.add(s1)
        used.add(s2)
        image = list(s2[1])
        if rng.random() < 0.5:
            image.reverse()
        records.append((names[s1[0]], s1[1], names[s2[0]], tuple(image)))
    return SurfaceTriangulation(names, records, infer_reciprocals=True)


# ---------------------------------------------------------------------------
# Bounded brute-force solving for Hilbert-basis cross-checks.

def bounded_solutions(system, bound):
    """Every solution with all coordinates <= bound, as a set of tuples.

    Exhaustive grid over the non-forced variables, fully vectorized.
    """
    n = system.variable_count
    forced = set(system.forced_zeros)
    free = [i for i in range(n) if i not in forced]
    if not free:
        grid = np.zeros((1, n), dtype=np.int16)
    else:
        axes = np.indices((bound + 1,) * len(free), dtype=np.int16)
        flat = axes.reshape(len(free), -1).T
        grid = np.zeros((flat.shape[0], n), dtype=np.int16)
        grid[:, free] = flat
    mask = np.ones(grid.shape[0], dtype=bool)
    for (i, j, k, l) in system.equations:
        mask &= grid[:, i] + grid[:, j] == grid[:, k] + grid[:, l]
    return {tuple(int(x) for x in row) for row in grid[mask]}


def minimal_nonzero(solutions):
    """Members with no other nonzero solution below them coordinatewise.

    Correct for any downward-closed bounded slice: a witness of
    non-minimality is itself below the bound.
    """
    rows = sorted(s for s in solutions if any(s))
    if not rows:
        return set()
    arr = np.array(rows, dtype=np.int16)
    le = (arr[None, :, :] <= arr[:, None, :]).all(axis=2)
    dominated_count = le.sum(axis=1)
    return {tuple(int(x) for x in arr[i])
            for i in range(len(rows)) if dominated_count[i] == 1}


def decomposes_over(vector, basis):
    """Is the vector a nonnegative integer combination of basis members?"""
    basis = [b for b in basis
             if all(x <= y for x, y in zip(b, vector)) and any(b)]
    seen = set()

    def go(v):
        if not any(v):
            return True
        if v in seen:
            return False
        seen.add(v)
        for b in basis:
            if all(x <= y for x, y in zip(b, v)):
                if go(tuple(y - x for x, y in zip(b, v))):
                    return True
        return False

    return go(tuple(vector))


def random_quad_system(rng, max_vars=8, forced_allowed=True):
    """Random small homogeneous system in the library's equation shape."""
    from normsurf.matching import MatchingSystem

    n = rng.randint(3, max_vars)
    n_eqs = rng.randint(max(1, n // 2), n + 1)
    eqs = []
    for _ in range(n_eqs):
        i, j, k, l = (rng.randrange(n) for _ in range(4))
        eqs.append((i, j, k, l))
    forced = frozenset()
    if forced_allowed and rng.random() < 0.4:
        forced = frozenset(rng.sample(range(n), rng.randint(1, 2)))
    return MatchingSystem(
        variable_count=n,
        equations=tuple(eqs),
        forced_zeros=forced,
        quad_triples=(),
        equation_labels=tuple(f"e{m}" for m in range(len(eqs))))
