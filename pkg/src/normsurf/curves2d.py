"""Normal curves on triangulated surfaces.

The two-dimensional warm-up for the rest of the package. A normal
curve meets each triangle in elementary arcs; an arc cuts off one
vertex, its two endpoints on the two edges at that vertex, so a curve
is a vector in Z^{3t} with per-triangle blocks [a0, a1, a2]. One
matching equation per interior edge makes the crossing counts agree
across the gluing, and any nonnegative solution is realized by a
disjoint family of arcs and closed curves. There is no admissibility
side-condition in 2D: solutions add coordinatewise.

Two boundary points are joined by a normal path exactly when the
system, constrained to put one arc endpoint on each of their edges and
none on any other boundary edge, has a solution; and then a fundamental
one, because a minimal-weight solution cannot split. (Endpoint totals
are even for every solution, so a decomposition must send both marked
endpoints to the same summand, contradicting minimality.) That makes
connectivity checkable by fundamental enumeration alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import TriangulationError, VectorError
from .hilbert import DEFAULT_MAX_CANDIDATES, enumerate_fundamental
from .matching import MatchingSystem, is_solution
from .union_find import UnionFind

CURVE_BLOCK = 3
EDGES_2D = ((0, 1), (0, 2), (1, 2))

CurveVector = tuple[int, ...]
EdgeSpot2D = tuple[int, tuple[int, int]]
EdgeRef = tuple[str, tuple[int, int]]


def _check_pair(p: Sequence[int], what: str) -> tuple[int, int]:
    p = tuple(p)
    if len(p) != 2 or len(set(p)) != 2 or not all(v in (0, 1, 2) for v in p):
        raise TriangulationError(
            f"{what} must be two distinct vertex labels in 0..2, got {p!r}")
    return p  # type: ignore[return-value]


class SurfaceTriangulation:
    """Immutable edge-gluing data for a set of triangles.

    Mirrors Triangulation one dimension down: records are
    (triangle, edge pair, to triangle, image pair), stored one direction
    each; `infer_reciprocals=True` completes them. `validate_surface`
    reports inconsistencies instead of the constructor raising.
    """

    def __init__(
        self,
        triangles: Sequence[str],
        gluings: Iterable[tuple] = (),
        *,
        infer_reciprocals: bool = False,
        metadata: Optional[Mapping] = None,
    ):
        names = tuple(triangles)
        if len(set(names)) != len(names):
            raise TriangulationError("triangle names must be unique")
        if not all(isinstance(n, str) and n for n in names):
            raise TriangulationError("triangle names must be nonempty strings")
        self.triangles = names
        self._index = {n: i for i, n in enumerate(names)}
        self.metadata = dict(metadata) if metadata else {}
        # Directed map: (triangle, sorted edge) -> (triangle, image pair
        # aligned with the sorted source edge).
        self._glue: dict[EdgeSpot2D, tuple[int, tuple[int, int]]] = {}
        for tri, edge, to_tri, verts in gluings:
            self._add_record(tri, edge, to_tri, verts)
        if infer_reciprocals:
            for (i, edge), (j, image) in list(self._glue.items()):
                back_edge = tuple(sorted(image))
                back_image = tuple(edge[image.index(v)] for v in back_edge)
                self._add_record(
                    self.triangles[j], back_edge,
                    self.triangles[i], back_image)

    def _add_record(self, tri: str, edge, to_tri: str, verts) -> None:
        if tri not in self._index:
            raise TriangulationError(f"unknown triangle name {tri!r}")
        if to_tri not in self._index:
            raise TriangulationError(f"unknown triangle name {to_tri!r}")
        edge = _check_pair(edge, "edge")
        verts = _check_pair(verts, "glued vertex pair")
        if edge[0] > edge[1]:
            edge = (edge[1], edge[0])
            verts = (verts[1], verts[0])
        key: EdgeSpot2D = (self._index[tri], edge)
        value = (self._index[to_tri], verts)
        existing = self._glue.get(key)
        if existing is not None and existing != value:
            raise TriangulationError(
                f"duplicate gluing for edge {self.format_edge(*key)}: "
                f"{self.format_edge(*existing)} conflicts with "
                f"{self.format_edge(*value)}")
        self._glue[key] = value

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise TriangulationError(f"unknown triangle name {name!r}") from None

    def name(self, i: int) -> str:
        return self.triangles[i]

    def glued_to(self, tri: int, edge: Sequence[int]
                 ) -> Optional[tuple[int, tuple[int, int]]]:
        """Target of an edge, as (triangle index, image pair aligned with
        the sorted edge), or None for a boundary edge."""
        a, b = sorted(edge)
        return self._glue.get((tri, (a, b)))

    def edge_spots(self) -> list[EdgeSpot2D]:
        return [(i, e) for i in range(self.triangle_count) for e in EDGES_2D]

    def boundary_edges(self) -> list[EdgeSpot2D]:
        return [spot for spot in self.edge_spots() if spot not in self._glue]

    def interior_edge_pairs(self
                            ) -> list[tuple[EdgeSpot2D, EdgeSpot2D, dict[int, int]]]:
        """One entry per interior edge class, in first-seen file order,
        as (source spot, target spot, vertex bijection on the source)."""
        seen: set[EdgeSpot2D] = set()
        pairs = []
        for spot in self.edge_spots():
            if spot in seen or spot not in self._glue:
                continue
            j, image = self._glue[spot]
            target: EdgeSpot2D = (j, tuple(sorted(image)))
            seen.add(spot)
            seen.add(target)
            pairs.append((spot, target, dict(zip(spot[1], image))))
        return pairs

    def is_connected(self) -> bool:
        uf = UnionFind(range(self.triangle_count))
        for (i, _), (j, _), _ in self.interior_edge_pairs():
            uf.union(i, j)
        return len({uf.find(i) for i in range(self.triangle_count)}) <= 1

    def format_edge(self, tri: int, verts: Sequence[int]) -> str:
        return f"{self.triangles[tri]}({''.join(map(str, verts))})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, SurfaceTriangulation)
                and self.triangles == other.triangles
                and self._glue == other._glue)

    def __repr__(self) -> str:
        return (f"SurfaceTriangulation({len(self.triangles)} triangles, "
                f"{len(self._glue)} directed gluings)")


def validate_surface(surf: SurfaceTriangulation) -> list[str]:
    """Check gluing consistency; return a list of violations (empty = OK)."""
    problems = []
    for (i, edge), (j, image) in surf._glue.items():
        if (j, tuple(sorted(image))) == (i, edge):
            problems.append(
                f"self-gluing: edge {surf.format_edge(i, edge)} is glued to itself")
            continue
        back = surf._glue.get((j, tuple(sorted(image))))
        if back is None:
            problems.append(
                f"involution violation: {surf.format_edge(i, edge)} -> "
                f"{surf.format_edge(j, image)} has no reciprocal gluing")
            continue
        back_edge = tuple(sorted(image))
        expected = tuple(edge[image.index(v)] for v in back_edge)
        if back != (i, expected):
            problems.append(
                f"involution violation: {surf.format_edge(j, back_edge)} -> "
                f"{surf.format_edge(*back)} is not the inverse of "
                f"{surf.format_edge(i, edge)} -> {surf.format_edge(j, image)}")
    return problems


def require_valid_surface(surf: SurfaceTriangulation) -> None:
    problems = validate_surface(surf)
    if problems:
        raise TriangulationError(
            "invalid surface triangulation: " + "; ".join(problems))


def build_matching_system_2d(surf: SurfaceTriangulation) -> MatchingSystem:
    """One equation per interior edge class.

    For a gluing of triangle A's edge {u, v} onto B's {s(u), s(v)},
    arcs crossing the edge are those cutting off either endpoint, so

        a^A_u + a^A_v = a^B_{s(u)} + a^B_{s(v)}.

    The result reuses MatchingSystem with no quad triples, so the
    fundamental enumerator and solution predicates apply unchanged.
    """
    require_valid_surface(surf)
    equations = []
    labels = []
    for (i, (u, v)), (j, image), vmap in surf.interior_edge_pairs():
        equations.append((
            CURVE_BLOCK * i + u,
            CURVE_BLOCK * i + v,
            CURVE_BLOCK * j + vmap[u],
            CURVE_BLOCK * j + vmap[v],
        ))
        labels.append(f"{surf.format_edge(i, (u, v))} ~ "
                      f"{surf.format_edge(j, (vmap[u], vmap[v]))}")
    return MatchingSystem(
        variable_count=CURVE_BLOCK * surf.triangle_count,
        equations=tuple(equations),
        forced_zeros=frozenset(),
        quad_triples=(),
        equation_labels=tuple(labels))


@dataclass(frozen=True)
class CurveReport:
    """Weight and component count of a normal curve system."""

    weight: int
    components: int


def _edge_crossings(v: Sequence[int], tri: int, edge: tuple[int, int]) -> int:
    u, w = edge
    return v[CURVE_BLOCK * tri + u] + v[CURVE_BLOCK * tri + w]


def _arc_at(v: Sequence[int], tri: int, edge: tuple[int, int],
            pos: int) -> tuple[int, int, int]:
    """The arc crossing an edge at 1-indexed position pos from its lower
    endpoint. Positions run from u to w on edge (u, w): first the arcs
    cutting off u by nesting depth, then the arcs cutting off w in
    reverse depth order."""
    u, w = edge
    au = v[CURVE_BLOCK * tri + u]
    aw = v[CURVE_BLOCK * tri + w]
    if pos <= au:
        return (tri, u, pos)
    return (tri, w, au + aw + 1 - pos)


def analyze_curve(surf: SurfaceTriangulation, v: Sequence[int],
                  system: Optional[MatchingSystem] = None) -> CurveReport:
    """Weight and component count of a solution vector.

    Weight counts crossings per edge class (each interior gluing once).
    Components come from union-find on arcs, glued position-to-position
    across each interior edge.
    """
    sys_ = system if system is not None else build_matching_system_2d(surf)
    v = tuple(int(x) for x in v)
    if not is_solution(sys_, v):
        raise VectorError("vector is not a solution of the 2D system")

    weight = 0
    for (i, edge), _, _ in surf.interior_edge_pairs():
        weight += _edge_crossings(v, i, edge)
    for (i, edge) in surf.boundary_edges():
        weight += _edge_crossings(v, i, edge)

    arcs = UnionFind()
    for i in range(surf.triangle_count):
        for x in range(3):
            for depth in range(1, v[CURVE_BLOCK * i + x] + 1):
                arcs.add((i, x, depth))
    for (i, edge), (j, jedge), vmap in surf.interior_edge_pairs():
        image = (vmap[edge[0]], vmap[edge[1]])
        total = _edge_crossings(v, i, edge)
        for pos in range(1, total + 1):
            a = _arc_at(v, i, edge, pos)
            if image[0] < image[1]:
                b = _arc_at(v, j, jedge, pos)
            else:
                b = _arc_at(v, j, jedge, total + 1 - pos)
            arcs.union(a, b)
    return CurveReport(weight=weight, components=len(arcs.groups()))


def _resolve_boundary_edge(surf: SurfaceTriangulation, ref: EdgeRef,
                           what: str) -> EdgeSpot2D:
    name, pair = ref
    spot: EdgeSpot2D = (surf.index(name), _check_pair(pair, f"{what} edge"))
    a, b = spot[1]
    if a > b:
        spot = (spot[0], (b, a))
    if spot not in set(surf.boundary_edges()):
        raise TriangulationError(
            f"{what} edge {surf.format_edge(*spot)} is not a boundary edge")
    return spot


def connect_boundary_points(
    surf: SurfaceTriangulation,
    edge_p: EdgeRef,
    edge_q: EdgeRef,
    *,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
    time_budget: Optional[float] = None,
) -> Optional[CurveVector]:
    """A normal path joining points on two boundary edges, if one exists.

    Edges are named as (triangle name, vertex pair). Points on the same
    boundary edge are connected along that edge, witnessed by the empty
    curve. Otherwise every other boundary edge is pinned to zero
    endpoints and the fundamental solutions of the constrained system
    are scanned for one with exactly one endpoint on each marked edge;
    the first such vector (lexicographically) is the witness. No
    witness proves the two edges lie on different components of the
    surface, since a connecting path of minimal weight would itself be
    fundamental.
    """
    p = _resolve_boundary_edge(surf, edge_p, "first")
    q = _resolve_boundary_edge(surf, edge_q, "second")
    sys_ = build_matching_system_2d(surf)
    if p == q:
        return tuple([0] * sys_.variable_count)
    zeros = set()
    for (i, (u, w)) in surf.boundary_edges():
        if (i, (u, w)) in (p, q):
            continue
        zeros.add(CURVE_BLOCK * i + u)
        zeros.add(CURVE_BLOCK * i + w)
    constrained = MatchingSystem(
        variable_count=sys_.variable_count,
        equations=sys_.equations,
        forced_zeros=frozenset(zeros),
        quad_triples=(),
        equation_labels=sys_.equation_labels)
    fs = enumerate_fundamental(
        constrained, max_candidates=max_candidates, time_budget=time_budget)
    for v in fs.vectors:
        if _edge_crossings(v, *p) == 1 and _edge_crossings(v, *q) == 1:
            return v
    return None


def parse_surface(text: str) -> SurfaceTriangulation:
    """Read the JSON 2D format.

    Shape mirrors the 3D triangulation format one dimension down:
    {"triangles": ["A", ...], "gluings": [{"tri": "A", "edge": [0,1],
    "to": {"tri": "B", "verts": [2,0]}}, ...]}. Missing reciprocals are
    inferred, conflicting ones rejected.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TriangulationError(
            f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise TriangulationError("top-level value must be an object")
    tris = doc.get("triangles")
    if not isinstance(tris, list) or not tris:
        raise TriangulationError('"triangles" must be a nonempty list of names')
    gluings_doc = doc.get("gluings", [])
    if not isinstance(gluings_doc, list):
        raise TriangulationError('"gluings" must be a list')
    records = []
    for k, rec in enumerate(gluings_doc):
        try:
            to = rec["to"]
            records.append((rec["tri"], rec["edge"], to["tri"], to["verts"]))
        except (TypeError, KeyError):
            raise TriangulationError(
                f"gluing record {k} is malformed; expected "
                '{"tri", "edge", "to": {"tri", "verts"}}') from None
    metadata = doc.get("metadata")
    if metadata is not None and not isinstance(metadata, dict):
        raise TriangulationError('"metadata" must be an object')
    return SurfaceTriangulation(
        tris, records, infer_reciprocals=True, metadata=metadata)


def serialize_surface(surf: SurfaceTriangulation) -> str:
    """Write the JSON format; both directions of each gluing are listed."""
    gluings = []
    for i in range(surf.triangle_count):
        for edge in EDGES_2D:
            target = surf.glued_to(i, edge)
            if target is None:
                continue
            gluings.append({
                "tri": surf.name(i),
                "edge": list(edge),
                "to": {"tri": surf.name(target[0]), "verts": list(target[1])},
            })
    doc: dict = {"triangles": list(surf.triangles), "gluings": gluings}
    if surf.metadata:
        doc["metadata"] = surf.metadata
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
