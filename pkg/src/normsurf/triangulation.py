"""Triangulated 3-manifolds given as tetrahedra glued along faces.

A triangulation is a list of named tetrahedra together with a partial
gluing map on faces. A face is named by its tetrahedron and the ordered
triple of vertex labels it spans; a gluing record `A(abc) -> B(xyz)`
identifies the two faces by the vertex bijection a->x, b->y, c->z.
Unglued faces form the boundary.

The skeleton computation closes vertices and edges under the gluing
orbits, producing the vertex classes and edge classes of the underlying
cell complex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import TriangulationError
from .union_find import UnionFind

Face = tuple[int, int, int]
Edge = tuple[int, int]
FaceSpot = tuple[int, Face]

FACES: tuple[Face, ...] = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
EDGES: tuple[Edge, ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

GluingRecord = tuple[str, Sequence[int], str, Sequence[int]]


def face_omitting(d: int) -> Face:
    """The sorted face triple not containing vertex d."""
    return tuple(v for v in range(4) if v != d)  # type: ignore[return-value]


def omitted_vertex(face: Face) -> int:
    return 6 - sum(face)


def _check_triple(t: Sequence[int], what: str) -> tuple[int, int, int]:
    t = tuple(t)
    if len(t) != 3 or len(set(t)) != 3 or not all(v in (0, 1, 2, 3) for v in t):
        raise TriangulationError(
            f"{what} must be three distinct vertex labels in 0..3, got {t!r}")
    return t  # type: ignore[return-value]


class Triangulation:
    """Immutable gluing data for a set of tetrahedra.

    The gluing map is stored one direction per record as given; use
    `infer_reciprocals=True` (the parser does) to complete each record
    with its inverse. Directly constructed objects may be incomplete or
    inconsistent; `validate` reports that instead of the constructor
    raising, so that broken inputs can be examined.
    """

    def __init__(
        self,
        tetrahedra: Sequence[str],
        gluings: Iterable[GluingRecord] = (),
        *,
        infer_reciprocals: bool = False,
        metadata: Optional[Mapping] = None,
    ):
        names = tuple(tetrahedra)
        if len(set(names)) != len(names):
            raise TriangulationError("tetrahedron names must be unique")
        if not all(isinstance(n, str) and n for n in names):
            raise TriangulationError("tetrahedron names must be nonempty strings")
        self.tetrahedra = names
        self._index = {n: i for i, n in enumerate(names)}
        self.metadata = dict(metadata) if metadata else {}
        # Directed map: (tet, sorted face) -> (tet, image triple aligned
        # with the sorted source face).
        self._glue: dict[FaceSpot, tuple[int, tuple[int, int, int]]] = {}
        for tet, face, to_tet, verts in gluings:
            self._add_record(tet, face, to_tet, verts)
        if infer_reciprocals:
            for (i, face), (j, image) in list(self._glue.items()):
                back_face = tuple(sorted(image))
                back_image = tuple(
                    face[image.index(v)] for v in back_face)
                self._add_record(
                    self.tetrahedra[j], back_face,
                    self.tetrahedra[i], back_image)

    def _add_record(self, tet: str, face, to_tet: str, verts) -> None:
        if tet not in self._index:
            raise TriangulationError(f"unknown tetrahedron name {tet!r}")
        if to_tet not in self._index:
            raise TriangulationError(f"unknown tetrahedron name {to_tet!r}")
        face = _check_triple(face, "face")
        verts = _check_triple(verts, "glued vertex triple")
        order = sorted(range(3), key=lambda k: face[k])
        key: FaceSpot = (self._index[tet], tuple(face[k] for k in order))
        value = (self._index[to_tet], tuple(verts[k] for k in order))
        existing = self._glue.get(key)
        if existing is not None and existing != value:
            raise TriangulationError(
                f"duplicate gluing for face {self.format_face(*key)}: "
                f"{self.format_face(*existing)} conflicts with "
                f"{self.format_face(value[0], value[1])}")
        self._glue[key] = value

    # -- basic accessors ------------------------------------------------

    @property
    def tet_count(self) -> int:
        return len(self.tetrahedra)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise TriangulationError(f"unknown tetrahedron name {name!r}") from None

    def name(self, i: int) -> str:
        return self.tetrahedra[i]

    def glued_to(self, tet: int, face: Face) -> Optional[tuple[int, tuple[int, int, int]]]:
        """Target of a face, as (tet index, image triple aligned with the
        sorted face), or None for a boundary face."""
        return self._glue.get((tet, tuple(sorted(face))))

    def vertex_map(self, tet: int, face: Face) -> Optional[dict[int, int]]:
        """The gluing bijection on the three face vertices, or None."""
        target = self.glued_to(tet, face)
        if target is None:
            return None
        src = tuple(sorted(face))
        return dict(zip(src, target[1]))

    def face_spots(self) -> list[FaceSpot]:
        return [(i, f) for i in range(self.tet_count) for f in FACES]

    def boundary_faces(self) -> list[FaceSpot]:
        return [spot for spot in self.face_spots() if spot not in self._glue]

    def interior_face_pairs(self) -> list[tuple[FaceSpot, FaceSpot, dict[int, int]]]:
        """One entry per interior face class, in first-seen file order.

        Each entry is (source spot, target spot, vertex bijection on the
        source face). The source is the earlier (tet, face) in tet/file
        order, so generated equation order is reproducible.
        """
        seen: set[FaceSpot] = set()
        pairs = []
        for spot in self.face_spots():
            if spot in seen or spot not in self._glue:
                continue
            j, image = self._glue[spot]
            target: FaceSpot = (j, tuple(sorted(image)))
            seen.add(spot)
            seen.add(target)
            pairs.append((spot, target, dict(zip(spot[1], image))))
        return pairs

    def is_connected(self) -> bool:
        uf = UnionFind(range(self.tet_count))
        for (i, _), (j, _), _ in self.interior_face_pairs():
            uf.union(i, j)
        return len({uf.find(i) for i in range(self.tet_count)}) <= 1

    # -- display --------------------------------------------------------

    def format_face(self, tet: int, verts: Sequence[int]) -> str:
        return f"{self.tetrahedra[tet]}({''.join(map(str, verts))})"

    def format_edge(self, tet: int, edge: Sequence[int]) -> str:
        return f"{self.tetrahedra[tet]}({''.join(map(str, edge))})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Triangulation)
                and self.tetrahedra == other.tetrahedra
                and self._glue == other._glue)

    def __repr__(self) -> str:
        return (f"Triangulation({len(self.tetrahedra)} tetrahedra, "
                f"{len(self._glue)} directed gluings)")


def validate(tri: Triangulation) -> list[str]:
    """Check gluing consistency; return a list of violations (empty = OK).

    Violations checked: a face glued to itself, a gluing whose reciprocal
    is missing, and a gluing whose reciprocal is not the inverse
    bijection. Malformed records (unknown names, bad triples, two targets
    for one face) cannot be represented and are constructor errors.
    """
    problems = []
    for (i, face), (j, image) in tri._glue.items():
        if (j, tuple(sorted(image))) == (i, face):
            problems.append(
                f"self-gluing: face {tri.format_face(i, face)} is glued to itself")
            continue
        back = tri._glue.get((j, tuple(sorted(image))))
        if back is None:
            problems.append(
                f"involution violation: {tri.format_face(i, face)} -> "
                f"{tri.format_face(j, image)} has no reciprocal gluing")
            continue
        back_face = tuple(sorted(image))
        expected = tuple(face[image.index(v)] for v in back_face)
        if back != (i, expected):
            problems.append(
                f"involution violation: {tri.format_face(j, back_face)} -> "
                f"{tri.format_face(*back)} is not the inverse of "
                f"{tri.format_face(i, face)} -> {tri.format_face(j, image)}")
    return problems


def require_valid(tri: Triangulation) -> None:
    problems = validate(tri)
    if problems:
        raise TriangulationError(
            "invalid triangulation: " + "; ".join(problems))


# -- skeleton ------------------------------------------------------------


@dataclass
class VertexClass:
    index: int
    members: tuple[tuple[int, int], ...]
    boundary: bool

    @property
    def degree(self) -> int:
        return len(self.members)


@dataclass
class EdgeClass:
    """An edge of the glued complex.

    members lists (tet, sorted vertex pair). directions maps each member
    to the ordered pair that traverses the class in its reference
    direction (the sorted direction of the least member). inverted marks
    classes that some gluing path maps onto themselves reversed; such a
    class carries no consistent direction.
    """

    index: int
    members: tuple[tuple[int, Edge], ...]
    boundary: bool
    inverted: bool
    directions: dict[tuple[int, Edge], tuple[int, int]]

    @property
    def degree(self) -> int:
        return len(self.members)


@dataclass
class Skeleton:
    vertex_classes: tuple[VertexClass, ...]
    edge_classes: tuple[EdgeClass, ...]
    vertex_class_of: dict[tuple[int, int], int]
    edge_class_of: dict[tuple[int, Edge], int]


def compute_skeleton(tri: Triangulation) -> Skeleton:
    """Vertex and edge classes under the gluing orbits.

    Requires a valid triangulation. Edge orbits are tracked on directed
    edges so each class gets a consistent orientation when one exists.
    """
    require_valid(tri)

    corners = UnionFind(
        (i, v) for i in range(tri.tet_count) for v in range(4))
    directed = UnionFind(
        (i, (u, v))
        for i in range(tri.tet_count)
        for u in range(4) for v in range(4) if u != v)

    for (i, face), (j, _), vmap in tri.interior_face_pairs():
        for v in face:
            corners.union((i, v), (j, vmap[v]))
        for u in face:
            for v in face:
                if u != v:
                    directed.union((i, (u, v)), (j, (vmap[u], vmap[v])))

    boundary_corners: set[tuple[int, int]] = set()
    boundary_edges: set[tuple[int, Edge]] = set()
    for (i, face) in tri.boundary_faces():
        for v in face:
            boundary_corners.add((i, v))
        for a in face:
            for b in face:
                if a < b:
                    boundary_edges.add((i, (a, b)))

    vertex_groups = sorted(corners.groups().values(), key=lambda g: g[0])
    vertex_classes = []
    vertex_class_of = {}
    for idx, members in enumerate(vertex_groups):
        vc = VertexClass(
            index=idx,
            members=tuple(members),
            boundary=any(m in boundary_corners for m in members))
        vertex_classes.append(vc)
        for m in members:
            vertex_class_of[m] = idx

    # Collapse directed orbits to undirected classes.
    edge_items = sorted(
        {(i, (min(u, v), max(u, v)))
         for i in range(tri.tet_count)
         for u in range(4) for v in range(4) if u != v})
    undirected = UnionFind(edge_items)
    for i, (a, b) in edge_items:
        root = directed.find((i, (a, b)))
        ri, (ru, rv) = root
        undirected.union((i, (a, b)), (ri, (min(ru, rv), max(ru, rv))))
        rev = directed.find((i, (b, a)))
        ri, (ru, rv) = rev
        undirected.union((i, (a, b)), (ri, (min(ru, rv), max(ru, rv))))

    edge_groups = sorted(undirected.groups().values(), key=lambda g: g[0])
    edge_classes = []
    edge_class_of = {}
    for idx, members in enumerate(edge_groups):
        rep = members[0]
        rep_dir = (rep[0], rep[1])
        inverted = directed.same(rep_dir, (rep[0], (rep[1][1], rep[1][0])))
        directions = {}
        for (t, (a, b)) in members:
            if inverted:
                directions[(t, (a, b))] = (a, b)
            elif directed.same((t, (a, b)), rep_dir):
                directions[(t, (a, b))] = (a, b)
            else:
                directions[(t, (a, b))] = (b, a)
        ec = EdgeClass(
            index=idx,
            members=tuple(members),
            boundary=any(m in boundary_edges for m in members),
            inverted=inverted,
            directions=directions)
        edge_classes.append(ec)
        for m in members:
            edge_class_of[m] = idx

    return Skeleton(
        vertex_classes=tuple(vertex_classes),
        edge_classes=tuple(edge_classes),
        vertex_class_of=vertex_class_of,
        edge_class_of=edge_class_of)


# -- link specifications --------------------------------------------------


@dataclass(frozen=True)
class EdgeCycle:
    """A closed loop in the 1-skeleton, one directed edge per step.

    Each step names a representative (tetrahedron, ordered vertex pair);
    the edge class is resolved through the skeleton.
    """

    edges: tuple[tuple[str, tuple[int, int]], ...]


@dataclass(frozen=True)
class IdealVertex:
    """A link component represented by a single vertex class."""

    tet: str
    vertex: int


LinkComponent = Union[EdgeCycle, IdealVertex]


@dataclass(frozen=True)
class LinkSpec:
    components: tuple[LinkComponent, ...]


@dataclass
class ResolvedLink:
    """Link components resolved against a skeleton.

    edge_cycles holds, per EdgeCycle component, the tuple of edge class
    indices; vertex_components holds, per IdealVertex component, the
    vertex class index. component_kinds preserves input order.
    """

    components: tuple[LinkComponent, ...]
    edge_cycles: tuple[tuple[int, ...], ...]
    vertex_components: tuple[int, ...]


def resolve_link(
    tri: Triangulation,
    link: LinkSpec,
    skeleton: Optional[Skeleton] = None,
    *,
    require_two_components: bool = True,
) -> ResolvedLink:
    """Validate a link against a triangulation and resolve its classes.

    Checks: exactly two components (unless waived), every reference
    names a real tetrahedron vertex or edge, every EdgeCycle closes up
    through the vertex classes, and components are disjoint (no shared
    edge class, no shared vertex class).
    """
    skel = skeleton if skeleton is not None else compute_skeleton(tri)
    if require_two_components and len(link.components) != 2:
        raise TriangulationError(
            f"link must have exactly 2 components, got {len(link.components)}")

    edge_cycles = []
    vertex_components = []
    used_edge_classes: list[set[int]] = []
    used_vertex_classes: list[set[int]] = []

    for comp in link.components:
        if isinstance(comp, IdealVertex):
            t = tri.index(comp.tet)
            if comp.vertex not in (0, 1, 2, 3):
                raise TriangulationError(
                    f"vertex label must be in 0..3, got {comp.vertex}")
            vc = skel.vertex_class_of[(t, comp.vertex)]
            vertex_components.append(vc)
            used_edge_classes.append(set())
            used_vertex_classes.append({vc})
        elif isinstance(comp, EdgeCycle):
            if not comp.edges:
                raise TriangulationError("edge cycle must be nonempty")
            classes = []
            heads = []
            tails = []
            for tet_name, (u, v) in comp.edges:
                t = tri.index(tet_name)
                if u == v or not {u, v} <= {0, 1, 2, 3}:
                    raise TriangulationError(
                        f"bad edge reference {tet_name}({u}{v})")
                classes.append(skel.edge_class_of[(t, (min(u, v), max(u, v)))])
                tails.append(skel.vertex_class_of[(t, u)])
                heads.append(skel.vertex_class_of[(t, v)])
            n = len(comp.edges)
            for k in range(n):
                if heads[k] != tails[(k + 1) % n]:
                    raise TriangulationError(
                        "edge cycle does not close up: step "
                        f"{k} ends at vertex class {heads[k]} but step "
                        f"{(k + 1) % n} starts at {tails[(k + 1) % n]}")
            edge_cycles.append(tuple(classes))
            used_edge_classes.append(set(classes))
            used_vertex_classes.append(set(heads) | set(tails))
        else:
            raise TriangulationError(f"unknown link component {comp!r}")

    for a in range(len(link.components)):
        for b in range(a + 1, len(link.components)):
            if used_edge_classes[a] & used_edge_classes[b]:
                raise TriangulationError(
                    "link components are not disjoint: shared edge class")
            if used_vertex_classes[a] & used_vertex_classes[b]:
                raise TriangulationError(
                    "link components are not disjoint: shared vertex class")

    return ResolvedLink(
        components=link.components,
        edge_cycles=tuple(edge_cycles),
        vertex_components=tuple(vertex_components))


# -- serialization ---------------------------------------------------------


def _json_error(exc: json.JSONDecodeError) -> TriangulationError:
    return TriangulationError(
        f"syntax error at line {exc.lineno} column {exc.colno}: {exc.msg}")


def parse_triangulation(text: str) -> Triangulation:
    """Read the JSON triangulation format.

    Shape: {"tetrahedra": ["p", ...], "gluings": [{"tet": "p",
    "face": [0,1,2], "to": {"tet": "3", "verts": [3,2,0]}}, ...]}.
    A gluing may be listed from either or both sides; missing reciprocals
    are inferred, conflicting ones rejected.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _json_error(exc) from None
    if not isinstance(doc, dict):
        raise TriangulationError("top-level value must be an object")
    tets = doc.get("tetrahedra")
    if not isinstance(tets, list) or not tets:
        raise TriangulationError('"tetrahedra" must be a nonempty list of names')
    gluings_doc = doc.get("gluings", [])
    if not isinstance(gluings_doc, list):
        raise TriangulationError('"gluings" must be a list')
    records = []
    for k, rec in enumerate(gluings_doc):
        try:
            to = rec["to"]
            records.append((rec["tet"], rec["face"], to["tet"], to["verts"]))
        except (TypeError, KeyError):
            raise TriangulationError(
                f"gluing record {k} is malformed; expected "
                '{"tet", "face", "to": {"tet", "verts"}}') from None
    metadata = doc.get("metadata")
    if metadata is not None and not isinstance(metadata, dict):
        raise TriangulationError('"metadata" must be an object')
    return Triangulation(
        tets, records, infer_reciprocals=True, metadata=metadata)


def serialize_triangulation(tri: Triangulation) -> str:
    """Write the JSON format; both directions of each gluing are listed."""
    gluings = []
    for i in range(tri.tet_count):
        for face in FACES:
            target = tri.glued_to(i, face)
            if target is None:
                continue
            gluings.append({
                "tet": tri.name(i),
                "face": list(face),
                "to": {"tet": tri.name(target[0]), "verts": list(target[1])},
            })
    doc: dict = {"tetrahedra": list(tri.tetrahedra), "gluings": gluings}
    if tri.metadata:
        doc["metadata"] = tri.metadata
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _parse_component(obj) -> LinkComponent:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise TriangulationError(
            'each link component must be {"edgeCycle": [...]} or '
            '{"idealVertex": {...}}')
    if "edgeCycle" in obj:
        steps = obj["edgeCycle"]
        if not isinstance(steps, list) or not steps:
            raise TriangulationError('"edgeCycle" must be a nonempty list')
        edges = []
        for step in steps:
            try:
                u, v = step["edge"]
                edges.append((step["tet"], (int(u), int(v))))
            except (TypeError, KeyError, ValueError):
                raise TriangulationError(
                    f"bad edge cycle step {step!r}") from None
        return EdgeCycle(edges=tuple(edges))
    if "idealVertex" in obj:
        iv = obj["idealVertex"]
        try:
            return IdealVertex(tet=iv["tet"], vertex=int(iv["vertex"]))
        except (TypeError, KeyError, ValueError):
            raise TriangulationError(f"bad idealVertex component {iv!r}") from None
    raise TriangulationError(f"unknown link component keys {sorted(obj)}")


def parse_link(text: str) -> LinkSpec:
    """Read the JSON link format: {"components": [component, ...]}."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _json_error(exc) from None
    if not isinstance(doc, dict) or "components" not in doc:
        raise TriangulationError('link file must be {"components": [...]}')
    comps = doc["components"]
    if not isinstance(comps, list):
        raise TriangulationError('"components" must be a list')
    return LinkSpec(components=tuple(_parse_component(c) for c in comps))


def serialize_link(link: LinkSpec) -> str:
    comps = []
    for comp in link.components:
        if isinstance(comp, IdealVertex):
            comps.append({"idealVertex": {"tet": comp.tet, "vertex": comp.vertex}})
        else:
            comps.append({"edgeCycle": [
                {"tet": tet, "edge": [u, v]} for tet, (u, v) in comp.edges]})
    return json.dumps({"components": comps}, indent=2, sort_keys=True) + "\n"


def parse_link_component(text: str) -> LinkComponent:
    """Read a standalone component file: {"edgeCycle": [...]} or
    {"idealVertex": {"tet": ..., "vertex": ...}}."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _json_error(exc) from None
    if not isinstance(doc, dict):
        raise TriangulationError("component file must be a JSON object")
    for key in ("edgeCycle", "idealVertex"):
        if key in doc:
            return _parse_component({key: doc[key]})
    raise TriangulationError(
        'component file must contain "edgeCycle" or "idealVertex"')


def serialize_link_component(comp: LinkComponent) -> str:
    if isinstance(comp, IdealVertex):
        doc: dict = {"idealVertex": {"tet": comp.tet, "vertex": comp.vertex}}
    else:
        doc = {"edgeCycle": [
            {"tet": tet, "edge": [u, v]} for tet, (u, v) in comp.edges]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_cycle(text: str) -> EdgeCycle:
    """Read a standalone cycle file: {"edgeCycle": [...]}."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _json_error(exc) from None
    if not isinstance(doc, dict) or "edgeCycle" not in doc:
        raise TriangulationError('cycle file must be {"edgeCycle": [...]}')
    comp = _parse_component({"edgeCycle": doc["edgeCycle"]})
    assert isinstance(comp, EdgeCycle)
    return comp


def serialize_cycle(cycle: EdgeCycle) -> str:
    return json.dumps(
        {"edgeCycle": [
            {"tet": tet, "edge": [u, v]} for tet, (u, v) in cycle.edges]},
        indent=2, sort_keys=True) + "\n"
