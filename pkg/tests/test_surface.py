"""Surface reading of solution vectors: cells, components, separation.

The frozen cell counts were derived by hand and re-derived by the
orbit-counting oracle in oracles.py, which rebuilds every crossing
point, arc, and disk from the raw gluings without the library's
surface code.
"""

import random

import pytest

from normsurf.errors import TriangulationError, VectorError
from normsurf.fixtures import fig8_link, single_tet
from normsurf.matching import (all_triangles_vector, haken_sum,
                               is_admissible, vertex_link_vector)
from normsurf.surface import analyze, complement_regions, separates
from normsurf.triangulation import Triangulation

from oracles import surface_cell_counts
from tables import reference_solutions


def cells(report):
    V = report.weight
    F = report.disk_count
    E = V + F - report.euler
    return (V, E, F, report.euler, report.components,
            report.boundary_circles)


def test_first_reference_solution(tri12):
    v = reference_solutions(tri12)[0]
    r = analyze(tri12, v)
    assert cells(r) == (18, 47, 29, 0, 1, 0)
    assert r.closed
    assert not separates(tri12, v, fig8_link())
    assert surface_cell_counts(tri12, v) == (18, 47, 29, 0, 1, 0)


def test_second_reference_solution(tri12):
    v = reference_solutions(tri12)[1]
    r = analyze(tri12, v)
    assert cells(r) == (23, 59, 36, 0, 1, 0)
    assert r.closed
    assert separates(tri12, v, fig8_link())
    assert surface_cell_counts(tri12, v) == (23, 59, 36, 0, 1, 0)


def test_third_reference_solution(tri12, skel12):
    v = reference_solutions(tri12)[2]
    r = analyze(tri12, v)
    assert cells(r) == (1, 3, 2, 0, 1, 0)
    assert r.closed
    assert separates(tri12, v, fig8_link())
    graph = complement_regions(tri12, v)
    assert len(graph.regions) == 2
    # the small-degree vertex class sits alone on its side
    ideal = min(skel12.vertex_classes, key=lambda vc: vc.degree).index
    other_regions = {graph.vertex_region[vc.index]
                     for vc in skel12.vertex_classes if vc.index != ideal}
    assert graph.vertex_region[ideal] not in other_regions
    assert surface_cell_counts(tri12, v) == (1, 3, 2, 0, 1, 0)


def test_zero_vector(tri10):
    v = (0,) * 70
    r = analyze(tri10, v)
    assert cells(r) == (0, 0, 0, 0, 0, 0)
    assert r.closed
    assert len(complement_regions(tri10, v).regions) == 1


def test_all_triangles_10tet(tri10):
    v = all_triangles_vector(tri10)
    r = analyze(tri10, v)
    assert cells(r) == (24, 63, 40, 1, r.components, r.boundary_circles)
    assert not r.closed
    assert surface_cell_counts(tri10, v) == cells(r)


def test_single_tet_corner_disk():
    st = single_tet()
    v = (1, 0, 0, 0, 0, 0, 0)
    r = analyze(st, v)
    assert r.euler == 1
    assert r.components == 1
    assert r.boundary_circles == 1
    assert not r.closed
    graph = complement_regions(st, v)
    assert len(graph.regions) == 2
    assert graph.adjacency == frozenset({(0, 1)})
    assert surface_cell_counts(st, v) == cells(r)


def test_single_tet_quad_stack():
    st = single_tet()
    v = (0, 0, 0, 0, 0, 3, 0)
    assert cells(analyze(st, v)) == surface_cell_counts(st, v)


def test_material_vertex_link_is_separating_sphere(tri12, skel12):
    material = max(skel12.vertex_classes, key=lambda vc: vc.degree).index
    v = vertex_link_vector(tri12, skel12, material)
    r = analyze(tri12, v)
    assert r.euler == 2 and r.components == 1 and r.closed
    graph = complement_regions(tri12, v)
    assert len(graph.regions) == 2
    others = {graph.vertex_region[vc.index]
              for vc in skel12.vertex_classes if vc.index != material}
    assert graph.vertex_region[material] not in others


def test_ideal_vertex_link_is_torus(tri12, skel12):
    ideal = min(skel12.vertex_classes, key=lambda vc: vc.degree).index
    r = analyze(tri12, vertex_link_vector(tri12, skel12, ideal))
    assert r.euler == 0 and r.components == 1 and r.closed


def test_additivity_over_reference_pairs(tri12):
    v1, v2, v3 = reference_solutions(tri12)
    for a, b in ((v1, v2), (v1, v3), (v2, v3)):
        s = haken_sum(a, b)
        ra, rb, rs = analyze(tri12, a), analyze(tri12, b), analyze(tri12, s)
        assert rs.euler == ra.euler + rb.euler
        assert rs.weight == ra.weight + rb.weight


def test_doubling_scales_cells(tri12):
    v = reference_solutions(tri12)[1]
    r1 = analyze(tri12, v)
    r2 = analyze(tri12, tuple(2 * x for x in v))
    assert (r2.euler, r2.weight) == (2 * r1.euler, 2 * r1.weight)


def test_random_sums_match_oracle(tri10, tri12, fund_restricted, fund10):
    rng = random.Random(20260815)
    jobs = ((tri12, fund_restricted.vectors), (tri10, fund10.vectors))
    for tri, vectors in jobs:
        done = 0
        while done < 8:
            picks = rng.sample(vectors, rng.randint(1, 3))
            coeffs = [rng.randint(1, 2) for _ in picks]
            total = tuple(0 for _ in picks[0])
            try:
                for c, p in zip(coeffs, picks):
                    total = haken_sum(total, tuple(c * x for x in p))
            except VectorError:
                continue
            if not is_admissible(total):
                continue
            assert surface_cell_counts(tri, total) == cells(
                analyze(tri, total))
            done += 1


def test_region_count_bounds(tri12, fund_restricted):
    for v in fund_restricted.vectors:
        r = analyze(tri12, v)
        g = complement_regions(tri12, v)
        assert 1 <= len(g.regions) <= r.components + 1


def test_error_paths(tri12):
    v1 = reference_solutions(tri12)[0]
    with pytest.raises(VectorError):
        analyze(tri12, v1[:-1])
    bad = list(v1)
    bad[0] += 1
    with pytest.raises(VectorError):
        analyze(tri12, tuple(bad))
    st = single_tet()
    with pytest.raises(VectorError, match="two quad types"):
        analyze(st, (0, 0, 0, 0, 1, 1, 0))


def test_inverted_edge_class_policy():
    tri = Triangulation(("s",), [("s", (0, 1, 2), "s", (1, 0, 3))],
                        infer_reciprocals=True)
    # weight on the inverted class is refused, zero weight is fine
    with pytest.raises(TriangulationError, match="reversed"):
        analyze(tri, (1, 1, 0, 0, 0, 0, 0))
    assert analyze(tri, (0, 0, 0, 0, 0, 0, 0)).weight == 0
