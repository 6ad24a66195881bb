import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import face_vertex_sets, facets_oracle, random_polytope_points, vertices_oracle
from paretocert.errors import EmptyPolyhedronError, NotInSetError, ResourceLimitError
from paretocert.linalg import support
from paretocert.polyhedron import (
    HRep,
    Unbounded,
    VRep,
    canonical_form,
    cartesian_product,
    downward_closure,
    enumerate_faces,
    exposed_face,
    hrep_from_vrep,
    hull,
    linear_image,
    minimal_face_at,
    minkowski_sum,
    negate,
    normal_cone_at,
    project_eliminate,
    same_set,
    vrep_from_hrep,
)

F = Fraction


def H(dim, ineqs=(), eqs=()):
    return HRep(dim, tuple(ineqs), tuple(eqs))


def facet_set(h):
    return {(tuple(int(x) for x in a), int(b)) for a, b in h.canonical.ineqs}


def random_hull(rng, dim=None, k=None):
    dim = dim or rng.randint(2, 4)
    k = k or rng.randint(dim + 1, min(dim + 6, 12))
    pts = random_polytope_points(rng, dim, k)
    return pts, hull(pts)


class TestConversions:
    def test_u2_facets_match_oracle(self, U2):
        assert facet_set(U2) == facets_oracle([(0, 0), (1, 0), (1, 1), (0, 2)])
        assert facet_set(U2) == {((1, 0), 1), ((1, 1), 2), ((-1, 0), 0), ((0, -1), 0)}

    def test_single_point(self):
        h = hull([(1, 1)])
        assert not h.ineqs
        assert {(tuple(a), b) for a, b in h.eqs} == {((1, 0), 1), ((0, 1), 1)}

    def test_orthant(self):
        h = hull([(0, 0)], [(-1, 0), (0, -1)])
        assert facet_set(h) == {((1, 0), 0), ((0, 1), 0)}

    def test_u2_vertices(self, U2):
        v = U2.vrep
        assert set(v.vertices) == {(0, 0), (1, 0), (1, 1), (0, 2)} and not v.rays

    def test_orthant_generators(self):
        v = vrep_from_hrep(H(2, [((1, 0), 0), ((0, 1), 0)]))
        assert v.vertices == ((0, 0),) and set(v.rays) == {(-1, 0), (0, -1)}

    def test_infeasible_is_empty(self):
        h = H(1, [((1,), 0), ((-1,), -1)])
        assert vrep_from_hrep(h).is_empty and h.is_empty

    def test_empty_vrep_gives_empty_hrep(self):
        assert hrep_from_vrep(VRep(2)).is_empty

    def test_lines_survive(self):
        v = vrep_from_hrep(H(2, [((0, 1), 0)]))
        assert v.lines == ((1, 0),)

    @pytest.mark.parametrize("k", range(15))
    def test_round_trip_random(self, k, seed):
        rng = random.Random(seed + k)
        pts, h = random_hull(rng)
        v = vrep_from_hrep(h)
        back = hrep_from_vrep(v)
        assert same_set(h, back)
        assert all(h.contains(p) for p in v.vertices)
        assert set(v.vertices) <= set(pts)

    @pytest.mark.parametrize("k", range(10))
    def test_vertices_match_oracle(self, k, seed):
        rng = random.Random(seed * 3 + k)
        _, h = random_hull(rng, dim=rng.randint(2, 3))
        assert set(h.vrep.vertices) == vertices_oracle(list(h.ineqs), h.dim)

    @pytest.mark.parametrize("k", range(10))
    def test_facets_match_oracle(self, k, seed):
        rng = random.Random(seed * 5 + k)
        pts, h = random_hull(rng, dim=rng.randint(2, 3))
        assert facet_set(h) == facets_oracle(pts)

    def test_round_trip_with_rays(self):
        rng = random.Random(11)
        for _ in range(10):
            pts = random_polytope_points(rng, 3, 4)
            rays = [(F(-1), F(rng.randint(-2, 0)), F(0)), (F(0), F(0), F(-1))]
            h = hull(pts, rays)
            assert same_set(hrep_from_vrep(h.vrep), h)
            for r in rays:
                assert all(sum(a * x for a, x in zip(c, r)) <= 0 for c, _ in h.ineqs)

    def test_canonical_form_reduces_modulo_equalities(self):
        a = canonical_form(2, [((1, 1), 3)], [((0, 2), 2)])
        b = canonical_form(2, [((1, 0), 2)], [((0, 1), 1)])
        assert a == b


class TestProjection:
    def test_one_step(self):
        h = H(2, [((-1, 1), 0), ((1, 0), 1), ((-1, 0), 0)])
        assert facet_set(project_eliminate(h, [1])) == {((1,), 1)}

    def test_identity(self, U2):
        assert same_set(project_eliminate(U2, [0, 1]), U2)

    @pytest.mark.parametrize("k", range(12))
    def test_fourier_motzkin_agrees_with_double_description(self, k, seed):
        rng = random.Random(seed * 7 + k)
        _, h = random_hull(rng, dim=rng.randint(3, 4))
        keep = sorted(rng.sample(range(h.dim), rng.randint(1, h.dim - 1)))
        a = project_eliminate(h, keep)
        b = project_eliminate(h, keep, method="dd")
        assert a == b

    def test_projection_of_vertices(self, seed):
        rng = random.Random(seed)
        pts, h = random_hull(rng, dim=3)
        proj = project_eliminate(h, [0, 2])
        assert same_set(proj, hull([(p[0], p[2]) for p in pts]))

    def test_equalities_are_substituted(self):
        h = H(3, [((0, 0, 1), 4), ((0, 0, -1), 0)], [((1, -1, 0), 0), ((0, 1, -2), 0)])
        assert same_set(project_eliminate(h, [0]), H(1, [((1,), 8), ((-1,), 0)]))


class TestAlgebra:
    def test_square_product(self):
        seg = H(1, [((1,), 1), ((-1,), 0)])
        assert same_set(cartesian_product([seg, seg]), HRep.box((0, 0), (1, 1)))

    def test_point_times_segment(self):
        pt = H(1, eqs=[((1,), 1)])
        seg = H(1, [((1,), 2), ((-1,), 0)])
        assert same_set(cartesian_product([pt, seg]), hull([(1, 0), (1, 2)]))

    def test_minkowski_of_squares(self):
        sq = HRep.box((0, 0), (1, 1))
        assert same_set(minkowski_sum(sq, sq), HRep.box((0, 0), (2, 2)))

    def test_minkowski_identity(self, U2):
        assert same_set(minkowski_sum(U2, hull([(0, 0)])), U2)

    @pytest.mark.parametrize("k", range(6))
    def test_minkowski_matches_pairwise_sums(self, k, seed):
        rng = random.Random(seed * 13 + k)
        p = random_polytope_points(rng, 2, 3)
        q = random_polytope_points(rng, 2, 4)
        sums = [tuple(a + b for a, b in zip(x, y)) for x in p for y in q]
        assert same_set(minkowski_sum(hull(p), hull(q)), hull(sums))

    def test_linear_image_and_negate(self, U2):
        assert same_set(negate(U2), hull([(0, 0), (-1, 0), (-1, -1), (0, -2)]))
        assert same_set(linear_image(U2, [[1, 1]]), H(1, [((1,), 2), ((-1,), 0)]))


class TestDownwardClosure:
    def test_u2(self, U2):
        assert facet_set(downward_closure(U2)) == {((1, 0), 1), ((1, 1), 2), ((0, 1), 2)}

    def test_point(self):
        assert same_set(downward_closure(hull([(1, 1)])), H(2, [((1, 0), 1), ((0, 1), 1)]))

    def test_idempotent(self, U2):
        d = downward_closure(U2)
        assert same_set(downward_closure(d), d)

    def test_vrep_route(self, U2):
        v = downward_closure(U2.vrep)
        assert same_set(hrep_from_vrep(v), downward_closure(U2))

    def test_empty_raises(self):
        with pytest.raises(EmptyPolyhedronError):
            downward_closure(HRep.empty(2))

    @pytest.mark.parametrize("k", range(10))
    def test_monotone_and_idempotent_random(self, k, seed):
        rng = random.Random(seed * 17 + k)
        pts, big = random_hull(rng)
        small = hull(pts[: big.dim + 1]) if len(pts) > big.dim + 1 else big
        d_big, d_small = downward_closure(big), downward_closure(small)
        assert all(d_big.contains(v) for v in d_small.vrep.vertices)
        assert all(all(sum(a * x for a, x in zip(c, r)) <= 0 for c, _ in d_big.ineqs) for r in d_small.vrep.rays)
        assert same_set(downward_closure(d_big), d_big)
        for v in d_big.vrep.vertices:
            for j in range(big.dim):
                step = tuple(x - (1 if i == j else 0) for i, x in enumerate(v))
                assert d_big.contains(step)


class TestFaces:
    def test_vertex_face(self, U2):
        f = minimal_face_at(U2, (1, 1))
        assert f.dim == 0 and f.vertices == ((1, 1),)

    def test_interior_point(self, U2):
        f = minimal_face_at(U2, (F(1, 2), F(1, 2)))
        assert f.dim == 2 and not f.active

    def test_dc_edge(self, U2):
        d = downward_closure(U2)
        f = minimal_face_at(d, (1, 0))
        assert f.dim == 1 and [d.ineqs[i] for i in f.active] == [((1, 0), 1)]

    def test_outside_point(self, U2):
        with pytest.raises(NotInSetError):
            minimal_face_at(U2, (2, 2))

    def test_exposed_faces(self, U2):
        assert set(exposed_face(U2, (1, 0)).vertices) == {(1, 0), (1, 1)}
        assert exposed_face(U2, (2, 1)).vertices == ((1, 1),)
        assert isinstance(exposed_face(downward_closure(U2), (-1, 0)), Unbounded)

    def test_exposed_face_of_face(self, U2):
        edge = exposed_face(U2, (1, 1))
        assert exposed_face(edge, (1, 0)).vertices == ((1, 1),)

    def test_normal_cones(self, U2):
        c = normal_cone_at(U2, minimal_face_at(U2, (1, 1)))
        assert set(c.generators) == {(1, 0), (1, 1)}
        assert normal_cone_at(U2, U2.whole).generators == ()
        d = downward_closure(U2)
        assert normal_cone_at(d, minimal_face_at(d, (1, 0))).generators == ((1, 0),)

    def test_counts(self, U2, CONE5):
        assert len(enumerate_faces(U2)) == 9
        assert len(enumerate_faces(hull([(3, 1)]))) == 1
        by_dim = [0] * 4
        for f in enumerate_faces(CONE5):
            by_dim[f.dim] += 1
        assert by_dim == [5, 8, 5, 1]

    def test_cone5_against_oracle(self, CONE5):
        verts = [(1, 0, 0), (-1, 0, 0), (0, -1, 0), (0, 1, 0), (0, 1, 1)]
        faces = {frozenset(f.vertices) for f in enumerate_faces(CONE5)}
        assert faces == face_vertex_sets(verts, facets_oracle(verts))

    def test_cap(self, CONE5):
        with pytest.raises(ResourceLimitError):
            enumerate_faces(CONE5, cap=5)

    def test_max_dim(self, U2):
        assert len(enumerate_faces(U2, max_dim=0)) == 4

    @pytest.mark.parametrize("k", range(12))
    def test_face_lattice_matches_oracle(self, k, seed):
        rng = random.Random(seed * 19 + k)
        pts, h = random_hull(rng, dim=rng.randint(2, 3))
        verts = list(h.vrep.vertices)
        ours = {frozenset(f.vertices) for f in enumerate_faces(h)}
        assert ours == face_vertex_sets(verts, facets_oracle(verts))

    @pytest.mark.parametrize("k", range(8))
    def test_relative_interiors_partition(self, k, seed):
        rng = random.Random(seed * 23 + k)
        _, h = random_hull(rng)
        faces = enumerate_faces(h)
        verts = h.vrep.vertices
        for _ in range(15):
            w = [F(rng.randint(0, 3)) for _ in verts]
            if not any(w):
                w[0] = F(1)
            x = tuple(sum(wi * v[i] for wi, v in zip(w, verts)) / sum(w) for i in range(h.dim))
            f = minimal_face_at(h, x)
            assert f.relint_contains(x)
            assert sum(g.relint_contains(x) for g in faces) == 1

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10_000))
    def test_every_face_exposed_by_sum_of_normals(self, s):
        rng = random.Random(s)
        _, h = random_hull(rng, dim=rng.randint(2, 3))
        for f in enumerate_faces(h):
            if not f.active:
                continue
            sigma = tuple(sum(h.ineqs[i][0][j] for i in f.active) for j in range(h.dim))
            if not any(sigma):
                continue
            assert exposed_face(h, sigma).active == f.active

    @pytest.mark.parametrize("k", range(8))
    def test_dc_normal_cones_nonnegative(self, k, seed):
        rng = random.Random(seed * 29 + k)
        _, h = random_hull(rng)
        d = downward_closure(h)
        for f in enumerate_faces(d):
            for g in normal_cone_at(d, f).generators:
                assert all(x >= 0 for x in g)

    @pytest.mark.parametrize("k", range(8))
    def test_dc_exposed_faces_downward_outside_support(self, k, seed):
        rng = random.Random(seed * 31 + k)
        _, h = random_hull(rng)
        d = downward_closure(h)
        for f in enumerate_faces(d):
            if not f.active:
                continue
            phi = tuple(sum(d.ineqs[i][0][j] for i in f.active) for j in range(d.dim))
            face = exposed_face(d, phi)
            out = set(range(d.dim)) - support(phi)
            for v in face.vertices:
                for j in out:
                    assert face.contains(tuple(x - (1 if i == j else 0) for i, x in enumerate(v)))
