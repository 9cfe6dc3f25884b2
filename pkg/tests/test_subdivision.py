from __future__ import annotations

from math import factorial

import pytest

from sdex import (
    MAX_SUBDIVISION_DEPTH,
    BudgetExceededError,
    FaceRecord,
    NotVertexDeterminedError,
    SimplexRef,
    SimplicialSet,
    SimplicialSetBuilder,
    boundary,
    face_poset,
    horn,
    identity_map,
    last_vertex_map,
    map_from_vertex_function,
    sd,
    sd_iter,
    sd_iter_map,
    sd_map,
    sd_tower,
    standard_simplex,
    subdivided_boundary,
    subdivided_horn,
    subdivided_simplex,
    subdivision_carriers,
    validate,
)


class TestFacePoset:
    def test_simplex(self) -> None:
        poset = face_poset(standard_simplex(2))
        assert len(poset) == 7
        top = poset.index[SimplexRef(2, 0)]
        assert all(poset.leq(x, top) for x in range(7))
        assert poset.covers[top] == (3, 4, 5)

    def test_horn(self) -> None:
        assert len(face_poset(horn(2, 0)[0])) == 5

    def test_order_table(self) -> None:
        table = face_poset(standard_simplex(1)).order_table()
        assert table == [[True, False, True], [False, True, True], [False, False, True]]

    def test_loop_rejected(self) -> None:
        builder = SimplicialSetBuilder()
        vertex = builder.add_vertex()
        builder.add_simplex(1, [FaceRecord.of(vertex), FaceRecord.of(vertex)])
        with pytest.raises(NotVertexDeterminedError):
            face_poset(builder.build())

    def test_parallel_edges_rejected(self) -> None:
        builder = SimplicialSetBuilder()
        a, b = builder.add_vertex(), builder.add_vertex()
        for _ in range(2):
            builder.add_simplex(1, [FaceRecord.of(b), FaceRecord.of(a)])

        with pytest.raises(NotVertexDeterminedError, match="same vertices"):
            sd(builder.build())


class TestSubdivision:
    @pytest.mark.parametrize(
        "space, f_vector",
        [
            pytest.param(standard_simplex(1), (3, 2), id="edge"),
            pytest.param(standard_simplex(2), (7, 12, 6), id="triangle"),
            pytest.param(horn(2, 0)[0], (5, 4), id="horn"),
            pytest.param(boundary(2), (6, 6), id="boundary"),
        ],
    )
    def test_f_vector(self, space: SimplicialSet, f_vector: tuple[int, ...]) -> None:
        assert sd(space).f_vector == f_vector

    def test_twice(self) -> None:
        assert sd_iter(standard_simplex(2), 2).f_vector == (25, 60, 36)

    @pytest.mark.parametrize("k", range(4))
    def test_top_cells(self, k: int) -> None:
        assert sd(standard_simplex(k)).size(k) == factorial(k + 1)

    @pytest.mark.parametrize("n", range(6))
    def test_iterated_top_cells(self, n: int) -> None:
        assert subdivided_simplex(2, n).size(2) == 6**n

    @pytest.mark.parametrize("n", range(5))
    def test_horn_is_a_zigzag(self, n: int) -> None:
        space = subdivided_horn(2, 0, n)[0]
        assert space.f_vector == (2 ** (n + 1) + 1, 2 ** (n + 1))

    @pytest.mark.parametrize("n", range(3))
    def test_valid(self, n: int) -> None:
        assert validate(subdivided_simplex(3, n)) == []

    def test_vertex_labels(self) -> None:
        space = sd(standard_simplex(1))
        assert [space.label(ref) for ref in space.simplices(0)] == [
            "[0]",
            "[1]",
            "[0,1]",
        ]

    def test_tower(self) -> None:
        levels = sd_tower(standard_simplex(1), 3)
        assert [level.size(1) for level in levels] == [1, 2, 4, 8]

    def test_zero_depth(self) -> None:
        simplex = standard_simplex(2)
        assert sd_iter(simplex, 0) is simplex

    def test_negative_depth(self) -> None:
        with pytest.raises(ValueError):
            sd_iter(standard_simplex(1), -1)


class TestBudget:
    def test_depth(self) -> None:
        with pytest.raises(BudgetExceededError):
            sd_iter(standard_simplex(0), MAX_SUBDIVISION_DEPTH + 1)

    def test_top_cells(self) -> None:
        with pytest.raises(BudgetExceededError) as exc:
            sd_iter(standard_simplex(3), 5)

        assert exc.value.requested == 24**5


class TestSubdividedMaps:
    def test_identity(self) -> None:
        simplex = standard_simplex(2)
        assert sd_map(identity_map(simplex)) == identity_map(sd(simplex))

    def test_horn_inclusion(self) -> None:
        source, target, inclusion = subdivided_horn(2, 0, 2)
        assert inclusion.is_mono()
        assert inclusion.naturality_violations() == []
        assert source.size(1) == 8
        assert target == subdivided_simplex(2, 2)

    def test_degeneracy(self) -> None:
        f = sd_map(map_from_vertex_function(2, (0, 0, 1)))
        assert f.naturality_violations() == []
        assert not f.is_mono()

    def test_functoriality(self) -> None:
        f = map_from_vertex_function(1, (0, 2), 2)
        g = map_from_vertex_function(2, (0, 1, 1))
        assert sd_map(g.compose(f)) == sd_map(g).compose(sd_map(f))

    def test_iterated(self) -> None:
        f = sd_iter_map(map_from_vertex_function(1, (1, 2), 2), 2)
        assert f.source == subdivided_simplex(1, 2)
        assert f.is_mono()

    def test_boundary_inclusion(self) -> None:
        source, target, inclusion = subdivided_boundary(3, 1)
        assert source.f_vector == (14, 36, 24)
        assert target.f_vector[:3] == (15, 50, 60)
        assert inclusion.is_mono()


class TestCarriers:
    def test_one_step(self) -> None:
        carriers = subdivision_carriers(standard_simplex(2), 1)
        assert carriers == (
            frozenset({0}),
            frozenset({1}),
            frozenset({2}),
            frozenset({0, 1}),
            frozenset({0, 2}),
            frozenset({1, 2}),
            frozenset({0, 1, 2}),
        )

    def test_two_steps(self) -> None:
        carriers = subdivision_carriers(standard_simplex(1), 2)
        assert len(carriers) == 5
        assert carriers.count(frozenset({0, 1})) == 3


class TestLastVertexMap:
    def test_edge(self) -> None:
        f = last_vertex_map(1)
        assert [f.vertex_image(v) for v in range(3)] == [0, 1, 1]
        assert f.naturality_violations() == []

    def test_triangle(self) -> None:
        f = last_vertex_map(2)
        assert f.naturality_violations() == []
        # only the flag 0 < [0,1] < [0,1,2] keeps three distinct last vertices
        top = [f.images[ref] for ref in f.source.simplices(2)]
        assert [record.is_degenerate for record in top].count(False) == 1
        assert FaceRecord.of(SimplexRef(2, 0)) in top
