from __future__ import annotations

import pytest

from sdex import (
    SimplicialSet,
    TruncationError,
    boundary,
    build_ex,
    count_maps,
    cyclic_group,
    ex_eta,
    ex_map,
    ex_truncated,
    horn,
    is_fib_n,
    is_kan_up_to,
    map_from_vertex_function,
    nerve,
    sd,
    standard_simplex,
    validate,
)

SOURCES = [
    pytest.param(standard_simplex(0), id="point"),
    pytest.param(standard_simplex(1), id="edge"),
    pytest.param(standard_simplex(2), id="triangle"),
    pytest.param(horn(2, 0)[0], id="horn"),
]
TARGETS = [
    pytest.param(standard_simplex(1), id="edge"),
    pytest.param(standard_simplex(2), id="triangle"),
    pytest.param(horn(2, 0)[0], id="horn"),
    pytest.param(boundary(2), id="boundary"),
]


class TestExTruncation:
    def test_point(self) -> None:
        assert ex_truncated(standard_simplex(0), 2).f_vector == (1,)

    def test_edge(self) -> None:
        ex = ex_truncated(standard_simplex(1), 1)
        # vertices are the vertices of the edge; edges are maps Sd Δ_1 -> Δ_1
        # that are not constant
        assert ex.f_vector == (2, 3)
        assert ex.truncated
        assert validate(ex) == []

    def test_valid(self) -> None:
        assert validate(ex_truncated(horn(2, 0)[0], 2)) == []

    def test_cached(self) -> None:
        space = standard_simplex(1)
        assert build_ex(space, 2) is build_ex(space, 2)

    def test_map_of_roundtrip(self) -> None:
        ex = build_ex(standard_simplex(1), 2)
        for ref in ex.space.simplices():
            assert ex.record_of(ex.map_of(ref)).target == ref

    def test_truncated_input(self) -> None:
        with pytest.raises(TruncationError):
            build_ex(nerve(cyclic_group(2), 1), 2)

    def test_negative_bound(self) -> None:
        with pytest.raises(ValueError):
            build_ex(standard_simplex(0), -1)


class TestAdjunction:
    @pytest.mark.parametrize("source", SOURCES)
    @pytest.mark.parametrize("target", TARGETS)
    def test_hom_sets_match(self, source: SimplicialSet, target: SimplicialSet) -> None:
        assert count_maps(sd(source), target) == count_maps(
            source, ex_truncated(target, 2)
        )

    @pytest.mark.parametrize(
        "source, expected",
        [
            pytest.param(standard_simplex(2), 72, id="triangle"),
            pytest.param(horn(2, 0)[0], 70, id="horn"),
        ],
    )
    def test_into_boundary(self, source: SimplicialSet, expected: int) -> None:
        target = boundary(2)
        assert count_maps(sd(source), target) == expected
        assert count_maps(source, ex_truncated(target, 2)) == expected


class TestUnit:
    def test_natural(self) -> None:
        eta = ex_eta(standard_simplex(2), 2)
        assert eta.naturality_violations() == []
        assert eta.is_mono()

    def test_naturality_square(self) -> None:
        f = map_from_vertex_function(1, (0, 2), 2)
        left = ex_map(f, 2).compose(ex_eta(standard_simplex(1), 2))
        right = ex_eta(standard_simplex(2), 2).compose(f)
        assert left == right

    def test_too_high(self) -> None:
        with pytest.raises(TruncationError):
            ex_eta(standard_simplex(2), 1)


class TestExMap:
    def test_natural(self) -> None:
        f = map_from_vertex_function(2, (0, 0, 1))
        assert ex_map(f, 2).naturality_violations() == []

    def test_functorial(self) -> None:
        f = map_from_vertex_function(1, (0, 2), 2)
        g = map_from_vertex_function(2, (0, 1, 1))
        assert ex_map(g.compose(f), 2) == ex_map(g, 2).compose(ex_map(f, 2))


class TestKanAgreement:
    @pytest.mark.parametrize(
        "space",
        [
            pytest.param(standard_simplex(0), id="point"),
            pytest.param(standard_simplex(1), id="edge"),
            pytest.param(horn(2, 0)[0], id="horn"),
            pytest.param(nerve(cyclic_group(2), 2), id="Z2"),
        ],
    )
    def test_fib_1_is_ex_kan(self, space: SimplicialSet) -> None:
        assert bool(is_fib_n(space, 1, 2)) == bool(
            is_kan_up_to(ex_truncated(space, 2), 2)
        )
