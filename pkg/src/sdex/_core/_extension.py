from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ._constructions import map_from_vertex_function
from ._exceptions import TruncationError
from ._lifting import iter_maps
from ._ordinal import OrdinalMap
from ._simplicial import (
    FaceRecord,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    SimplicialSetBuilder,
)
from ._subdivision import last_vertex_map, sd_map, subdivided_simplex

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class ExTruncation:
    """
    The truncation of Kan's ``Ex X`` at dimension ``bound``, remembering which map
    ``Sd Δ_m -> X`` every simplex stands for.

    :ivar base: the simplicial set ``X``
    :ivar bound: the truncation bound
    :ivar space: ``Ex X`` as a truncated simplicial set
    """

    base: SimplicialSet
    bound: int
    space: SimplicialSet
    _records: list[dict[tuple[FaceRecord, ...], FaceRecord]] = field(repr=False)
    _maps: dict[SimplexRef, SimplicialMap] = field(repr=False)

    def record_of(self, phi: SimplicialMap) -> FaceRecord:
        """Return the simplex of ``Ex X``, in normal form, for a map ``Sd Δ_m -> X``."""
        return self._records[phi.source.top_dim][phi.key]

    def map_of(self, ref: SimplexRef) -> SimplicialMap:
        """Return the map ``Sd Δ_m -> X`` behind a simplex of ``Ex X``."""
        return self._maps[ref]


def _subdivided_cofaces(m: int) -> list[SimplicialMap]:
    return [
        sd_map(map_from_vertex_function(m - 1, OrdinalMap.coface(m, i).values, m))
        for i in range(m + 1)
    ]


def _subdivided_codegeneracies(m: int) -> list[SimplicialMap]:
    return [
        sd_map(
            map_from_vertex_function(
                m, OrdinalMap.codegeneracy(m - 1, j).values, m - 1
            )
        )
        for j in range(m)
    ]


def build_ex(space: SimplicialSet, bound: int) -> ExTruncation:
    """
    Build ``Ex X`` up to dimension ``bound``: its ``m``-simplices are the maps
    ``Sd Δ_m -> X``, faces are precomposition with ``Sd δ_i``, and a simplex is
    degenerate when it factors through some ``Sd σ_j``.

    :raises ~sdex.TruncationError: if ``space`` is truncated below ``bound``

    """
    if bound < 0:
        raise ValueError("the truncation bound must be non-negative")

    key = f"ex:{bound}"
    cached = space._memo.get(key)
    if cached is not None:
        return cached

    space.require_dim(bound)
    builder = SimplicialSetBuilder()
    records: list[dict[tuple[FaceRecord, ...], FaceRecord]] = []
    maps: dict[SimplexRef, SimplicialMap] = {}
    for m in range(bound + 1):
        domain = subdivided_simplex(m, 1)
        cofaces = _subdivided_cofaces(m) if m else []
        codegeneracies = _subdivided_codegeneracies(m) if m else []
        level: dict[tuple[FaceRecord, ...], FaceRecord] = {}
        for images in iter_maps(domain, space):
            phi = SimplicialMap(domain, space, images)
            if m == 0:
                vertex = images[SimplexRef(0, 0)].target
                ref = builder.add_vertex(space.label(vertex))
                level[phi.key] = FaceRecord.of(ref)
                maps[ref] = phi
                continue

            for j in range(m):
                collapsed = phi.compose(cofaces[j])
                if collapsed.compose(codegeneracies[j]) == phi:
                    lower = records[m - 1][collapsed.key]
                    level[phi.key] = FaceRecord(
                        lower.epi.compose(OrdinalMap.codegeneracy(m - 1, j)),
                        lower.target,
                    )
                    break
            else:
                faces = [records[m - 1][phi.compose(coface).key] for coface in cofaces]
                ref = builder.add_simplex(m, faces)
                level[phi.key] = FaceRecord.of(ref)
                maps[ref] = phi

        records.append(level)
        logger.debug("Ex level %d: %d simplices", m, len(level))

    result = ExTruncation(
        space, bound, builder.build(dim_bound=bound, truncated=True), records, maps
    )
    space._memo[key] = result
    return result


def ex_truncated(space: SimplicialSet, bound: int) -> SimplicialSet:
    """
    Return ``Ex X`` truncated at dimension ``bound``.

    :raises ~sdex.TruncationError: if ``space`` is truncated below ``bound``

    """
    return build_ex(space, bound).space


def ex_eta(space: SimplicialSet, bound: int) -> SimplicialMap:
    """
    Return the natural map ``η: X -> Ex X`` (truncated at ``bound``), which sends an
    ``m``-simplex ``x`` to the composite of the last vertex map ``Sd Δ_m -> Δ_m`` with
    the map ``Δ_m -> X`` classifying ``x``.

    :raises ~sdex.TruncationError: if ``space`` has simplices above ``bound``

    """
    if space.top_dim > bound:
        raise TruncationError(space.top_dim, bound)

    ex = build_ex(space, bound)
    images = {}
    for ref in space.simplices():
        simplex = space.representing_map(FaceRecord.of(ref))
        phi = simplex.compose(last_vertex_map(ref.dim))
        images[ref] = ex.record_of(phi)

    return SimplicialMap(space, ex.space, images)


def ex_map(f: SimplicialMap, bound: int) -> SimplicialMap:
    """Return ``Ex f: Ex X -> Ex Y``, truncated at ``bound``, by post-composition."""
    source = build_ex(f.source, bound)
    target = build_ex(f.target, bound)
    images = {
        ref: target.record_of(f.compose(source.map_of(ref)))
        for ref in source.space.simplices()
    }
    return SimplicialMap(source.space, target.space, images)
