from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, NamedTuple

from ._constructions import Gluing, horn
from ._exceptions import BudgetExceededError
from ._lifting import extend, iter_maps
from ._metric import Distance, edge_distance
from ._simplicial import FaceRecord, SimplicialMap, SimplicialSet
from ._subdivision import subdivided_horn, subdivision_carriers

#: Upper bound on the number of non-degenerate simplices of a single stage
MAX_STAGE_SIMPLICES = 500_000

logger = logging.getLogger(__name__)


class AttachmentRecord(NamedTuple):
    """How many cells were attached along subdivided copies of one horn."""

    k: int
    i: int
    cells: int


@dataclass(eq=False)
class Stage:
    """
    One stage ``R_j`` of the small-object tower for ``Ex^n``, built over
    ``U = Sd^n Λ^0_2``.

    :ivar index: the stage number ``j``
    :ivar depth: the subdivision depth ``n``
    :ivar space: the simplicial set ``R_j``
    :ivar canonical_map: the map ``r_j: U -> R_j``
    :ivar attachments: cells attached to form this stage from the previous one
    """

    index: int
    depth: int
    space: SimplicialSet
    canonical_map: SimplicialMap
    attachments: list[AttachmentRecord] = field(default_factory=list)

    @property
    def endpoints(self) -> tuple[int, int]:
        """The vertices ``x`` and ``y`` of ``U`` over the horn vertices 1 and 2."""
        return horn_endpoints(self.depth)


def horn_endpoints(n: int) -> tuple[int, int]:
    carriers = subdivision_carriers(horn(2, 0)[0], n)
    return carriers.index(frozenset((1,))), carriers.index(frozenset((2,)))


def initial_stage(n: int) -> Stage:
    """Return ``R_0 = Sd^n Λ^0_2`` with the identity as its canonical map."""
    base = subdivided_horn(2, 0, n)[0]
    images = {ref: FaceRecord.of(ref) for ref in base.simplices()}
    return Stage(0, n, base, SimplicialMap(base, base, images))


def attach_stage(
    stage: Stage, n: int, k_max: int, *, max_simplices: int | None = None
) -> Stage:
    """
    Form the next stage by attaching a copy of ``Sd^{n+1} Δ_k`` along every map
    ``Sd^{n+1} Λ^i_k -> R_j`` (``k <= k_max``) that does not already extend.

    All attachments of one stage are performed simultaneously.

    :raises ~sdex.BudgetExceededError: if the new stage would have more than
        ``max_simplices`` non-degenerate simplices

    """
    budget = MAX_STAGE_SIMPLICES if max_simplices is None else max_simplices
    current = stage.space
    gluing = Gluing(current)
    log = []
    for k in range(1, k_max + 1):
        for i in range(k + 1):
            source, _, inclusion = subdivided_horn(k, i, n + 1)
            cells = 0
            for images in iter_maps(source, current):
                attaching = SimplicialMap(source, current, images)
                if extend(attaching, inclusion) is not None:
                    continue

                gluing.attach(inclusion, attaching)
                cells += 1
                if len(gluing.space) > budget:
                    raise BudgetExceededError(
                        f"size of stage {stage.index + 1}", len(gluing.space), budget
                    )

            log.append(AttachmentRecord(k, i, cells))
            logger.debug(
                "stage %d: horn (%d, %d) attached %d cells",
                stage.index + 1,
                k,
                i,
                cells,
            )

    space = gluing.build()
    logger.info(
        "stage %d: %d simplices after %d attachments",
        stage.index + 1,
        len(space),
        gluing.attached,
    )
    canonical = SimplicialMap(
        stage.canonical_map.source, space, dict(stage.canonical_map.images)
    )
    return Stage(stage.index + 1, n, space, canonical, log)


def stage_distance(stage: Stage, x: int, y: int) -> Distance:
    """Return the distance in ``R_j`` between the images of ``x`` and ``y``."""
    r = stage.canonical_map
    return edge_distance(stage.space, r.vertex_image(x), r.vertex_image(y))


def lift_exists(stage: Stage) -> bool:
    """
    Decide whether ``r_j: Sd^n Λ^0_2 -> R_j`` extends along ``Sd^n Λ^0_2 -> Sd^n Δ_2``.
    """
    inclusion = subdivided_horn(2, 0, stage.depth)[2]
    return extend(stage.canonical_map, inclusion) is not None


class StageReport(NamedTuple):
    index: int
    vertices: int
    edges: int
    simplices: int
    attachments: tuple[AttachmentRecord, ...]
    distance: Distance
    lift: bool


@dataclass(eq=False)
class Certificate:
    """
    Evidence that no stage of the tower admits a lift: at every stage the distance
    between ``x`` and ``y`` stays ``2^(n+1)``, while any lift would force it down to at
    most ``2^n``.
    """

    depth: int
    stages: int
    k_max: int
    endpoints: tuple[int, int]
    reports: list[StageReport]

    @property
    def expected_distance(self) -> int:
        return 2 ** (self.depth + 1)

    @property
    def holds(self) -> bool:
        return all(
            report.distance == self.expected_distance and not report.lift
            for report in self.reports
        )

    def as_dict(self) -> dict[str, Any]:
        return {
            "depth": self.depth,
            "stages": self.stages,
            "k_max": self.k_max,
            "endpoints": list(self.endpoints),
            "expected_distance": self.expected_distance,
            "holds": self.holds,
            "stages_report": [
                {
                    "j": report.index,
                    "vertex_count": report.vertices,
                    "edge_count": report.edges,
                    "simplex_count": report.simplices,
                    "attachments": [list(record) for record in report.attachments],
                    "distance": report.distance,
                    "lift_exists": report.lift,
                }
                for report in self.reports
            ],
        }

    def format_table(self) -> str:
        lines = [
            f"tower for Ex^{self.depth} over Sd^{self.depth} Λ^0_2 "
            f"(horns up to dimension {self.k_max})",
            f"{'stage':>5} {'vertices':>9} {'edges':>9} {'simplices':>10} "
            f"{'cells':>7} {'d(x,y)':>7} {'lift':>5}",
        ]
        for report in self.reports:
            cells = sum(record.cells for record in report.attachments)
            lines.append(
                f"{report.index:>5} {report.vertices:>9} {report.edges:>9} "
                f"{report.simplices:>10} {cells:>7} {report.distance:>7} "
                f"{'yes' if report.lift else 'no':>5}"
            )

        verdict = "holds" if self.holds else "FAILS"
        lines.append(
            f"certificate {verdict}: d(x,y) = {self.expected_distance} > "
            f"{2 ** self.depth} at every stage"
        )
        return "\n".join(lines)


def build_tower(n: int, j_max: int, k_max: int = 2) -> list[Stage]:
    stages = [initial_stage(n)]
    for _ in range(j_max):
        stages.append(attach_stage(stages[-1], n, k_max))

    return stages


def certify_counterexample(n: int, j_max: int, k_max: int = 2) -> Certificate:
    """
    Build the stages ``R_0, ..., R_{j_max}`` and record, for each, the distance between
    the endpoints ``x``, ``y`` and whether a lift exists.
    """
    x, y = horn_endpoints(n)
    reports = []
    for stage in build_tower(n, j_max, k_max):
        reports.append(
            StageReport(
                stage.index,
                stage.space.size(0),
                stage.space.size(1),
                len(stage.space),
                tuple(stage.attachments),
                stage_distance(stage, x, y),
                lift_exists(stage),
            )
        )

    return Certificate(n, j_max, k_max, (x, y), reports)
