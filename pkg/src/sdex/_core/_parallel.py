from __future__ import annotations

import logging
from typing import Literal

from anyio import CapacityLimiter, create_task_group, to_process, to_thread

from ._lifting import LiftingVerdict, horn_verdict, horns_up_to
from ._simplicial import SimplicialMap, SimplicialSet

logger = logging.getLogger(__name__)

Workers = Literal["thread", "process"]


async def _run_verdict(
    target: SimplicialSet | SimplicialMap,
    n: int,
    k: int,
    i: int,
    bound: int,
    workers: Workers,
    limiter: CapacityLimiter | None,
) -> LiftingVerdict:
    if workers == "process":
        return await to_process.run_sync(
            horn_verdict, target, n, k, i, bound, limiter=limiter
        )

    return await to_thread.run_sync(
        horn_verdict, target, n, k, i, bound, limiter=limiter
    )


async def is_fib_n_async(
    target: SimplicialSet | SimplicialMap,
    n: int,
    bound: int,
    *,
    workers: Workers = "thread",
    limiter: CapacityLimiter | None = None,
) -> LiftingVerdict:
    """
    Check the same horns as :func:`~sdex.is_fib_n`, one worker per horn.

    The verdict is identical to the synchronous one: when several horns fail, the first
    one in ``(k, i)`` order is reported.

    :param workers: ``"thread"`` to use worker threads, ``"process"`` for worker
        processes (the target is pickled once per horn)
    :param limiter: capacity limiter bounding how many horns are checked at once
        (the default limiter of the chosen worker kind when omitted)

    """
    if n < 0:
        raise ValueError("the subdivision depth must be non-negative")

    horns = horns_up_to(bound)
    verdicts: dict[tuple[int, int], LiftingVerdict] = {}

    async def check(k: int, i: int) -> None:
        verdicts[(k, i)] = await _run_verdict(target, n, k, i, bound, workers, limiter)
        outcome = "holds" if verdicts[(k, i)] else "fails"
        logger.debug("horn (%d, %d): %s", k, i, outcome)

    async with create_task_group() as tg:
        for k, i in horns:
            tg.start_soon(check, k, i)

    for horn in horns:
        if not verdicts[horn]:
            return verdicts[horn]

    return LiftingVerdict(True, bound)


async def is_kan_up_to_async(
    space: SimplicialSet,
    bound: int,
    *,
    workers: Workers = "thread",
    limiter: CapacityLimiter | None = None,
) -> LiftingVerdict:
    """Check the Kan condition up to ``bound`` like :func:`~sdex.is_kan_up_to`."""
    return await is_fib_n_async(space, 0, bound, workers=workers, limiter=limiter)
