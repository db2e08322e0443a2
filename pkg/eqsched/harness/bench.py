import logging
import statistics
import time
from collections.abc import Sequence

from pydantic import BaseModel

from common.constants import BENCH_PROCESSING_TIME, BENCH_REPETITIONS
from common.errors import InstanceError
from generators.instances import RandomSpec, gen_random
from solvers.dp import solve

logger = logging.getLogger(__name__)

MIN_REPETITIONS: int = 3


class BenchRow(BaseModel):
    n: int
    median_ms: float


def time_solve(spec: RandomSpec, repeat: int) -> float:
    instance = gen_random(spec)
    samples: list[float] = []
    for _ in range(repeat):
        start = time.perf_counter()
        solve(instance)
        samples.append((time.perf_counter() - start) * 1000)
    logger.debug("bench n=%d: %s", spec.n, ", ".join(f"{s:.1f}" for s in samples))
    return statistics.median(samples)


def bench(
    sizes: Sequence[int],
    seed: int,
    p: int = BENCH_PROCESSING_TIME,
    repeat: int = BENCH_REPETITIONS,
) -> list[BenchRow]:
    """
    Median solve time per instance size. Releases are spread over ``n*p``
    so the time grid grows with ``n``; repetitions run one after another.
    """
    if repeat < MIN_REPETITIONS:
        raise InstanceError(f"At least {MIN_REPETITIONS} repetitions are required")
    return [
        BenchRow(
            n=size,
            median_ms=time_solve(
                RandomSpec(n=size, p=p, release_max=size * p, seed=seed), repeat
            ),
        )
        for size in sizes
    ]


def render_bench(rows: Sequence[BenchRow]) -> str:
    lines = ["n,median_ms"]
    lines.extend(f"{row.n},{row.median_ms:.3f}" for row in rows)
    return "\n".join(lines) + "\n"
