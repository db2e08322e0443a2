import logging
import math
from collections.abc import Sequence
from itertools import combinations, permutations

from common.constants import ORACLE_MAX_JOBS, ORACLE_TABLE_MAX_JOBS, PERMUTATION_MAX_JOBS
from common.errors import OracleLimitError
from common.models import Instance, Job, MaxThroughputResult, Schedule, ScheduleEntry
from common.schedules import build_time_grid, require_normalized

logger = logging.getLogger(__name__)


class SubsetTable:
    """
    Exact dynamic program over job subsets. For every bitmask ``M``,
    :py:attr:`best` holds the minimal completion time of a left-shifted
    schedule executing exactly the jobs of ``M`` with no job starting
    before ``floor`` (``None`` if no such schedule exists).
    """

    def __init__(self, jobs: Sequence[Job], p: int, floor: int) -> None:
        self.jobs: list[Job] = list(jobs)
        self.p: int = p
        self.floor: int = floor
        self.best: list[int | None] = [None] * (1 << len(self.jobs))
        self.predecessor: list[tuple[int, int] | None] = [None] * len(self.best)
        self.fill()

    def fill(self) -> None:
        self.best[0] = self.floor
        for mask, current in enumerate(self.best):
            if current is None:
                continue
            for i, job in enumerate(self.jobs):
                bit = 1 << i
                if mask & bit:
                    continue
                completion = max(current, job.release) + self.p
                if completion > job.deadline:
                    continue
                known = self.best[mask | bit]
                if known is None or completion < known:
                    self.best[mask | bit] = completion
                    self.predecessor[mask | bit] = (mask, i)

    def by_size(self) -> list[float]:
        """Minimal makespan for every subset size (``inf`` if unreachable)"""
        result: list[float] = [math.inf] * (len(self.jobs) + 1)
        for mask, value in enumerate(self.best):
            size = mask.bit_count()
            if value is not None and value < result[size]:
                result[size] = value
        return result

    def optimal_mask(self) -> int:
        """The largest reachable subset, ties broken by makespan, then by mask"""
        return min(
            (mask for mask, value in enumerate(self.best) if value is not None),
            key=lambda mask: (-mask.bit_count(), self.best[mask], mask),
        )

    def schedule(self, mask: int) -> Schedule:
        order: list[int] = []
        while mask != 0:
            step = self.predecessor[mask]
            if step is None:
                raise RuntimeError(f"Subset {mask:b} has no predecessor")
            mask, i = step
            order.append(i)

        entries: list[ScheduleEntry] = []
        completion = self.floor
        for i in reversed(order):
            start = max(completion, self.jobs[i].release)
            entries.append(ScheduleEntry(job=self.jobs[i].id, start=start))
            completion = start + self.p
        return Schedule(entries=tuple(entries))


def oracle_max_throughput(instance: Instance) -> MaxThroughputResult:
    if instance.n > ORACLE_MAX_JOBS:
        raise OracleLimitError(
            f"The oracle handles at most {ORACLE_MAX_JOBS} jobs, got {instance.n}"
        )
    floor = min((job.release for job in instance.jobs), default=0)
    table = SubsetTable(instance.jobs, instance.p, floor)
    mask = table.optimal_mask()
    logger.debug("oracle: %d subsets, best mask %s", len(table.best), bin(mask))
    return MaxThroughputResult(count=mask.bit_count(), schedule=table.schedule(mask))


def oracle_b_row(instance: Instance, k: int, alpha: int) -> list[float]:
    """
    Independent evaluation of the table entries ``B[k][alpha][u]`` for all ``u``:
    the minimal makespan of exactly ``u`` jobs among the first ``k`` (deadline
    order) released at or after ``alpha``, none starting before ``alpha + p``,
    rounded up to the next point of the time grid
    """
    require_normalized(instance)
    if instance.n > ORACLE_TABLE_MAX_JOBS:
        raise OracleLimitError(
            f"Table entries are enumerated for at most {ORACLE_TABLE_MAX_JOBS} jobs"
        )
    if not 0 <= k <= instance.n:
        raise IndexError(f"Job prefix {k} is out of range")

    jobs = [job for job in instance.jobs[:k] if job.release >= alpha]
    row = SubsetTable(jobs, instance.p, alpha + instance.p).by_size()
    grid = build_time_grid(instance)
    row = row[:1] + [grid.ceiling(value) for value in row[1:]]
    return row + [math.inf] * (instance.n + 1 - len(row))


def oracle_b_value(instance: Instance, k: int, alpha: int, u: int) -> float:
    if not 0 <= u <= instance.n:
        raise IndexError(f"Job count {u} is out of range")
    return oracle_b_row(instance, k, alpha)[u]


def _left_shifted_fits(order: Sequence[Job], p: int) -> bool:
    completion: int | None = None
    for job in order:
        start = job.release if completion is None else max(completion, job.release)
        completion = start + p
        if completion > job.deadline:
            return False
    return True


def permutation_max_throughput(instance: Instance) -> int:
    """Brute force over all ordered subsets, largest first; checks the oracle"""
    if instance.n > PERMUTATION_MAX_JOBS:
        raise OracleLimitError(
            f"Permutation search handles at most {PERMUTATION_MAX_JOBS} jobs"
        )
    for size in range(instance.n, 0, -1):
        for subset in combinations(instance.jobs, size):
            if any(_left_shifted_fits(order, instance.p) for order in permutations(subset)):
                return size
    return 0
