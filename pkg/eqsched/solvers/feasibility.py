import logging
from bisect import bisect_right
from enum import Enum

from pydantic import BaseModel

from common.errors import ScheduleError
from common.models import Instance, Schedule
from common.schedules import canonicalize, extend, makespan, require_normalized

logger = logging.getLogger(__name__)


class Scan(str, Enum):
    SPARSE = "sparse"
    DENSE = "dense"


class FeasibilityOutcome(BaseModel):
    feasible: bool
    witness: Schedule | None = None


class PartialSchedules:
    """
    The schedules ``S_x`` built so far, stored only at the times where they
    were computed. Looking up a time between two of them returns the latest
    one at or before it (the empty schedule before the first).
    """

    def __init__(self) -> None:
        self.times: list[int] = []
        self.schedules: list[Schedule] = []

    def at(self, time: int) -> Schedule:
        position = bisect_right(self.times, time)
        if position == 0:
            return Schedule()
        return self.schedules[position - 1]

    def record(self, time: int, schedule: Schedule) -> None:
        self.times.append(time)
        self.schedules.append(schedule)


def is_active(instance: Instance, schedule: Schedule) -> bool:
    """Whether every job with deadline at most ``C(S)`` belongs to ``S``"""
    completion = makespan(schedule, instance.p)
    scheduled = set(schedule.job_ids)
    return all(
        job.id in scheduled for job in instance.jobs if job.deadline <= completion
    )


def candidate_times(instance: Instance, scan: Scan) -> list[int]:
    if scan is Scan.DENSE:
        return list(range(instance.d_max + 1))
    points = {
        job.release + level * instance.p
        for job in instance.jobs
        for level in range(instance.n + 1)
    }
    points.add(instance.d_max)
    return sorted(point for point in points if point <= instance.d_max)


def next_schedule(instance: Instance, partial: PartialSchedules, time: int) -> Schedule:
    base = partial.at(time - instance.p)
    scheduled = set(base.job_ids)
    # jobs are in deadline order, so the first pending one is the earliest-deadline
    pending = [
        job
        for job in instance.jobs
        if job.release <= time - instance.p and job.id not in scheduled
    ]
    if len(pending) == 0:
        return base

    try:
        extension = extend(instance, base, pending[0].id)
    except ScheduleError:
        return partial.at(time - 1)
    if is_active(instance, extension):
        return extension
    return partial.at(time - 1)


def check_feasible(instance: Instance, scan: Scan = Scan.SPARSE) -> FeasibilityOutcome:
    """
    Decides whether all jobs can be scheduled by building the partial
    schedules ``S_x`` from left to right. The sparse scan visits only the
    times ``r_j + l*p`` (``l = 0..n``) and ``d_max``.
    """
    require_normalized(instance)
    partial = PartialSchedules()
    for time in candidate_times(instance, scan):
        partial.record(time, next_schedule(instance, partial, time))

    final = partial.at(instance.d_max)
    logger.debug(
        "feasibility (%s): %d times, %d of %d jobs",
        scan.value,
        len(partial.times),
        final.count,
        instance.n,
    )
    if final.count != instance.n:
        return FeasibilityOutcome(feasible=False)
    return FeasibilityOutcome(feasible=True, witness=canonicalize(instance, final))
