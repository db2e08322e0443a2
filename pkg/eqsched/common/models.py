import math
from bisect import bisect_left
from enum import Enum

from pydantic import BaseModel


class Job(BaseModel):
    id: str  # noqa: A003 VNE003
    release: int
    deadline: int

    class Config:
        frozen = True

    def can_start(self, start: int, p: int) -> bool:
        return start >= self.release and start + p <= self.deadline


class Instance(BaseModel):
    """
    A set of equal-length jobs. Solvers expect the normalized form
    (see :py:func:`common.schedules.normalize`): jobs ordered by
    ``(deadline, id)`` and the earliest release at time 0.
    """

    p: int
    jobs: tuple[Job, ...] = ()

    class Config:
        frozen = True

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def d_max(self) -> int:
        if len(self.jobs) == 0:
            return 0
        return max(job.deadline for job in self.jobs)

    @property
    def is_normalized(self) -> bool:
        if len(self.jobs) == 0:
            return True
        ordered = sorted(self.jobs, key=lambda job: (job.deadline, job.id))
        return list(self.jobs) == ordered and min(j.release for j in self.jobs) == 0

    def job_index(self) -> dict[str, Job]:
        return {job.id: job for job in self.jobs}


class ScheduleEntry(BaseModel):
    job: str
    start: int

    class Config:
        frozen = True


class Schedule(BaseModel):
    entries: tuple[ScheduleEntry, ...] = ()

    class Config:
        frozen = True

    @classmethod
    def of(cls, *pairs: tuple[str, int]) -> "Schedule":
        return cls(entries=tuple(ScheduleEntry(job=job, start=start) for job, start in pairs))

    @property
    def count(self) -> int:
        return len(self.entries)

    @property
    def job_ids(self) -> tuple[str, ...]:
        return tuple(entry.job for entry in self.entries)

    def by_start(self) -> "Schedule":
        return Schedule(entries=tuple(sorted(self.entries, key=lambda e: e.start)))


class TimeGrid(BaseModel):
    points: tuple[int, ...] = ()

    class Config:
        frozen = True

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, value: object) -> bool:
        return isinstance(value, int) and self.index(value) is not None

    def index(self, value: int) -> int | None:
        position = bisect_left(self.points, value)
        if position < len(self.points) and self.points[position] == value:
            return position
        return None

    def ceiling(self, value: float) -> float:
        """The smallest point not below ``value``, infinity past the last one"""
        position = bisect_left(self.points, value)
        if position == len(self.points):
            return math.inf
        return self.points[position]


class Violation(BaseModel):
    class Kind(str, Enum):
        OVERLAP = "overlap"
        BEFORE_RELEASE = "before-release"
        AFTER_DEADLINE = "after-deadline"
        UNKNOWN_JOB = "unknown-job"
        DUPLICATE = "duplicate"

    kind: Kind
    job: str
    message: str


class ValidationResult(BaseModel):
    ok: bool = True
    violation: Violation | None = None

    def __str__(self) -> str:
        if self.violation is None:
            return "ok"
        return f"{self.violation.kind.value} {self.violation.job}: {self.violation.message}"


class MaxThroughputResult(BaseModel):
    count: int
    schedule: Schedule
