from common.constants import TIME_MAX_VALUE, TIME_MIN_VALUE
from common.errors import InstanceError, ScheduleError
from common.models import (
    Instance,
    Job,
    Schedule,
    ScheduleEntry,
    TimeGrid,
    ValidationResult,
    Violation,
)


def _check_time(value: int, job_id: str) -> int:
    if not TIME_MIN_VALUE <= value <= TIME_MAX_VALUE:
        raise InstanceError(f"Time of job '{job_id}' overflows the 64-bit range")
    return value


def normalize(instance: Instance) -> tuple[Instance, int]:
    """
    Shifts all times so that the earliest release is 0 and orders the jobs
    by ``(deadline, id)``. Returns the new instance and the applied offset:
    ``original time = normalized time + offset``.
    """
    if instance.p <= 0:
        raise InstanceError("Processing time must be positive")
    ids = [job.id for job in instance.jobs]
    if len(set(ids)) != len(ids):
        raise InstanceError("Job ids must be unique")
    if len(instance.jobs) == 0:
        return Instance(p=instance.p), 0

    offset = min(job.release for job in instance.jobs)
    jobs = sorted(
        (
            Job(
                id=job.id,
                release=_check_time(job.release - offset, job.id),
                deadline=_check_time(job.deadline - offset, job.id),
            )
            for job in instance.jobs
        ),
        key=lambda job: (job.deadline, job.id),
    )
    return Instance(p=instance.p, jobs=tuple(jobs)), offset


def require_normalized(instance: Instance) -> None:
    if instance.p <= 0:
        raise InstanceError("Processing time must be positive")
    if not instance.is_normalized:
        raise InstanceError("Instance must be normalized first")


def makespan(schedule: Schedule, p: int) -> int:
    if schedule.count == 0:
        return 0
    return max(entry.start for entry in schedule.entries) + p


def shift_schedule(schedule: Schedule, offset: int) -> Schedule:
    return Schedule(
        entries=tuple(
            ScheduleEntry(job=entry.job, start=entry.start + offset)
            for entry in schedule.entries
        )
    )


def idle_time(schedule: Schedule, p: int, start: int, end: int) -> int:
    """Length of the part of ``[start, end]`` where the machine is not busy"""
    busy = sum(
        max(0, min(end, entry.start + p) - max(start, entry.start))
        for entry in schedule.entries
    )
    return end - start - busy


def _violation(kind: Violation.Kind, job: str, message: str) -> ValidationResult:
    return ValidationResult(
        ok=False, violation=Violation(kind=kind, job=job, message=message)
    )


def validate_schedule(instance: Instance, schedule: Schedule) -> ValidationResult:
    """
    Checks the entries in start order and reports the first broken constraint.
    A job ending at ``t`` and another one starting at ``t`` do not overlap.
    """
    jobs = instance.job_index()
    seen: set[str] = set()
    previous: ScheduleEntry | None = None

    for entry in schedule.by_start().entries:
        job = jobs.get(entry.job)
        if job is None:
            return _violation(Violation.Kind.UNKNOWN_JOB, entry.job, "not in the instance")
        if entry.job in seen:
            return _violation(Violation.Kind.DUPLICATE, entry.job, "scheduled twice")
        seen.add(entry.job)
        if entry.start < job.release:
            return _violation(
                Violation.Kind.BEFORE_RELEASE,
                entry.job,
                f"starts at {entry.start} before release {job.release}",
            )
        if entry.start + instance.p > job.deadline:
            return _violation(
                Violation.Kind.AFTER_DEADLINE,
                entry.job,
                f"completes at {entry.start + instance.p} after deadline {job.deadline}",
            )
        if previous is not None and previous.start + instance.p > entry.start:
            return _violation(
                Violation.Kind.OVERLAP,
                entry.job,
                f"starts at {entry.start} before {previous.job} completes "
                + f"at {previous.start + instance.p}",
            )
        previous = entry
    return ValidationResult()


def _positions(instance: Instance) -> dict[str, int]:
    ordered = sorted(instance.jobs, key=lambda job: (job.deadline, job.id))
    return {job.id: i for i, job in enumerate(ordered)}


def _find_inversion(
    entries: list[ScheduleEntry], jobs: dict[str, Job], position: dict[str, int]
) -> tuple[int, int] | None:
    for i, early in enumerate(entries):
        for j in range(i + 1, len(entries)):
            late = entries[j]
            inverted = position[early.job] > position[late.job]
            if inverted and early.start >= jobs[late.job].release:
                return i, j
    return None


def _left_shift(entries: list[ScheduleEntry], jobs: dict[str, Job], p: int) -> Schedule:
    result: list[ScheduleEntry] = []
    completion: int | None = None
    for entry in entries:
        release = jobs[entry.job].release
        start = release if completion is None else max(completion, release)
        result.append(ScheduleEntry(job=entry.job, start=start))
        completion = start + p
    return Schedule(entries=tuple(result))


def canonicalize(instance: Instance, schedule: Schedule) -> Schedule:
    """
    Converts a valid schedule into a canonical one with the same job set:
    first the earliest-deadline condition is restored by swapping inverted
    pairs, then every job is shifted left to its release or to the
    completion of its predecessor.
    """
    result = validate_schedule(instance, schedule)
    if not result.ok:
        raise ScheduleError(f"Cannot canonicalize an invalid schedule: {result}")

    jobs = instance.job_index()
    position = _positions(instance)
    entries = list(schedule.by_start().entries)

    inversion = _find_inversion(entries, jobs, position)
    while inversion is not None:
        i, j = inversion
        early, late = entries[i], entries[j]
        entries[i] = ScheduleEntry(job=late.job, start=early.start)
        entries[j] = ScheduleEntry(job=early.job, start=late.start)
        inversion = _find_inversion(entries, jobs, position)

    return _left_shift(entries, jobs, instance.p)


def is_canonical(instance: Instance, schedule: Schedule) -> bool:
    if not validate_schedule(instance, schedule).ok:
        return False
    jobs = instance.job_index()
    entries = list(schedule.by_start().entries)
    if _find_inversion(entries, jobs, _positions(instance)) is not None:
        return False
    return _left_shift(entries, jobs, instance.p) == Schedule(entries=tuple(entries))


def extend(instance: Instance, schedule: Schedule, job_id: str) -> Schedule:
    """
    The extension ``S + m``: appends job ``m`` at ``max(C(S), r_m)``.
    The deadline of ``m`` is checked against the actual completion time.
    """
    job = instance.job_index().get(job_id)
    if job is None:
        raise ScheduleError(f"Unknown job '{job_id}'")
    if job_id in schedule.job_ids:
        raise ScheduleError(f"Job '{job_id}' is already scheduled")

    start = max(makespan(schedule, instance.p), job.release)
    if start + instance.p > job.deadline:
        raise ScheduleError(
            f"Job '{job_id}' would complete at {start + instance.p} "
            + f"after its deadline {job.deadline}"
        )
    return Schedule(entries=(*schedule.entries, ScheduleEntry(job=job_id, start=start)))


def build_time_grid(instance: Instance, depth: int | None = None) -> TimeGrid:
    """
    All values ``r_i + l*p`` for every job ``i`` and ``l`` in ``-1..depth``
    (``depth`` defaults to the number of jobs), sorted and deduplicated
    """
    if depth is None:
        depth = instance.n
    points = {
        job.release + level * instance.p
        for job in instance.jobs
        for level in range(-1, depth + 1)
    }
    return TimeGrid(points=tuple(sorted(points)))
