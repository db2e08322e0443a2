from itertools import permutations

import pytest

from common.errors import InstanceError, ScheduleError
from common.models import Instance, Job, Schedule, Violation
from common.schedules import (
    build_time_grid,
    canonicalize,
    extend,
    idle_time,
    is_canonical,
    makespan,
    normalize,
    require_normalized,
    shift_schedule,
    validate_schedule,
)
from generators.instances import gen_fig1
from solvers.oracle import oracle_max_throughput


@pytest.fixture
def fig1() -> Instance:
    return gen_fig1()


def instance_of(p: int, *jobs: tuple[str, int, int]) -> Instance:
    return Instance(
        p=p, jobs=tuple(Job(id=i, release=r, deadline=d) for i, r, d in jobs)
    )


def test_normalize_shift() -> None:
    assert normalize(instance_of(2, ("A", 5, 9))) == (instance_of(2, ("A", 0, 4)), 5)


def test_normalize_orders_by_deadline_then_id() -> None:
    instance, offset = normalize(instance_of(1, ("b", 0, 4), ("c", 2, 3), ("a", 1, 4)))
    assert offset == 0
    assert [job.id for job in instance.jobs] == ["c", "a", "b"]
    assert instance.is_normalized


def test_normalize_fig1(fig1: Instance) -> None:
    assert normalize(fig1) == (fig1, 0)


def test_normalize_empty() -> None:
    assert normalize(Instance(p=3)) == (Instance(p=3), 0)


@pytest.mark.parametrize(
    ("instance", "message"),
    [
        pytest.param(instance_of(0, ("A", 0, 1)), "Processing time must be positive", id="zero_p"),
        pytest.param(instance_of(-2), "Processing time must be positive", id="negative_p"),
        pytest.param(
            instance_of(1, ("A", 0, 1), ("A", 2, 3)), "Job ids must be unique", id="duplicates"
        ),
        pytest.param(
            instance_of(1, ("A", 2**62, 2**62), ("B", -(2**62), 2**63 - 1)),
            "Time of job 'A' overflows the 64-bit range",
            id="overflow",
        ),
    ],
)
def test_normalize_errors(instance: Instance, message: str) -> None:
    with pytest.raises(InstanceError) as e:
        normalize(instance)
    assert str(e.value) == message


def test_require_normalized() -> None:
    with pytest.raises(InstanceError) as e:
        require_normalized(instance_of(2, ("A", 5, 9)))
    assert str(e.value) == "Instance must be normalized first"


def test_makespan_and_shift() -> None:
    schedule = Schedule.of(("A", 0), ("B", 3))
    assert makespan(Schedule(), 2) == 0
    assert makespan(schedule, 2) == 5
    assert shift_schedule(schedule, 10) == Schedule.of(("A", 10), ("B", 13))


def test_idle_time() -> None:
    schedule = Schedule.of(("A", 0), ("B", 3), ("C", 5))
    assert idle_time(schedule, 2, 0, 7) == 1
    assert idle_time(schedule, 2, 1, 6) == 1
    assert idle_time(Schedule(), 2, 0, 7) == 7


def test_validate_ok(fig1: Instance) -> None:
    result = validate_schedule(fig1, Schedule.of(("A", 0), ("B", 3), ("C", 5)))
    assert result.ok
    assert str(result) == "ok"


@pytest.mark.parametrize(
    ("schedule", "kind", "text"),
    [
        pytest.param(
            Schedule.of(("A", 0), ("C", 1)),
            Violation.Kind.OVERLAP,
            "overlap C: starts at 1 before A completes at 2",
            id="overlap",
        ),
        pytest.param(
            Schedule.of(("A", 1)),
            Violation.Kind.AFTER_DEADLINE,
            "after-deadline A: completes at 3 after deadline 2",
            id="deadline",
        ),
        pytest.param(
            Schedule.of(("B", 2)),
            Violation.Kind.BEFORE_RELEASE,
            "before-release B: starts at 2 before release 3",
            id="release",
        ),
        pytest.param(
            Schedule.of(("Z", 0)), Violation.Kind.UNKNOWN_JOB, "unknown-job Z: not in the instance", id="unknown"
        ),
        pytest.param(
            Schedule.of(("C", 1), ("C", 4)),
            Violation.Kind.DUPLICATE,
            "duplicate C: scheduled twice",
            id="duplicate",
        ),
    ],
)
def test_validate_violations(
    fig1: Instance, schedule: Schedule, kind: Violation.Kind, text: str
) -> None:
    result = validate_schedule(fig1, schedule)
    assert not result.ok
    assert result.violation is not None
    assert result.violation.kind is kind
    assert str(result) == text


def test_touching_jobs_do_not_overlap(fig1: Instance) -> None:
    assert validate_schedule(fig1, Schedule.of(("B", 3), ("C", 5))).ok


@pytest.mark.parametrize(
    ("instance", "schedule", "expected"),
    [
        pytest.param(
            gen_fig1(),
            Schedule.of(("A", 0), ("C", 5), ("B", 3)),
            Schedule.of(("A", 0), ("B", 3), ("C", 5)),
            id="fig1",
        ),
        pytest.param(
            instance_of(2, ("Y", 0, 6), ("X", 0, 10)),
            Schedule.of(("X", 2), ("Y", 4)),
            Schedule.of(("Y", 0), ("X", 2)),
            id="swap_then_shift",
        ),
        pytest.param(
            instance_of(2, ("J1", 2, 4), ("J2", 0, 6), ("J3", 0, 8)),
            Schedule.of(("J3", 0), ("J1", 2), ("J2", 4)),
            Schedule.of(("J2", 0), ("J1", 2), ("J3", 4)),
            id="non_adjacent_swap",
        ),
        pytest.param(gen_fig1(), Schedule(), Schedule(), id="empty"),
    ],
)
def test_canonicalize(instance: Instance, schedule: Schedule, expected: Schedule) -> None:
    result = canonicalize(instance, schedule)
    assert result == expected
    assert is_canonical(instance, result)
    assert canonicalize(instance, result) == result


def test_canonicalize_rejects_invalid(fig1: Instance) -> None:
    with pytest.raises(ScheduleError) as e:
        canonicalize(fig1, Schedule.of(("A", 1)))
    assert str(e.value) == (
        "Cannot canonicalize an invalid schedule: "
        + "after-deadline A: completes at 3 after deadline 2"
    )


def test_is_canonical(fig1: Instance) -> None:
    assert is_canonical(fig1, Schedule.of(("A", 0), ("B", 3), ("C", 5)))
    assert not is_canonical(fig1, Schedule.of(("C", 2)))
    assert not is_canonical(fig1, Schedule.of(("A", 0), ("C", 0)))


def test_canonicalize_random(six_job_corpus: list[Instance]) -> None:
    for instance in six_job_corpus:
        schedule = oracle_max_throughput(instance).schedule
        # push every job as late as its deadline allows, last job first
        late: list[tuple[str, int]] = []
        limit = max((job.deadline for job in instance.jobs), default=0)
        jobs = instance.job_index()
        for entry in reversed(schedule.by_start().entries):
            start = min(limit, jobs[entry.job].deadline) - instance.p
            late.append((entry.job, start))
            limit = start
        delayed = Schedule.of(*late)
        assert validate_schedule(instance, delayed).ok

        result = canonicalize(instance, delayed)
        assert validate_schedule(instance, result).ok
        assert set(result.job_ids) == set(delayed.job_ids)
        assert is_canonical(instance, result)
        assert makespan(result, instance.p) <= makespan(delayed, instance.p)
        assert canonicalize(instance, result) == result


@pytest.mark.parametrize(
    ("instance", "job", "expected"),
    [
        pytest.param(gen_fig1(), "A", Schedule.of(("A", 0)), id="first"),
        pytest.param(gen_fig1(), "C", Schedule.of(("A", 0), ("C", 2)), id="after_completion"),
        pytest.param(gen_fig1(), "B", Schedule.of(("A", 0), ("B", 3)), id="after_release"),
    ],
)
def test_extend(instance: Instance, job: str, expected: Schedule) -> None:
    base = Schedule() if job == "A" else Schedule.of(("A", 0))
    assert extend(instance, base, job) == expected


@pytest.mark.parametrize(
    ("schedule", "job", "message"),
    [
        pytest.param(Schedule(), "Z", "Unknown job 'Z'", id="unknown"),
        pytest.param(Schedule.of(("A", 0)), "A", "Job 'A' is already scheduled", id="duplicate"),
        pytest.param(
            Schedule.of(("C", 1)),
            "A",
            "Job 'A' would complete at 5 after its deadline 2",
            id="deadline",
        ),
    ],
)
def test_extend_errors(fig1: Instance, schedule: Schedule, job: str, message: str) -> None:
    with pytest.raises(ScheduleError) as e:
        extend(fig1, schedule, job)
    assert str(e.value) == message


def test_time_grid_single_job() -> None:
    assert build_time_grid(instance_of(2, ("A", 0, 2))).points == (-2, 0, 2)


def test_time_grid_fig1(fig1: Instance) -> None:
    grid = build_time_grid(fig1)
    assert grid.points == (-2, -1, 0, 1, 2, 3, 4, 5, 6, 7, 9)
    assert grid.index(-2) == 0
    assert grid.index(8) is None
    assert 9 in grid
    assert len(build_time_grid(fig1, depth=5)) > len(grid)


def test_time_grid_empty() -> None:
    assert len(build_time_grid(Instance(p=2))) == 0


def test_time_grid_holds_left_shifted_completions(six_job_corpus: list[Instance]) -> None:
    for instance in six_job_corpus[:60]:
        grid = build_time_grid(instance)
        for size in range(1, min(instance.n, 5) + 1):
            for order in permutations(instance.jobs, size):
                completion = order[0].release + instance.p
                assert completion in grid
                for job in order[1:]:
                    completion = max(completion, job.release) + instance.p
                    assert completion in grid
