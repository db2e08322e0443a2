import random

from pydantic import BaseModel

from common.constants import RANDOM_RELEASE_MAX, RANDOM_SLACK_MAX, RANDOM_SLACK_MIN
from common.errors import InstanceError
from common.models import Instance, Job, Schedule, ScheduleEntry
from common.schedules import normalize

BIT_VALUES: frozenset[str] = frozenset("01")


class JxSpec(BaseModel):
    """
    A bit string ``x`` of length ``m`` and a processing time ``p``:
    the parameters of the family of instances that defeats left-to-right
    scans. ``p`` defaults to the smallest admissible value ``2m + 3``.
    """

    bits: str
    p: int

    class Config:
        frozen = True

    @classmethod
    def of(cls, bits: str, p: int | None = None) -> "JxSpec":
        return cls(bits=bits, p=2 * len(bits) + 3 if p is None else p)

    @property
    def m(self) -> int:
        return len(self.bits)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(int(bit) for bit in self.bits)

    def check(self) -> None:
        if self.m == 0:
            raise InstanceError("The bit string must not be empty")
        if not set(self.bits) <= BIT_VALUES:
            raise InstanceError(f"Bit string '{self.bits}' must consist of 0 and 1")
        if self.p < 2 * self.m + 3:
            raise InstanceError(
                f"Processing time must be at least {2 * self.m + 3} for {self.m} bits"
            )


class JxQuantities(BaseModel):
    u: tuple[int, ...]
    v: tuple[int, ...]
    t0: int
    xi: int


class RandomSpec(BaseModel):
    n: int
    p: int
    release_max: int = RANDOM_RELEASE_MAX
    slack_min: int = RANDOM_SLACK_MIN
    slack_max: int = RANDOM_SLACK_MAX
    seed: int = 0

    class Config:
        frozen = True


class LeftToRightView(BaseModel):
    """
    What a procedure scanning time from left to right knows at ``time``:
    the jobs whose deadline has passed, the releases seen so far and
    only the relative order of the deadlines still ahead
    """

    time: int
    finished: tuple[Job, ...]
    released: tuple[tuple[str, int], ...]
    deadline_order: tuple[str, ...]

    class Config:
        frozen = True


def jx_quantities(spec: JxSpec) -> JxQuantities:
    spec.check()
    m, p = spec.m, spec.p
    u = tuple(i * (2 * p + 1) for i in range(m + 1))
    v = [m * (2 * p + 1)] * (m + 1)
    for i in range(m - 1, -1, -1):
        v[i] = v[i + 1] + p + (p + 1) * spec.values[i]
    return JxQuantities(u=u, v=tuple(v), t0=u[m], xi=sum(spec.values))


def gen_fig1() -> Instance:
    """The three-job instance on which the historical maximization scan returns 2 jobs"""
    return Instance(
        p=2,
        jobs=(
            Job(id="A", release=0, deadline=2),
            Job(id="B", release=3, deadline=5),
            Job(id="C", release=1, deadline=7),
        ),
    )


def gen_jx(spec: JxSpec) -> Instance:
    quantities = jx_quantities(spec)
    p = spec.p
    jobs: list[Job] = []
    for i, bit in enumerate(spec.values):
        start, tail = quantities.u[i], quantities.v[i + 1]
        if bit == 0:
            deadlines = (tail + p, tail + 2, start + 2 * p, tail + 1)
        else:
            deadlines = (tail + 2 * p + 1, tail + 2 * p, start + 2 * p, tail + p)
        releases = (start, start + 1, start + p, start + p + 1)
        for letter, release, deadline in zip("ABCD", releases, deadlines):
            jobs.append(Job(id=f"{letter}{i}", release=release, deadline=deadline))
    return normalize(Instance(p=p, jobs=tuple(jobs)))[0]


def gen_rx(spec: JxSpec) -> Schedule:
    """
    The reference schedule of :py:func:`gen_jx`: two jobs of every block run
    before ``t0``, the remaining ones after it in reverse block order.
    It holds ``3m + popcount(x)`` jobs.
    """
    quantities = jx_quantities(spec)
    p = spec.p
    entries: list[ScheduleEntry] = []
    for i, bit in enumerate(spec.values):
        start, tail = quantities.u[i], quantities.v[i + 1]
        if bit == 0:
            pairs = [("B", start + 1), ("D", start + p + 1), ("A", tail)]
        else:
            pairs = [("A", start), ("C", start + p), ("D", tail), ("B", tail + p)]
        entries.extend(ScheduleEntry(job=f"{letter}{i}", start=at) for letter, at in pairs)
    return Schedule(entries=tuple(entries)).by_start()


def gen_random(spec: RandomSpec) -> Instance:
    if spec.n < 0:
        raise InstanceError("Number of jobs must not be negative")
    if spec.release_max < 0:
        raise InstanceError("Largest release time must not be negative")
    if spec.slack_min > spec.slack_max:
        raise InstanceError("Slack range is empty")
    generator = random.Random(spec.seed)
    jobs: list[Job] = []
    for i in range(spec.n):
        release = generator.randint(0, spec.release_max)
        slack = generator.randint(spec.slack_min, spec.slack_max)
        jobs.append(Job(id=f"J{i}", release=release, deadline=release + spec.p + slack))
    return normalize(Instance(p=spec.p, jobs=tuple(jobs)))[0]


def left_to_right_view(instance: Instance, time: int) -> LeftToRightView:
    ordered = sorted(instance.jobs, key=lambda job: (job.deadline, job.id))
    ahead = [job for job in ordered if job.deadline > time]
    return LeftToRightView(
        time=time,
        finished=tuple(job for job in ordered if job.deadline <= time),
        released=tuple(
            sorted((job.id, job.release) for job in ahead if job.release <= time)
        ),
        deadline_order=tuple(job.id for job in ahead),
    )
