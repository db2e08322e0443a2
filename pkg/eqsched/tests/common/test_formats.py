import pytest

from common.errors import FormatError
from common.formats import (
    emit_instance,
    emit_schedule,
    emit_solution,
    parse_instance,
    parse_schedule,
)
from common.models import Instance, Job, Schedule

FIG1_TEXT = "p 2\njob A 0 2\njob B 3 5\njob C 1 7\n"


def test_parse_fig1() -> None:
    assert parse_instance(FIG1_TEXT) == Instance(
        p=2,
        jobs=(
            Job(id="A", release=0, deadline=2),
            Job(id="B", release=3, deadline=5),
            Job(id="C", release=1, deadline=7),
        ),
    )


@pytest.mark.parametrize(
    "text",
    [
        pytest.param(FIG1_TEXT, id="fig1"),
        pytest.param("p 3\n", id="empty"),
        pytest.param("p 1\njob late -4 -9\n", id="negative"),
    ],
)
def test_instance_round_trip(text: str) -> None:
    assert emit_instance(parse_instance(text)) == text


def test_comments_and_blank_lines() -> None:
    text = "# fig1\n\np 2\n   \njob A 0 2\n# trailing\njob B 3 5\njob C 1 7"
    assert parse_instance(text) == parse_instance(FIG1_TEXT)


@pytest.mark.parametrize(
    ("text", "message"),
    [
        pytest.param("p 0\n", " at line 1: Processing time must be positive", id="zero_p"),
        pytest.param("p 2\np 3\n", " at line 2: Duplicate 'p' line", id="duplicate_p"),
        pytest.param("job A 0 2\n", " at line 1: The 'p' line must precede jobs", id="job_first"),
        pytest.param(
            "p 2\njob A 0 2\njob A 1 4\n", " at line 3: Duplicate job id 'A'", id="duplicate_id"
        ),
        pytest.param("p 2\ntask A 0 2\n", " at line 2: Unknown record 'task'", id="unknown"),
        pytest.param(
            "p 2\njob A 0\n",
            " at line 2: Expected 'job <id> <release> <deadline>'",
            id="missing_field",
        ),
        pytest.param(
            "p 2\n\njob A 0 x\n", " at line 3: Field 'x' is not an integer", id="not_integer"
        ),
        pytest.param("p 1.5\n", " at line 1: Field '1.5' is not an integer", id="float_p"),
        pytest.param(
            "p 2\njob A 0 9223372036854775808\n",
            " at line 2: Field '9223372036854775808' is out of the 64-bit range",
            id="overflow",
        ),
        pytest.param("# nothing\n", ": Missing 'p' line", id="missing_p"),
    ],
)
def test_instance_errors(text: str, message: str) -> None:
    with pytest.raises(FormatError) as e:
        parse_instance(text)
    assert str(e.value) == f"Parsing error occurred{message}"


def test_schedule_round_trip() -> None:
    text = "sched A 0\nsched B 3\nsched C 5\n"
    schedule = parse_schedule(text)
    assert schedule == Schedule.of(("A", 0), ("B", 3), ("C", 5))
    assert emit_schedule(schedule) == text


def test_schedule_emitted_by_start() -> None:
    schedule = Schedule.of(("C", 5), ("A", 0), ("B", 3))
    assert emit_schedule(schedule) == "sched A 0\nsched B 3\nsched C 5\n"


@pytest.mark.parametrize(
    ("text", "message"),
    [
        pytest.param("job A 0 2\n", " at line 1: Unknown record 'job'", id="wrong_record"),
        pytest.param("sched A\n", " at line 1: Expected 'sched <id> <start>'", id="short"),
        pytest.param("sched A zero\n", " at line 1: Field 'zero' is not an integer", id="text"),
    ],
)
def test_schedule_errors(text: str, message: str) -> None:
    with pytest.raises(FormatError) as e:
        parse_schedule(text)
    assert str(e.value) == f"Parsing error occurred{message}"


def test_emit_solution() -> None:
    assert emit_solution(0, Schedule()) == "count 0\n"
    assert emit_solution(1, Schedule.of(("A", 4))) == "count 1\nsched A 4\n"
