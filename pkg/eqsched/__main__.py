import json
import logging
from pathlib import Path
from typing import Optional

from typer import Exit, FileText, FileTextWrite, Option, Typer, echo

from common.constants import (
    BENCH_PROCESSING_TIME,
    BENCH_REPETITIONS,
    BENCH_SIZES,
    RANDOM_RELEASE_MAX,
    RANDOM_SLACK_MAX,
    RANDOM_SLACK_MIN,
)
from common.errors import (
    FormatError,
    InstanceError,
    OracleLimitError,
    ScheduleError,
    TableError,
)
from common.formats import emit_instance, emit_schedule, parse_instance, parse_schedule
from common.models import Instance
from common.schedules import canonicalize, normalize, validate_schedule
from generators.instances import JxSpec, RandomSpec, gen_fig1, gen_jx, gen_random
from harness.bench import bench as run_bench, render_bench
from harness.compare import SolverName, compare as run_compare
from harness.corpus import require_valid, solution_text, verify_corpus
from solvers.dp import build_table, dump_table, solve_table, table_log
from solvers.feasibility import Scan, check_feasible
from solvers.legacy import render_trace, run_algorithm1
from solvers.oracle import oracle_max_throughput

app = Typer()
gen_app = Typer(help="Generate instances in the text format")
app.add_typer(gen_app, name="gen")

USAGE_ERRORS = (FormatError, InstanceError, OracleLimitError)
SEMANTIC_ERRORS = (ScheduleError, TableError)

InputOption = Option("-", "--input", help="Instance file, '-' for stdin")
OutputOption = Option("-", "--output", help="Output file, '-' for stdout")


def fail(message: str, code: int) -> Exit:
    echo(f"Error: {message}", err=True)
    return Exit(code=code)


def read_text(input_file: FileText) -> str:
    try:
        data = input_file.read()
        # surrogate-escaped bytes only fail on the way back
        data.encode("utf-8")
    except UnicodeError:
        raise fail(str(FormatError("Input is not valid UTF-8 text")), 2)
    return data


def read_instance(input_file: FileText) -> tuple[Instance, int]:
    try:
        return normalize(parse_instance(read_text(input_file)))
    except USAGE_ERRORS as e:
        raise fail(str(e), 2)


def save_json(path: Path, data: object) -> None:
    with path.open("w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
    echo(f"Log saved to {path}", err=True)


@app.callback()
def main(verbose: bool = Option(False, "--verbose", help="Log solver diagnostics")) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


@app.command()
def solve(
    input_file: FileText = InputOption,
    output_file: FileTextWrite = OutputOption,
    dump_table_path: Optional[Path] = Option(
        None, "--dump-table", help="Writes the finite table entries as CSV"
    ),
    save_log: Optional[Path] = Option(None, help="Saves the table entries as JSON"),
) -> None:
    instance, offset = read_instance(input_file)
    try:
        table = build_table(instance)
        result = solve_table(table)
        output_file.write(solution_text(instance, result.schedule, offset))
    except SEMANTIC_ERRORS as e:
        raise fail(str(e), 1)

    if dump_table_path is not None:
        with dump_table_path.open("w", encoding="utf-8") as f:
            f.write(dump_table(table))
    if save_log is not None:
        save_json(save_log, [entry.dict() for entry in table_log(table)])


@app.command("check-feasible")
def check_feasible_command(
    input_file: FileText = InputOption,
    output_file: FileTextWrite = OutputOption,
    dense: bool = Option(False, help="Scans every integer time instead of the grid"),
) -> None:
    instance, offset = read_instance(input_file)
    outcome = check_feasible(instance, Scan.DENSE if dense else Scan.SPARSE)
    if outcome.witness is None:
        output_file.write("infeasible\n")
        return
    try:
        output_file.write("feasible\n" + solution_text(instance, outcome.witness, offset))
    except ScheduleError as e:
        raise fail(str(e), 1)


@app.command()
def legacy(
    input_file: FileText = InputOption,
    output_file: FileTextWrite = OutputOption,
    trace: bool = Option(False, help="Prints the table of partial schedules instead"),
    save_log: Optional[Path] = Option(None, help="Saves the trace as JSON"),
) -> None:
    instance, offset = read_instance(input_file)
    try:
        result = run_algorithm1(instance)
    except InstanceError as e:
        raise fail(str(e), 2)
    try:
        text = solution_text(instance, result.schedule, offset)
    except ScheduleError as e:
        raise fail(str(e), 1)
    output_file.write(render_trace(result.trace) if trace else text)
    if save_log is not None:
        save_json(save_log, result.trace.dict())


@app.command()
def oracle(
    input_file: FileText = InputOption,
    output_file: FileTextWrite = OutputOption,
) -> None:
    instance, offset = read_instance(input_file)
    try:
        result = oracle_max_throughput(instance)
        output_file.write(solution_text(instance, result.schedule, offset))
    except OracleLimitError as e:
        raise fail(str(e), 2)
    except ScheduleError as e:
        raise fail(str(e), 1)


@app.command()
def validate(
    schedule_file: FileText = Option(..., "--schedule", help="Schedule file"),
    input_file: FileText = InputOption,
) -> None:
    try:
        instance = parse_instance(read_text(input_file))
        schedule = parse_schedule(read_text(schedule_file))
    except FormatError as e:
        raise fail(str(e), 2)
    result = validate_schedule(instance, schedule)
    echo(str(result))
    if not result.ok:
        raise Exit(code=1)


@app.command("canonicalize")
def canonicalize_command(
    schedule_file: FileText = Option(..., "--schedule", help="Schedule file"),
    input_file: FileText = InputOption,
    output_file: FileTextWrite = OutputOption,
) -> None:
    try:
        instance = parse_instance(read_text(input_file))
        schedule = parse_schedule(read_text(schedule_file))
    except FormatError as e:
        raise fail(str(e), 2)
    try:
        result = canonicalize(instance, schedule)
        require_valid(instance, result)
        output_file.write(emit_schedule(result))
    except ScheduleError as e:
        raise fail(str(e), 1)


@app.command("compare")
def compare_command(
    input_file: FileText = InputOption,
    output_file: FileTextWrite = OutputOption,
    solvers: str = Option("dp,legacy,oracle", help="Comma-separated solver names"),
    timings: bool = Option(False, help="Appends wall times in milliseconds"),
) -> None:
    try:
        names = [SolverName(name.strip()) for name in solvers.split(",")]
    except ValueError:
        choices = ", ".join(name.value for name in SolverName)
        raise fail(f"Solvers must be chosen from {choices}", 2)

    instance, offset = read_instance(input_file)
    try:
        report = run_compare(instance, names, offset)
    except SEMANTIC_ERRORS as e:
        raise fail(str(e), 1)
    output_file.write(report.render(timings))
    if not report.ok:
        raise Exit(code=1)


@app.command("bench")
def bench_command(
    output_file: FileTextWrite = OutputOption,
    sizes: str = Option(
        ",".join(str(size) for size in BENCH_SIZES), help="Comma-separated job counts"
    ),
    seed: int = Option(0, help="Seed of the random instances"),
    p: int = Option(BENCH_PROCESSING_TIME, help="Processing time"),
    repeat: int = Option(BENCH_REPETITIONS, help="Repetitions per size (at least 3)"),
) -> None:
    try:
        parsed = [int(size) for size in sizes.split(",")]
    except ValueError:
        raise fail(f"Sizes '{sizes}' must be comma-separated integers", 2)
    try:
        rows = run_bench(parsed, seed, p, repeat)
    except InstanceError as e:
        raise fail(str(e), 2)
    output_file.write(render_bench(rows))


@app.command("verify-corpus")
def verify_corpus_command(
    root: Path = Option(Path("corpus"), help="Corpus directory"),
) -> None:
    if not root.is_dir():
        raise fail(f"Corpus directory {root} does not exist", 2)
    report = verify_corpus(root)
    echo(report.render(), nl=False)
    if not report.ok:
        raise Exit(code=1)


@gen_app.command()
def fig1(output_file: FileTextWrite = OutputOption) -> None:
    output_file.write(emit_instance(gen_fig1()))


@gen_app.command()
def jx(
    bits: str = Option(..., help="Bit string, e.g. 101"),
    p: Optional[int] = Option(None, help="Processing time, at least 2m+3 (default)"),
    output_file: FileTextWrite = OutputOption,
) -> None:
    try:
        output_file.write(emit_instance(gen_jx(JxSpec.of(bits, p))))
    except InstanceError as e:
        raise fail(str(e), 2)


@gen_app.command()
def random(
    n: int = Option(..., help="Number of jobs"),
    p: int = Option(..., help="Processing time"),
    seed: int = Option(0, help="Generator seed"),
    rmax: int = Option(RANDOM_RELEASE_MAX, help="Largest release time"),
    smin: int = Option(RANDOM_SLACK_MIN, help="Smallest slack d - r - p"),
    smax: int = Option(RANDOM_SLACK_MAX, help="Largest slack d - r - p"),
    output_file: FileTextWrite = OutputOption,
) -> None:
    spec = RandomSpec(n=n, p=p, release_max=rmax, slack_min=smin, slack_max=smax, seed=seed)
    try:
        output_file.write(emit_instance(gen_random(spec)))
    except InstanceError as e:
        raise fail(str(e), 2)


if __name__ == "__main__":
    app()
