TIME_BITS: int = 64
TIME_MAIN: int = 2 ** (TIME_BITS - 1)
TIME_MAX_VALUE: int = TIME_MAIN - 1
TIME_MIN_VALUE: int = -TIME_MAIN

ORACLE_MAX_JOBS: int = 20
# subset tables above this size are too large to enumerate
ORACLE_TABLE_MAX_JOBS: int = 12
PERMUTATION_MAX_JOBS: int = 8
# the legacy scan stores one cell per job count and integer time
LEGACY_MAX_CELLS: int = 200_000

RANDOM_RELEASE_MAX: int = 20
RANDOM_SLACK_MIN: int = 0
RANDOM_SLACK_MAX: int = 12

BENCH_SIZES: tuple[int, ...] = (15, 30, 60)
BENCH_PROCESSING_TIME: int = 5
BENCH_REPETITIONS: int = 3
