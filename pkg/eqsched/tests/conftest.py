import random

import pytest

from common.models import Instance
from generators.instances import RandomSpec, gen_random

CORPUS_SEED: int = 20231019


def random_corpus(count: int, max_jobs: int) -> list[Instance]:
    """Seeded instances with n <= max_jobs, p in 1..5, releases 0..20, slack -1..12"""
    generator = random.Random(CORPUS_SEED + max_jobs)
    return [
        gen_random(
            RandomSpec(
                n=generator.randint(0, max_jobs),
                p=generator.randint(1, 5),
                release_max=20,
                slack_min=-1,
                slack_max=12,
                seed=generator.randrange(2**32),
            )
        )
        for _ in range(count)
    ]


@pytest.fixture(scope="session")
def eight_job_corpus() -> list[Instance]:
    return random_corpus(1000, 8)


@pytest.fixture(scope="session")
def six_job_corpus() -> list[Instance]:
    return random_corpus(200, 6)
