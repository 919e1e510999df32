from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from blowup_stability import (
    Ambient,
    EpsPoly,
    GradedComponent,
    Instance,
    Quiver,
    validate_instance,
)
from blowup_stability.randgen import corpus, harness_seed

DATA = Path(__file__).parent / "data"


def make_chain3(d1: int, d2: int, d3: int) -> Instance:
    comps = tuple(
        GradedComponent(f"G{k + 1}", 1, EpsPoly([5, 0, d], max_degree=2))
        for k, d in enumerate((d1, d2, d3))
    )
    return validate_instance(
        Instance(Ambient(3, 1), comps, Quiver(((1, 2), (2, 3))))
    )


@pytest.fixture(scope="session")
def chain3_stable() -> Instance:
    return make_chain3(-4, -1, -1)


@pytest.fixture(scope="session")
def chain3_semistable() -> Instance:
    return make_chain3(-3, -1, -2)


@pytest.fixture(scope="session")
def chain3_unstable() -> Instance:
    return make_chain3(-1, -3, -2)


@pytest.fixture(scope="session")
def small_corpus() -> list[Instance]:
    return corpus(200, seed=harness_seed())


@pytest.fixture(scope="session")
def acceptance_corpus() -> list[Instance]:
    return corpus(1000, seed=harness_seed())


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA
