import numpy as np
import pytest

from mixwit.sampling import EnsembleSpec, StreamKey, sample_density_matrix


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_state(dim_a, dim_b, seed=0, kind="UE"):
    spec = EnsembleSpec(kind, 2)
    return sample_density_matrix(spec, (dim_a, dim_b), key=StreamKey(seed, 0))


def random_product_state(dim_a, dim_b, seed=0):
    a = random_state(dim_a, 1, seed)
    b = random_state(dim_b, 1, seed + 10_000)
    return np.kron(a, b), a, b


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int("".join(c for c in k if c.isdigit())), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
