import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from cgframes import GFrameFamily, example_2_3

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def spectral(M):
    return float(np.linalg.norm(M, 2))


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@pytest.fixture
def example():
    return example_2_3()


@pytest.fixture
def frame13():
    """Blocks I_2 and [1, 1] on unit weights: S = [[2, 1], [1, 2]], bounds (1, 3)."""
    return GFrameFamily.from_blocks([np.eye(2), [[1.0, 1.0]]], [1.0, 1.0])


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if rep.when == "call" and "criterion" in props:
                lines.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for text, status in sorted(lines, key=lambda x: int(x[0].split()[0])):
            num, _, desc = text.partition(" ")
            terminalreporter.write_line(f"criterion {num}: {status}  {desc}")
