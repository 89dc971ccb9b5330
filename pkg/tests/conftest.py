from __future__ import annotations

import numpy as np
import pytest

import pwsync as ps


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    status = "PASS" if report.passed else "FAIL"
    name = report.nodeid.split("::")[-1]
    print(f"[acceptance] {status} {name}", flush=True)


@pytest.fixture(scope="session")
def relay():
    return ps.relay_feedback_system()


@pytest.fixture(scope="session")
def relay_cert():
    return ps.relay_certificate()


def random_connected_graph(rng: np.random.Generator, n_min: int = 4, n_max: int = 10) -> ps.Graph:
    n = int(rng.integers(n_min, n_max + 1))
    p = float(rng.uniform(0.3, 0.7))
    return ps.erdos_renyi_graph(n, p, seed=int(rng.integers(10**9)))
