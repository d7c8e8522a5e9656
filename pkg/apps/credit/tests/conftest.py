"""Pytest fixtures for credit tests."""

import numpy as np
import pytest

from apps.credit.services import ATTRIBUTES, FeatureMatrix, parse_german_data

# First record of the public german.data file
BASE_FIELDS = "A11 6 A34 A43 1169 A65 A75 4 A93 A101 4 A121 67 A143 A152 2 A173 1 A192 A201".split()

_INDEX = {attribute.name: k for k, attribute in enumerate(ATTRIBUTES)}


def credit_line(outcome: int = 1, **overrides: object) -> str:
    fields = list(BASE_FIELDS)
    for name, value in overrides.items():
        fields[_INDEX[name]] = str(value)
    return " ".join([*fields, str(outcome)])


def synthetic_german_data(rows: int = 200, bad_fraction: float = 0.3, seed: int = 0) -> str:
    """Records whose checking account status alone decides the outcome."""
    rng = np.random.default_rng(seed)
    bad = int(rows * bad_fraction)
    lines = [
        credit_line(
            outcome=2 if k < bad else 1,
            checking_status="A11" if k < bad else "A14",
            duration=int(rng.integers(4, 72)),
            credit_amount=int(rng.integers(250, 18000)),
            age=int(rng.integers(19, 75)),
            purpose=rng.choice(["A40", "A43", "A49"]),
        )
        for k in range(rows)
    ]
    return "\n".join(lines) + "\n"


@pytest.fixture
def german_text() -> str:
    return synthetic_german_data()


@pytest.fixture
def german_records(german_text):
    return parse_german_data(german_text)


@pytest.fixture
def german_file(tmp_path, german_text):
    """Path to a synthetic german.data file."""
    path = tmp_path / "german.data"
    path.write_text(german_text, encoding="ascii")
    return path


@pytest.fixture
def duplicated_matrix() -> FeatureMatrix:
    """An informative column, an exact copy of it and a noise column."""
    rng = np.random.default_rng(7)
    signal = rng.normal(size=300)
    noise = rng.normal(size=300)
    labels = (signal > 0).astype(np.int64)
    return FeatureMatrix(("signal", "signal_copy", "noise"), np.column_stack([signal, signal, noise]), labels)


@pytest.fixture
def german_data_file(settings):
    """The downloaded german.data, skipping when scripts/fetch_datasets.py has not run."""
    path = settings.WORKBENCH_DATA_DIR / "german_credit" / "german.data"
    if not path.is_file():
        pytest.skip(f"{path} not downloaded")
    return path
