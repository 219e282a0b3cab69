from pathlib import Path

import pytest

from coulombkit.quiver import parse_theory

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "coulombkit" / "fixtures"


def load(name: str):
    return parse_theory((FIXTURES / name).read_text(encoding="utf-8"))


@pytest.fixture
def theory():
    return load
