import json
from pathlib import Path

import pytest

from urania import (
    OrbitalElements,
    TableSet,
    build_double_entry,
    build_planet_table,
    default_elements_path,
    load_elements,
)

DATA_DIR = Path(__file__).parent / "data"


def make_el(**overrides) -> OrbitalElements:
    """Synthetic element record with sane defaults, overridable per test."""
    fields = dict(
        name="body",
        a=1.5,
        e=0.2,
        i=3.0,
        Omega=40.0,
        omega=110.0,
        P=500.0,
        T_aph=2451545.0,
        corrections=(),
    )
    fields.update(overrides)
    return OrbitalElements(**fields)


@pytest.fixture(scope="session")
def dataset():
    return load_elements(default_elements_path())


@pytest.fixture(scope="session")
def default_tables(dataset) -> TableSet:
    """The default fidelity configuration, compiled once per session."""
    tables = TableSet()
    earth = dataset["earth"]
    for el in dataset:
        tables.add(build_planet_table(el, 1.0))
        if el.name != "earth":
            tables.add(build_double_entry(el, earth, 64, 64))
    return tables


@pytest.fixture(scope="session")
def frozen_bounds() -> dict:
    with open(DATA_DIR / "frozen_bounds.json") as fh:
        return json.load(fh)
