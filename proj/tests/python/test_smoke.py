import math
import os
from pathlib import Path

import pytest

import conceptspace as cs

FIXTURE = os.environ.get(
    "CSPACE_FRUIT_SPACE", str(Path(__file__).resolve().parents[2] / "data" / "fruit_space.json")
)


@pytest.fixture(scope="module")
def space():
    return cs.load_space(FIXTURE)


def test_loads_fixture(space):
    assert space.names() == ["orange", "lemon", "granny_smith", "apple", "red"]
    assert len(space) == 5
    assert space["apple"].cuboid_count == 3


def test_measures(space):
    assert cs.measure(space["granny_smith"]) == pytest.approx(0.004212, abs=5e-7)
    assert cs.measure(space["apple"]) == pytest.approx(0.1048, abs=5e-5)
    assert cs.measure(space["red"]) == pytest.approx(0.2, abs=1e-12)
    assert cs.alpha_cut_volume(space["red"], math.exp(-2)) == pytest.approx(0.3, abs=1e-12)


def test_relations(space):
    assert cs.similarity(space["red"], space["apple"]) == pytest.approx(math.exp(-1), abs=1e-12)
    assert cs.between(space["lemon"], space["apple"], space["orange"])
    assert not cs.between(space["granny_smith"], space["apple"], space["orange"])
    assert cs.implication(space["granny_smith"], space["apple"]) == pytest.approx(1.0)

    nested = cs.subsethood(space["apple"], space["red"])
    assert nested["regime"] == "nested"
    assert nested["value"] == pytest.approx(1 / 3, abs=1e-12)

    sampled = cs.subsethood(space["apple"], space["orange"], samples=100_000)
    assert sampled["regime"] == "oracle"
    assert 0.0 < sampled["value"] <= 1.0


def test_membership_and_grid(space):
    assert cs.membership(space["red"], [0.75]) == pytest.approx(math.exp(-3), abs=1e-12)
    rows = cs.export_grid(space["red"], ["color"], 5, cutoff=math.exp(-2)).splitlines()
    assert rows[0] == "coord1,membership"
    assert len(rows) == 6


def test_oracle_check(space):
    report = cs.oracle_check(space["orange"], samples=200_000)
    assert report["regime"] == "exact"
    assert abs(report["absolute_gap"]) <= 3 * report["standard_error"] + report["truncated_mass_bound"]


def test_round_trip(space):
    assert cs.parse_space(space.serialize()) == space


def test_errors(space):
    with pytest.raises(cs.ModelError, match="lemon"):
        space["lemmon"]
    with pytest.raises(cs.ParseError):
        cs.parse_space("{ not json")
    with pytest.raises(cs.ModelError):
        cs.parse_space(Path(FIXTURE).read_text().replace('"taste": 1.00 } }', '"taste": 0.50 } }', 1))
