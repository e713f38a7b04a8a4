import pytest

from src.core.exceptions import QuandleHomologyError
from src.services.explore import EXPERIMENTS, delayed_fibonacci, explore, odd_part
from src.utils.formatters import format_explore


def test_delayed_fibonacci():
    assert [delayed_fibonacci(n) for n in range(1, 10)] == [0, 0, 1, 1, 1, 2, 3, 4, 6]


@pytest.mark.parametrize(
    "torsion, expected",
    [([24], [3]), ([2, 6, 12], [3, 3]), ([2, 4], []), ([5, 15], [5, 15])],
)
def test_odd_part(torsion, expected):
    assert odd_part(torsion) == expected


def test_unknown_experiment():
    with pytest.raises(QuandleHomologyError):
        explore("no-such-experiment")


def test_columns_follow_rows(monkeypatch):
    def rows(deep: bool) -> list[dict]:
        return [{"quandle": "R3", "degree": 2}, {"quandle": "R3", "degree": 3, "extra": deep}]

    monkeypatch.setitem(EXPERIMENTS, "toy", ("toy table", rows))
    table = explore("toy", deep=True)
    assert table.columns == ["quandle", "degree", "extra"]
    assert table.rows[1]["extra"] is True
    assert format_explore(table, "csv").splitlines() == [
        "quandle,degree,extra",
        "R3,2,",
        "R3,3,True",
    ]
    pretty = format_explore(table).splitlines()
    assert pretty[0] == "toy table"
    assert pretty[2].split() == ["quandle", "degree", "extra"]


@pytest.mark.slow
def test_even_dihedral_bound_is_consistent():
    table = explore("even-dihedral-bound")
    assert "bound" in table.columns
    assert all(row["consistent"] for row in table.rows)
