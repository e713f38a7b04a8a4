import pickle

import pytest

from src.core.config import settings
from src.core.exceptions import (
    ChainMapError,
    InvalidSpecError,
    NotACycleError,
    QuandleHomologyError,
)
from src.models.chain import Chain
from src.services.homology_service import HomologyJob, HomologyService, compute_homology


@pytest.fixture
async def service():
    service = HomologyService(jobs=1)
    await service.initialize()
    yield service
    await service.finalize()


async def test_homology_in_request_order(service):
    reports = await service.homology("dihedral:3", "Q", [3, 1, 2])
    assert [r.degree for r in reports] == [3, 1, 2]
    assert [r.group for r in reports] == ["Z_3", "Z", "0"]
    assert all(r.status == "ok" for r in reports)


async def test_bad_spec_fails_before_any_job(service):
    with pytest.raises(InvalidSpecError):
        await service.homology("dihedral:x", "Q", [2])


async def test_size_limit_becomes_skipped_row(service, monkeypatch):
    monkeypatch.setattr(settings, "MATRIX_COLUMN_LIMIT", 50)
    [report] = await service.homology("fixture:s4", "R", [3])
    assert report.status == "skipped"
    assert report.group is None
    assert "limit" in report.reason


async def test_verify(service):
    report = await service.verify(["burnside", "r3-h3q"])
    assert report.ok
    assert report.passed == 2
    assert [c.id for c in report.checks] == ["burnside", "r3-h3q"]


async def test_unknown_experiment(service):
    with pytest.raises(QuandleHomologyError):
        await service.explore("no-such-experiment")


async def test_process_pool_matches_inline():
    service = HomologyService(jobs=2)
    await service.initialize()
    try:
        reports = await service.homology("dihedral:4", "Q", [1, 2, 3])
    finally:
        await service.finalize()
    inline = [compute_homology(HomologyJob("dihedral:4", "Q", n)) for n in (1, 2, 3)]
    assert [r.group for r in reports] == [r.group for r in inline]


def test_errors_survive_pickling():
    error = pickle.loads(pickle.dumps(ChainMapError("h_0", (0, 1), Chain.generator((0,)))))
    assert error.generator == (0, 1)
    assert pickle.loads(pickle.dumps(NotACycleError(Chain.generator((1,))))).boundary
