"""Batch front end for homology, verification and explore jobs."""

import asyncio
import time
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import TypeVar

from src.core.config import settings
from src.core.exceptions import QuandleHomologyError, SizeLimitExceeded
from src.core.logging import logger
from src.models.schema import ExploreTable, HomologyReport, VerificationCheck, VerificationReport
from src.services.chain_complex import ChainComplex
from src.services.explore import EXPERIMENTS, explore
from src.services.homology import homology_group
from src.services.quandles import build_xset, load_quandle
from src.services.verification import resolve_check_ids, run_check

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class HomologyJob:
    quandle: str
    theory: str
    degree: int
    xset: str = "full"


def _complex_for(job: HomologyJob) -> ChainComplex:
    q = load_quandle(job.quandle)
    return ChainComplex(q, build_xset(q, job.xset), job.theory)


def compute_homology(job: HomologyJob) -> HomologyReport:
    """Worker entry point; a size limit turns into a skipped row."""
    cx = _complex_for(job)
    try:
        return homology_group(cx, job.degree).to_report()
    except SizeLimitExceeded as e:
        logger.warning(
            "homology_skipped", quandle=cx.quandle.name, degree=job.degree, reason=str(e)
        )
        return HomologyReport(
            quandle=cx.quandle.name,
            theory=cx.theory.value,
            degree=job.degree,
            xset=cx.xset.name,
            status="skipped",
            reason=str(e),
        )


def compute_explore(job: tuple[str, bool]) -> ExploreTable:
    name, deep = job
    return explore(name, deep=deep)


class HomologyService:
    """Runs independent jobs inline or on a process pool, results in request order."""

    def __init__(self, jobs: int | None = None):
        self.jobs = jobs or settings.DEFAULT_JOBS
        self._executor: ProcessPoolExecutor | None = None

    async def initialize(self) -> None:
        if self.jobs > 1:
            self._executor = ProcessPoolExecutor(max_workers=self.jobs)
        logger.info(
            "homology_service_initialized",
            jobs=self.jobs,
            column_limit=settings.MATRIX_COLUMN_LIMIT,
            snf_self_check=settings.SNF_SELF_CHECK,
        )

    async def finalize(self) -> None:
        if self._executor:
            self._executor.shutdown(wait=True, cancel_futures=True)
            self._executor = None
        logger.info("homology_service_finalized")

    async def _map(self, func: Callable[[T], R], items: Iterable[T]) -> list[R]:
        items = list(items)
        if self._executor is None:
            return [func(item) for item in items]
        loop = asyncio.get_running_loop()
        futures = [loop.run_in_executor(self._executor, func, item) for item in items]
        return list(await asyncio.gather(*futures))

    async def homology(
        self,
        quandle: str,
        theory: str,
        degrees: Iterable[int],
        xset: str = "full",
    ) -> list[HomologyReport]:
        """H_n for every requested degree; bad specs fail here, before any job starts."""
        jobs = [HomologyJob(quandle, theory, n, xset) for n in degrees]
        if jobs:
            _complex_for(jobs[0])
        started = time.perf_counter()
        reports = await self._map(compute_homology, jobs)
        logger.info(
            "homology_batch_finished",
            quandle=quandle,
            theory=theory,
            degrees=[job.degree for job in jobs],
            elapsed=round(time.perf_counter() - started, 3),
        )
        return reports

    async def verify(
        self, ids: Iterable[str] | str = "all", deep: bool = False
    ) -> VerificationReport:
        check_ids = resolve_check_ids(ids, deep)
        checks: list[VerificationCheck] = await self._map(run_check, check_ids)
        report = VerificationReport.from_checks(checks)
        logger.info(
            "verification_finished",
            passed=report.passed,
            failed=report.failed,
            skipped=report.skipped,
        )
        return report

    async def explore(self, name: str, deep: bool = False) -> ExploreTable:
        if name not in EXPERIMENTS:
            raise QuandleHomologyError(
                f"unknown experiment '{name}', expected one of {sorted(EXPERIMENTS)}"
            )
        [table] = await self._map(compute_explore, [(name, deep)])
        return table
