"""Script to run the acceptance suite and store the JSON report."""
import asyncio
import sys
import traceback
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))
from src.core.config import settings
from src.core.logging import logger
from src.services.homology_service import HomologyService
from src.utils.formatters import format_verification, to_json

DEEP = "--deep" in sys.argv
JOBS = int(sys.argv[sys.argv.index("--jobs") + 1]) if "--jobs" in sys.argv else None


async def main():
    """Run every check and write output/verification.json."""
    logger.info("verification_started", deep=DEEP)
    service = HomologyService(jobs=JOBS)
    await service.initialize()
    try:
        report = await service.verify("all", deep=DEEP)
        path = Path(settings.OUTPUT_DIR) / "verification.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(to_json(report) + "\n", encoding="utf-8")
        print(format_verification(report))
        logger.info("verification_report_written", path=str(path))
        sys.exit(0 if report.ok else 1)

    except Exception as e:
        logger.error("verification_crashed", error=str(e))
        traceback.print_exc()
        sys.exit(2)

    finally:
        await service.finalize()


if __name__ == "__main__":
    TIMEOUT_SECONDS = 3600 if DEEP else 900
    try:
        asyncio.run(asyncio.wait_for(main(), timeout=TIMEOUT_SECONDS))
    except asyncio.TimeoutError:
        logger.error("verification_timed_out", timeout=TIMEOUT_SECONDS)
        sys.exit(2)
    except KeyboardInterrupt:
        logger.info("Process interrupted by user")
        sys.exit(130)
