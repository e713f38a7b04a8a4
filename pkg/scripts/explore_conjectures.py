"""Script to regenerate every explore table as CSV under output/explore/."""
import asyncio
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))
from src.core.config import settings
from src.core.logging import logger
from src.services.explore import EXPERIMENTS
from src.services.homology_service import HomologyService
from src.utils.formatters import format_explore

DEEP = "--deep" in sys.argv


async def main():
    service = HomologyService()
    await service.initialize()
    out_dir = Path(settings.OUTPUT_DIR) / "explore"
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        for name in EXPERIMENTS:
            table = await service.explore(name, deep=DEEP)
            (out_dir / f"{name}.csv").write_text(format_explore(table, "csv"), encoding="utf-8")
            inconsistent = [row for row in table.rows if row.get("consistent") is False]
            logger.info(
                "explore_table_written",
                experiment=name,
                rows=len(table.rows),
                inconsistent=len(inconsistent),
            )
    finally:
        await service.finalize()


if __name__ == "__main__":
    TIMEOUT_SECONDS = 7200 if DEEP else 1200
    try:
        asyncio.run(asyncio.wait_for(main(), timeout=TIMEOUT_SECONDS))
    except asyncio.TimeoutError:
        logger.error("explore_timed_out", timeout=TIMEOUT_SECONDS)
        sys.exit(1)
    except KeyboardInterrupt:
        logger.info("Process interrupted by user")
        sys.exit(0)
