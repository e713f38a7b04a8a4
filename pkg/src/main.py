"""Command-line entry point for quandle and rack homology."""

import argparse
import asyncio
import json
import sys
from pathlib import Path

from src.core.config import settings
from src.core.exceptions import ChainMapError, InvalidSpecError, QuandleHomologyError
from src.core.logging import logger
from src.models.chain import Theory
from src.services.analysis import analyze_orbits, quandle_k
from src.services.chain_complex import ChainComplex, load_chain
from src.services.explore import EXPERIMENTS
from src.services.homology import class_order, homology_class, homology_group
from src.services.homology_service import HomologyService
from src.services.operations import is_extreme, resolve_operation, verify_chain_map
from src.services.quandles import build_xset, load_quandle
from src.services.verification import CHECKS
from src.utils.formatters import (
    FORMATS,
    cayley_to_dot,
    format_chain,
    format_explore,
    format_extreme,
    format_homology,
    format_verification,
    quandle_to_file,
    to_json,
    xset_to_file,
)
from src.utils.spec_parser import parse_degrees, read_json

# Global homology service
_service: HomologyService | None = None


async def initialize_service(jobs: int | None = None) -> HomologyService:
    global _service

    logger.info(
        "application_startup",
        project_name=settings.PROJECT_NAME,
        version=settings.VERSION,
    )
    _service = HomologyService(jobs=jobs)
    await _service.initialize()
    return _service


async def finalize_service() -> None:
    global _service

    if _service:
        await _service.finalize()
        _service = None
    logger.info("application_shutdown_complete")


def _emit(text: str, out: str | None = None) -> None:
    """Print a report, or write it under OUTPUT_DIR when --out is given."""
    if out is None:
        print(text)
        return
    path = Path(out)
    if not path.is_absolute():
        path = Path(settings.OUTPUT_DIR) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n", encoding="utf-8")
    logger.info("report_written", path=str(path))


def _complex(args: argparse.Namespace) -> ChainComplex:
    q = load_quandle(args.quandle)
    return ChainComplex(q, build_xset(q, args.xset), args.theory)


# Commands


async def cmd_homology(args: argparse.Namespace) -> int:
    reports = await _service.homology(
        args.quandle, args.theory, parse_degrees(args.degrees), args.xset
    )
    _emit(format_homology(reports, args.format), args.out)
    return 0


async def cmd_verify(args: argparse.Namespace) -> int:
    if args.list:
        for check in CHECKS.values():
            marker = " (deep)" if check.deep else ""
            print(f"{check.id}{marker}: {check.description} [{check.provenance}]")
        return 0
    report = await _service.verify(args.ids or "all", deep=args.deep)
    _emit(format_verification(report, args.format), args.out)
    return 0 if report.ok else 1


async def cmd_explore(args: argparse.Namespace) -> int:
    if args.name is None:
        for name, (description, _) in EXPERIMENTS.items():
            print(f"{name}: {description}")
        return 0
    table = await _service.explore(args.name, deep=args.deep)
    _emit(format_explore(table, args.format), args.out)
    return 0


def _load_op(text: str) -> dict:
    text = text.strip()
    if text.startswith("{"):
        try:
            spec = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidSpecError(f"--op is not valid JSON: {e}") from e
    else:
        spec = read_json(text)
    if not isinstance(spec, dict):
        raise InvalidSpecError("--op must be a JSON object with an 'op' key")
    return spec


async def cmd_chain(args: argparse.Namespace) -> int:
    cx = _complex(args)
    c = load_chain(args.input)
    fmt = "json" if args.format == "json" else "pretty"
    if args.action == "boundary":
        _emit(format_chain(cx.boundary(c), fmt), args.out)
    elif args.action == "extreme":
        report = is_extreme(cx, c, args.mode)
        _emit(format_extreme(report, fmt), args.out)
        return 0 if report.extreme else 1
    elif args.action == "apply-op":
        phi = resolve_operation(cx, _load_op(args.op))
        if args.check:
            classical = ChainComplex(cx.quandle, theory=cx.theory)
            source, target = {"f": (cx, classical), "g": (classical, cx)}.get(phi.name, (cx, cx))
            check = verify_chain_map(phi, source, c.degree, target)
            if not check.ok:
                raise ChainMapError(phi.name, check.generator, check.residual)
        _emit(format_chain(phi(c), fmt), args.out)
    elif args.action == "class":
        group = homology_group(cx, c.degree, classify=True)
        order = class_order(c, group)
        result = {
            "group": str(group),
            "coordinates": list(homology_class(c, group)),
            "order": "infinite" if order == float("inf") else int(order),
        }
        if fmt == "json":
            _emit(to_json(result), args.out)
        else:
            _emit(
                f"H_{c.degree}^{group.theory}({group.quandle}) = {result['group']}\n"
                f"class: {result['coordinates']}, order {result['order']}",
                args.out,
            )
    return 0


async def cmd_quandle(args: argparse.Namespace) -> int:
    q = load_quandle(args.quandle)
    if args.export == "json":
        _emit(to_json(quandle_to_file(q)), args.out)
    elif args.export == "dot":
        _emit(cayley_to_dot(q), args.out)
    elif args.export == "xset":
        _emit(to_json(xset_to_file(build_xset(q, args.xset), args.quandle)), args.out)
    else:
        orbits = analyze_orbits(q)
        lines = [
            str(q),
            f"quandle: {str(q.is_quandle).lower()}",
            f"orbits: {orbits.orbits}",
            f"connected: {str(orbits.connected).lower()}",
            f"quasigroup: {str(orbits.quasigroup).lower()}",
            f"k: {quandle_k(q)}",
        ]
        _emit("\n".join(lines), args.out)
    return 0


COMMANDS = {
    "homology": cmd_homology,
    "verify": cmd_verify,
    "explore": cmd_explore,
    "chain": cmd_chain,
    "quandle": cmd_quandle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quandle-homology", description=settings.DESCRIPTION)
    parser.add_argument(
        "--jobs",
        type=int,
        default=settings.DEFAULT_JOBS,
        help="Worker processes for independent degrees/checks (1 runs inline)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--quandle", required=True, help="dihedral:3, fixture:s4, ...")
        p.add_argument("--xset", default="full", help="full, orbit:i or orbit_union:i,j")
        p.add_argument("--theory", default="R", choices=[t.value for t in Theory])
        p.add_argument("--format", default="pretty", choices=FORMATS)
        p.add_argument("--out", default=None, help="Write the report to this file")

    p = sub.add_parser("homology", help="Compute H_n for a range of degrees")
    add_common(p)
    p.add_argument("--degrees", default="1..3", help="2, 1..4 or 2,3,5")

    p = sub.add_parser("verify", help="Run acceptance checks")
    p.add_argument("ids", nargs="*", help="Check ids, or 'all' (default)")
    p.add_argument("--deep", action="store_true", help="Include long-running checks")
    p.add_argument("--list", action="store_true", help="List check ids and exit")
    p.add_argument("--format", default="pretty", choices=FORMATS)
    p.add_argument("--out", default=None)

    p = sub.add_parser("explore", help="Evidence tables for open questions")
    p.add_argument("name", nargs="?", default=None, choices=sorted(EXPERIMENTS))
    p.add_argument("--deep", action="store_true")
    p.add_argument("--format", default="pretty", choices=FORMATS)
    p.add_argument("--out", default=None)

    p = sub.add_parser("chain", help="Boundaries, extremality, operations and classes of chains")
    p.add_argument("action", choices=["boundary", "extreme", "apply-op", "class"])
    add_common(p)
    p.add_argument("--in", dest="input", required=True, help="Chain JSON file")
    p.add_argument("--mode", default="rack", choices=["rack", "quandle"])
    p.add_argument("--op", default=None, help='JSON such as {"op": "h_a", "a": 0}, or a file')
    p.add_argument("--check", action="store_true", help="Verify the operation is a chain map")

    p = sub.add_parser("quandle", help="Summarise or export a quandle")
    add_common(p)
    p.add_argument("--export", default="info", choices=["info", "json", "dot", "xset"])
    return parser


async def run(args: argparse.Namespace) -> int:
    if args.command == "chain" and args.action == "apply-op" and not args.op:
        raise InvalidSpecError("apply-op needs --op")
    await initialize_service(args.jobs)
    try:
        return await COMMANDS[args.command](args)
    finally:
        await finalize_service()


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return asyncio.run(run(args))
    except QuandleHomologyError as e:
        logger.error("command_failed", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
