"""Parser for URI-like quandle specs such as ``dihedral:3`` or ``alexander:2:t2+t+1``."""

import json
import re
from pathlib import Path

from pydantic import ValidationError

from src.core.config import settings
from src.core.exceptions import InvalidSpecError
from src.core.logging import logger
from src.models.quandle import ConstructorSpec
from src.models.schema import QuandleFile
from src.utils.fixtures import NAMED_QUANDLES

_SPEC_PATTERNS = {
    "dihedral": re.compile(r"^dihedral:(\d+)$"),
    "trivial": re.compile(r"^trivial:(\d+)$"),
    "two_trivial": re.compile(r"^two_trivial:(\d+):(\d+)$"),
    "takasaki": re.compile(r"^takasaki:(\d+(?:,\d+)*)$"),
    "alexander": re.compile(r"^alexander:(\d+):(.+)$"),
    "conjugation": re.compile(r"^conjugation:(.+)$"),
    "core": re.compile(r"^core:(.+)$"),
    "fixture": re.compile(r"^fixture:(\w+)$"),
    "file": re.compile(r"^file:(.+)$"),
}


def _resolve_path(raw: str) -> Path:
    """Find a JSON file given as-is, with ``.json`` appended, or under the fixtures dir."""
    candidates = [Path(raw), Path(f"{raw}.json")]
    fixtures = Path(settings.FIXTURES_DIR)
    candidates += [fixtures / raw, fixtures / f"{raw}.json"]
    if raw.startswith("fixtures/"):
        stripped = raw[len("fixtures/"):]
        candidates += [fixtures / stripped, fixtures / f"{stripped}.json"]
    for path in candidates:
        if path.is_file():
            return path
    raise InvalidSpecError(f"file not found: {raw}")


def read_json(raw: str) -> object:
    path = _resolve_path(raw)
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidSpecError(f"{path} is not valid JSON: {e}") from e


def _quandle_file_spec(raw: str) -> ConstructorSpec:
    data = read_json(raw)
    try:
        parsed = QuandleFile.model_validate(data)
    except ValidationError as e:
        raise InvalidSpecError(f"{raw} is not a quandle file: {e.errors()[0]['msg']}") from e
    name = parsed.name or Path(raw).stem
    return ConstructorSpec(
        "from_table", {"table": parsed.table, "name": name, "labels": parsed.labels}
    )


def parse_quandle_spec(text: str) -> ConstructorSpec:
    """Translate a spec string into a constructor descriptor."""
    text = text.strip()
    for kind, pattern in _SPEC_PATTERNS.items():
        match = pattern.match(text)
        if not match:
            continue
        logger.debug("quandle_spec_parsed", spec=text, kind=kind)
        if kind == "dihedral":
            return ConstructorSpec("dihedral", {"k": int(match.group(1))})
        if kind == "trivial":
            return ConstructorSpec("trivial", {"m": int(match.group(1))})
        if kind == "two_trivial":
            return ConstructorSpec(
                "two_trivial", {"k0": int(match.group(1)), "k1": int(match.group(2))}
            )
        if kind == "takasaki":
            return ConstructorSpec(
                "takasaki", {"orders": [int(c) for c in match.group(1).split(",")]}
            )
        if kind == "alexander":
            return ConstructorSpec(
                "alexander", {"m": int(match.group(1)), "poly": match.group(2)}
            )
        if kind in ("conjugation", "core"):
            table = read_json(match.group(1))
            if isinstance(table, dict):
                table = table.get("table")
            if not isinstance(table, list):
                raise InvalidSpecError(f"{match.group(1)} does not hold a group table")
            name = f"{kind}({Path(match.group(1)).stem})"
            return ConstructorSpec(kind, {"table": table, "name": name})
        if kind == "fixture":
            name = match.group(1).lower()
            if name not in NAMED_QUANDLES:
                raise InvalidSpecError(
                    f"unknown fixture '{name}', expected one of {sorted(NAMED_QUANDLES)}"
                )
            constructor, params = NAMED_QUANDLES[name]
            return ConstructorSpec(constructor, dict(params))
        if kind == "file":
            return _quandle_file_spec(match.group(1))

    # Bare paths such as fixtures/s4
    try:
        return _quandle_file_spec(text)
    except InvalidSpecError:
        raise InvalidSpecError(f"unrecognised quandle spec '{text}'") from None


def parse_degrees(text: str) -> list[int]:
    """``2``, ``1..4`` or ``2,3,5`` as a sorted list of positive degrees."""
    degrees: set[int] = set()
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        match = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", part)
        if not match:
            raise InvalidSpecError(f"malformed degree range '{text}'")
        low = int(match.group(1))
        high = int(match.group(2) or low)
        if low < 1 or high < low:
            raise InvalidSpecError(f"degree range '{part}' must be ascending and start at 1")
        degrees.update(range(low, high + 1))
    if not degrees:
        raise InvalidSpecError("no degrees given")
    return sorted(degrees)
