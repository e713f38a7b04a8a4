"""JSON file schemas for quandles, X-sets, chains, matrices and reports."""

from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class QuandleFile(BaseModel):
    """``{"size": n, "table": [[...]], "labels": [...]}``, 0-indexed."""
    model_config = ConfigDict(extra="ignore")

    size: int = Field(gt=0)
    table: list[list[int]]
    labels: Optional[list[str]] = None
    name: Optional[str] = None

    @model_validator(mode="after")
    def _check_shape(self) -> "QuandleFile":
        if len(self.table) != self.size or any(len(row) != self.size for row in self.table):
            raise ValueError(f"table must be {self.size}x{self.size}")
        if any(not 0 <= v < self.size for row in self.table for v in row):
            raise ValueError("table entries must lie in 0..size-1")
        if self.labels is not None and len(self.labels) != self.size:
            raise ValueError("labels must have one entry per element")
        return self


class XSetFile(BaseModel):
    """``{"carrier_size": m, "action": [[...]], "quandle": <spec>}``."""
    model_config = ConfigDict(extra="ignore")

    carrier_size: int = Field(gt=0)
    action: list[list[int]]
    quandle: str
    embedding: Optional[list[int]] = None
    name: Optional[str] = None

    @model_validator(mode="after")
    def _check_shape(self) -> "XSetFile":
        if len(self.action) != self.carrier_size:
            raise ValueError(f"action must have {self.carrier_size} rows")
        if any(not 0 <= v < self.carrier_size for row in self.action for v in row):
            raise ValueError("action entries must lie in 0..carrier_size-1")
        return self


class ChainTerm(BaseModel):
    """One term; the coefficient is a string to keep arbitrary precision."""
    coeff: str
    tuple: list[int]

    @field_validator("coeff", mode="before")
    @classmethod
    def _coerce_coeff(cls, value):
        if isinstance(value, int):
            return str(value)
        int(value)
        return value


class ChainFile(BaseModel):
    """``{"degree": n, "terms": [{"coeff": "3", "tuple": [...]}, ...]}``."""
    degree: int = Field(ge=0)
    terms: list[ChainTerm] = Field(default_factory=list)
    labels: Optional[Literal["one-based"]] = None

    @model_validator(mode="after")
    def _check_degrees(self) -> "ChainFile":
        for term in self.terms:
            if len(term.tuple) != self.degree:
                raise ValueError(f"term {term.tuple} does not have degree {self.degree}")
        return self


class MatrixFile(BaseModel):
    """Coordinate list ``{"rows", "cols", "entries": [[r, c, "v"], ...]}``."""
    rows: int = Field(ge=0)
    cols: int = Field(ge=0)
    entries: list[tuple[int, int, str]] = Field(default_factory=list)


class HomologyReport(BaseModel):
    """One homology group in the divisibility-sorted convention."""
    quandle: str
    theory: str
    degree: int
    xset: str = "full"
    status: Literal["ok", "skipped"] = "ok"
    free_rank: Optional[int] = None
    torsion: list[int] = Field(default_factory=list)
    group: Optional[str] = None
    reason: Optional[str] = None


class VerificationCheck(BaseModel):
    """Outcome of one acceptance check."""
    id: str
    description: str
    expected: str
    computed: Optional[str] = None
    provenance: str
    status: Literal["pass", "fail", "skipped"]
    runtime: float = 0.0


class VerificationReport(BaseModel):
    """All checks of one verify run with their tallies."""
    checks: list[VerificationCheck]
    passed: int = 0
    failed: int = 0
    skipped: int = 0

    @classmethod
    def from_checks(cls, checks: list[VerificationCheck]) -> "VerificationReport":
        counts = {s: sum(c.status == s for c in checks) for s in ("pass", "fail", "skipped")}
        return cls(
            checks=checks,
            passed=counts["pass"],
            failed=counts["fail"],
            skipped=counts["skipped"],
        )

    @property
    def ok(self) -> bool:
        return self.failed == 0


class ExploreTable(BaseModel):
    """Evidence gathered for an open question; ``consistent`` is None where it does not apply."""
    name: str
    description: str
    columns: list[str]
    rows: list[dict[str, Any]] = Field(default_factory=list)
