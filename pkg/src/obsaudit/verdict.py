"""
Audit verdict and report models.

An AuditVerdict pairs one cited claim with the value obsaudit computed
for it. Verdicts are pydantic models so that a malformed verdict (a
refutation without both values, a verdict without a re-run command) is
rejected at construction instead of surfacing in a report.

Example:
    >>> v = AuditVerdict(
    ...     claim_id="S5.3-nullity",
    ...     paper_ref="S5.3",
    ...     claimed="2",
    ...     computed="4",
    ...     status=Status.REFUTED,
    ...     rerun="obsaudit audit --only fixed-space --seed 0",
    ... )
    >>> v.status.value
    'REFUTED'
"""

import json
from enum import Enum
from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

SCHEMA_VERSION = 1


class Status(str, Enum):
    """Outcome of one audited claim."""

    CONFIRMED = "CONFIRMED"
    REFUTED = "REFUTED"
    UNDECIDABLE = "UNDECIDABLE-AT-SCALE"


class AuditVerdict(BaseModel):
    """
    One audited claim.

    Attributes:
        claim_id: stable identifier, e.g. ``S5.3-nullity``
        paper_ref: where the claim is made
        quote: the cited wording
        claimed: the value as printed
        computed: the value obsaudit computed
        status: CONFIRMED, REFUTED or UNDECIDABLE-AT-SCALE
        artifacts: evidence files, relative to the output directory
        rerun: command line that reproduces ``computed``
        note: conventions and substitutions the verdict depends on
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    claim_id: str = Field(..., min_length=1)
    paper_ref: str = Field(..., min_length=1)
    quote: str = ""
    claimed: str = ""
    computed: str = ""
    status: Status
    artifacts: List[str] = Field(default_factory=list)
    rerun: str
    note: str = ""

    @field_validator("rerun")
    @classmethod
    def validate_rerun(cls, v: str) -> str:
        """
        Validate that a re-run command is present.

        Raises:
            ValueError: If the command is empty
        """
        if not v.strip():
            raise ValueError("Every verdict needs a re-run command")
        return v

    @model_validator(mode="after")
    def validate_refutation(self) -> "AuditVerdict":
        """A refutation must show both sides."""
        shown = self.claimed.strip() and self.computed.strip()
        if self.status is Status.REFUTED and not shown:
            raise ValueError(
                f"REFUTED verdict {self.claim_id!r} needs both claimed and computed values"
            )
        return self

    def with_rerun(self, rerun: str) -> "AuditVerdict":
        return self.model_copy(update={"rerun": rerun})

    def with_artifacts(self, *paths: str) -> "AuditVerdict":
        merged = sorted(set(self.artifacts) | set(paths))
        return self.model_copy(update={"artifacts": merged})


def decide(holds: bool) -> Status:
    """CONFIRMED when the computed value matches the claim, REFUTED otherwise."""
    return Status.CONFIRMED if holds else Status.REFUTED


class ToolError(BaseModel):
    """A claim group that failed to run; distinct from a refutation."""

    model_config = ConfigDict(frozen=True)

    group: str
    error_type: str
    message: str


class AuditReport(BaseModel):
    """
    The consolidated audit.

    ``to_json`` is canonical: sorted keys, two-space indent, LF endings and
    no timings, so equal configurations produce byte-identical files.
    """

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    config: Dict[str, Any] = Field(default_factory=dict)
    verdicts: List[AuditVerdict] = Field(default_factory=list)
    errors: List[ToolError] = Field(default_factory=list)
    summary: Dict[str, int] = Field(default_factory=dict)

    @classmethod
    def build(
        cls,
        config: Dict[str, Any],
        verdicts: List[AuditVerdict],
        errors: List[ToolError],
    ) -> "AuditReport":
        ordered = sorted(verdicts, key=lambda v: v.claim_id)
        summary = {status.value: 0 for status in Status}
        for v in ordered:
            summary[v.status.value] += 1
        summary["TOOL-ERRORS"] = len(errors)
        return cls(
            config=config,
            verdicts=ordered,
            errors=sorted(errors, key=lambda e: e.group),
            summary=summary,
        )

    def find(self, claim_id: str) -> AuditVerdict:
        """
        Look up a verdict by id.

        Raises:
            KeyError: If no verdict has that id
        """
        for v in self.verdicts:
            if v.claim_id == claim_id:
                return v
        raise KeyError(claim_id)

    def to_json(self) -> str:
        payload = self.model_dump(mode="json", by_alias=True)
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
