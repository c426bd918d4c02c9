"""
Core functionality for running the claim battery.

This module provides the ClaimAuditor class, which schedules claim groups,
isolates their failures and assembles the consolidated report. It includes
features like:

- Parallel execution of independent claim groups on a thread pool
- Per-group PRNG seeds derived from (seed, group), independent of scheduling
- Failure isolation: an exception in one group becomes a tool error entry
- Evidence files written relative to the output directory
- Context manager support for resource cleanup

Example:
    >>> from obsaudit import ClaimAuditor, RunConfig
    >>> config = RunConfig(seed=0, jobs=4)
    >>> with ClaimAuditor(config) as auditor:
    ...     report = auditor.run(only=["worked-example"])
    ...     print(report.find("S5.3-nullity").status.value)
    REFUTED
"""

import logging
from concurrent.futures import Future, ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from .claims import GROUPS, ClaimGroup, GroupContext
from .config import RunConfig, configure_limits
from .exceptions import ValidationError
from .report import ArtifactWriter, derive_seed, write_json
from .verdict import AuditReport, AuditVerdict, ToolError

logger = logging.getLogger(__name__)

REPORT_NAME = "report.json"


class ClaimAuditor:
    """
    Runs claim groups and collects their verdicts into an AuditReport.

    Groups run on a ThreadPoolExecutor with ``config.jobs`` workers, but
    results are always collected in registry order and the report sorts
    verdicts by claim id, so the output does not depend on scheduling.
    Use the auditor as a context manager so the pool is shut down.

    Attributes:
        config: the effective run configuration
        artifacts: writer for evidence files under the output directory
        groups: the registry the auditor schedules from

    Example:
        >>> with ClaimAuditor(RunConfig()) as auditor:
        ...     report = auditor.run()
        >>> report.summary["TOOL-ERRORS"]
        0
    """

    def __init__(
        self,
        config: RunConfig,
        groups: Optional[Dict[str, ClaimGroup]] = None,
    ):
        """
        Initialize the auditor.

        Args:
            config: Run configuration (seed, jobs, output directory, caps)
            groups: Claim registry to run; defaults to the full battery
        """
        self.config = config
        self.groups = dict(GROUPS if groups is None else groups)
        self.artifacts = ArtifactWriter(config.output_dir)
        self.executor = ThreadPoolExecutor(
            max_workers=config.jobs, thread_name_prefix="obsaudit"
        )
        configure_limits(config)

    def _context(self, name: str) -> GroupContext:
        return GroupContext(
            group=name,
            seed=self.config.seed,
            group_seed=derive_seed(self.config.seed, name),
            artifacts=self.artifacts,
        )

    def _resolve(self, only: Optional[Sequence[str]]) -> List[str]:
        if not only:
            return list(self.groups)
        unknown = [name for name in only if name not in self.groups]
        if unknown:
            raise ValidationError(
                f"Unknown claim group {unknown[0]!r}; expected one of {', '.join(self.groups)}"
            )
        return [name for name in self.groups if name in only]

    def run_group(self, name: str) -> List[AuditVerdict]:
        """
        Run one claim group.

        Raises:
            ValidationError: If the group is unknown
            ObsAuditError: Whatever the group raises; ``run`` captures it
        """
        if name not in self.groups:
            self._resolve([name])
        fn = self.groups[name]
        logger.debug("running claim group %s", name)
        verdicts = fn(self._context(name))
        logger.debug("claim group %s: %d verdicts", name, len(verdicts))
        return verdicts

    def run(
        self,
        only: Optional[Sequence[str]] = None,
        on_done: Optional[Callable[[str], None]] = None,
    ) -> AuditReport:
        """
        Run the battery (or the named groups) and return the report.

        An exception from a group never aborts the battery: it is recorded
        as a ToolError and the remaining groups still run.

        Args:
            only: Group names to run; all groups when None or empty
            on_done: Called with the group name as each group finishes

        Returns:
            The consolidated AuditReport
        """
        names = self._resolve(only)
        futures: Dict[str, Future] = {
            name: self.executor.submit(self.run_group, name) for name in names
        }
        verdicts: List[AuditVerdict] = []
        errors: List[ToolError] = []
        for name in names:
            try:
                verdicts.extend(futures[name].result())
            except Exception as e:
                logger.debug("claim group %s failed", name, exc_info=True)
                errors.append(
                    ToolError(group=name, error_type=type(e).__name__, message=str(e))
                )
            if on_done is not None:
                on_done(name)
        return AuditReport.build(self.provenance(names), verdicts, errors)

    def provenance(self, names: Sequence[str]) -> Dict[str, Any]:
        """The configuration recorded in the report, minus output-only settings."""
        config = self.config.to_dict()
        for key in ("output_dir", "format", "use_cache", "jobs"):
            config.pop(key, None)
        config["groups"] = list(names)
        return config

    def write_report(self, report: AuditReport) -> Path:
        """Write ``report.json`` into the output directory and return its path."""
        path = Path(self.config.output_dir) / REPORT_NAME
        write_json(path, report.model_dump(mode="json", by_alias=True))
        return path

    def close(self) -> None:
        """Shut down the worker pool."""
        self.executor.shutdown(wait=True)

    def __enter__(self) -> "ClaimAuditor":
        """Context manager entry."""
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        """Context manager exit - ensures the pool is shut down."""
        self.close()
