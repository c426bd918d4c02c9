"""
obsaudit - finite-level audit of the Boolean observation operator.

Computes exact, finite-level versions of printed claims about the
observation operator O_n on Boolean functions {0,1}^n -> {0,1} and
reports each claim as CONFIRMED, REFUTED or UNDECIDABLE-AT-SCALE, with
the evidence files and the command that reproduces the computed value.

This package provides:
- Packed truth tables, algebraic normal forms and Walsh transforms
- The operator O_n (word-level and per-point), its matrix and orbits
- GF(2) linear algebra: kernels, Krylov spaces, minimal polynomials
- Exact spectra, lift compatibility, join cochains, L-series, orbit codes
- A Metropolis sampler for the discrete action
- A claim battery with a reproducible JSON report and a Rich CLI

Example usage:
    >>> from obsaudit import ClaimAuditor, RunConfig
    >>> with ClaimAuditor(RunConfig(seed=0)) as auditor:
    ...     report = auditor.run(only=["worked-example"])
    >>> report.find("S5.3-nullity").status.value
    'REFUTED'

CLI usage:
    $ obsaudit audit --seed 0
    $ obsaudit kernel --n 3
    $ obsaudit spectrum --n 3 --format json
"""

__version__ = "1.0.0"
__description__ = "Finite-level audit of the Boolean observation operator"

from .boolfun import (
    AnfPoly,
    TruthTable,
    anf_of,
    atom,
    predicate_family,
    table_of,
    walsh,
)
from .config import RunConfig

# Core functionality
from .core import ClaimAuditor
from .exceptions import (
    CapExceededError,
    ClosureError,
    ConfigError,
    ObsAuditError,
    ProbeError,
    ValidationError,
)
from .gf2linalg import Gf2Matrix, fixed_space, kernel, krylov_space, minimal_polynomial
from .observer import AtomOrder, Observer
from .spectral import spectrum
from .verdict import AuditReport, AuditVerdict, Status

# Public API
__all__ = [
    # Core classes
    "ClaimAuditor",
    "RunConfig",
    "AuditReport",
    "AuditVerdict",
    "Status",
    # Computation
    "TruthTable",
    "AnfPoly",
    "atom",
    "anf_of",
    "table_of",
    "predicate_family",
    "walsh",
    "Observer",
    "AtomOrder",
    "Gf2Matrix",
    "kernel",
    "fixed_space",
    "krylov_space",
    "minimal_polynomial",
    "spectrum",
    # Exceptions
    "ObsAuditError",
    "ConfigError",
    "ValidationError",
    "CapExceededError",
    "ClosureError",
    "ProbeError",
    # Version info
    "__version__",
    "__description__",
]
