"""
Command-line interface for obsaudit.

This module provides the ``obsaudit`` command. It uses Click for command
parsing and Rich for terminal output: tables for results, a spinner for
the claim battery and a RichHandler for log records.

Every command accepts the common options ``--format {table|json|csv}``,
``--out DIR``, ``--seed``, ``--config``, ``--no-cache`` and ``--verbose``.
Machine-readable output (JSON, CSV) goes to stdout; messages, progress
and logs go to stderr.

Available Commands:
    - audit: Run the claim battery and write report.json
    - kernel: Fixed space of O_n (kernel of O_n + I)
    - spectrum: Exact spectrum of the integer lift of O_n
    - orbit: Cycle structure, Krylov space and minimal polynomial of a seed
    - lfactor: Local factor det(I - u O) on the Krylov space of a predicate
    - euler: Euler product against Dirichlet series for a character
    - cocycle: Join cochain audit and pair-system solve
    - code: Parameters of the code spanned by an orbit
    - cft: Metropolis chain for the discrete action
    - compat: Compatibility of O with the lift maps
    - bench: Word-level apply against the per-point loop
    - matrix: Dense matrix of O_n over the atom basis
    - predicate: An explicit predicate family in ANF and its invariance
    - irreducibles: Monic irreducible counts in F_2[t]
    - info: Effective configuration

Exit codes: 0 success (including REFUTED verdicts), 1 usage or validation
error, 2 cap exceeded, 3 any other failure.

Example Usage:
    $ obsaudit audit --seed 0              # Full battery
    $ obsaudit audit --only worked-example # One claim group
    $ obsaudit kernel --n 3                # Fixed space of O_3
    $ obsaudit spectrum --n 3 --format json
"""

import logging
import sys
from contextlib import contextmanager
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn
from rich.table import Table

from . import __version__
from .boolfun import (
    PREDICATE_FAMILIES,
    TruthTable,
    anf_of,
    atom,
    predicate_family,
    table_of,
)
from .cech import MAX_TRIPLE_ARITY, coboundary_solve, cocycle_audit, is_symmetric
from .cftsim import (
    MAX_EXHAUSTIVE_ARITY,
    TRACE_HEADER,
    CftParams,
    Metric,
    detailed_balance_holds,
    energy,
    ground_states,
    metropolis,
)
from .claims import group_names, nonconstant_fixed_count
from .config import RunConfig, configure_limits
from .core import ClaimAuditor
from .exceptions import CapExceededError, ConfigError, ObsAuditError, ValidationError
from .gf2linalg import fixed_space, krylov_space, minimal_polynomial
from .lfunction import (
    COMPARISON_HEADER,
    LOCAL_FACTOR_CAVEAT,
    character,
    compare_series,
    degree_identity_holds,
    evaluate_local_factor,
    irreducibles,
    local_factor,
    necklace_count,
)
from .observer import (
    AtomOrder,
    Observer,
    atom_label,
    benchmark_apply,
    order_points,
    printed_point,
)
from .report import ResultCache, canonical_json, csv_text, write_csv, write_json
from .spectral import spectral_audit, spectrum
from .stabcode import DEFAULT_SAMPLES, code_audit, orbit_code
from .tower import (
    COMPATIBILITY_HEADER,
    SEQUENCE_HEADER,
    LiftKind,
    LiftMap,
    compatibility_audit,
    compatibility_row,
    compatible_sequence,
    compatible_sequence_audit,
    derived_identity_holds,
)
from .verdict import AuditReport, AuditVerdict, Status

# Global console instances for consistent styling
console = Console()
err_console = Console(stderr=True)

logger = logging.getLogger("obsaudit")

STATUS_STYLES = {
    Status.CONFIRMED.value: "green",
    Status.REFUTED.value: "red",
    Status.UNDECIDABLE.value: "yellow",
}

VERDICT_HEADER = ["claim_id", "status", "claimed", "computed", "rerun"]


def print_error(message: str) -> None:
    """
    Print an error message with red styling.

    Args:
        message: The error message to display
    """
    err_console.print(f"[red]Error: {message}[/red]")


def print_success(message: str) -> None:
    """
    Print a success message with green styling.

    Args:
        message: The success message to display
    """
    err_console.print(f"[green]✓ {message}[/green]")


def print_info(message: str) -> None:
    """
    Print an info message with blue styling.

    Args:
        message: The info message to display
    """
    err_console.print(f"[blue]ℹ {message}[/blue]")


def setup_logging(verbose: bool) -> None:
    """Route package logs through a RichHandler on stderr."""
    root = logging.getLogger("obsaudit")
    root.handlers = [RichHandler(console=err_console, show_path=False)]
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    root.propagate = False


@contextmanager
def handle_errors() -> Iterator[None]:
    """Map exceptions to a message and the documented exit code."""
    try:
        yield
    except CapExceededError as e:
        print_error(str(e))
        sys.exit(2)
    except (ValidationError, ConfigError) as e:
        print_error(str(e))
        sys.exit(1)
    except ObsAuditError as e:
        print_error(str(e))
        sys.exit(3)
    except (click.exceptions.Exit, click.ClickException, SystemExit):
        raise
    except Exception as e:
        logger.debug("unexpected failure", exc_info=True)
        print_error(f"Internal error: {e}")
        sys.exit(3)


def common_options(fn: Callable[..., None]) -> Callable[..., None]:
    """Attach the options every command shares and resolve them into a RunConfig."""

    @click.option(
        "--format",
        "fmt",
        type=click.Choice(["table", "json", "csv"]),
        default=None,
        help="Output format (default: table)",
    )
    @click.option(
        "--out", type=click.Path(file_okay=False), help="Directory for output files"
    )
    @click.option("--seed", type=click.IntRange(min=0), help="PRNG seed")
    @click.option("--config", "-c", "config_path", help="Path to configuration file")
    @click.option("--no-cache", is_flag=True, help="Bypass the results cache")
    @click.option("--verbose", "-v", is_flag=True, help="Show debug logs")
    @wraps(fn)
    def wrapper(
        fmt: Optional[str],
        out: Optional[str],
        seed: Optional[int],
        config_path: Optional[str],
        no_cache: bool,
        verbose: bool,
        **kwargs: Any,
    ) -> None:
        setup_logging(verbose)
        with handle_errors():
            cfg = RunConfig.load(config_path).merged(
                format=fmt,
                output_dir=out,
                seed=seed,
                use_cache=False if no_cache else None,
            )
            configure_limits(cfg)
            fn(cfg=cfg, out=out, **kwargs)

    return wrapper


def table_options(fn: Callable[..., None]) -> Callable[..., None]:
    """Options selecting a truth table: --table HEX, --family NAME or --atom INDEX."""
    fn = click.option(
        "--atom", "atom_index", type=int, help="Atom p_i by printed index"
    )(fn)
    fn = click.option(
        "--family",
        type=click.Choice(PREDICATE_FAMILIES),
        help="Explicit predicate family",
    )(fn)
    fn = click.option("--table", "table_hex", help="Truth table in hexadecimal")(fn)
    return fn


def resolve_table(
    n: int,
    table_hex: Optional[str],
    family: Optional[str],
    atom_index: Optional[int],
    default: Callable[[int], TruthTable],
) -> TruthTable:
    """
    The truth table named by the table options, or ``default(n)``.

    Raises:
        ValidationError: If more than one source is given
    """
    given = [x for x in (table_hex, family, atom_index) if x is not None]
    if len(given) > 1:
        raise ValidationError("Give at most one of --table, --family and --atom")
    if table_hex is not None:
        return TruthTable.from_hex(n, table_hex)
    if family is not None:
        return table_of(predicate_family(family, n))
    if atom_index is not None:
        return atom(n, printed_point(n, atom_index))
    return default(n)


def even_parity(n: int) -> TruthTable:
    return TruthTable.from_function(n, lambda x: bin(x).count("1") % 2 == 0)


def top_atom(n: int) -> TruthTable:
    return atom(n, (1 << n) - 1)


def family_default(name: str) -> Callable[[int], TruthTable]:
    return lambda n: table_of(predicate_family(name, n))


def cached(
    cfg: RunConfig,
    command: str,
    flags: Dict[str, Any],
    compute: Callable[[], Dict[str, Any]],
) -> Dict[str, Any]:
    """Return the cached payload for (command, flags, seed) or compute and store it."""
    cache = ResultCache(cfg.output_dir, enabled=cfg.use_cache)
    payload = cache.get(command, flags, cfg.seed)
    if payload is None:
        payload = compute()
        cache.put(command, flags, cfg.seed, payload)
    return payload


def result_payload(
    command: str,
    title: str,
    summary: Dict[str, Any],
    header: Sequence[str],
    rows: Sequence[Sequence[Any]],
    document: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    The payload every command emits.

    ``document``, when given, replaces the generic JSON layout.
    """
    payload = {
        "command": command,
        "title": title,
        "summary": summary,
        "header": list(header),
        "rows": [[str(v) for v in row] for row in rows],
    }
    if document is not None:
        payload["document"] = document
    return payload


def _styled(value: str) -> str:
    style = STATUS_STYLES.get(value)
    return f"[{style}]{value}[/{style}]" if style else value


def emit(payload: Dict[str, Any], cfg: RunConfig, out: Optional[str]) -> None:
    """Print a command payload in the configured format; also save it under --out."""
    document = payload.get("document", payload)
    if cfg.format == "json":
        click.echo(canonical_json(document), nl=False)
    elif cfg.format == "csv":
        click.echo(csv_text(payload["header"], payload["rows"]), nl=False)
    else:
        summary = Table(title=payload["title"])
        summary.add_column("Property", style="cyan")
        summary.add_column("Value", style="green")
        for key, value in payload["summary"].items():
            summary.add_row(key, _styled(str(value)))
        console.print(summary)
        if payload["rows"]:
            rows = Table()
            for name in payload["header"]:
                rows.add_column(name)
            for row in payload["rows"]:
                rows.add_row(*(_styled(v) for v in row))
            console.print(rows)

    if out is not None:
        if cfg.format == "csv":
            path = Path(out) / f"{payload['command']}.csv"
            write_csv(path, payload["header"], payload["rows"])
        else:
            path = Path(out) / f"{payload['command']}.json"
            write_json(path, document)
        print_info(f"Wrote {path}")


def verdict_rows(verdicts: Sequence[AuditVerdict]) -> List[List[str]]:
    return [
        [v.claim_id, v.status.value, v.claimed, v.computed, v.rerun] for v in verdicts
    ]


@click.group()
@click.version_option(version=__version__, prog_name="obsaudit")
def cli() -> None:
    """
    obsaudit - finite-level audit of the observation operator O_n.

    Computes exact finite-level versions of the printed claims about the
    Boolean observation operator (atom images, kernels, spectra, lifts,
    cochains, L-series, codes, a sampled action) and reports each as
    CONFIRMED, REFUTED or UNDECIDABLE-AT-SCALE.
    """
    pass


@cli.command()
@click.option(
    "--only",
    multiple=True,
    type=click.Choice(group_names()),
    help="Run only this claim group (repeatable)",
)
@click.option(
    "--jobs", "-j", type=click.IntRange(1, 64), help="Claim groups run in parallel"
)
@common_options
def audit(
    cfg: RunConfig, out: Optional[str], only: Sequence[str], jobs: Optional[int]
) -> None:
    """
    Run the claim battery and write report.json.

    Refuted claims are a successful audit and exit with code 0. A claim
    group that fails to compute is recorded as a tool error; the other
    groups still run.

    Examples:\n
        obsaudit audit                          # Full battery\n
        obsaudit audit --only spectral --seed 3 # One group\n
        obsaudit audit --jobs 4 --format json   # Parallel, JSON to stdout
    """
    cfg = cfg.merged(jobs=jobs)
    flags = {
        "only": sorted(only),
        "arity_cap": cfg.arity_cap,
        "dense_cap": cfg.dense_cap,
    }
    cache = ResultCache(cfg.output_dir, enabled=cfg.use_cache)
    payload = cache.get("audit", flags, cfg.seed)

    with ClaimAuditor(cfg) as auditor:
        if payload is not None:
            report = AuditReport.model_validate(payload)
            print_info("Using cached report (pass --no-cache to recompute)")
        else:
            names = list(only) or group_names()
            with Progress(
                SpinnerColumn(),
                TextColumn("[progress.description]{task.description}"),
                BarColumn(),
                console=err_console,
                transient=True,
            ) as progress:
                task = progress.add_task("Running claim battery...", total=len(names))
                report = auditor.run(
                    only=list(only), on_done=lambda name: progress.advance(task)
                )
            dumped = report.model_dump(mode="json", by_alias=True)
            cache.put("audit", flags, cfg.seed, dumped)
        path = auditor.write_report(report)

    for error in report.errors:
        print_error(
            f"claim group {error.group} failed: {error.error_type}: {error.message}"
        )

    if cfg.format == "json":
        click.echo(report.to_json(), nl=False)
    elif cfg.format == "csv":
        click.echo(csv_text(VERDICT_HEADER, verdict_rows(report.verdicts)), nl=False)
    else:
        table = Table(title="Audit Verdicts")
        table.add_column("Claim", style="cyan")
        table.add_column("Status")
        table.add_column("Claimed")
        table.add_column("Computed")
        for v in report.verdicts:
            table.add_row(v.claim_id, _styled(v.status.value), v.claimed, v.computed)
        console.print(table)

        summary = Table(title="Summary")
        summary.add_column("Status", style="cyan")
        summary.add_column("Count", style="green")
        for key, count in report.summary.items():
            summary.add_row(_styled(key), str(count))
        console.print(summary)
    print_success(f"Report written to {path}")


@cli.command()
@click.option("--n", "n", type=int, default=3, show_default=True, help="Arity")
@common_options
def kernel(cfg: RunConfig, out: Optional[str], n: int) -> None:
    """
    Fixed space of O_n: a basis of ker(O_n + I).

    Examples:\n
        obsaudit kernel --n 3\n
        obsaudit kernel --n 12 --format csv
    """

    def compute() -> Dict[str, Any]:
        basis = fixed_space(n)
        tables = basis.tables(n)
        rows = [
            [i, t.to_hex(), t.weight(), str(anf_of(t)) if n <= 6 else ""]
            for i, t in enumerate(tables)
        ]
        summary = {
            "n": n,
            "rank": basis.rank,
            "dimension": basis.dimension,
            "nonconstant_normalized": nonconstant_fixed_count(basis, n),
        }
        return result_payload(
            "kernel",
            f"Fixed space of O_{n}",
            summary,
            ["index", "table", "weight", "anf"],
            rows,
        )

    emit(cached(cfg, "kernel", {"n": n}, compute), cfg, out)


@cli.command(name="spectrum")
@click.option("--n", "n", type=int, default=3, show_default=True, help="Arity")
@click.option(
    "--lift",
    type=click.Choice(["zero_one", "plus_minus"]),
    default="zero_one",
    show_default=True,
    help="Integer lift of the GF(2) matrix",
)
@common_options
def spectrum_cmd(cfg: RunConfig, out: Optional[str], n: int, lift: str) -> None:
    """
    Exact spectrum of the integer lift of O_n.

    Examples:\n
        obsaudit spectrum --n 3\n
        obsaudit spectrum --n 3 --format json
    """

    def compute() -> Dict[str, Any]:
        report = spectrum(n, lift)
        total, trace, second = report.moments()
        summary = report.to_dict()
        summary.pop("pairs")
        summary["spectral_radius"] = report.spectral_radius
        summary["moments"] = [total, trace, second]
        summary["moments_expected"] = list(report.expected_moments())
        verdicts = spectral_audit(n, lift)
        document = report.to_dict()
        document["audit"] = {
            "spectral_radius": report.spectral_radius,
            "moments": summary["moments"],
            "moments_expected": summary["moments_expected"],
            "verdicts": [v.model_dump(mode="json", by_alias=True) for v in verdicts],
        }
        return result_payload(
            "spectrum",
            f"Spectrum of O_{n} ({report.lift.value})",
            summary,
            ["eigenvalue", "multiplicity"],
            report.pairs,
            document=document,
        )

    emit(cached(cfg, "spectrum", {"n": n, "lift": lift}, compute), cfg, out)


@cli.command()
@click.option("--n", "n", type=int, default=3, show_default=True, help="Arity")
@click.option(
    "--max-steps", type=click.IntRange(min=1), default=1024, show_default=True
)
@table_options
@common_options
def orbit(
    cfg: RunConfig,
    out: Optional[str],
    n: int,
    max_steps: int,
    table_hex: Optional[str],
    family: Optional[str],
    atom_index: Optional[int],
) -> None:
    """
    Orbit of a seed under O_n: period, Krylov space and minimal polynomial.

    The seed defaults to the atom p_1.

    Examples:\n
        obsaudit orbit --n 3 --atom 1\n
        obsaudit orbit --n 10 --family delta
    """

    def compute() -> Dict[str, Any]:
        o = Observer(n)
        f = resolve_table(n, table_hex, family, atom_index, top_atom)
        report = o.orbit(f, max_steps=max_steps)
        summary: Dict[str, Any] = {
            "n": n,
            "seed": f.to_hex(),
            "period": report.period,
            "preperiod": report.preperiod,
            "orbit_size": report.orbit_size,
        }
        if not f.is_zero():
            space = krylov_space(o, f)
            summary["krylov_dimension"] = space.dimension
            summary["relation"] = str(space.relation)
        minpoly = minimal_polynomial(o, f, probe_seed=cfg.seed)
        summary["minimal_polynomial"] = str(minpoly.polynomial)
        summary["probes_used"] = minpoly.probes_used

        rows = []
        current = f
        for k in range(min(report.orbit_size, 16)):
            rows.append([k, current.to_hex(), current.weight()])
            current = o.apply(current)
        return result_payload(
            "orbit", f"Orbit under O_{n}", summary, ["k", "table", "weight"], rows
        )

    flags = {
        "n": n,
        "max_steps": max_steps,
        "table": table_hex,
        "family": family,
        "atom": atom_index,
    }
    emit(cached(cfg, "orbit", flags, compute), cfg, out)


@cli.command()
@click.option("--n", "n", type=int, default=3, show_default=True, help="Arity")
@click.option("--q", type=int, default=2, show_default=True, help="Norm of the place")
@click.option("--s", "s_value", type=complex, help="Evaluate L_v at this s")
@table_options
@common_options
def lfactor(
    cfg: RunConfig,
    out: Optional[str],
    n: int,
    q: int,
    s_value: Optional[complex],
    table_hex: Optional[str],
    family: Optional[str],
    atom_index: Optional[int],
) -> None:
    """
    Local factor det(I - u O) on the Krylov space of a predicate.

    The predicate defaults to the atom p_1; u stands for q^{-s}.

    Examples:\n
        obsaudit lfactor --n 3 --atom 1\n
        obsaudit lfactor --n 3 --family pi1 --s 1.5
    """

    def compute() -> Dict[str, Any]:
        o = Observer(n)
        P = resolve_table(n, table_hex, family, atom_index, top_atom)
        factor = local_factor(o, P, q)
        summary: Dict[str, Any] = {
            "n": n,
            "predicate": P.to_hex(),
            "local_factor": factor.format("u", ascending=True),
            "degree": factor.degree,
            "note": LOCAL_FACTOR_CAVEAT,
        }
        if s_value is not None:
            value = evaluate_local_factor(factor, q, s_value)
            summary["q"] = q
            summary["s"] = str(s_value)
            summary["L_v"] = f"{value.real:.12g}{value.imag:+.12g}j"
        rows = [[d, c] for d, c in enumerate(factor.to_list())]
        return result_payload(
            "lfactor",
            f"Local factor at level {n}",
            summary,
            ["degree", "coefficient"],
            rows,
        )

    flags = {
        "n": n,
        "q": q,
        "s": None if s_value is None else str(s_value),
        "table": table_hex,
        "family": family,
        "atom": atom_index,
    }
    emit(cached(cfg, "lfactor", flags, compute), cfg, out)


@cli.command()
@click.option(
    "--character",
    "character_name",
    type=click.Choice(["delta", "one", "zero"]),
    default="delta",
    show_default=True,
)
@click.option(
    "--degree", type=int, default=12, show_default=True, help="Truncation order D"
)
@common_options
def euler(cfg: RunConfig, out: Optional[str], character_name: str, degree: int) -> None:
    """
    Euler product against Dirichlet series, coefficient by coefficient.

    Examples:\n
        obsaudit euler --character delta --degree 1\n
        obsaudit euler --character one --degree 12 --format csv
    """

    def compute() -> Dict[str, Any]:
        rows = compare_series(character(character_name), degree)
        summary = {
            "character": character_name,
            "degree": degree,
            "euler": [str(r.euler) for r in rows],
            "dirichlet": [str(r.dirichlet) for r in rows],
            "all_equal": all(r.equal for r in rows),
        }
        return result_payload(
            "euler",
            f"Euler product vs Dirichlet series ({character_name})",
            summary,
            COMPARISON_HEADER,
            [r.as_row() for r in rows],
        )

    flags = {"character": character_name, "degree": degree}
    emit(cached(cfg, "euler", flags, compute), cfg, out)


@cli.command()
@click.option("--n", "n", type=int, default=3, show_default=True, help="Arity")
@table_options
@common_options
def cocycle(
    cfg: RunConfig,
    out: Optional[str],
    n: int,
    table_hex: Optional[str],
    family: Optional[str],
    atom_index: Optional[int],
) -> None:
    """
    Audit the join cochain of a predicate and solve its pair system.

    The predicate defaults to the pi1 family.

    Examples:\n
        obsaudit cocycle --n 1 --table 2\n
        obsaudit cocycle --n 4 --family delta
    """

    def compute() -> Dict[str, Any]:
        A = resolve_table(n, table_hex, family, atom_index, family_default("pi1"))
        verdicts = cocycle_audit(A, family or "A")
        result = coboundary_solve(A)
        summary: Dict[str, Any] = {
            "n": n,
            "predicate": A.to_hex(),
            "solvable": result.solvable,
            "certificate": [list(pair) for pair in result.certificate],
        }
        if result.solution is not None:
            summary["solution"] = result.solution.table.to_hex()
        if n <= MAX_TRIPLE_ARITY:
            summary["symmetric"] = is_symmetric(A)
        return result_payload(
            "cocycle",
            f"Join cochain at level {n}",
            summary,
            VERDICT_HEADER,
            verdict_rows(verdicts),
        )

    flags = {"n": n, "table": table_hex, "family": family, "atom": atom_index}
    emit(cached(cfg, "cocycle", flags, compute), cfg, out)


@cli.command()
@click.option("--n", "n", type=int, default=3, show_default=True, help="Arity")
@click.option(
    "--samples",
    type=click.IntRange(min=1),
    default=DEFAULT_SAMPLES,
    show_default=True,
)
@table_options
@common_options
def code(
    cfg: RunConfig,
    out: Optional[str],
    n: int,
    samples: int,
    table_hex: Optional[str],
    family: Optional[str],
    atom_index: Optional[int],
) -> None:
    """
    Parameters [N, k, d] of the code spanned by an O-orbit.

    The seed defaults to the even-parity predicate.

    Examples:\n
        obsaudit code --n 3\n
        obsaudit code --n 4 --family pi1
    """

    def compute() -> Dict[str, Any]:
        seed_table = resolve_table(n, table_hex, family, atom_index, even_parity)
        report = orbit_code(Observer(n), seed_table, samples=samples)
        verdict = code_audit(report)
        summary = report.to_dict()
        summary.pop("generator_rows")
        summary["seed"] = seed_table.to_hex()
        summary["claimed"] = verdict.claimed
        summary["status"] = verdict.status.value
        summary["note"] = verdict.note
        rows = [[i, row] for i, row in enumerate(report.generator_hex_rows())]
        return result_payload(
            "code", f"Orbit code at level {n}", summary, ["generator", "row"], rows
        )

    flags = {
        "n": n,
        "samples": samples,
        "table": table_hex,
        "family": family,
        "atom": atom_index,
    }
    emit(cached(cfg, "code", flags, compute), cfg, out)


@cli.command()
@click.option("--n", "n", type=int, default=2, show_default=True, help="Arity")
@click.option("--lam", default="1", show_default=True, help="Potential coupling lambda")
@click.option("--beta", default="1", show_default=True, help="Inverse temperature")
@click.option("--steps", type=click.IntRange(min=1), default=100000, show_default=True)
@click.option("--record-every", type=click.IntRange(min=1), help="Trace spacing")
@click.option(
    "--metric",
    type=click.Choice([m.value for m in Metric]),
    default=Metric.ULTRAMETRIC.value,
    show_default=True,
)
@table_options
@common_options
def cft(
    cfg: RunConfig,
    out: Optional[str],
    n: int,
    lam: str,
    beta: str,
    steps: int,
    record_every: Optional[int],
    metric: str,
    table_hex: Optional[str],
    family: Optional[str],
    atom_index: Optional[int],
) -> None:
    """
    Metropolis chain for the discrete action with reference predicate A.

    A defaults to the delta family. The trace (step, energy, overlap) is
    the CSV output; exhaustive checks run for n <= 3.

    Examples:\n
        obsaudit cft --n 2 --lam 1000 --beta 10\n
        obsaudit cft --n 3 --steps 1000000 --format csv --out runs
    """

    def compute() -> Dict[str, Any]:
        reference = resolve_table(
            n, table_hex, family, atom_index, family_default("delta")
        )
        params = CftParams(
            n, lam, beta, reference, seed=cfg.seed, metric=Metric(metric)
        )
        result = metropolis(params, steps, record_every=record_every)
        summary: Dict[str, Any] = {
            "n": n,
            "lambda": str(params.lam),
            "beta": str(params.beta),
            "metric": params.metric.value,
            "reference": reference.to_hex(),
            "steps": steps,
            "acceptance_rate": f"{result.acceptance_rate:.6f}",
            "final_energy": str(energy(result.final, params)),
            "final_overlap": str(result.trace[-1].overlap),
            "reached_reference": result.final.phi == reference,
        }
        if n <= MAX_EXHAUSTIVE_ARITY:
            low, states = ground_states(params)
            summary["ground_energy"] = str(low)
            summary["ground_states"] = [s.phi.to_hex() for s in states]
            summary["detailed_balance"] = detailed_balance_holds(params)
        return result_payload(
            "cft",
            f"Metropolis chain at level {n}",
            summary,
            TRACE_HEADER,
            [row.as_row() for row in result.trace],
        )

    flags = {
        "n": n,
        "lam": lam,
        "beta": beta,
        "steps": steps,
        "record_every": record_every,
        "metric": metric,
        "table": table_hex,
        "family": family,
        "atom": atom_index,
    }
    emit(cached(cfg, "cft", flags, compute), cfg, out)


@cli.command()
@click.option(
    "--kind",
    type=click.Choice([k.value for k in LiftKind]),
    default=LiftKind.PREFIX_IGNORE.value,
    show_default=True,
)
@click.option("--n", "n", type=int, default=3, show_default=True, help="Lower level")
@click.option("--m", "m", type=int, help="Upper level (default n + 1)")
@click.option(
    "--sequence", is_flag=True, help="Audit the fixed spaces along the tower up to n"
)
@common_options
def compat(
    cfg: RunConfig,
    out: Optional[str],
    kind: str,
    n: int,
    m: Optional[int],
    sequence: bool,
) -> None:
    """
    Compatibility of O with a lift map, or of the fixed spaces along the tower.

    Examples:\n
        obsaudit compat --kind prefix_ignore --n 3 --m 4\n
        obsaudit compat --sequence --n 10
    """

    def compute() -> Dict[str, Any]:
        if sequence:
            verdict = compatible_sequence_audit(n)
            rows = [f.as_row() for f in compatible_sequence(n)]
            summary = {
                "claim_id": verdict.claim_id,
                "status": verdict.status.value,
                "computed": verdict.computed,
            }
            return result_payload(
                "compat",
                f"Compatible fixed points up to n={n}",
                summary,
                SEQUENCE_HEADER,
                rows,
            )
        L = LiftMap(LiftKind(kind), n, n + 1 if m is None else m)
        verdict = compatibility_audit(L)
        summary = {
            "lift": L.describe(),
            "claim_id": verdict.claim_id,
            "status": verdict.status.value,
            "computed": verdict.computed,
            "derived_identity": derived_identity_holds(L),
        }
        return result_payload(
            "compat",
            f"Compatibility {L.describe()}",
            summary,
            COMPATIBILITY_HEADER,
            [compatibility_row(L).as_row()],
        )

    flags = {"kind": kind, "n": n, "m": m, "sequence": sequence}
    emit(cached(cfg, "compat", flags, compute), cfg, out)


@cli.command()
@click.option("--n", "n", type=int, default=20, show_default=True, help="Arity")
@click.option("--repeats", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--no-naive", is_flag=True, help="Skip the per-point loop")
@common_options
def bench(
    cfg: RunConfig, out: Optional[str], n: int, repeats: int, no_naive: bool
) -> None:
    """
    Time the word-level apply against the per-point loop (never cached).

    Examples:\n
        obsaudit bench --n 20\n
        obsaudit bench --n 24 --no-naive
    """
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=err_console,
        transient=True,
    ) as progress:
        progress.add_task(f"Benchmarking O_{n}...", total=None)
        result = benchmark_apply(
            n, repeats=repeats, naive=not no_naive, seed=cfg.seed
        )
    summary = {
        "n": n,
        "repeats": repeats,
        "word_seconds": f"{result.word_seconds:.6f}",
        "naive_seconds": "" if no_naive else f"{result.naive_seconds:.6f}",
        "speedup": "" if no_naive else f"{result.speedup:.1f}",
    }
    payload = result_payload("bench", f"Apply benchmark at n={n}", summary, [], [])
    emit(payload, cfg, out)


@cli.command()
@click.option("--n", "n", type=int, default=3, show_default=True, help="Arity")
@click.option(
    "--order",
    type=click.Choice([o.value for o in AtomOrder]),
    default=AtomOrder.PRINTED.value,
    show_default=True,
)
@common_options
def matrix(cfg: RunConfig, out: Optional[str], n: int, order: str) -> None:
    """
    Dense GF(2) matrix of O_n over the atom basis.

    Examples:\n
        obsaudit matrix --n 3\n
        obsaudit matrix --n 4 --order ascending --format csv
    """

    def compute() -> Dict[str, Any]:
        m = Observer(n).matrix(AtomOrder(order))
        points = order_points(n, AtomOrder(order))
        rows = [
            [atom_label(n, p), "".join(str(b) for b in row)]
            for p, row in zip(points, m.to_lists())
        ]
        summary = {"n": n, "order": order, "rank": m.rank()}
        return result_payload(
            "matrix", f"Matrix of O_{n}", summary, ["atom", "row"], rows
        )

    emit(cached(cfg, "matrix", {"n": n, "order": order}, compute), cfg, out)


@cli.command()
@click.option(
    "--family",
    type=click.Choice(PREDICATE_FAMILIES),
    default="pi1",
    show_default=True,
)
@click.option("--n", "n", type=int, default=4, show_default=True, help="Largest level")
@common_options
def predicate(cfg: RunConfig, out: Optional[str], family: str, n: int) -> None:
    """
    An explicit predicate family in ANF, with its invariance at levels 1..n.

    Examples:\n
        obsaudit predicate --family delta --n 10\n
        obsaudit predicate --family pi2 --n 4 --format json
    """

    def compute() -> Dict[str, Any]:
        rows = []
        for k in range(1, n + 1):
            anf = predicate_family(family, k)
            invariant = Observer(k).is_invariant(table_of(anf))
            rows.append([k, anf.degree, "yes" if invariant else "no"])
        top = predicate_family(family, n)
        summary = {
            "family": family,
            "n": n,
            "anf": str(top),
            "table": table_of(top).to_hex(),
        }
        return result_payload(
            "predicate",
            f"Predicate family {family}",
            summary,
            ["n", "degree", "invariant"],
            rows,
        )

    emit(cached(cfg, "predicate", {"family": family, "n": n}, compute), cfg, out)


@cli.command(name="irreducibles")
@click.option(
    "--degree", type=int, default=6, show_default=True, help="Largest degree d"
)
@click.option(
    "--list", "list_them", is_flag=True, help="List the irreducibles of degree d"
)
@common_options
def irreducibles_cmd(
    cfg: RunConfig, out: Optional[str], degree: int, list_them: bool
) -> None:
    """
    Counts of monic irreducibles in F_2[t], checked against the necklace formula.

    Examples:\n
        obsaudit irreducibles --degree 12\n
        obsaudit irreducibles --degree 4 --list
    """

    def compute() -> Dict[str, Any]:
        if list_them:
            polys = irreducibles(degree)
            rows = [[p.mask, str(p)] for p in polys]
            summary = {"degree": degree, "count": len(polys)}
            return result_payload(
                "irreducibles",
                f"Irreducibles of degree {degree}",
                summary,
                ["mask", "poly"],
                rows,
            )
        rows = []
        for d in range(1, degree + 1):
            count = len(irreducibles(d))
            identity = "yes" if degree_identity_holds(d) else "no"
            rows.append([d, count, necklace_count(d), identity])
        summary = {"degree": degree, "all_match": all(r[1] == r[2] for r in rows)}
        return result_payload(
            "irreducibles",
            "Monic irreducibles in F_2[t]",
            summary,
            ["degree", "count", "necklace", "divisor_identity"],
            rows,
        )

    flags = {"degree": degree, "list": list_them}
    emit(cached(cfg, "irreducibles", flags, compute), cfg, out)


@cli.command()
@common_options
def info(cfg: RunConfig, out: Optional[str]) -> None:
    """
    Show the effective configuration.

    Values are resolved from flags, OBSAUDIT_* environment variables,
    the configuration file and defaults, in that order.

    Example:
        obsaudit info
    """
    summary = dict(cfg.to_dict())
    summary["version"] = __version__
    summary["claim_groups"] = group_names()
    payload = result_payload("info", "Configuration Information", summary, [], [])
    emit(payload, cfg, out)


def main() -> None:
    """Console entry point: run the CLI and map failures to exit codes."""
    try:
        cli.main(standalone_mode=False)
    except click.exceptions.Abort:
        print_error("Aborted")
        sys.exit(1)
    except click.ClickException as e:
        e.show()
        sys.exit(1)
    except ObsAuditError as e:
        print_error(str(e))
        sys.exit(2 if isinstance(e, CapExceededError) else 3)
    except Exception as e:
        print_error(f"Internal error: {e}")
        sys.exit(3)


if __name__ == "__main__":
    main()
