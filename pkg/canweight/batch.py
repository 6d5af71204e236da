"""Weight verdicts over a directory of polynomial files."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

from .config import Settings, get_settings
from .exceptions import DomainError, InputError
from .report import BatchPayload, BatchRow, Report, vector_lists
from .support import load_polynomial
from .weights import canonical_weight_verdict

logger = logging.getLogger(__name__)

INPUT_SUFFIXES = (".json", ".txt")


def collect_inputs(directory: str | Path) -> list[Path]:
    """Polynomial files in a directory, sorted by name."""
    path = Path(directory)
    if not path.is_dir():
        raise InputError(f"{path} is not a directory.")
    return sorted(p for p in path.iterdir() if p.is_file() and p.suffix in INPUT_SUFFIXES)


def run_one(
    path: Path,
    dim: int | None = None,
    assume_nondegenerate: bool = False,
    candidate_sum_bound: int | None = None,
    settings: Settings | None = None,
) -> BatchRow:
    """Verdict row for one file; input and domain errors become the row's error.

    Invariant violations and enumeration limits propagate and abort the batch.
    """
    try:
        f = load_polynomial(path, dim, settings)
        verdict = canonical_weight_verdict(f, assume_nondegenerate, candidate_sum_bound, settings)
    except (InputError, DomainError) as e:
        logger.warning(f"{path.name}: {e}")
        return BatchRow(file=path.name, error=f"{type(e).__name__}: {e}")
    return BatchRow(
        file=path.name,
        label=verdict.singularity.label.value,
        outcome=verdict.outcome,
        weights=vector_lists(verdict.canonical_weights),
    )


def run_batch(
    directory: str | Path,
    dim: int | None = None,
    assume_nondegenerate: bool = False,
    candidate_sum_bound: int | None = None,
    settings: Settings | None = None,
) -> Report:
    """Aggregate verdict table; row order follows file names whatever the worker count."""
    settings = settings or get_settings()
    files = collect_inputs(directory)
    job = partial(
        run_one,
        dim=dim,
        assume_nondegenerate=assume_nondegenerate,
        candidate_sum_bound=candidate_sum_bound,
        settings=settings,
    )
    logger.info(f"Batch over {len(files)} files with {settings.batch_workers} workers")
    if settings.batch_workers > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=settings.batch_workers) as pool:
            rows = list(pool.map(job, files))
    else:
        rows = [job(p) for p in files]
    return Report(command="batch", batch=BatchPayload(directory=str(directory), rows=rows))
