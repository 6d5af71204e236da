"""Report models, JSON serialization and rich rendering.

Every command produces a ``Report``. JSON output is byte-stable: models are
dumped with ``mode="json"`` and written with sorted keys. Rationals are
strings like ``"3/2"``, vectors are integer lists.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction

from pydantic import BaseModel, Field
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from . import __version__
from .cone import RationalCone, componentwise_min
from .config import Settings
from .deformation import SimultaneousReport, SupportFamily, halfspace_condition, weight_constancy
from .exceptions import EnumerationLimitError
from .newton import (
    NewtonPolyhedron,
    OnePosition,
    SingularityClass,
    face_containing_one,
    hodge_type_0_n_minus_1,
    is_type_T,
    quasi_reduced,
)
from .support import PolynomialSupport, VectorLike
from .weights import DiscrepancyRecord, FMinimalityCertificate, WeightVerdict, absolutely_minimal

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"


def vector_list(v: VectorLike | None) -> list[int] | None:
    return None if v is None else [int(x) for x in v]


def vector_lists(vs: Iterable[VectorLike]) -> list[list[int]]:
    return [[int(x) for x in v] for v in vs]


def _rational(x: Fraction | int | None) -> str | None:
    return None if x is None else str(Fraction(x))


# =========================================================================
# Models
# =========================================================================


class InputEcho(BaseModel):
    polynomial: str
    dim: int
    fingerprint: str


class ClassificationPayload(BaseModel):
    label: str
    kappa: str
    position: str
    nondegeneracy: str
    face_containing_one: list[list[int]] | None = None
    face_dim: int | None = None
    hodge_type_0_n_minus_1: bool
    type_t: list[int] | None = None
    quasi_reduced: bool | None = None


class ProbeResult(BaseModel):
    weight: list[int]
    member: bool


class ConePayload(BaseModel):
    forms: list[list[int]]
    rays: list[list[int]]
    hilbert_basis: list[list[int]]
    componentwise_min: list[int] | None = None
    abs_min: list[int] | None = None
    probes: list[ProbeResult] = Field(default_factory=list)


class CandidateRow(BaseModel):
    weight: list[int]
    status: str
    reason: str | None = None


class CertificatePayload(BaseModel):
    weight: list[int]
    f_minimal: bool
    reason: str
    counterexample: list[int] | None = None
    violators: list[list[int]] = Field(default_factory=list)
    subcones: int = 0


class DiscrepancyRow(BaseModel):
    q: list[int]
    chart: int
    m_q: str
    excluded: bool
    on_wall: bool
    adjunction: int
    toric: int


class BlowupPayload(BaseModel):
    weight: list[int]
    leading_coefficient: str
    minus_k_cubed: bool
    discrepancies: list[DiscrepancyRow]


class WeightPayload(BaseModel):
    label: str
    kappa: str
    outcome: str
    canonical_weights: list[list[int]]
    abs_min: list[int] | None = None
    componentwise_min: list[int] | None = None
    essential_rays: list[list[int]]
    hilbert_basis: list[list[int]]
    candidates: list[CandidateRow]
    exhaustive: bool
    search_bound: int | None = None
    leading_coefficient: str | None = None
    candidate: CertificatePayload | None = None
    blowup: BlowupPayload | None = None


class DeformationPayload(BaseModel):
    members: list[str]
    labels: list[str]
    weight: list[int]
    halfspace: bool
    constancy: bool
    canonical_weight: bool | None = None
    g_weighted_homogeneous: bool | None = None
    verdict: str
    citations: list[str] = Field(default_factory=list)


class BatchRow(BaseModel):
    file: str
    label: str | None = None
    outcome: str | None = None
    weights: list[list[int]] = Field(default_factory=list)
    error: str | None = None


class BatchPayload(BaseModel):
    directory: str
    rows: list[BatchRow]


class Report(BaseModel):
    schema_version: str = SCHEMA_VERSION
    tool_version: str = __version__
    command: str
    input: InputEcho | None = None
    classification: ClassificationPayload | None = None
    cone: ConePayload | None = None
    weight: WeightPayload | None = None
    deformation: DeformationPayload | None = None
    batch: BatchPayload | None = None
    caveats: list[str] = Field(default_factory=list)


# =========================================================================
# Builders
# =========================================================================


def echo(f: PolynomialSupport) -> InputEcho:
    return InputEcho(polynomial=str(f), dim=f.dim, fingerprint=f.fingerprint())


def classification_report(
    f: PolynomialSupport,
    cls: SingularityClass,
    np: NewtonPolyhedron,
    settings: Settings | None = None,
) -> Report:
    face, face_dim = None, None
    if cls.position is OnePosition.ON_COMPACT_FACE:
        info = face_containing_one(np)
        face, face_dim = vector_lists(info.generators), info.dim
    try:
        reduced = quasi_reduced(f, settings)
    except EnumerationLimitError as e:
        logger.warning(f"Skipping the quasi-reduced check: {e}")
        reduced = None
    type_t = is_type_T(f)
    payload = ClassificationPayload(
        label=cls.label.value,
        kappa=cls.kappa_label,
        position=cls.position.value,
        nondegeneracy=cls.nondegeneracy.value,
        face_containing_one=face,
        face_dim=face_dim,
        hodge_type_0_n_minus_1=hodge_type_0_n_minus_1(f),
        type_t=vector_list(type_t),
        quasi_reduced=reduced,
    )
    return Report(command="classify", input=echo(f), classification=payload, caveats=list(cls.caveats))


def cone_report(
    f: PolynomialSupport,
    c1: RationalCone,
    probes: Sequence[VectorLike] = (),
    settings: Settings | None = None,
) -> Report:
    hilbert = c1.hilbert_basis(settings) if not c1.is_zero else []
    cmin = componentwise_min(hilbert) if hilbert else None
    abs_min = absolutely_minimal(c1, settings) if hilbert else None
    payload = ConePayload(
        forms=vector_lists(c1.facet_forms()),
        rays=vector_lists(c1.ray_tuples()),
        hilbert_basis=vector_lists(hilbert),
        componentwise_min=vector_list(cmin),
        abs_min=vector_list(abs_min),
        probes=[ProbeResult(weight=vector_list(p), member=c1.contains(p)) for p in probes],
    )
    return Report(command="cone", input=echo(f), cone=payload)


def certificate_payload(cert: FMinimalityCertificate) -> CertificatePayload:
    return CertificatePayload(
        weight=vector_list(cert.weight),
        f_minimal=cert.f_minimal,
        reason=cert.reason,
        counterexample=vector_list(cert.counterexample),
        violators=vector_lists(cert.violators),
        subcones=cert.subcones,
    )


def blowup_payload(
    p: VectorLike, records: Sequence[DiscrepancyRecord], leading: Fraction, minus_k_cubed: bool
) -> BlowupPayload:
    return BlowupPayload(
        weight=vector_list(p),
        leading_coefficient=_rational(leading),
        minus_k_cubed=minus_k_cubed,
        discrepancies=[
            DiscrepancyRow(
                q=vector_list(r.q),
                chart=r.chart,
                m_q=_rational(r.m_q),
                excluded=r.excluded,
                on_wall=r.on_wall,
                adjunction=r.adjunction,
                toric=r.toric,
            )
            for r in records
        ],
    )


def weight_report(
    f: PolynomialSupport,
    verdict: WeightVerdict,
    candidate: FMinimalityCertificate | None = None,
    blowup: BlowupPayload | None = None,
) -> Report:
    payload = WeightPayload(
        label=verdict.singularity.label.value,
        kappa=verdict.singularity.kappa_label,
        outcome=verdict.outcome,
        canonical_weights=vector_lists(verdict.canonical_weights),
        abs_min=vector_list(verdict.abs_min),
        componentwise_min=vector_list(verdict.componentwise_min),
        essential_rays=vector_lists(verdict.essential_rays),
        hilbert_basis=vector_lists(verdict.hilbert),
        candidates=[
            CandidateRow(weight=vector_list(c.weight), status=c.status.value, reason=c.reason)
            for c in verdict.candidates
        ],
        exhaustive=verdict.exhaustive,
        search_bound=verdict.search_bound,
        leading_coefficient=_rational(verdict.leading_coeff),
        candidate=certificate_payload(candidate) if candidate else None,
        blowup=blowup,
    )
    return Report(command="weight", input=echo(f), weight=payload, caveats=list(verdict.caveats))


def deformation_report(
    family: SupportFamily, p: VectorLike, simultaneous: SimultaneousReport | None = None
) -> Report:
    payload = DeformationPayload(
        members=[str(m) for m in family.members],
        labels=list(family.labels),
        weight=vector_list(p),
        halfspace=halfspace_condition(family, p),
        constancy=weight_constancy(family, p),
        canonical_weight=simultaneous.canonical_weight if simultaneous else None,
        g_weighted_homogeneous=simultaneous.g_weighted_homogeneous if simultaneous else None,
        verdict=simultaneous.verdict if simultaneous else "family conditions only",
        citations=list(simultaneous.citations) if simultaneous else [],
    )
    caveats = list(simultaneous.caveats) if simultaneous else []
    return Report(command="deform", deformation=payload, caveats=caveats)


def to_json(report: Report) -> str:
    """Byte-stable JSON text of a report."""
    return json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True)


# =========================================================================
# Rendering
# =========================================================================


def _fmt(v: Sequence[int] | None) -> str:
    return "-" if v is None else "(" + ",".join(str(x) for x in v) + ")"


def _vector_table(title: str, rows: Sequence[Sequence[int]]) -> Table:
    table = Table(title=title, show_header=False)
    table.add_column("vector")
    for row in rows:
        table.add_row(_fmt(row))
    return table


def _status(ok: bool | None) -> str:
    if ok is None:
        return "[yellow]n/a[/yellow]"
    return "[green]yes[/green]" if ok else "[red]no[/red]"


def render(report: Report, console: Console | None = None) -> None:
    """Print a report for humans."""
    console = console or Console()
    header = f"canweight {report.command}"
    if report.input:
        header += f"\n{report.input.polynomial}  (dim {report.input.dim})"
    console.print(Panel(header, style="bold cyan"))

    if report.classification:
        c = report.classification
        console.print(f"Class: [bold]{c.label}[/bold]  kappa = {c.kappa}")
        console.print(f"Position of (1,...,1): {c.position}")
        console.print(f"Non-degeneracy: {c.nondegeneracy}")
        if c.face_containing_one:
            console.print(f"Face containing (1,...,1): dim {c.face_dim}, vertices {', '.join(_fmt(v) for v in c.face_containing_one)}")
        console.print(f"Hodge type (0, n-1): {_status(c.hodge_type_0_n_minus_1)}")
        console.print(f"Quasi-reduced: {_status(c.quasi_reduced)}")
        if c.type_t:
            console.print(f"Type T with exponents {_fmt(c.type_t)}")

    if report.cone:
        c = report.cone
        console.print(_vector_table("Inequalities q.u >= 0", c.forms))
        console.print(_vector_table("Extreme rays", c.rays))
        console.print(_vector_table("Hilbert basis", c.hilbert_basis))
        console.print(f"Componentwise minimum: {_fmt(c.componentwise_min)}")
        console.print(f"Absolutely minimal vector: {_fmt(c.abs_min)}")
        for probe in c.probes:
            console.print(f"  {_fmt(probe.weight)} in cone: {_status(probe.member)}")

    if report.weight:
        w = report.weight
        console.print(f"Class: [bold]{w.label}[/bold]  kappa = {w.kappa}")
        console.print(f"[bold]{w.outcome}[/bold]")
        if w.leading_coefficient:
            console.print(f"Leading coefficient sum/prod: {w.leading_coefficient}")
        if w.candidates:
            table = Table(title="Candidates")
            table.add_column("weight")
            table.add_column("status")
            table.add_column("reason")
            for row in w.candidates:
                table.add_row(_fmt(row.weight), row.status, row.reason or "")
            console.print(table)
        if w.candidate:
            cert = w.candidate
            console.print(f"Candidate {_fmt(cert.weight)} f-minimal: {_status(cert.f_minimal)} ({cert.reason})")
            if cert.counterexample:
                console.print(f"  counterexample {_fmt(cert.counterexample)}")
        if w.blowup:
            b = w.blowup
            console.print(f"Blow-up {_fmt(b.weight)}: sum/prod = {b.leading_coefficient}" + (" = -K^3" if b.minus_k_cubed else ""))
            table = Table(title="Discrepancies")
            for column in ("q", "chart", "m_q", "excluded", "wall"):
                table.add_column(column)
            for r in b.discrepancies:
                table.add_row(_fmt(r.q), str(r.chart), r.m_q, _status(r.excluded), _status(r.on_wall))
            console.print(table)

    if report.deformation:
        d = report.deformation
        for label, member in zip(d.labels, d.members):
            console.print(f"  {label}: {member}")
        console.print(f"Weight {_fmt(d.weight)}")
        console.print(f"Canonical weight for f: {_status(d.canonical_weight)}")
        console.print(f"g weighted-homogeneous: {_status(d.g_weighted_homogeneous)}")
        console.print(f"Halfspace condition: {_status(d.halfspace)}")
        console.print(f"Weight constancy: {_status(d.constancy)}")
        console.print(f"[bold]{d.verdict}[/bold]")
        for citation in d.citations:
            console.print(f"[blue]{citation}[/blue]")

    if report.batch:
        table = Table(title=f"Batch {report.batch.directory}")
        for column in ("file", "class", "outcome", "weights"):
            table.add_column(column)
        for row in report.batch.rows:
            if row.error:
                table.add_row(row.file, "[red]error[/red]", row.error, "")
            else:
                table.add_row(row.file, row.label or "", row.outcome or "", " ".join(_fmt(w) for w in row.weights))
        console.print(table)

    for caveat in report.caveats:
        console.print(f"[yellow]caveat:[/yellow] {caveat}")
