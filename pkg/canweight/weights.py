"""Essential cones, canonical weights and weighted blow-up discrepancies.

The essential cone of f is ``C1(f) = {q >= 0 : q(f) >= q(1)}``. A weighted
blow-up with weight p is the canonical modification when p is f-minimal in
C1(f) (and, for log-canonical f, exactly when p is the absolutely minimal
vector of C1(f)).
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import lattice
from .cone import (
    RationalCone,
    SimplicialFrame,
    componentwise_min,
    cone_from_inequalities,
    lattice_points_under,
    simplicial_frame,
)
from .config import Settings, get_settings
from .exceptions import DimensionMismatchError, DomainError, InvariantViolationError, NonPointedConeError
from .newton import SingularityClass, SingularityLabel, build_newton, classify, minimal_generators
from .support import (
    PolynomialSupport,
    VectorLike,
    WeightVector,
    as_weight,
    ones,
    pairing,
    weight_of_poly,
)

logger = logging.getLogger(__name__)

SURFACE_TRIAD = frozenset({(1, 1, 1), (1, 2, 3), (1, 1, 2)})


class WeightStatus(str, Enum):
    F_MINIMAL = "f-minimal"
    NOT_F_MINIMAL = "not-f-minimal"
    CANONICAL_WEIGHT = "canonical-weight"
    NOT_CANONICAL_WEIGHT = "not-canonical-weight"


@dataclass(frozen=True)
class CandidateStatus:
    weight: WeightVector
    status: WeightStatus
    reason: str | None = None


@dataclass(frozen=True)
class StarSubdivision:
    """The fan obtained by inserting the ray through p into the positive orthant.

    Chart i is the simplicial cone spanned by p and the e_j with j != i.
    """

    center: WeightVector
    maximal_cones: tuple[SimplicialFrame, ...]


@dataclass(frozen=True)
class DiscrepancyRecord:
    """Coefficient of the divisor D_q relative to the blow-up with center p."""

    q: WeightVector
    chart: int
    m_q: Fraction
    excluded: bool
    on_wall: bool
    adjunction: int
    toric: int


@dataclass(frozen=True)
class FMinimalityCertificate:
    """Outcome of the f-minimality decision for one weight.

    Attributes:
        weight: The weight tested.
        f_minimal: The decision.
        reason: Short human-readable justification.
        counterexample: A primitive q violating both orders, when one was found.
        violators: Primitive q failing p <=_f q but saved by the chart-interior escape.
        subcones: Number of nonzero linearity subcones examined.
    """

    weight: WeightVector
    f_minimal: bool
    reason: str
    counterexample: WeightVector | None = None
    violators: tuple[WeightVector, ...] = ()
    subcones: int = 0


@dataclass(frozen=True)
class WeightVerdict:
    """Decision record for f: class, essential cone and canonical weight status."""

    fingerprint: str
    polynomial: str
    singularity: SingularityClass
    essential_forms: tuple[tuple[int, ...], ...]
    essential_rays: tuple[WeightVector, ...]
    hilbert: tuple[WeightVector, ...]
    componentwise_min: WeightVector | None
    abs_min: WeightVector | None
    candidates: tuple[CandidateStatus, ...]
    canonical_weights: tuple[WeightVector, ...]
    exhaustive: bool
    leading_coeff: Fraction | None
    outcome: str
    search_bound: int | None = None
    caveats: tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class ThreeOnesReport:
    cap: int
    count: int
    holds: bool
    offenders: tuple[WeightVector, ...]


@dataclass(frozen=True)
class TriadReport:
    weight: WeightVector | None
    in_triad: bool


# =========================================================================
# Essential cone and absolute minimality
# =========================================================================


def _units(d: int) -> list[tuple[int, ...]]:
    return [tuple(int(i == j) for j in range(d)) for i in range(d)]


def essential_cone(f: PolynomialSupport) -> RationalCone:
    """C1(f) = {q >= 0 : q(a - 1) >= 0 for every a in supp f}, redundant forms pruned."""
    forms = _units(f.dim) + [tuple(x - 1 for x in a) for a in f.support]
    cone = cone_from_inequalities(forms, f.dim).pruned()
    logger.info(f"Essential cone of {f}: {len(cone.ray_tuples())} extreme rays")
    return cone


def essential_cone_rays_screen(c: RationalCone) -> list[WeightVector]:
    """Extreme rays with a zero coordinate; an isolated singularity has none."""
    return [WeightVector(r) for r in c.ray_tuples() if any(x == 0 for x in r)]


def absolutely_minimal(c: RationalCone, settings: Settings | None = None) -> WeightVector | None:
    """The primitive lattice point below every other one, if it exists.

    Every nonzero lattice point of c dominates the entrywise minimum m of the
    Hilbert basis, so the minimum exists iff m is a nonzero member of c.

    Raises:
        NonPointedConeError: If c contains a line.
        DomainError: If c is the apex.
    """
    if not c.is_pointed:
        raise NonPointedConeError()
    if c.is_zero:
        raise DomainError("The zero cone has no absolutely minimal vector.")
    m = componentwise_min(c.hilbert_basis(settings))
    if m.is_zero or not c.contains(m):
        logger.info(f"No absolutely minimal vector: {m} is not a nonzero cone member")
        return None
    return m


# =========================================================================
# Star subdivisions and the orders <=_f, <_f
# =========================================================================


def _check_center(p: WeightVector) -> None:
    if any(x <= 0 for x in p):
        raise DomainError(f"Blow-up weight {p} must have positive entries.")
    if not p.primitive:
        raise DomainError(f"Blow-up weight {p} must be primitive.")


def star_subdivision(p: VectorLike) -> StarSubdivision:
    """The n+1 charts of the weighted blow-up with weight p.

    Raises:
        DomainError: If p has a non-positive entry or is not primitive.
    """
    p = as_weight(p)
    _check_center(p)
    units = _units(p.dim)
    frames = tuple(
        simplicial_frame([p.coords if j == i else units[j] for j in range(p.dim)])
        for i in range(p.dim)
    )
    return StarSubdivision(p, frames)


def _check_orthant_point(q: WeightVector, dim: int) -> None:
    if q.dim != dim:
        raise DimensionMismatchError(dim, q.dim)
    if any(x < 0 for x in q) or q.is_zero:
        raise DomainError(f"{q} is not a nonzero point of the positive orthant.")


def interior_chart(sub: StarSubdivision, q: VectorLike) -> int | None:
    """Index of the chart whose interior contains q, or None when q is on a wall."""
    q = as_weight(q)
    _check_orthant_point(q, sub.center.dim)
    for i, frame in enumerate(sub.maximal_cones):
        coefficients = [lattice.dot(q.coords, dual) for dual in frame.dual_basis]
        if all(x > 0 for x in coefficients):
            return i
    return None


def chart_of(sub: StarSubdivision, q: VectorLike) -> tuple[int, bool]:
    """Chart containing q (lowest index on walls) and whether q is interior to it."""
    q = as_weight(q)
    _check_orthant_point(q, sub.center.dim)
    p = sub.center
    ratios = [Fraction(x, y) for x, y in zip(q, p)]
    chart = ratios.index(min(ratios))
    return chart, interior_chart(sub, q) == chart


def _relative_order(q: WeightVector, f: PolynomialSupport) -> int:
    """q(f) - q(1) + 1, the denominator of the order <=_f."""
    return weight_of_poly(q, f) - pairing(q, ones(f.dim)) + 1


def leq_f(p: VectorLike, q: VectorLike, f: PolynomialSupport) -> bool:
    """p <=_f q, i.e. p_i/(p(f)-p(1)+1) <= q_i/(q(f)-q(1)+1) for all i.

    Raises:
        DomainError: If p or q is zero or outside the essential cone.
    """
    p, q = as_weight(p), as_weight(q)
    if p.is_zero or q.is_zero:
        raise DomainError("<=_f compares nonzero weights.")
    cp, cq = _relative_order(p, f), _relative_order(q, f)
    if cp <= 0 or cq <= 0:
        raise DomainError("<=_f needs both weights in the essential cone.")
    return all(pi * cq <= qi * cp for pi, qi in zip(p, q))


def prec_f(p: VectorLike, q: VectorLike, f: PolynomialSupport) -> bool:
    """p <_f q, i.e. p_i/p(f) <= q_i/q(f) for all i.

    Raises:
        DomainError: If p(f) or q(f) is zero.
    """
    p, q = as_weight(p), as_weight(q)
    pf, qf = weight_of_poly(p, f), weight_of_poly(q, f)
    if pf <= 0 or qf <= 0:
        raise DomainError("<_f needs p(f) > 0 and q(f) > 0.")
    return all(pi * qf <= qi * pf for pi, qi in zip(p, q))


def _escapes(p: WeightVector, q: WeightVector, f: PolynomialSupport, sub: StarSubdivision) -> bool:
    return prec_f(p, q, f) and interior_chart(sub, q) is not None


def is_f_minimal(
    p: VectorLike,
    f: PolynomialSupport,
    settings: Settings | None = None,
    essential: RationalCone | None = None,
) -> tuple[bool, FMinimalityCertificate]:
    """Decide whether p is f-minimal in C1(f).

    Every primitive q in C1(f) must satisfy p <=_f q, or p <_f q with q in
    the interior of a chart of the blow-up. C1(f) is cut into subcones K on
    which q(f) = q(a) for a fixed generator a and chart c attains
    min q_j/p_j. On K the order p <=_f q reads G(q) >= p_c with
    G(q) = c_p*q_c - p_c*q(a - 1) linear. If G <= 0 on a ray of K that ray
    is a counterexample (the escape clause fails there as well); otherwise
    the violators are the finitely many q in K with G(q) <= p_c - 1.

    Args:
        p: Candidate weight, primitive with positive entries.
        f: The polynomial support.
        settings: Optional settings override.
        essential: Precomputed C1(f).

    Returns:
        ``(decision, certificate)``.

    Raises:
        DomainError: If p is not primitive or has a non-positive entry.
        InvariantViolationError: If a derived counterexample fails to be one.
    """
    p = as_weight(p)
    if p.dim != f.dim:
        raise DimensionMismatchError(f.dim, p.dim)
    _check_center(p)
    c1 = essential if essential is not None else essential_cone(f)
    if not c1.contains(p):
        return False, FMinimalityCertificate(p, False, "not in essential cone")

    d = f.dim
    cp = _relative_order(p, f)
    sub = star_subdivision(p)
    gens = minimal_generators(f)
    violators: dict[WeightVector, int] = {}
    subcones = 0
    for a in gens:
        region = [tuple(x - y for x, y in zip(b, a)) for b in gens if b != a]
        for c in range(d):
            chart_forms = [_units(d)[c]] + [
                tuple(p[c] if k == j else (-p[j] if k == c else 0) for k in range(d))
                for j in range(d)
                if j != c
            ]
            K = cone_from_inequalities(list(c1.hrep) + region + chart_forms, d)
            rays = K.ray_tuples()
            if not rays:
                continue
            subcones += 1
            G = tuple(
                (cp if k == c else 0) - p[c] * (a[k] - 1) for k in range(d)
            )
            for ray in rays:
                if lattice.dot(G, ray) <= 0:
                    q = WeightVector(ray)
                    if leq_f(p, q, f) or _escapes(p, q, f, sub):
                        raise InvariantViolationError(f"Ray {q} was expected to violate both orders.")
                    logger.info(f"{p} is not f-minimal: ray {q}")
                    return False, FMinimalityCertificate(
                        p, False, "ray of the essential cone violates both orders", q, (), subcones
                    )
            for q in lattice_points_under(K, G, p[c] - 1, settings):
                if not q.primitive or q in violators or leq_f(p, q, f):
                    continue
                chart = interior_chart(sub, q)
                if chart is not None and prec_f(p, q, f):
                    violators[q] = chart
                    continue
                reason = "on a chart wall" if chart is None else "fails <_f"
                logger.info(f"{p} is not f-minimal: {q} ({reason})")
                return False, FMinimalityCertificate(
                    p, False, f"lattice point violates <=_f and {reason}", q, (), subcones
                )
    logger.info(f"{p} is f-minimal ({len(violators)} escaped violators, {subcones} subcones)")
    return True, FMinimalityCertificate(
        p, True, "all checked", None, tuple(sorted(violators)), subcones
    )


def is_canonical_weight(
    p: VectorLike,
    f: PolynomialSupport,
    assume_nondegenerate: bool = False,
    settings: Settings | None = None,
) -> bool:
    """True iff the weighted blow-up with weight p is the canonical modification of f.

    Canonical f need no modification, so no weight qualifies.
    """
    p = as_weight(p)
    label = classify(f, assume_nondegenerate).label
    if label is SingularityLabel.CANONICAL:
        return False
    if any(x <= 0 for x in p) or not p.primitive:
        return False
    if label is SingularityLabel.LOG_CANONICAL:
        return absolutely_minimal(essential_cone(f), settings) == p
    return is_f_minimal(p, f, settings)[0]


# =========================================================================
# Discrepancies and numerical invariants
# =========================================================================


def adjunction_coefficient(q: VectorLike, f: PolynomialSupport) -> int:
    """q(1) - 1 - q(f), the coefficient of D_q in the adjunction formula."""
    q = as_weight(q)
    return pairing(q, ones(f.dim)) - 1 - weight_of_poly(q, f)


def toric_discrepancy(q: VectorLike) -> int:
    """q(1) - 1, the discrepancy of D_q over the smooth ambient space."""
    return sum(as_weight(q)) - 1


def discrepancies(
    p: VectorLike, f: PolynomialSupport, candidates: Iterable[VectorLike]
) -> list[DiscrepancyRecord]:
    """Coefficients m_q of the divisors D_q relative to the blow-up with weight p.

    ``m_q = (q_i/p_i)(p(f) - p(1) + 1) - (q(f) - q(1) + 1)`` for the chart i
    containing q. D_q misses the proper transform (``excluded``) when q is
    interior to chart i and q(f) = (q_i/p_i) p(f).

    Raises:
        DomainError: If p is not a valid center or a candidate is outside the orthant.
    """
    sub = star_subdivision(p)
    p = sub.center
    if p.dim != f.dim:
        raise DimensionMismatchError(f.dim, p.dim)
    cp = _relative_order(p, f)
    pf = weight_of_poly(p, f)
    records = []
    for q in candidates:
        q = as_weight(q)
        chart, interior = chart_of(sub, q)
        ratio = Fraction(q[chart], p[chart])
        m_q = ratio * cp - _relative_order(q, f)
        excluded = interior and weight_of_poly(q, f) - ratio * pf == 0
        if not interior:
            logger.warning(f"{q} lies on a wall of the blow-up {p}; using chart {chart}")
        records.append(
            DiscrepancyRecord(
                q, chart, m_q, excluded, not interior, adjunction_coefficient(q, f), toric_discrepancy(q)
            )
        )
    return records


def leading_coefficient(p: VectorLike) -> Fraction:
    """sum(p) / prod(p).

    Raises:
        DomainError: If an entry is not positive.
    """
    p = as_weight(p)
    if any(x <= 0 for x in p):
        raise DomainError(f"Leading coefficient needs positive entries, got {p}.")
    return Fraction(sum(p), math.prod(p))


def is_minus_k_cubed(p: VectorLike, f: PolynomialSupport) -> bool:
    """Whether sum(p)/prod(p) is the anticanonical volume: threefolds with p(f) = p(1)."""
    p = as_weight(p)
    return f.dim == 4 and weight_of_poly(p, f) == pairing(p, ones(f.dim))


def weights_above_threshold(dim: int, threshold: Fraction | int | str, cap: int) -> list[WeightVector]:
    """All vectors with entries in [1, cap] and sum/prod above the threshold, lexicographically."""
    if dim < 2 or cap < 1:
        raise DomainError("weights_above_threshold needs dim >= 2 and cap >= 1.")
    threshold = Fraction(threshold)
    return [
        WeightVector(v)
        for v in itertools.product(range(1, cap + 1), repeat=dim)
        if Fraction(sum(v), math.prod(v)) > threshold
    ]


def three_ones_report(cap: int) -> ThreeOnesReport:
    """Check that 4-dimensional weights with sum/prod > 3/2 have at least three entries 1."""
    found = weights_above_threshold(4, Fraction(3, 2), cap)
    offenders = tuple(w for w in found if sum(1 for x in w if x == 1) < 3)
    return ThreeOnesReport(cap, len(found), not offenders, offenders)


def maximal_ideal_shape(f: PolynomialSupport) -> bool:
    """True iff f = x0*...*xn + h with every other monomial of degree at least n+1."""
    one = ones(f.dim)
    return one in f.support and all(sum(a) >= f.dim for a in f.support if a != one)


def surface_triad_weight(f: PolynomialSupport, settings: Settings | None = None) -> TriadReport:
    """Absolutely minimal weight of a log-canonical surface singularity and triad membership.

    Raises:
        DomainError: If f is not a log-canonical, non-canonical surface equation.
    """
    if f.dim != 3:
        raise DomainError("The surface triad applies to three variables.")
    if classify(f, assume_nondegenerate=True).label is not SingularityLabel.LOG_CANONICAL:
        raise DomainError(f"{f} is not log-canonical non-canonical.")
    weight = absolutely_minimal(essential_cone(f), settings)
    in_triad = weight is not None and tuple(sorted(weight)) in SURFACE_TRIAD
    return TriadReport(weight, in_triad)


# =========================================================================
# The verdict
# =========================================================================


def _sort_key(w: WeightVector) -> tuple[int, tuple[int, ...]]:
    return sum(w), w.coords


def canonical_weight_verdict(
    f: PolynomialSupport,
    assume_nondegenerate: bool = False,
    candidate_sum_bound: int | None = None,
    settings: Settings | None = None,
) -> WeightVerdict:
    """Classify f and find its canonical weight(s).

    Canonical f need no modification. For log-canonical f the canonical
    weight is the absolutely minimal vector of C1(f), if any. Otherwise
    f-minimality is tested on the Hilbert basis, on the primitive points of
    C1(f) with coordinate sum up to the search bound, and on the violators
    reported by those tests; this search is not exhaustive.
    """
    settings = settings or get_settings()
    np = build_newton(f)
    singularity = classify(f, assume_nondegenerate, np)
    c1 = essential_cone(f)
    caveats = list(singularity.caveats)
    screen = essential_cone_rays_screen(c1)
    if screen:
        caveats.append(
            "Essential cone rays with a zero coordinate "
            f"({', '.join(str(r) for r in screen)}): the singularity cannot be isolated."
        )
        logger.warning(f"Isolatedness screen failed for {f}: {screen}")

    common = dict(
        fingerprint=f.fingerprint(),
        polynomial=str(f),
        singularity=singularity,
        essential_forms=c1.facet_forms(),
        essential_rays=tuple(c1.rays),
    )
    if singularity.label is SingularityLabel.CANONICAL:
        if not c1.is_zero:
            raise InvariantViolationError("Canonical f with a nonzero essential cone.")
        return WeightVerdict(
            **common,
            hilbert=(),
            componentwise_min=None,
            abs_min=None,
            candidates=(),
            canonical_weights=(),
            exhaustive=True,
            leading_coeff=None,
            outcome="canonical: no modification needed",
            caveats=tuple(caveats),
        )
    if c1.is_zero:
        raise InvariantViolationError("Non-canonical f with a zero essential cone.")

    hilbert = tuple(c1.hilbert_basis(settings))
    cmin = componentwise_min(hilbert)

    if singularity.label is SingularityLabel.LOG_CANONICAL:
        abs_min = absolutely_minimal(c1, settings)
        if maximal_ideal_shape(f):
            caveats.append("f = x0*...*xn + (degree >= n+1): the blow-up of the maximal ideal.")
            if abs_min != WeightVector((1,) * f.dim):
                # only an isolated singularity forces the weight (1,...,1)
                if not screen:
                    raise InvariantViolationError("Maximal-ideal shape without weight (1,...,1).")
                caveats.append(f"Maximal-ideal shape but the absolutely minimal vector is {abs_min}.")
        if abs_min is not None and all(x > 0 for x in abs_min):
            candidates = (CandidateStatus(abs_min, WeightStatus.CANONICAL_WEIGHT, "absolutely minimal"),)
            weights = (abs_min,)
            outcome = f"canonical weight {abs_min}"
        elif abs_min is not None:
            candidates = (
                CandidateStatus(
                    abs_min,
                    WeightStatus.NOT_CANONICAL_WEIGHT,
                    "absolutely minimal vector has a zero coordinate",
                ),
            )
            weights = ()
            outcome = "no canonical weight in these coordinates"
        else:
            candidates = (
                CandidateStatus(
                    cmin,
                    WeightStatus.NOT_CANONICAL_WEIGHT,
                    "entrywise minimum of the Hilbert basis is not in the essential cone",
                ),
            )
            weights = ()
            outcome = "no canonical weight in these coordinates"
        return WeightVerdict(
            **common,
            hilbert=hilbert,
            componentwise_min=cmin,
            abs_min=abs_min,
            candidates=candidates,
            canonical_weights=weights,
            exhaustive=True,
            leading_coeff=leading_coefficient(weights[0]) if weights else None,
            outcome=outcome,
            caveats=tuple(caveats),
        )

    bound = max(candidate_sum_bound or settings.candidate_sum_bound, max(sum(h) for h in hilbert))
    pool = set(hilbert)
    pool.update(
        q for q in lattice_points_under(c1, (1,) * f.dim, bound, settings) if q.primitive
    )
    statuses: dict[WeightVector, CandidateStatus] = {}

    def test(batch: Iterable[WeightVector]) -> set[WeightVector]:
        found: set[WeightVector] = set()
        for q in sorted(batch, key=_sort_key):
            if q in statuses:
                continue
            if any(x == 0 for x in q):
                statuses[q] = CandidateStatus(q, WeightStatus.NOT_F_MINIMAL, "zero coordinate")
                continue
            decided, cert = is_f_minimal(q, f, settings, essential=c1)
            status = WeightStatus.F_MINIMAL if decided else WeightStatus.NOT_F_MINIMAL
            statuses[q] = CandidateStatus(q, status, cert.reason)
            found.update(cert.violators)
            if cert.counterexample is not None:
                found.add(cert.counterexample)
        return found

    test(test(pool))
    ordered = tuple(statuses[q] for q in sorted(statuses, key=_sort_key))
    weights = tuple(s.weight for s in ordered if s.status is WeightStatus.F_MINIMAL)
    if weights:
        outcome = "f-minimal weights: " + ", ".join(str(w) for w in weights)
    else:
        outcome = f"no f-minimal weight with coordinate sum <= {bound}"
    caveats.append(
        f"Candidate search over the Hilbert basis and primitive points with sum <= {bound} "
        "is not exhaustive."
    )
    return WeightVerdict(
        **common,
        hilbert=hilbert,
        componentwise_min=cmin,
        abs_min=None,
        candidates=ordered,
        canonical_weights=weights,
        exhaustive=False,
        leading_coeff=leading_coefficient(weights[0]) if weights else None,
        outcome=outcome,
        search_bound=bound,
        caveats=tuple(caveats),
    )


def check_certificate_signs(
    p: VectorLike, f: PolynomialSupport, certificate: FMinimalityCertificate, extra: Sequence[VectorLike] = ()
) -> list[DiscrepancyRecord]:
    """Discrepancy records of the certificate violators (plus extra q) that are negative and not excluded."""
    records = discrepancies(p, f, list(certificate.violators) + list(extra))
    return [r for r in records if not r.excluded and r.m_q < 0]
