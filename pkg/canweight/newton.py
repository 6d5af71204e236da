"""Newton polyhedra, the position of the all-ones vector, and classification."""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import sympy

from . import lattice
from .cone import cone_from_inequalities
from .config import Settings, get_settings
from .exceptions import DomainError, EnumerationLimitError, InvariantViolationError
from .support import ExponentVector, PolynomialSupport, WeightVector, ones

logger = logging.getLogger(__name__)


class OnePosition(str, Enum):
    """Where the all-ones vector sits relative to the Newton polyhedron."""

    INTERIOR = "interior"
    ON_COMPACT_FACE = "on-compact-face"
    ON_NONCOMPACT_FACE = "on-noncompact-face"
    OUTSIDE = "outside"


class SingularityLabel(str, Enum):
    CANONICAL = "canonical"
    LOG_CANONICAL = "log-canonical-non-canonical"
    NOT_LOG_CANONICAL = "not-log-canonical"


class NondegeneracyMode(str, Enum):
    """How non-degeneracy of f entered a verdict."""

    ASSUMED = "assumed"
    CHECKED_LIMITED = "checked-limited"
    UNCHECKED = "unchecked"


class NondegeneracyResult(str, Enum):
    NON_DEGENERATE = "non-degenerate"
    DEGENERATE = "degenerate"
    UNDECIDED = "undecided"


@dataclass(frozen=True, order=True)
class Facet:
    """The inequality normal . a >= offset; compact iff every normal entry is positive."""

    normal: WeightVector
    offset: int
    compact: bool

    def slack(self, a: ExponentVector | tuple[int, ...]) -> int:
        return lattice.dot(self.normal.coords, tuple(a)) - self.offset


@dataclass(frozen=True)
class NewtonPolyhedron:
    """Gamma_+(f) = conv(supp f) + R_{>=0}^{n+1} by its minimal generators and facets."""

    dim: int
    generators: tuple[ExponentVector, ...]
    facets: tuple[Facet, ...]

    def contains(self, a: ExponentVector | tuple[int, ...]) -> bool:
        return all(facet.slack(a) >= 0 for facet in self.facets)

    def tight_facets(self, a: ExponentVector | tuple[int, ...]) -> list[Facet]:
        return [facet for facet in self.facets if facet.slack(a) == 0]

    @property
    def compact_facets(self) -> list[Facet]:
        return [facet for facet in self.facets if facet.compact]


@dataclass(frozen=True)
class SingularityClass:
    """Classification of f with its kappa label (None stands for minus infinity)."""

    label: SingularityLabel
    kappa: int | None
    nondegeneracy: NondegeneracyMode
    position: OnePosition
    caveats: tuple[str, ...] = field(default=())

    @property
    def kappa_label(self) -> str:
        return "-inf" if self.kappa is None else str(self.kappa)


@dataclass(frozen=True)
class FaceInfo:
    """The minimal face of Gamma_+(f) containing the all-ones vector."""

    generators: tuple[ExponentVector, ...]
    dim: int
    normal: WeightVector | None


@dataclass(frozen=True)
class CompactFace:
    generators: tuple[ExponentVector, ...]
    normals: tuple[WeightVector, ...]
    dim: int


def minimal_generators(f: PolynomialSupport) -> tuple[ExponentVector, ...]:
    """Support vectors not dominating another support vector componentwise."""

    def dominates(a: ExponentVector, b: ExponentVector) -> bool:
        return a != b and all(x >= y for x, y in zip(a, b))

    return tuple(a for a in f.support if not any(dominates(a, b) for b in f.support))


def _affine_rank(points: list[tuple[int, ...]], directions: list[tuple[int, ...]]) -> int:
    if not points:
        return -1
    base = points[0]
    rows = [tuple(x - y for x, y in zip(p, base)) for p in points[1:]] + directions
    return lattice.rank(rows)


def build_newton(f: PolynomialSupport) -> NewtonPolyhedron:
    """Facet description of conv(supp f) + the positive orthant.

    The facets are read off the dual of the homogenized cone generated by
    (g, 1) for the generators g and (e_i, 0) for the unit vectors: each dual
    ray (u, w) with u != 0 gives the facet u . a >= -w.
    """
    d = f.dim
    gens = minimal_generators(f)
    units = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    forms = [g.coords + (1,) for g in gens] + [e + (0,) for e in units]
    dual = cone_from_inequalities(forms, d + 1)
    facets: list[Facet] = []
    for ray in dual.ray_tuples():
        u, w = ray[:-1], ray[-1]
        if not any(u):
            continue
        facet = Facet(WeightVector(u), -w, all(x > 0 for x in u))
        tight = [g.coords for g in gens if facet.slack(g) == 0]
        recession = [e for e, x in zip(units, u) if x == 0]
        if not tight or _affine_rank(tight, recession) != d - 1:
            raise InvariantViolationError(f"Inequality {facet} does not define a facet.")
        facets.append(facet)
    np = NewtonPolyhedron(d, gens, tuple(sorted(facets)))
    logger.debug(f"Newton polyhedron: {len(gens)} generators, {len(facets)} facets")
    return np


def position_of_one(np: NewtonPolyhedron) -> OnePosition:
    """Locate the all-ones vector: interior, on a compact face, on a non-compact face, or outside."""
    one = ones(np.dim)
    slacks = [facet.slack(one) for facet in np.facets]
    if any(s < 0 for s in slacks):
        return OnePosition.OUTSIDE
    tight = [facet for facet, s in zip(np.facets, slacks) if s == 0]
    if not tight:
        return OnePosition.INTERIOR
    # the minimal face is bounded iff no coordinate direction is orthogonal to every tight normal
    normal_sum = [sum(col) for col in zip(*(facet.normal.coords for facet in tight))]
    if all(x > 0 for x in normal_sum):
        return OnePosition.ON_COMPACT_FACE
    return OnePosition.ON_NONCOMPACT_FACE


def face_containing_one(np: NewtonPolyhedron) -> FaceInfo:
    """The minimal face containing the all-ones vector, with its normal when it is a facet.

    Raises:
        DomainError: If the all-ones vector is not on a compact face.
    """
    if position_of_one(np) is not OnePosition.ON_COMPACT_FACE:
        raise DomainError("The all-ones vector is not on a compact face of the Newton polyhedron.")
    one = ones(np.dim)
    tight = np.tight_facets(one)
    points = tuple(g for g in np.generators if all(facet.slack(g) == 0 for facet in tight))
    dim = _affine_rank([p.coords for p in points], [])
    normal = tight[0].normal if len(tight) == 1 else None
    return FaceInfo(points, dim, normal)


def compact_faces(np: NewtonPolyhedron) -> list[CompactFace]:
    """All compact faces, as intersections of facet generator sets.

    A bounded face is the hull of its generators, so it is determined by the
    set of generators tight on it; these sets are closed under intersection.
    """
    facet_sets = [
        frozenset(i for i, g in enumerate(np.generators) if facet.slack(g) == 0)
        for facet in np.facets
    ]
    family: set[frozenset[int]] = {s for s in facet_sets if s}
    frontier = list(family)
    while frontier:
        fresh = []
        for s in frontier:
            for t in facet_sets:
                meet = s & t
                if meet and meet not in family:
                    family.add(meet)
                    fresh.append(meet)
        frontier = fresh
    faces = []
    for points in sorted(family, key=lambda s: (len(s), sorted(s))):
        normals = [facet.normal for facet, s in zip(np.facets, facet_sets) if points <= s]
        normal_sum = [sum(col) for col in zip(*(n.coords for n in normals))]
        if not all(x > 0 for x in normal_sum):
            continue
        gens = tuple(np.generators[i] for i in sorted(points))
        faces.append(CompactFace(gens, tuple(normals), _affine_rank([g.coords for g in gens], [])))
    return faces


def classify(
    f: PolynomialSupport,
    assume_nondegenerate: bool = False,
    np: NewtonPolyhedron | None = None,
) -> SingularityClass:
    """Classify f as canonical, log-canonical non-canonical, or not log-canonical.

    Args:
        f: The polynomial support (isolatedness of the singularity is assumed).
        assume_nondegenerate: Treat f as Newton non-degenerate without checking.
        np: A precomputed Newton polyhedron of f.

    Returns:
        The SingularityClass, with caveats for anything conditional.
    """
    np = np or build_newton(f)
    position = position_of_one(np)
    n = f.dim - 1
    if position is OnePosition.INTERIOR:
        label, kappa = SingularityLabel.CANONICAL, None
    elif position is OnePosition.OUTSIDE:
        label, kappa = SingularityLabel.NOT_LOG_CANONICAL, n
    else:
        label, kappa = SingularityLabel.LOG_CANONICAL, 0

    caveats: list[str] = []
    if assume_nondegenerate:
        mode = NondegeneracyMode.ASSUMED
    else:
        mode = NondegeneracyMode.UNCHECKED
        if f.has_coefficients:
            result = check_nondegeneracy_limited(f, np)
            if result is NondegeneracyResult.NON_DEGENERATE:
                mode = NondegeneracyMode.CHECKED_LIMITED
            else:
                caveats.append(f"Limited non-degeneracy check: {result.value}.")
                logger.warning(f"Non-degeneracy of {f} is {result.value}")
        if mode is NondegeneracyMode.UNCHECKED:
            caveats.append(
                "Non-degeneracy not established: only the implications from the "
                "position of (1,...,1) towards canonical/log-canonical are unconditional."
            )
    if position is OnePosition.ON_NONCOMPACT_FACE:
        caveats.append(
            "(1,...,1) lies only on non-compact faces; the singularity cannot be isolated."
        )
        logger.warning(f"{f}: all-ones vector on a non-compact face")
    logger.info(f"Classified {f}: {label.value}")
    return SingularityClass(label, kappa, mode, position, tuple(caveats))


def quasi_reduced(f: PolynomialSupport, settings: Settings | None = None) -> bool:
    """True iff every lattice point on a compact face has at most one coordinate above 1.

    Raises:
        EnumerationLimitError: If the scanned box exceeds ``max_cells``.
    """
    settings = settings or get_settings()
    np = build_newton(f)
    highs = [max(g[j] for g in np.generators) for j in range(f.dim)]
    cells = math.prod(h + 1 for h in highs)
    if cells > settings.max_cells:
        raise EnumerationLimitError(cells, settings.max_cells)
    for a in itertools.product(*(range(h + 1) for h in highs)):
        slacks = [facet.slack(a) for facet in np.facets]
        if any(s < 0 for s in slacks):
            continue
        tight = [facet.normal.coords for facet, s in zip(np.facets, slacks) if s == 0]
        if not tight or not all(sum(col) > 0 for col in zip(*tight)):
            continue
        if sum(1 for x in a if x > 1) > 1:
            logger.debug(f"{a} on a compact face has two coordinates above 1")
            return False
    return True


def is_type_T(f: PolynomialSupport) -> ExponentVector | None:
    """Return a when f is x0*...*xn + sum x_i^a_i with sum 1/a_i < 1, else None."""
    d = f.dim
    one = ones(d)
    if len(f.support) != d + 1 or one not in f.support:
        return None
    powers: dict[int, int] = {}
    for a in f.support:
        if a == one:
            continue
        nonzero = [i for i, x in enumerate(a) if x]
        if len(nonzero) != 1 or nonzero[0] in powers:
            return None
        powers[nonzero[0]] = a[nonzero[0]]
    exps = tuple(powers[i] for i in range(d))
    if sum(Fraction(1, x) for x in exps) < 1:
        return ExponentVector(exps)
    return None


def _edge_is_degenerate(points: tuple[ExponentVector, ...], coeffs) -> bool:
    """Repeated nonzero root test for the polynomial of a lattice segment.

    With points p0 + t*v (v primitive) the face polynomial is x^p0 * h(x^v)
    and a torus critical point is a common root of h and h'.
    """
    base = points[0].coords
    v = lattice.primitive(tuple(x - y for x, y in zip(points[-1].coords, base)))
    pivot = next(j for j, x in enumerate(v) if x)
    steps = {a: (a[pivot] - base[pivot]) // v[pivot] for a in points}
    low = min(steps.values())
    y = sympy.Symbol("y")
    h = sympy.Poly(
        sum(sympy.Rational(c.numerator, c.denominator) * y ** (steps[a] - low) for a, c in coeffs.items()),
        y,
        domain=sympy.QQ,
    )
    return sympy.gcd(h, h.diff(y)).degree() > 0


def check_nondegeneracy_limited(
    f: PolynomialSupport, np: NewtonPolyhedron | None = None
) -> NondegeneracyResult:
    """Decide non-degeneracy on the compact faces the limited checker covers.

    Vertices and faces with linearly independent generators always pass;
    edges are decided exactly; any other face leaves the answer undecided.

    Raises:
        DomainError: If f carries no coefficients.
    """
    if f.coeffs is None:
        raise DomainError("The non-degeneracy check needs coefficients.")
    np = np or build_newton(f)
    undecided = False
    for face in compact_faces(np):
        points = face.generators
        if len(points) == 1 or lattice.rank([p.coords for p in points]) == len(points):
            continue
        if face.dim == 1:
            if _edge_is_degenerate(points, {a: f.coeffs[a] for a in points}):
                logger.info(f"Degenerate edge {[str(p) for p in points]}")
                return NondegeneracyResult.DEGENERATE
            continue
        undecided = True
    return NondegeneracyResult.UNDECIDED if undecided else NondegeneracyResult.NON_DEGENERATE


def hodge_type_0_n_minus_1(f: PolynomialSupport) -> bool:
    """True iff (1,...,1) lies in the relative interior of a compact facet."""
    np = build_newton(f)
    if position_of_one(np) is not OnePosition.ON_COMPACT_FACE:
        return False
    return face_containing_one(np).dim == f.dim - 1
