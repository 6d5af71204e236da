"""Exact rational polyhedral cones.

A :class:`RationalCone` is stored by its H-representation
``{q : L(q) >= 0 for every form L}``. Extreme rays come from the double
description method, Hilbert bases from a pulling triangulation on the
extreme rays plus the lattice points of each half-open fundamental
parallelepiped. All arithmetic is exact.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from . import lattice
from .config import Settings, get_settings
from .exceptions import (
    DimensionMismatchError,
    DomainError,
    EnumerationLimitError,
    InvariantViolationError,
    NonPointedConeError,
)
from .lattice import IntVector
from .support import VectorLike, WeightVector, as_weight

logger = logging.getLogger(__name__)


def _double_description(forms: Sequence[IntVector], dim: int) -> list[IntVector]:
    """Extreme rays of the pointed cone {x : a.x >= 0 for a in forms}.

    Starts from a simplicial cone on ``dim`` independent forms and adds the
    remaining forms one at a time. Two rays are combined only when they are
    adjacent, i.e. the processed forms tight on both have rank dim - 2.
    """
    basis: list[int] = []
    for i, row in enumerate(forms):
        if lattice.rank([forms[j] for j in basis] + [row]) > len(basis):
            basis.append(i)
            if len(basis) == dim:
                break
    if len(basis) < dim:
        raise NonPointedConeError()

    inv = lattice.inverse([forms[i] for i in basis])
    rays: dict[IntVector, frozenset[int]] = {}
    for k in range(dim):
        ray = lattice.clear_denominators([inv[r][k] for r in range(dim)])
        rays[ray] = frozenset(basis[j] for j in range(dim) if j != k)

    for i, a in enumerate(forms):
        if i in basis:
            continue
        values = {ray: lattice.dot(a, ray) for ray in rays}
        negative = [r for r, v in values.items() if v < 0]
        if not negative:
            rays = {r: (t | {i}) if values[r] == 0 else t for r, t in rays.items()}
            continue
        positive = [r for r, v in values.items() if v > 0]
        updated: dict[IntVector, frozenset[int]] = {}
        for r, t in rays.items():
            if values[r] > 0:
                updated[r] = t
            elif values[r] == 0:
                updated[r] = t | {i}
        for p in positive:
            for n in negative:
                common = rays[p] & rays[n]
                if len(common) < dim - 2:
                    continue
                if lattice.rank([forms[j] for j in common]) != dim - 2:
                    continue
                ap, an = values[p], values[n]
                new = lattice.primitive(tuple(ap * y - an * x for x, y in zip(p, n)))
                updated[new] = common | {i}
        rays = updated
        if not rays:
            logger.debug(f"Cone collapsed to the apex after {i + 1} forms")
    return sorted(rays)


def _pulling_triangulation(
    rays: Sequence[IntVector], forms: Sequence[IntVector]
) -> list[tuple[int, ...]]:
    """Triangulate a pointed cone on its extreme rays.

    The facets of a face S are S cut by the forms that are tight on a
    codimension-one subset of S. The cone over the lowest-index ray of S is
    taken across the facets not containing it.
    """
    incidence = [
        frozenset(j for j, r in enumerate(rays) if lattice.dot(form, r) == 0) for form in forms
    ]
    memo: dict[frozenset[int], list[frozenset[int]]] = {}

    def face_rank(face: frozenset[int]) -> int:
        return lattice.rank([rays[j] for j in face])

    def triangulate(face: frozenset[int], r: int) -> list[frozenset[int]]:
        if face in memo:
            return memo[face]
        if len(face) == r:
            memo[face] = [face]
            return memo[face]
        apex = min(face)
        pieces: list[frozenset[int]] = []
        seen: set[frozenset[int]] = set()
        for inc in incidence:
            sub = face & inc
            if apex in sub or sub in seen or len(sub) < r - 1:
                continue
            seen.add(sub)
            if face_rank(sub) != r - 1:
                continue
            pieces.extend(piece | {apex} for piece in triangulate(sub, r - 1))
        memo[face] = pieces
        return pieces

    everything = frozenset(range(len(rays)))
    return [tuple(sorted(p)) for p in triangulate(everything, face_rank(everything))]


def _parallelepiped_points(
    gens: Sequence[IntVector], dim: int, limit: int
) -> list[IntVector]:
    """Nonzero lattice points of {sum l_i g_i : 0 <= l_i < 1}.

    The coefficients of such points form the group generated by the columns
    of the inverse of a nonsingular k x k minor, modulo Z^k.
    """
    k = len(gens)
    best: tuple[int, list[list[int]]] | None = None
    for rows in itertools.combinations(range(dim), k):
        minor = [[g[i] for g in gens] for i in rows]
        det = lattice.determinant(minor)
        if det != 0 and (best is None or abs(det) < abs(best[0])):
            best = (det, minor)
    if best is None:
        raise InvariantViolationError("Simplicial piece with dependent generators.")
    det, minor = best
    if abs(det) == 1:
        return []
    if abs(det) > limit:
        raise EnumerationLimitError(abs(det), limit)

    inv = lattice.inverse(minor)
    steps = [tuple(inv[r][c] for r in range(k)) for c in range(k)]
    origin = (Fraction(0),) * k
    seen = {origin}
    queue = deque([origin])
    while queue:
        lam = queue.popleft()
        for step in steps:
            nxt = tuple((x + s) - math.floor(x + s) for x, s in zip(lam, step))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)

    points: list[IntVector] = []
    for lam in seen:
        if not any(lam):
            continue
        x = [sum(lam[j] * gens[j][i] for j in range(k)) for i in range(dim)]
        if all(v.denominator == 1 for v in x):
            points.append(tuple(int(v) for v in x))
    return points


class RationalCone:
    """A rational polyhedral cone ``{q : L(q) >= 0 for all L in hrep}``.

    Extreme rays and the Hilbert basis are computed on first use and cached;
    :meth:`clear_cache` drops them. Instances are otherwise immutable.
    """

    def __init__(self, forms: Iterable[VectorLike], dim: int | None = None):
        rows = tuple(tuple(int(x) for x in form) for form in forms)
        if dim is None:
            if not rows:
                raise DomainError("An empty form list needs an explicit dimension.")
            dim = len(rows[0])
        for row in rows:
            if len(row) != dim:
                raise DimensionMismatchError(dim, len(row))
        self._dim = dim
        self._hrep = rows
        if not rows:
            logger.warning(f"Cone with no forms is the whole space of dimension {dim}")
        self.clear_cache()

    def clear_cache(self) -> None:
        """Drop the cached rays, facets and Hilbert basis."""
        self._rays: tuple[IntVector, ...] | None = None
        self._facets: tuple[IntVector, ...] | None = None
        self._hilbert: tuple[IntVector, ...] | None = None
        self._pointed: bool | None = None

    def __repr__(self) -> str:
        return f"RationalCone(dim={self._dim}, forms={len(self._hrep)})"

    @property
    def dim(self) -> int:
        """Ambient dimension."""
        return self._dim

    @property
    def hrep(self) -> tuple[IntVector, ...]:
        return self._hrep

    @property
    def is_full_space(self) -> bool:
        return not any(any(row) for row in self._hrep)

    @property
    def is_pointed(self) -> bool:
        """True iff the cone contains no line (the forms have full rank)."""
        if self._pointed is None:
            self._pointed = lattice.rank(self._hrep) == self._dim
        return self._pointed

    def lineality_basis(self) -> list[IntVector]:
        """Integer basis of the largest linear subspace in the cone."""
        return lattice.nullspace(self._hrep, self._dim)

    def ray_tuples(self) -> tuple[IntVector, ...]:
        """Extreme rays as primitive integer tuples, lexicographically sorted.

        Raises:
            NonPointedConeError: If the cone contains a line.
        """
        if self._rays is None:
            if not self.is_pointed:
                raise NonPointedConeError()
            rays = _double_description(self._hrep, self._dim)
            for ray in rays:
                if any(lattice.dot(form, ray) < 0 for form in self._hrep):
                    raise InvariantViolationError(f"Ray {ray} violates a defining form.")
            self._rays = tuple(rays)
            logger.debug(f"{self!r}: {len(rays)} extreme rays")
        return self._rays

    @property
    def rays(self) -> list[WeightVector]:
        return [WeightVector(r) for r in self.ray_tuples()]

    @property
    def is_zero(self) -> bool:
        """True iff the cone is the apex {0}."""
        return self.is_pointed and not self.ray_tuples()

    @property
    def dimension(self) -> int:
        """Dimension of the linear span of a pointed cone."""
        return lattice.rank(self.ray_tuples())

    def contains(self, q: VectorLike) -> bool:
        qc = tuple(q)
        if len(qc) != self._dim:
            raise DimensionMismatchError(self._dim, len(qc))
        return all(lattice.dot(form, qc) >= 0 for form in self._hrep)

    def facet_forms(self) -> tuple[IntVector, ...]:
        """An irredundant subset of the defining forms (made primitive).

        Forms vanishing on every ray are kept since together they cut out the
        linear span; of the remaining forms one per facet is kept.
        """
        if self._facets is None:
            rays = self.ray_tuples()
            top = lattice.rank(rays)
            equalities: dict[IntVector, None] = {}
            facets: dict[frozenset[int], IntVector] = {}
            for form in self._hrep:
                if not any(form):
                    continue
                form = lattice.primitive(form)
                tight = frozenset(j for j, r in enumerate(rays) if lattice.dot(form, r) == 0)
                if len(tight) == len(rays):
                    equalities.setdefault(form, None)
                elif tight not in facets and lattice.rank([rays[j] for j in tight]) == top - 1:
                    facets[tight] = form
            self._facets = tuple(equalities) + tuple(facets[t] for t in sorted(facets, key=sorted))
        return self._facets

    def pruned(self) -> "RationalCone":
        """The same cone defined by :meth:`facet_forms` only."""
        cone = RationalCone(self.facet_forms(), self._dim)
        cone._rays = self.ray_tuples()
        cone._pointed = True
        return cone

    def triangulation(self) -> list[tuple[IntVector, ...]]:
        """Simplicial pieces of a pulling triangulation, as tuples of extreme rays."""
        rays = self.ray_tuples()
        if not rays:
            return []
        return [tuple(rays[j] for j in piece) for piece in _pulling_triangulation(rays, self.facet_forms())]

    def hilbert_basis(self, settings: Settings | None = None) -> list[WeightVector]:
        """Return the Hilbert basis, lexicographically sorted.

        Raises:
            NonPointedConeError: If the cone contains a line.
            EnumerationLimitError: If a parallelepiped exceeds ``max_cells``.
        """
        if self._hilbert is None:
            settings = settings or get_settings()
            rays = self.ray_tuples()
            candidates: set[IntVector] = set(rays)
            for piece in self.triangulation():
                candidates.update(_parallelepiped_points(piece, self._dim, settings.max_cells))
            forms = self.facet_forms()

            def inside(v: IntVector) -> bool:
                return all(lattice.dot(form, v) >= 0 for form in forms)

            basis = []
            for x in candidates:
                reducible = any(
                    h != x and inside(tuple(a - b for a, b in zip(x, h))) for h in candidates
                )
                if not reducible:
                    basis.append(x)
            self._hilbert = tuple(sorted(basis))
            logger.debug(f"{self!r}: Hilbert basis of {len(basis)} from {len(candidates)} candidates")
        return [WeightVector(h) for h in self._hilbert]


# =========================================================================
# Module-level operations
# =========================================================================


def cone_from_inequalities(forms: Iterable[VectorLike], dim: int | None = None) -> RationalCone:
    """Cone {q : L(q) >= 0 for every form}."""
    return RationalCone(forms, dim)


def cone_from_rays(rays: Iterable[VectorLike], dim: int | None = None) -> RationalCone:
    """Cone generated by the given vectors, converted to inequalities.

    The facet normals are the extreme rays of the dual cone restricted to
    the span of the generators; the orthogonal complement of the span
    contributes a pair of opposite forms per basis vector.
    """
    gens = [tuple(int(x) for x in r) for r in rays]
    gens = [g for g in gens if any(g)]
    if dim is None:
        if not gens:
            raise DomainError("An empty ray list needs an explicit dimension.")
        dim = len(gens[0])
    for g in gens:
        if len(g) != dim:
            raise DimensionMismatchError(dim, len(g))
    complement = lattice.nullspace(gens, dim)
    equalities = [c for v in complement for c in (v, tuple(-x for x in v))]
    if len(complement) == dim:
        return RationalCone(equalities, dim)
    dual = RationalCone(gens + equalities, dim)
    normals = list(dual.ray_tuples())
    cone = RationalCone(normals + equalities, dim)
    logger.debug(f"cone_from_rays: {len(normals)} facet normals, {len(complement)} equalities")
    return cone


def contains(c: RationalCone, q: VectorLike) -> bool:
    """True iff every defining form is nonnegative at q."""
    return c.contains(q)


def hilbert_basis(c: RationalCone, settings: Settings | None = None) -> list[WeightVector]:
    """Hilbert basis of a pointed cone (see :meth:`RationalCone.hilbert_basis`)."""
    return c.hilbert_basis(settings)


def componentwise_min(vs: Sequence[VectorLike]) -> WeightVector:
    """Entrywise minimum of a nonempty list of vectors."""
    if not vs:
        raise DomainError("componentwise_min needs a nonempty list.")
    dims = {len(tuple(v)) for v in vs}
    if len(dims) != 1:
        first, *rest = sorted(dims)
        raise DimensionMismatchError(first, rest[0])
    return WeightVector(tuple(min(col) for col in zip(*(tuple(v) for v in vs))))


def meet_closed_under(c: RationalCone, p: VectorLike, q: VectorLike) -> bool:
    """True iff the entrywise minimum of two cone members is in the cone.

    Raises:
        DomainError: If p or q is not in the cone.
    """
    for v in (p, q):
        if not c.contains(v):
            raise DomainError(f"{tuple(v)} is not in the cone.")
    return c.contains(componentwise_min([p, q]))


def lattice_points_under(
    c: RationalCone,
    form: VectorLike,
    bound: int,
    settings: Settings | None = None,
) -> list[WeightVector]:
    """All nonzero lattice points q of c with form(q) <= bound.

    Args:
        c: A pointed cone.
        form: Integer linear form, strictly positive on every extreme ray.
        bound: Upper bound on form(q).
        settings: Optional settings override (``max_cells``).

    Returns:
        The points in lexicographic order.

    Raises:
        DomainError: If the form is not strictly positive on some extreme ray.
        EnumerationLimitError: If the bounding box exceeds ``max_cells``.
    """
    settings = settings or get_settings()
    L = tuple(int(x) for x in form)
    if len(L) != c.dim:
        raise DimensionMismatchError(c.dim, len(L))
    rays = c.ray_tuples()
    for ray in rays:
        if lattice.dot(L, ray) <= 0:
            raise DomainError(f"Form {L} is not positive on the ray {ray}; enumeration is infinite.")
    if not rays or bound <= 0:
        return []

    # every point is a nonnegative combination of at most dim rays with sum mu_r L(r) <= bound
    lows, highs = [], []
    for j in range(c.dim):
        lo = sum(Fraction(min(0, r[j]) * bound, lattice.dot(L, r)) for r in rays)
        hi = sum(Fraction(max(0, r[j]) * bound, lattice.dot(L, r)) for r in rays)
        lows.append(math.ceil(lo))
        highs.append(math.floor(hi))
    cells = math.prod(h - lo + 1 for lo, h in zip(lows, highs))
    if cells > settings.max_cells:
        raise EnumerationLimitError(cells, settings.max_cells)

    forms = c.facet_forms()
    found: list[WeightVector] = []
    for q in itertools.product(*(range(lo, h + 1) for lo, h in zip(lows, highs))):
        if not any(q) or lattice.dot(L, q) > bound:
            continue
        if all(lattice.dot(form, q) >= 0 for form in forms):
            found.append(WeightVector(q))
    logger.debug(f"lattice_points_under: {len(found)} points in {cells} cells")
    return found


@dataclass(frozen=True)
class SimplicialFrame:
    """A lattice basis a_0..a_n of a simplicial cone with its dual basis.

    Attributes:
        generators: The primitive generators a_i.
        dual_basis: Rational vectors a_i* with a_i(a_j*) = delta_ij.
        multipliers: r_i, the least positive k with k * a_i* integral.
    """

    generators: tuple[WeightVector, ...]
    dual_basis: tuple[tuple[Fraction, ...], ...]
    multipliers: tuple[int, ...]

    @property
    def determinant(self) -> int:
        return lattice.determinant([g.coords for g in self.generators])


def simplicial_frame(generators: Sequence[VectorLike]) -> SimplicialFrame:
    """Solve for the dual basis and multipliers of n+1 independent primitive vectors.

    Raises:
        DomainError: If the generators are dependent, not primitive or not square.
    """
    gens = [as_weight(g) for g in generators]
    if not gens:
        raise DomainError("A simplicial frame needs generators.")
    dim = gens[0].dim
    if len(gens) != dim:
        raise DomainError(f"A simplicial frame needs {dim} generators, got {len(gens)}.")
    for g in gens:
        if g.dim != dim:
            raise DimensionMismatchError(dim, g.dim)
        if not g.primitive:
            raise DomainError(f"Generator {g} is not primitive.")
    try:
        inv = lattice.inverse([g.coords for g in gens])
    except DomainError as e:
        raise DomainError("Simplicial frame generators are linearly dependent.", e) from e
    duals = tuple(tuple(inv[r][j] for r in range(dim)) for j in range(dim))
    for i, g in enumerate(gens):
        for j, d in enumerate(duals):
            if lattice.dot(g.coords, d) != (1 if i == j else 0):
                raise InvariantViolationError("Dual basis identity failed.")
    multipliers = tuple(math.lcm(*(x.denominator for x in d)) for d in duals)
    return SimplicialFrame(tuple(gens), duals, multipliers)
