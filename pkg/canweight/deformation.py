"""Support-level conditions for simultaneous canonical modifications of families."""

from __future__ import annotations

import json
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .config import Settings, get_settings
from .exceptions import DimensionMismatchError, DomainError, InputError
from .newton import classify
from .support import (
    PolynomialSupport,
    VectorLike,
    WeightVector,
    as_weight,
    ones,
    pairing,
    parse_polynomial,
    parse_weight,
    support_from_json,
    weight_of_poly,
)
from .weights import is_canonical_weight

logger = logging.getLogger(__name__)

POSITIVE_VERDICT = "simultaneous canonical modification conditions satisfied"
CITED_CONCLUSIONS = (
    "The family admits a simultaneous canonical modification; plurigenera of the fibers "
    "are then constant (cited conclusion, not computed)."
)


@dataclass(frozen=True)
class SupportFamily:
    """Support snapshots F_t of a one-parameter family, one label per member."""

    members: tuple[PolynomialSupport, ...]
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise DomainError("A family needs at least one member.")
        if len(self.labels) != len(self.members):
            raise InputError("Every family member needs exactly one label.")
        dim = self.members[0].dim
        for member in self.members[1:]:
            if member.dim != dim:
                raise DimensionMismatchError(dim, member.dim)

    @property
    def dim(self) -> int:
        return self.members[0].dim


@dataclass(frozen=True)
class SimultaneousReport:
    f: PolynomialSupport
    g: PolynomialSupport
    weight: WeightVector
    canonical_weight: bool
    g_weighted_homogeneous: bool
    halfspace: bool
    constancy: bool
    verdict: str
    caveats: tuple[str, ...]
    citations: tuple[str, ...]

    @property
    def positive(self) -> bool:
        return self.verdict == POSITIVE_VERDICT


def segment_family(f: PolynomialSupport, g: PolynomialSupport) -> SupportFamily:
    """The family (1-t)f + tg: endpoints plus the generic support supp(f) | supp(g)."""
    if f.dim != g.dim:
        raise DimensionMismatchError(f.dim, g.dim)
    return SupportFamily((f, f.union(g), g), ("t=0", "generic t", "t=1"))


def _check_weight(fam: SupportFamily, p: VectorLike) -> WeightVector:
    p = as_weight(p)
    if p.dim != fam.dim:
        raise DimensionMismatchError(fam.dim, p.dim)
    if any(x <= 0 for x in p):
        raise DomainError(f"Family weight {p} must have positive entries.")
    return p


def halfspace_condition(fam: SupportFamily, p: VectorLike) -> bool:
    """True iff every support vector of every member satisfies p(a - 1) >= 0."""
    p = _check_weight(fam, p)
    level = pairing(p, ones(fam.dim))
    for member, label in zip(fam.members, fam.labels):
        low = [a for a in member.support if pairing(p, a) < level]
        if low:
            logger.info(f"Member {label} has monomials below p(1)={level}: {low[0]}")
            return False
    return True


def weight_constancy(fam: SupportFamily, p: VectorLike) -> bool:
    """True iff p(F) = p(1) for every member F."""
    p = _check_weight(fam, p)
    level = pairing(p, ones(fam.dim))
    return all(weight_of_poly(p, member) == level for member in fam.members)


def is_weighted_homogeneous(g: PolynomialSupport, p: VectorLike) -> bool:
    """True iff every support vector of g has p-value p(1)."""
    p = as_weight(p)
    level = pairing(p, ones(g.dim))
    return all(pairing(p, a) == level for a in g.support)


def simultaneous_report(
    f: PolynomialSupport,
    g: PolynomialSupport,
    p: VectorLike,
    assume_nondegenerate: bool = True,
    settings: Settings | None = None,
) -> SimultaneousReport:
    """Check the conditions for the segment family from f to a weighted-homogeneous g.

    The conditions are: p is a canonical weight of f, g is weighted-homogeneous
    for p, and the segment family satisfies the halfspace and weight-constancy
    conditions for p.
    """
    settings = settings or get_settings()
    family = segment_family(f, g)
    p = _check_weight(family, p)
    canonical = is_canonical_weight(p, f, assume_nondegenerate, settings)
    homogeneous = is_weighted_homogeneous(g, p)
    halfspace = halfspace_condition(family, p)
    constancy = weight_constancy(family, p)

    caveats = [
        "Members F_t with t != 0 are assumed non-degenerate.",
        "Special values of t where coefficients cancel are not enumerated; the generic support is used.",
    ]
    for label, member in (("f", f), ("g", g)):
        caveats.extend(f"{label}: {c}" for c in classify(member, assume_nondegenerate).caveats)

    checks = {
        "canonical weight for f": canonical,
        "g weighted-homogeneous": homogeneous,
        "halfspace condition": halfspace,
        "weight constancy": constancy,
    }
    failed = [name for name, ok in checks.items() if not ok]
    if not failed:
        verdict = POSITIVE_VERDICT
    elif len(failed) == len(checks):
        verdict = "no condition holds"
    else:
        verdict = "mixed: fails " + ", ".join(failed)
    logger.info(f"Simultaneous report for {f} -> {g} with {p}: {verdict}")
    return SimultaneousReport(
        f=f,
        g=g,
        weight=p,
        canonical_weight=canonical,
        g_weighted_homogeneous=homogeneous,
        halfspace=halfspace,
        constancy=constancy,
        verdict=verdict,
        caveats=tuple(caveats),
        citations=(CITED_CONCLUSIONS,) if not failed else (),
    )


def _member_from_json(raw: Any, dim: int | None, settings: Settings) -> PolynomialSupport:
    if isinstance(raw, str):
        if dim is None:
            raise InputError("String members need a top-level 'dim'.")
        return parse_polynomial(raw, dim, settings)
    if isinstance(raw, dict):
        return support_from_json(raw, settings)
    raise InputError(f"Unsupported member polynomial {raw!r}.")


def family_from_json(
    data: dict[str, Any], settings: Settings | None = None
) -> tuple[SupportFamily, WeightVector | None]:
    """Read ``{"dim": n, "members": [{"label": ..., "poly": ...}], "weight": [...]}``.

    ``poly`` is either polynomial text or the polynomial JSON object.
    """
    settings = settings or get_settings()
    try:
        raw_members: Sequence[dict[str, Any]] = data["members"]
        dim = int(data["dim"]) if "dim" in data else None
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("Family JSON needs a 'members' list.", e) from e
    members, labels = [], []
    for i, entry in enumerate(raw_members):
        if not isinstance(entry, dict) or "poly" not in entry:
            raise InputError(f"Family member {i} needs a 'poly' field.")
        members.append(_member_from_json(entry["poly"], dim, settings))
        labels.append(str(entry.get("label", f"F{i}")))
    weight = None
    if data.get("weight") is not None:
        raw = data["weight"]
        text = raw if isinstance(raw, str) else ",".join(str(x) for x in raw)
        weight = parse_weight(text, members[0].dim if members else None)
    return SupportFamily(tuple(members), tuple(labels)), weight


def load_family(
    source: str | Path, settings: Settings | None = None
) -> tuple[SupportFamily, WeightVector | None]:
    """Load a family file.

    Raises:
        InputError: If the file is missing or malformed.
    """
    path = Path(source)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}", e) from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}", e) from e
    if not isinstance(data, dict):
        raise InputError(f"{path} must hold a JSON object.")
    return family_from_json(data, settings)
