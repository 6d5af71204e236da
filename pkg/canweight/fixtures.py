"""Named worked examples with their known answers.

Used by the golden tests and by ``scripts/reproduce_examples.py``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .support import PolynomialSupport, parse_polynomial


@dataclass(frozen=True)
class Fixture:
    name: str
    text: str
    dim: int
    expected: dict[str, Any] = field(default_factory=dict)

    def support(self) -> PolynomialSupport:
        return parse_polynomial(self.text, self.dim)


def watanabe_text(s: int = 0) -> str:
    return f"x0^2 + x1^3 + x2^7 + x3^{43 + s} + x0*x1*x2*x3"


def tomari_text(k: int) -> str:
    return f"x0^{k} + x1^{k + 1} + x2^{k + 1}"


def type_t_text(exponents: tuple[int, ...]) -> str:
    powers = " + ".join(f"x{i}^{a}" for i, a in enumerate(exponents))
    product = "*".join(f"x{i}" for i in range(len(exponents)))
    return f"{product} + {powers}"


QUADRIC = Fixture("quadric", "x0^2 + x1^2 + x2^2", 3, {"label": "canonical", "cone_zero": True})

COUNTEREXAMPLE = Fixture(
    "counterexample",
    "x0*x1*x2*x3 + x0^3 + x1^2*x2^2 + x1^6 + x2^6 + x3^6",
    4,
    {
        "label": "log-canonical-non-canonical",
        "support_size": 6,
        "members": {(2, 2, 1, 1): True, (2, 1, 2, 1): True, (2, 1, 1, 1): False, (1, 1, 1, 1): False},
        "abs_min": None,
        "componentwise_min_of": ((2, 2, 1, 1), (2, 1, 2, 1)),
        "componentwise_min": (2, 1, 1, 1),
        "blowup": (2, 1, 2, 1),
        "leading_coefficient": Fraction(3, 2),
        "partner": "x0^3 + x1^6 + x2^3 + x3^6",
        "divisor": (2, 2, 1, 1),
        "divisor_m": Fraction(-1, 2),
    },
)

WATANABE = tuple(
    Fixture(
        f"watanabe_s{s}",
        watanabe_text(s),
        4,
        {"label": "log-canonical-non-canonical", "abs_min": (21, 14, 6, 1), "weight_value": 42},
    )
    for s in range(3)
)

WATANABE_PARTNER = Fixture("watanabe_partner", "x0^2 + x1^3 + x2^7 + x3^42", 4)

TOMARI = tuple(
    Fixture(
        f"tomari_k{k}",
        tomari_text(k),
        3,
        {"label": "not-log-canonical", "f_minimal": ((1, 1, 1), (k + 1, k, k))},
    )
    for k in (3, 4, 5)
)

SURFACE_TRIAD = (
    Fixture("triad_cubic", "x0^3 + x1^3 + x2^3", 3, {"abs_min": (1, 1, 1)}),
    Fixture("triad_e_tilde", "x0*x1*x2 + x0^4 + x1^4 + x2^4", 3, {"abs_min": (1, 1, 1)}),
    Fixture("triad_236", "x0^2 + x1^3 + x2^6", 3, {"abs_min": (3, 2, 1)}),
    Fixture("triad_244", "x0^2 + x1^4 + x2^4", 3, {"abs_min": (2, 1, 1)}),
)

TYPE_T_EXPONENTS = (
    (3, 3, 4),
    (3, 4, 4),
    (4, 4, 4),
    (2, 3, 7),
    (2, 4, 5),
    (2, 5, 5),
    (3, 3, 5),
    (2, 3, 8),
    (3, 4, 5),
    (4, 5, 6),
    (5, 5, 5, 5),
    (4, 4, 4, 5),
    (3, 4, 5, 7),
    (4, 4, 5, 5),
    (3, 5, 5, 5),
    (3, 4, 4, 7),
    (2, 5, 6, 8),
    (3, 3, 4, 13),
    (6, 6, 6, 6),
    (4, 5, 6, 7),
)

TYPE_T = tuple(
    Fixture(
        "type_t_" + "_".join(str(a) for a in exps),
        type_t_text(exps),
        len(exps),
        {"type_t": exps, "quasi_reduced": True, "abs_min_present": True},
    )
    for exps in TYPE_T_EXPONENTS
)

ALL_FIXTURES = (QUADRIC, COUNTEREXAMPLE, *WATANABE, WATANABE_PARTNER, *TOMARI, *SURFACE_TRIAD, *TYPE_T)


def by_name(name: str) -> Fixture:
    """Look up a fixture by name.

    Raises:
        KeyError: If no fixture has that name.
    """
    for fixture in ALL_FIXTURES:
        if fixture.name == name:
            return fixture
    raise KeyError(name)
