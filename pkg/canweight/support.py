"""Exponent and weight vectors, polynomial supports and the valuation q(f).

A polynomial enters the library only through its exponent support (and,
optionally, exact coefficients). Text input follows a small grammar::

    poly   := ["+"|"-"] term (("+"|"-") term)*
    term   := [coeff "*"] factor ("*" factor)*  |  coeff
    factor := "x" INDEX ["^" POSINT]
    coeff  := INT | INT "/" POSINT

JSON input is ``{"dim": n+1, "terms": [{"exp": [...], "coeff": "p/q"}, ...]}``.
"""

from __future__ import annotations

import hashlib
import json
import logging
import re
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import lattice
from .config import Settings, get_settings
from .exceptions import (
    DimensionMismatchError,
    DomainError,
    ExponentLimitError,
    InputError,
    MalformedWeightError,
    PolynomialSyntaxError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class ExponentVector:
    """A monomial exponent a in M = Z^(n+1); all entries nonnegative."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        if not self.coords:
            raise DomainError("Exponent vectors need at least one coordinate.")
        if any(x < 0 for x in self.coords):
            raise DomainError(f"Exponent vector {self.coords} has a negative entry.")

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.coords) + ")"


@dataclass(frozen=True, order=True)
class WeightVector:
    """A weight (valuation) q in N = Z^(n+1)."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        if not self.coords:
            raise DomainError("Weight vectors need at least one coordinate.")

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def primitive(self) -> bool:
        """True iff the gcd of the entries is 1 (the zero vector is not primitive)."""
        return lattice.vector_gcd(self.coords) == 1

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.coords) + ")"


VectorLike = WeightVector | ExponentVector | Sequence[int]


def as_weight(v: VectorLike) -> WeightVector:
    """Coerce a vector-like value to a WeightVector."""
    return v if isinstance(v, WeightVector) else WeightVector(tuple(v))


def as_exponent(v: VectorLike) -> ExponentVector:
    """Coerce a vector-like value to an ExponentVector."""
    return v if isinstance(v, ExponentVector) else ExponentVector(tuple(v))


def ones(dim: int) -> ExponentVector:
    """The all-ones vector, exponent of x0*x1*...*xn."""
    return ExponentVector((1,) * dim)


@dataclass(frozen=True)
class PolynomialSupport:
    """The exponent support of a polynomial f, with optional exact coefficients.

    Attributes:
        dim: Ambient dimension n+1.
        support: Exponent vectors with nonzero coefficient, in lexicographic order.
        coeffs: Optional map exponent -> nonzero coefficient (same key set as support).
    """

    dim: int
    support: tuple[ExponentVector, ...]
    coeffs: Mapping[ExponentVector, Fraction] | None = field(default=None, compare=True)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DomainError(f"Ambient dimension must be at least 1, got {self.dim}.")
        if not self.support:
            raise DomainError("A polynomial support must be nonempty.")
        if len(set(self.support)) != len(self.support):
            raise DomainError("A polynomial support cannot repeat exponent vectors.")
        for a in self.support:
            if a.dim != self.dim:
                raise DimensionMismatchError(self.dim, a.dim)
        object.__setattr__(self, "support", tuple(sorted(self.support)))
        if self.coeffs is not None:
            if set(self.coeffs) != set(self.support):
                raise DomainError("Coefficient keys must equal the support.")
            if any(c == 0 for c in self.coeffs.values()):
                raise DomainError("Coefficients must be nonzero.")
            object.__setattr__(
                self, "coeffs", {a: Fraction(self.coeffs[a]) for a in self.support}
            )

    @classmethod
    def from_exponents(
        cls,
        exponents: Iterable[VectorLike],
        dim: int | None = None,
        coeffs: Mapping[Any, Fraction | int] | None = None,
    ) -> "PolynomialSupport":
        """Build a support from raw exponent tuples.

        Args:
            exponents: Exponent vectors (tuples or ExponentVector).
            dim: Ambient dimension; inferred from the first exponent when omitted.
            coeffs: Optional coefficients keyed by the same exponents.
        """
        exps = [as_exponent(a) for a in exponents]
        if dim is None:
            if not exps:
                raise DomainError("A polynomial support must be nonempty.")
            dim = exps[0].dim
        coeff_map = None
        if coeffs is not None:
            coeff_map = {as_exponent(k): Fraction(v) for k, v in coeffs.items()}
        return cls(dim=dim, support=tuple(exps), coeffs=coeff_map)

    def __iter__(self) -> Iterator[ExponentVector]:
        return iter(self.support)

    def __len__(self) -> int:
        return len(self.support)

    def __hash__(self) -> int:
        return hash((self.dim, self.support))

    @property
    def has_coefficients(self) -> bool:
        return self.coeffs is not None

    def union(self, other: "PolynomialSupport") -> "PolynomialSupport":
        """Support of a generic combination of self and other (coefficients dropped)."""
        if other.dim != self.dim:
            raise DimensionMismatchError(self.dim, other.dim)
        return PolynomialSupport(self.dim, tuple(sorted(set(self.support) | set(other.support))))

    def fingerprint(self) -> str:
        """Stable sha256 of the canonical JSON form."""
        payload = json.dumps(support_to_json(self), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def __str__(self) -> str:
        return format_polynomial(self)


# =========================================================================
# Valuations
# =========================================================================


def pairing(q: VectorLike, a: VectorLike) -> int:
    """Return q(a) = sum q_i a_i.

    Raises:
        DimensionMismatchError: If the lengths differ.
    """
    return lattice.dot(tuple(q), tuple(a))


def weight_of_poly(q: VectorLike, f: PolynomialSupport) -> int:
    """Return q(f), the minimum of q(a) over the support of f.

    Raises:
        DomainError: If q has a negative entry.
        DimensionMismatchError: If q and f live in different dimensions.
    """
    qc = tuple(q)
    if len(qc) != f.dim:
        raise DimensionMismatchError(f.dim, len(qc))
    if any(x < 0 for x in qc):
        raise DomainError(f"Weight {qc} has a negative entry; q(f) needs q >= 0.")
    return min(lattice.dot(qc, a.coords) for a in f.support)


def monomial_divisor_weight(q: VectorLike, f: PolynomialSupport, m: int) -> Fraction:
    """Return q(D) = q(f)/m for the Q-divisor D with mD defined by f."""
    if m < 1:
        raise DomainError(f"Divisor multiplicity must be positive, got {m}.")
    return Fraction(weight_of_poly(q, f), m)


def make_primitive(q: VectorLike) -> WeightVector:
    """Divide q by the gcd of its entries.

    Raises:
        DomainError: If q is the zero vector.
    """
    return WeightVector(lattice.primitive(tuple(q)))


def parse_weight(text: str, dim: int | None = None) -> WeightVector:
    """Parse ``"2,1,2,1"`` (parentheses allowed) into a WeightVector.

    Raises:
        MalformedWeightError: If an entry is not an integer.
        DimensionMismatchError: If ``dim`` is given and differs.
    """
    stripped = text.strip().strip("()[]")
    try:
        coords = tuple(int(part) for part in stripped.split(","))
    except ValueError as e:
        raise MalformedWeightError(text, e) from e
    if dim is not None and len(coords) != dim:
        raise DimensionMismatchError(dim, len(coords))
    return WeightVector(coords)


# =========================================================================
# Text and JSON formats
# =========================================================================

_TOKEN_RE = re.compile(r"(?:(?P<num>\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*/^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise PolynomialSyntaxError(f"Unexpected character {text[pos]!r}", pos)
        start = pos
        if match.group("num") is not None:
            tokens.append(("num", match.group("num"), start))
        elif match.group("var") is not None:
            tokens.append(("var", match.group("idx"), start))
        else:
            tokens.append(("op", match.group("op"), start))
        pos = match.end()
    return tokens


class _Parser:
    """Recursive-descent reader for the polynomial grammar."""

    def __init__(self, text: str, dim: int, max_exponent: int):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.dim = dim
        self.max_exponent = max_exponent

    def _peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _position(self) -> int:
        tok = self._peek()
        return tok[2] if tok else len(self.text)

    def _expect(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self._peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            wanted = value or kind
            raise PolynomialSyntaxError(f"Expected {wanted!r}", self._position())
        self.i += 1
        return tok

    def _accept_op(self, *ops: str) -> str | None:
        tok = self._peek()
        if tok is not None and tok[0] == "op" and tok[1] in ops:
            self.i += 1
            return tok[1]
        return None

    def parse(self) -> dict[tuple[int, ...], Fraction]:
        if not self.tokens:
            raise PolynomialSyntaxError("Empty polynomial", 0)
        terms: dict[tuple[int, ...], Fraction] = {}
        sign = -1 if self._accept_op("+", "-") == "-" else 1
        while True:
            coeff, exp = self._term()
            terms[exp] = terms.get(exp, Fraction(0)) + sign * coeff
            op = self._accept_op("+", "-")
            if op is None:
                break
            sign = -1 if op == "-" else 1
        if self._peek() is not None:
            raise PolynomialSyntaxError("Unexpected token", self._position())
        return terms

    def _term(self) -> tuple[Fraction, tuple[int, ...]]:
        exp = [0] * self.dim
        coeff = Fraction(1)
        tok = self._peek()
        if tok is not None and tok[0] == "num":
            self.i += 1
            numerator = int(tok[1])
            if self._accept_op("/"):
                den_tok = self._expect("num")
                if int(den_tok[1]) == 0:
                    raise PolynomialSyntaxError("Zero denominator", den_tok[2])
                coeff = Fraction(numerator, int(den_tok[1]))
            else:
                coeff = Fraction(numerator)
            if not self._accept_op("*"):
                return coeff, tuple(exp)
        self._factor(exp)
        while self._accept_op("*"):
            self._factor(exp)
        return coeff, tuple(exp)

    def _factor(self, exp: list[int]) -> None:
        tok = self._expect("var")
        index = int(tok[1])
        if index >= self.dim:
            raise PolynomialSyntaxError(
                f"Variable x{index} out of range for dimension {self.dim}", tok[2]
            )
        power = 1
        if self._accept_op("^"):
            pow_tok = self._expect("num")
            power = int(pow_tok[1])
            if power < 1:
                raise PolynomialSyntaxError("Exponent must be positive", pow_tok[2])
        exp[index] += power
        if exp[index] > self.max_exponent:
            raise ExponentLimitError(exp[index], self.max_exponent)


def parse_polynomial(
    text: str, dim: int, settings: Settings | None = None
) -> PolynomialSupport:
    """Parse polynomial text into a support with exact coefficients.

    Coefficients of equal monomials are collected; monomials that cancel
    are dropped from the support.

    Args:
        text: Polynomial in the x0..xn grammar.
        dim: Ambient dimension n+1.
        settings: Optional settings override (exponent limit).

    Returns:
        The parsed PolynomialSupport (coefficients present).

    Raises:
        PolynomialSyntaxError: On malformed text or an out-of-range variable.
        ExponentLimitError: If an exponent exceeds the configured limit.
        InputError: If every term cancels.
    """
    settings = settings or get_settings()
    if dim < 1:
        raise InputError(f"Dimension must be at least 1, got {dim}.")
    terms = _Parser(text, dim, settings.max_exponent).parse()
    collected = {exp: c for exp, c in terms.items() if c != 0}
    if not collected:
        raise InputError("The polynomial is zero after collecting terms.")
    logger.debug(f"Parsed {len(collected)} monomials from {text!r}")
    return PolynomialSupport.from_exponents(collected.keys(), dim=dim, coeffs=collected)


def _format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(a: ExponentVector) -> str:
    factors = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(a) if e]
    return "*".join(factors)


def format_polynomial(f: PolynomialSupport) -> str:
    """Serialize f in the text grammar (reads back to the same support)."""
    parts: list[str] = []
    for a in f.support:
        coeff = f.coeffs[a] if f.coeffs is not None else Fraction(1)
        mono = _format_monomial(a)
        magnitude = abs(coeff)
        if not mono:
            body = _format_fraction(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{_format_fraction(magnitude)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(parts)


def support_to_json(f: PolynomialSupport) -> dict[str, Any]:
    """JSON form of a support (coefficients included when present)."""
    terms = []
    for a in f.support:
        term: dict[str, Any] = {"exp": list(a.coords)}
        if f.coeffs is not None:
            term["coeff"] = _format_fraction(f.coeffs[a])
        terms.append(term)
    return {"dim": f.dim, "terms": terms}


def support_from_json(data: Mapping[str, Any], settings: Settings | None = None) -> PolynomialSupport:
    """Read the JSON form ``{"dim": ..., "terms": [...]}``.

    Raises:
        InputError: On missing keys, bad coefficients or exponents.
    """
    settings = settings or get_settings()
    try:
        dim = int(data["dim"])
        raw_terms = data["terms"]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("Polynomial JSON needs 'dim' and 'terms'.", e) from e
    terms: dict[tuple[int, ...], Fraction] = {}
    any_coeff = False
    for term in raw_terms:
        try:
            exp = tuple(int(x) for x in term["exp"])
            coeff = Fraction(str(term["coeff"])) if "coeff" in term else Fraction(1)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise InputError(f"Malformed term {term!r}.", e) from e
        any_coeff = any_coeff or "coeff" in term
        if len(exp) != dim:
            raise DimensionMismatchError(dim, len(exp))
        if any(x < 0 for x in exp):
            raise InputError(f"Exponent {exp} has a negative entry.")
        if max(exp, default=0) > settings.max_exponent:
            raise ExponentLimitError(max(exp), settings.max_exponent)
        terms[exp] = terms.get(exp, Fraction(0)) + coeff
    collected = {exp: c for exp, c in terms.items() if c != 0}
    if not collected:
        raise InputError("The polynomial has no terms.")
    return PolynomialSupport.from_exponents(
        collected.keys(), dim=dim, coeffs=collected if any_coeff else None
    )


_DIM_HEADER_RE = re.compile(r"^\s*#\s*dim\s*=\s*(\d+)\s*$")


def read_polynomial_text(text: str, dim: int | None, settings: Settings | None = None) -> PolynomialSupport:
    """Read a ``.txt`` body: an optional ``# dim=N`` header, then the polynomial.

    Other ``#`` lines are comments; remaining lines are joined.
    """
    body: list[str] = []
    for line in text.splitlines():
        header = _DIM_HEADER_RE.match(line)
        if header:
            dim = dim or int(header.group(1))
        elif not line.strip().startswith("#"):
            body.append(line)
    if dim is None:
        raise InputError("Text input needs a dimension: pass --dim or add a '# dim=N' line.")
    return parse_polynomial(" ".join(body), dim, settings)


def load_polynomial(
    source: str | Path, dim: int | None = None, settings: Settings | None = None
) -> PolynomialSupport:
    """Load a polynomial from a ``.json`` or ``.txt`` file.

    Raises:
        InputError: If the file is missing or malformed.
    """
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}", e) from e
    if path.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"{path} is not valid JSON: {e}", e) from e
        f = support_from_json(data, settings)
        if dim is not None and dim != f.dim:
            raise DimensionMismatchError(dim, f.dim)
        return f
    return read_polynomial_text(text, dim, settings)
