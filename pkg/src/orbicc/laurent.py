"""Laurent polynomials in x1..xn (integer exponents) and y1..yn (non-negative
exponents) with integer coefficients.

Values are immutable. The canonical text form sorts terms by
(y exponents, x exponents) and writes each term as ``c*x1^a*...*yn^b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping


class DimensionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ExponentVector:
    y_exps: tuple[int, ...]
    x_exps: tuple[int, ...]

    def __init__(self, x_exps: Iterable[int], y_exps: Iterable[int] | None = None):
        x = tuple(int(v) for v in x_exps)
        y = tuple(0 for _ in x) if y_exps is None else tuple(int(v) for v in y_exps)
        if len(x) != len(y):
            raise DimensionError("x and y exponent vectors differ in length")
        if any(v < 0 for v in y):
            raise ValueError("y exponents must be non-negative")
        object.__setattr__(self, "x_exps", x)
        object.__setattr__(self, "y_exps", y)

    @property
    def n(self) -> int:
        return len(self.x_exps)

    def __add__(self, other: ExponentVector) -> ExponentVector:
        if self.n != other.n:
            raise DimensionError(f"exponent vectors of size {self.n} and {other.n}")
        return ExponentVector(
            [a + b for a, b in zip(self.x_exps, other.x_exps)],
            [a + b for a, b in zip(self.y_exps, other.y_exps)],
        )


class LaurentPolynomial:
    """Finite map from ExponentVector to nonzero int."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[ExponentVector, int] | None = None):
        self.n = n
        clean: dict[ExponentVector, int] = {}
        for e, c in (terms or {}).items():
            if e.n != n:
                raise DimensionError(f"term of size {e.n} in a polynomial of size {n}")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> LaurentPolynomial:
        return cls(n)

    @classmethod
    def one(cls, n: int) -> LaurentPolynomial:
        return monomial(1, ExponentVector([0] * n))

    @property
    def terms(self) -> dict[ExponentVector, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: LaurentPolynomial):
        if self.n != other.n:
            raise DimensionError(f"polynomials in {self.n} and {other.n} variable pairs")

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.n, out)

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return self + (-other)

    def __mul__(self, other: LaurentPolynomial | int) -> LaurentPolynomial:
        if isinstance(other, int):
            return LaurentPolynomial(self.n, {e: c * other for e, c in self._terms.items()})
        self._check(other)
        out: dict[ExponentVector, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPolynomial({canonical_text(self)!r})"

    def specialize_y(self) -> LaurentPolynomial:
        """Set every y_i to 1."""
        out: dict[ExponentVector, int] = {}
        for e, c in self._terms.items():
            k = ExponentVector(e.x_exps)
            out[k] = out.get(k, 0) + c
        return LaurentPolynomial(self.n, out)

    def y_degree_part(self, y_exps: Iterable[int]) -> LaurentPolynomial:
        y = tuple(y_exps)
        return LaurentPolynomial(self.n, {e: c for e, c in self._terms.items() if e.y_exps == y})


def monomial(coeff: int, exps: ExponentVector) -> LaurentPolynomial:
    return LaurentPolynomial(exps.n, {exps: coeff})


def add(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return p + q


def mul(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    return p * q


def x_monomial(x_exps: Iterable[int], y_exps: Iterable[int] | None = None, coeff: int = 1):
    return monomial(coeff, ExponentVector(x_exps, y_exps))


def _term_text(e: ExponentVector, c: int) -> str:
    factors = []
    for name, exps in (("x", e.x_exps), ("y", e.y_exps)):
        for i, a in enumerate(exps, start=1):
            if a == 1:
                factors.append(f"{name}{i}")
            elif a:
                factors.append(f"{name}{i}^{a}")
    if not factors:
        return str(c)
    body = "*".join(factors)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def canonical_text(p: LaurentPolynomial) -> str:
    if p.is_zero():
        return "0"
    out = ""
    for e, c in p.items():
        t = _term_text(e, c)
        if not out:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


_FACTOR = re.compile(r"^([xy])(\d+)(?:\^(-?\d+))?$")


def parse(text: str, n: int) -> LaurentPolynomial:
    """Inverse of canonical_text; also accepts any term order and spacing."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return LaurentPolynomial.zero(n)
    # split into signed terms, ignoring '-' that follows '^'
    pieces = []
    start = 0
    for i in range(1, len(s)):
        if s[i] in "+-" and s[i - 1] != "^":
            pieces.append(s[start:i])
            start = i
    pieces.append(s[start:])
    total = LaurentPolynomial.zero(n)
    for piece in pieces:
        sign = 1
        if piece[0] in "+-":
            sign = -1 if piece[0] == "-" else 1
            piece = piece[1:]
        if not piece:
            raise ValueError(f"malformed term in {text!r}")
        coeff = 1
        x = [0] * n
        y = [0] * n
        for k, f in enumerate(piece.split("*")):
            if k == 0 and f.isdigit():
                coeff = int(f)
                continue
            m = _FACTOR.match(f)
            if not m:
                raise ValueError(f"malformed factor {f!r}")
            idx = int(m.group(2)) - 1
            if not 0 <= idx < n:
                raise DimensionError(f"variable {f!r} outside 1..{n}")
            a = int(m.group(3)) if m.group(3) is not None else 1
            (x if m.group(1) == "x" else y)[idx] += a
        total = total + monomial(sign * coeff, ExponentVector(x, y))
    return total
