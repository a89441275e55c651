"""Exact Laurent polynomials in t^(1/2) with integer coefficients.

Exponents are stored as plain integers counting *halves*: the key ``e``
denotes the monomial t^(e/2).  Coefficients are arbitrary-precision ints,
so twisted families can grow without overflow.  Values are immutable and
all operations are pure.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping


class HalfIntegerExponentError(ValueError):
    """Raised when an operation requires integer t-exponents only."""


class NotSymmetrizableError(ValueError):
    """Raised when no unit multiple of the input is conjugate-(anti)symmetric."""


class InexactDivisionError(ArithmeticError):
    """Raised when a polynomial division that must be exact leaves a remainder."""


class HalfLaurent:
    """Integer-coefficient Laurent polynomial in t^(1/2).

    The zero polynomial is the empty coefficient map; no stored
    coefficient is ever zero.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, v in items:
            if not isinstance(e, int) or not isinstance(v, int):
                raise TypeError("exponents-in-halves and coefficients must be ints")
            if v:
                c[e] = c.get(e, 0) + v
                if not c[e]:
                    del c[e]
        self._c = c

    # -- basic queries ------------------------------------------------------

    def coeff(self, e: int) -> int:
        """Coefficient of t^(e/2)."""
        return self._c.get(e, 0)

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    @property
    def max_halves(self) -> int:
        """Largest exponent in halves.  Undefined (raises) on zero."""
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    @property
    def min_halves(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return min(self._c)

    def breadth_halves(self) -> int:
        """Span max - min of the support, in half-integer units; 0 for zero."""
        if not self._c:
            return 0
        return max(self._c) - min(self._c)

    def has_integer_exponents(self) -> bool:
        return all(e % 2 == 0 for e in self._c)

    # -- ring structure -----------------------------------------------------

    def __add__(self, other: "HalfLaurent") -> "HalfLaurent":
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        return HalfLaurent(c)

    def __neg__(self) -> "HalfLaurent":
        return HalfLaurent({e: -v for e, v in self._c.items()})

    def __sub__(self, other: "HalfLaurent") -> "HalfLaurent":
        return self + (-other)

    def __mul__(self, other: "HalfLaurent") -> "HalfLaurent":
        if not self._c or not other._c:
            return HalfLaurent()
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                w = c.get(e, 0) + v1 * v2
                if w:
                    c[e] = w
                else:
                    del c[e]
        return HalfLaurent(c)

    def scale(self, k: int) -> "HalfLaurent":
        if not k:
            return HalfLaurent()
        return HalfLaurent({e: k * v for e, v in self._c.items()})

    def shift(self, m: int) -> "HalfLaurent":
        """Multiply by the unit t^(m/2)."""
        return HalfLaurent({e + m: v for e, v in self._c.items()})

    def __pow__(self, k: int) -> "HalfLaurent":
        if k < 0:
            raise ValueError("negative powers are not defined for polynomials")
        out = one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, HalfLaurent) and self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    # -- the operations the rest of the library leans on ---------------------

    def conjugate(self) -> "HalfLaurent":
        """Substitute t -> t^(-1).  A ring involution."""
        return HalfLaurent({-e: v for e, v in self._c.items()})

    def evaluate_at_one(self) -> int:
        return sum(self._c.values())

    def evaluate_at_minus_one(self) -> int:
        """Exact value at t = -1; |result| is the knot determinant.

        Only defined for integer t-exponents (knot-normalized input).
        """
        if not self.has_integer_exponents():
            raise HalfIntegerExponentError(
                "evaluation at -1 requires integer exponents; "
                "input has half-integer terms"
            )
        return sum(v * (-1) ** ((e // 2) % 2) for e, v in self._c.items())

    def divide_exact(self, divisor: "HalfLaurent") -> "HalfLaurent":
        """Exact division in Z[t^(1/2), t^(-1/2)]; remainder != 0 is an error."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return HalfLaurent()
        rem = dict(self._c)
        dtop = divisor.max_halves
        dlead = divisor.coeff(dtop)
        # in the Laurent ring an exact quotient has valuation lo(a) - lo(b);
        # anything below that means the division is inexact
        lo_bound = self.min_halves - divisor.min_halves
        out: dict[int, int] = {}
        while rem:
            rtop = max(rem)
            q, r = divmod(rem[rtop], dlead)
            shift = rtop - dtop
            if r or shift < lo_bound:
                raise InexactDivisionError("not divisible in the Laurent ring")
            out[shift] = q
            for e, v in divisor._c.items():
                w = rem.get(e + shift, 0) - q * v
                if w:
                    rem[e + shift] = w
                else:
                    rem.pop(e + shift, None)
            if rem and max(rem) >= rtop:
                raise InexactDivisionError("division does not terminate")
        return HalfLaurent(out)

    # -- serialization and display -------------------------------------------

    def to_json_obj(self) -> dict:
        return {"halves": [[e, v] for e, v in sorted(self._c.items(), reverse=True)]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "HalfLaurent":
        return cls({int(e): int(v) for e, v in obj["halves"]})

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                if e % 2 == 0:
                    ee = e // 2
                    power = "t" if ee == 1 else f"t^{{{ee}}}"
                else:
                    power = f"t^{{{e}/2}}"
                body = power if mag == 1 else f"{mag}{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"HalfLaurent({self._c!r})"


def zero() -> HalfLaurent:
    return HalfLaurent()


def one() -> HalfLaurent:
    return HalfLaurent({0: 1})


def t_half(e: int = 1, c: int = 1) -> HalfLaurent:
    """The monomial c * t^(e/2)."""
    return HalfLaurent({e: c})


def t_power(k: int, c: int = 1) -> HalfLaurent:
    """The monomial c * t^k."""
    return HalfLaurent({2 * k: c})


def normalize_symmetric(a: HalfLaurent, components: int) -> HalfLaurent:
    """Unit-normalize to the (-1)^(components-1)-symmetric representative.

    Returns u * t^(m/2) * a with u in {+1, -1} and m an integer such that
    the result r satisfies conjugate(r) = (-1)^(components-1) * r.  Knots
    (components == 1) are pinned by r(1) = 1; links by a positive leading
    coefficient.  Raises NotSymmetrizableError when no such normalization
    exists, which signals an upstream bug rather than bad user input.
    """
    if components < 1:
        raise ValueError("component count must be >= 1")
    if a.is_zero():
        if components > 1:
            return HalfLaurent()
        raise NotSymmetrizableError("zero polynomial cannot normalize to Delta(1) = 1")
    sgn = -1 if components % 2 == 0 else 1
    lo, hi = a.min_halves, a.max_halves
    if (lo + hi) % 2:
        raise NotSymmetrizableError("support cannot be centered at an integer shift")
    centered = a.shift(-(lo + hi) // 2)
    if centered.conjugate() != centered.scale(sgn):
        raise NotSymmetrizableError(
            f"no unit multiple is {'anti' if sgn < 0 else ''}symmetric"
        )
    if components == 1:
        v = centered.evaluate_at_one()
        if v == 1:
            return centered
        if v == -1:
            return -centered
        raise NotSymmetrizableError(f"value at t = 1 is {v}, not a unit")
    return centered if centered.coeff(centered.max_halves) > 0 else -centered
