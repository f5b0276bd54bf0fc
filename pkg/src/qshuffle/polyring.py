"""Exact polynomials in one variable over the integers.

All coefficient arithmetic in this package happens in $\\mathbb{Z}[q]$:
Hecke structure constants, q-integers, flag counts over $\\mathbb{F}_q$.
A polynomial is stored densely as a tuple of arbitrary-precision
integers in ascending degree order with trailing zeros stripped, so two
polynomials are equal exactly when their coefficient tuples are.  No
floating point is involved anywhere.

>>> ONE + Q + Q ** 2 == q_int(3)
True
>>> q_int(3)(10)
111
>>> print(q_int(3) * q_int(3))
1 + 2*q + 3*q^2 + 2*q^3 + q^4
>>> print((Q - 1) * q_int(4))
-1 + q^4
"""

from __future__ import annotations

from typing import Iterable, Union

__all__ = ["Poly", "ZERO", "ONE", "Q", "q_int"]

PolyLike = Union["Poly", int]


def _coerce(value: object) -> "Poly | None":
    if isinstance(value, Poly):
        return value
    if isinstance(value, int):
        return Poly((value,))
    return None


class Poly:
    """An element of Z[q], dense ascending coefficients, immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"coefficients must be int, got {type(c).__name__}")
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree, with -1 standing in for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: PolyLike) -> "Poly":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: PolyLike) -> "Poly":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: PolyLike) -> "Poly":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: PolyLike) -> "Poly":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a nonnegative int, got {k!r}")
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def eval(self, x: int) -> int:
        """Value at an integer point, by Horner's rule."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = eval

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if d == 0:
                body = str(abs(c))
            else:
                var = "q" if d == 1 else f"q^{d}"
                body = var if abs(c) == 1 else f"{abs(c)}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"


ZERO = Poly()
ONE = Poly((1,))
Q = Poly((0, 1))


def q_int(k: int) -> Poly:
    """The q-integer [k] = 1 + q + ... + q^(k-1); [0] is the zero polynomial.

    >>> print(q_int(4))
    1 + q + q^2 + q^3
    >>> q_int(4)(1)
    4
    >>> q_int(0).is_zero()
    True
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"q-integers are defined for k >= 0, got {k!r}")
    return Poly((1,) * k)
