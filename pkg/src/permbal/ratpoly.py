"""Exact univariate polynomials over the rationals.

Small, allocation-light helper used by the identity verifiers and the
Erdos-Szekeres interpolation: coefficients are Fractions stored in
ascending order, with no trailing zeros.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence


class Poly:
    """Immutable polynomial sum(coeffs[i] * x^i)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((Fraction(c),))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "Poly":
        other = other if isinstance(other, Poly) else Poly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        other = other if isinstance(other, Poly) else Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.const(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * Fraction(other) for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Poly":
        s = Fraction(scalar)
        return Poly(c / s for c in self.coeffs)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)})"


def binom_poly(r: int, arg: Poly | None = None) -> Poly:
    """C(arg, r) as a polynomial; arg defaults to x."""
    p = arg if arg is not None else Poly.x()
    out = Poly.const(1)
    for i in range(r):
        out = out * (p - i)
    return out / factorial(r)


def lagrange(nodes: Sequence, values: Sequence) -> Poly:
    """Exact Lagrange interpolation through (nodes[i], values[i])."""
    if len(nodes) != len(values):
        raise ValueError("nodes and values differ in length")
    if len(set(nodes)) != len(nodes):
        raise ValueError("repeated interpolation node")
    total = Poly()
    for i, (xi, yi) in enumerate(zip(nodes, values)):
        yi = Fraction(yi)
        if yi == 0:
            continue
        term = Poly.const(yi)
        for j, xj in enumerate(nodes):
            if j != i:
                term = term * Poly((-Fraction(xj), 1)) / (Fraction(xi) - Fraction(xj))
        total = total + term
    return total


def format_poly(p: Poly, var: str = "n") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeff(i)
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            coeff_txt = "" if mag == 1 else f"{mag}*"
            body = f"{coeff_txt}{var}" + (f"^{i}" if i > 1 else "")
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(f"{sign} {body}" if parts else (f"{sign}{body}"))
    return " ".join(parts)
