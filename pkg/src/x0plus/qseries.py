"""Truncated q-expansions of cusp forms with exact integer coefficients.

Storage is 1-based: ``coeffs[0]`` is the coefficient of q^1 and the
constant term is implicitly zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class QSeries:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("precision must be at least 1")
        for c in self.coeffs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficient {c!r} is not an exact integer")

    @classmethod
    def from_list(cls, coeffs: Sequence[int]) -> "QSeries":
        return cls(tuple(int(c) for c in coeffs))

    @classmethod
    def monomial(cls, n: int, prec: int, c: int = 1) -> "QSeries":
        out = [0] * prec
        if n <= prec:
            out[n - 1] = c
        return cls(tuple(out))

    @classmethod
    def zero(cls, prec: int) -> "QSeries":
        return cls((0,) * prec)

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> int:
        """Coefficient of q^n, n >= 1 (q^0 gives 0)."""
        if n == 0:
            return 0
        if not 1 <= n <= self.prec:
            raise IndexError(f"q^{n} outside precision {self.prec}")
        return self.coeffs[n - 1]

    def truncate(self, prec: int) -> "QSeries":
        if prec > self.prec:
            raise ValueError(f"cannot extend precision {self.prec} to {prec}")
        return QSeries(self.coeffs[:prec])

    def __add__(self, other: "QSeries") -> "QSeries":
        return add(self, other)

    def __neg__(self) -> "QSeries":
        return scale(self, -1)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return add(self, scale(other, -1))

    def __mul__(self, other: "QSeries") -> "QSeries":
        return mul(self, other)

    def __repr__(self):
        terms = [f"{c}q^{n}" for n, c in enumerate(self.coeffs[:8], 1) if c]
        return f"QSeries({' + '.join(terms) or '0'} + O(q^{self.prec + 1}))"


def add(f: QSeries, g: QSeries) -> QSeries:
    n = min(f.prec, g.prec)
    return QSeries(tuple(a + b for a, b in zip(f.coeffs[:n], g.coeffs[:n])))


def scale(f: QSeries, c: int) -> QSeries:
    return QSeries(tuple(c * a for a in f.coeffs))


def mul(f: QSeries, g: QSeries) -> QSeries:
    # no constant terms, so coefficient n only sees indices < n of each factor
    n = min(f.prec, g.prec)
    a, b = f.coeffs, g.coeffs
    out = [0] * n
    for i in range(n - 1):
        ai = a[i]
        if not ai:
            continue
        # q^(i+1) * q^(j+1) lands at index i + j + 1
        for j in range(n - i - 1):
            bj = b[j]
            if bj:
                out[i + j + 1] += ai * bj
    return QSeries(tuple(out))


def monomial_eval(basis: Sequence[QSeries], exponents: Sequence[int]) -> QSeries:
    if len(exponents) != len(basis):
        raise ValueError("exponent vector length must match the basis size")
    if any(e < 0 for e in exponents) or sum(exponents) < 1:
        raise ValueError("exponents must be nonnegative with positive total degree")
    result = None
    for f, e in zip(basis, exponents):
        for _ in range(e):
            result = f if result is None else mul(result, f)
    return result


def is_zero_to(f: QSeries, n: int) -> bool:
    if n > f.prec:
        raise ValueError(f"asked for vanishing through q^{n} but precision is {f.prec}")
    return not any(f.coeffs[:n])
