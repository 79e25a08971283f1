"""Class numbers, genus formulas and Sturm bounds for prime levels."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def _require_prime(N: int) -> None:
    if not is_prime(N):
        raise ValueError(f"level {N} is not prime")


def check_discriminant(D: int) -> None:
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant (need D < 0, D = 0,1 mod 4)")


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """All reduced positive definite forms (a, b, c) of discriminant D.

    Includes imprimitive forms, matching the count used for ``class_number``
    of an order when D is fundamental or the form content is 1.
    """
    check_discriminant(D)
    out = []
    bmax = math.isqrt(-D // 3)
    for b in range(-bmax, bmax + 1):
        if (b - D) % 2:
            continue
        ac = (b * b - D) // 4
        for a in range(max(1, abs(b)), math.isqrt(ac) + 1):
            if ac % a:
                continue
            c = ac // a
            if abs(b) > a or a > c:
                continue
            if b < 0 and (-b == a or a == c):
                continue
            out.append((a, b, c))
    return out


@lru_cache(maxsize=None)
def class_number(D: int) -> int:
    """Number of reduced primitive forms of discriminant D."""
    return sum(1 for a, b, c in reduced_forms(D) if math.gcd(a, b, c) == 1)


def genus_X0(N: int) -> int:
    """Genus of X_0(N) for prime N > 3."""
    _require_prime(N)
    if N <= 3:
        raise ValueError("genus formula used here needs N > 3")
    q, r = divmod(N, 12)
    if r == 1:
        return q - 1
    return (N + 1) // 12


def H_count(N: int) -> int:
    """Number of fixed points of the Fricke involution on X_0(N)."""
    _require_prime(N)
    if N % 4 == 1:
        total = class_number(-4 * N)
    else:
        total = class_number(-N) + class_number(-4 * N)
    if total % 2:
        raise ArithmeticError(f"H({N}) not integral: class numbers sum to {total}")
    return total // 2


def genus_plus(N: int) -> int:
    """Genus of X_0^+(N) by Riemann-Hurwitz."""
    twice = genus_X0(N) + 1 - H_count(N)
    if twice % 2 or twice < 0:
        raise ArithmeticError(f"genus_plus({N}) not a nonnegative integer: 2g = {twice}")
    return twice // 2


@dataclass(frozen=True)
class LevelProfile:
    N: int
    gN: int
    H: int
    gPlus: int

    @classmethod
    def of(cls, N: int) -> "LevelProfile":
        return cls(N, genus_X0(N), H_count(N), genus_plus(N))


def enumerate_levels(target_genus: int, bound: int) -> list[int]:
    if bound < 2:
        raise ValueError("bound must be >= 2")
    return [N for N in range(5, bound + 1) if is_prime(N) and genus_plus(N) == target_genus]


def sturm_bound(N: int, weight: int) -> int:
    """Coefficient index through which vanishing forces a form to be zero.

    Returns floor(k (N+1) / 12) + 1 (index of Gamma_0(N) is N+1 for prime N).
    """
    if weight < 2 or weight % 2:
        raise ValueError("weight must be an even integer >= 2")
    return weight * (N + 1) // 12 + 1
