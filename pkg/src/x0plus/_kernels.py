"""Hot numeric loops: projective point search and q-series evaluation.

Each kernel has a numba implementation and a pure-numpy one with the same
signature.  Set ``X0PLUS_DISABLE_NUMBA=1`` to force the numpy path (also
used automatically when numba is missing).
"""
from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

INT64_SAFE = 2**62


def numba_enabled() -> bool:
    flag = os.environ.get("X0PLUS_DISABLE_NUMBA", "").strip().lower()
    return HAVE_NUMBA and flag not in ("1", "true", "yes")


def pack_polys(polys) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Flatten polynomials (cheapest first) into (exponents, coefficients, offsets)."""
    polys = sorted(polys, key=lambda p: (p.degree, len(p.terms)))
    exps, coefs, offsets = [], [], [0]
    for p in polys:
        for e, c in p.terms:
            exps.append(e)
            coefs.append(c)
        offsets.append(len(coefs))
    return (np.asarray(exps, dtype=np.int64), np.asarray(coefs, dtype=np.int64),
            np.asarray(offsets, dtype=np.int64))


def fits_int64(polys, height: int) -> bool:
    return all(sum(abs(c) for _, c in p.terms) * max(height, 1) ** p.degree < INT64_SAFE
               for p in polys)


# ---------------------------------------------------------------- search, numpy


def search_slab_numpy(exps, coefs, offsets, g, lead, value, height, exact=False):
    """Zeros with x[:lead] = 0, x[lead] = value, |x[j]| <= height beyond.

    Returns an (m, g) int64 array of primitive solutions.
    """
    free = g - lead - 1
    rng = np.arange(-height, height + 1, dtype=object if exact else np.int64)
    if free == 0:
        grids = []
        outer = [()]
    elif free == 1:
        grids = [rng]
        outer = [()]
    else:
        a, b = np.meshgrid(rng, rng, indexing="ij")
        grids = [a.ravel(), b.ravel()]
        outer = np.ndindex(*([2 * height + 1] * (free - 2)))
    found = []
    npts = len(grids[0]) if grids else 1
    for idx in outer:
        cols = []
        for j in range(g):
            if j < lead:
                cols.append(np.zeros(npts, dtype=rng.dtype))
            elif j == lead:
                cols.append(np.full(npts, value, dtype=rng.dtype))
            elif j - lead - 1 < free - len(grids):
                cols.append(np.full(npts, idx[j - lead - 1] - height, dtype=rng.dtype))
            else:
                cols.append(grids[j - g + len(grids)] if grids else None)
        mask = np.ones(npts, dtype=bool)
        for k in range(len(offsets) - 1):
            sel = np.flatnonzero(mask)
            if not len(sel):
                break
            val = np.zeros(len(sel), dtype=rng.dtype)
            for t in range(offsets[k], offsets[k + 1]):
                term = np.full(len(sel), int(coefs[t]), dtype=rng.dtype)
                for j in range(g):
                    e = int(exps[t, j])
                    if e:
                        term = term * cols[j][sel] ** e
                val = val + term
            mask[sel] = val == 0
        for i in np.flatnonzero(mask):
            pt = [int(c[i]) for c in cols]
            if math.gcd(*pt) == 1:
                found.append(pt)
    return np.asarray(found, dtype=np.int64).reshape(-1, g)


# ---------------------------------------------------------------- search, numba

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _gcd(a, b):
        a = abs(a)
        b = abs(b)
        while b:
            a, b = b, a % b
        return a

    @njit(cache=True, nogil=True)
    def _poly_zero(exps, coefs, start, stop, x):
        total = 0
        for t in range(start, stop):
            term = coefs[t]
            for j in range(x.shape[0]):
                e = exps[t, j]
                for _ in range(e):
                    term *= x[j]
            total += term
        return total == 0

    @njit(cache=True, nogil=True)
    def _search_slab_numba(exps, coefs, offsets, g, lead, value, height):
        cap = 64
        out = np.zeros((cap, g), dtype=np.int64)
        count = 0
        x = np.zeros(g, dtype=np.int64)
        x[lead] = value
        free = g - lead - 1
        for j in range(lead + 1, g):
            x[j] = -height
        while True:
            ok = True
            for k in range(offsets.shape[0] - 1):
                if not _poly_zero(exps, coefs, offsets[k], offsets[k + 1], x):
                    ok = False
                    break
            if ok:
                d = 0
                for j in range(g):
                    d = _gcd(d, x[j])
                if d == 1:
                    if count == cap:
                        bigger = np.zeros((2 * cap, g), dtype=np.int64)
                        bigger[:cap] = out
                        out = bigger
                        cap *= 2
                    out[count] = x
                    count += 1
            # odometer over the free coordinates
            j = g - 1
            while j > lead and x[j] == height:
                x[j] = -height
                j -= 1
            if j == lead or free == 0:
                break
            x[j] += 1
        return out[:count]

    @njit(cache=True, nogil=True)
    def _all_zero(exps, coefs, offsets, x):
        for k in range(offsets.shape[0] - 1):
            if not _poly_zero(exps, coefs, offsets[k], offsets[k + 1], x):
                return False
        return True

    @njit(cache=True, nogil=True)
    def _real_roots(c, deg):
        """Approximate real parts of the (nearly) real roots of sum c[k] x^k."""
        out = np.zeros(deg, dtype=np.float64)
        n = 0
        if deg == 1:
            out[0] = -c[0] / c[1]
            return out[:1]
        if deg == 2:
            a = float(c[2])
            b = float(c[1])
            cc = float(c[0])
            disc = b * b - 4.0 * a * cc
            if disc < -1e-6 * (b * b + abs(4.0 * a * cc)):
                return out[:0]
            sq = math.sqrt(max(disc, 0.0))
            q = -0.5 * (b + sq if b >= 0 else b - sq)
            if q != 0.0:
                out[0] = q / a
                out[1] = cc / q
                return out[:2]
            out[0] = 0.0
            return out[:1]
        # complex input: numba's real eigvals refuses complex eigenvalues
        poly = np.zeros(deg + 1, dtype=np.complex128)
        for k in range(deg + 1):
            poly[k] = float(c[deg - k])
        roots = np.roots(poly)
        for r in roots:
            if abs(r.imag) <= 1e-4 * (1.0 + abs(r.real)):
                out[n] = r.real
                n += 1
        return out[:n]

    @njit(cache=True, nogil=True)
    def _search_slab_solve(exps, coefs, offsets, g, lead, value, height):
        """Like the brute-force kernel, but the last coordinate is solved for:
        the first polynomial becomes univariate in it, and only integers next
        to its real roots are tested (exactly) against every polynomial."""
        cap = 64
        out = np.zeros((cap, g), dtype=np.int64)
        count = 0
        x = np.zeros(g, dtype=np.int64)
        x[lead] = value
        last = g - 1
        for j in range(lead + 1, last):
            x[j] = -height
        maxdeg = 0
        for t in range(offsets[0], offsets[1]):
            if exps[t, last] > maxdeg:
                maxdeg = exps[t, last]
        c = np.zeros(maxdeg + 1, dtype=np.int64)
        tried = np.zeros(3 * (maxdeg + 1), dtype=np.int64)
        while True:
            for k in range(maxdeg + 1):
                c[k] = 0
            for t in range(offsets[0], offsets[1]):
                term = coefs[t]
                for j in range(last):
                    for _ in range(exps[t, j]):
                        term *= x[j]
                c[exps[t, last]] += term
            deg = -1
            for k in range(maxdeg + 1):
                if c[k] != 0:
                    deg = k
            ntried = 0
            if deg == -1:
                lo = -height
                hi = height
            else:
                lo = 1
                hi = 0
            # identically zero in the last coordinate: scan it
            for v in range(lo, hi + 1):
                x[last] = v
                if _all_zero(exps, coefs, offsets, x):
                    d = 0
                    for j in range(g):
                        d = _gcd(d, x[j])
                    if d == 1:
                        if count == cap:
                            bigger = np.zeros((2 * cap, g), dtype=np.int64)
                            bigger[:cap] = out
                            out = bigger
                            cap *= 2
                        out[count] = x
                        count += 1
            if deg >= 1:
                roots = _real_roots(c, deg)
                for r in roots:
                    if abs(r) > height + 1:
                        continue
                    base = int(math.floor(r))
                    for v in range(base - 1, base + 3):
                        if v < -height or v > height:
                            continue
                        seen = False
                        for i in range(ntried):
                            if tried[i] == v:
                                seen = True
                        if seen:
                            continue
                        if ntried < tried.shape[0]:
                            tried[ntried] = v
                            ntried += 1
                        x[last] = v
                        if _all_zero(exps, coefs, offsets, x):
                            d = 0
                            for j in range(g):
                                d = _gcd(d, x[j])
                            if d == 1:
                                if count == cap:
                                    bigger = np.zeros((2 * cap, g), dtype=np.int64)
                                    bigger[:cap] = out
                                    out = bigger
                                    cap *= 2
                                out[count] = x
                                count += 1
            x[last] = 0
            # odometer over the coordinates strictly between lead and last
            j = last - 1
            while j > lead and x[j] == height:
                x[j] = -height
                j -= 1
            if j <= lead:
                break
            x[j] += 1
        return out[:count]

    @njit(cache=True, nogil=True)
    def _series_values_numba(coeffs, tau_re, tau_im):
        g, T = coeffs.shape
        vals = np.zeros(g, dtype=np.complex128)
        mags = np.zeros(g, dtype=np.float64)
        for n in range(1, T + 1):
            r = math.exp(-2.0 * math.pi * n * tau_im)
            ang = 2.0 * math.pi * n * tau_re
            qn = complex(r * math.cos(ang), r * math.sin(ang))
            for i in range(g):
                a = coeffs[i, n - 1]
                if a != 0.0:
                    vals[i] += a * qn
                    mags[i] += abs(a) * r
        return vals, mags


def search_slab_numba(exps, coefs, offsets, g, lead, value, height):
    """Brute-force reference kernel: every tuple in the slab is evaluated."""
    return _search_slab_numba(exps, coefs, offsets, g, lead, value, height)


def search_slab_solve(exps, coefs, offsets, g, lead, value, height):
    """Fast kernel: the last coordinate is solved for instead of enumerated."""
    if lead == g - 1:
        return _search_slab_numba(exps, coefs, offsets, g, lead, value, height)
    return _search_slab_solve(exps, coefs, offsets, g, lead, value, height)


def search_slab(exps, coefs, offsets, g, lead, value, height, exact=False):
    if exact or not numba_enabled():
        return search_slab_numpy(exps, coefs, offsets, g, lead, value, height, exact=exact)
    return search_slab_solve(exps, coefs, offsets, g, lead, value, height)


# ---------------------------------------------------------------- series


def series_values_numpy(coeffs: np.ndarray, tau: complex):
    """Values sum_n a_i(n) q^n and sums of |a_i(n) q^n| for each row of ``coeffs``."""
    n = np.arange(1, coeffs.shape[1] + 1, dtype=np.float64)
    r = np.exp(-2.0 * np.pi * n * tau.imag)
    q = r * np.exp(2j * np.pi * n * tau.real)
    return coeffs @ q, np.abs(coeffs) @ r


def series_values_numba(coeffs: np.ndarray, tau: complex):
    return _series_values_numba(np.ascontiguousarray(coeffs), float(tau.real), float(tau.imag))


def series_values(coeffs: np.ndarray, tau: complex):
    if numba_enabled():
        return series_values_numba(coeffs, tau)
    return series_values_numpy(coeffs, tau)


def series_values_mp(rows, tau: complex, dps: int):
    """Multiprecision evaluation for heavy cancellation near the real axis.

    Returns (values as complex, sum |a(n) q^n|, rounding bound).
    """
    import mpmath

    with mpmath.workdps(dps):
        t = mpmath.mpc(tau.real, tau.imag)
        q = mpmath.exp(2j * mpmath.pi * t)
        qn = mpmath.mpc(1)
        vals = [mpmath.mpc(0)] * len(rows)
        r = abs(complex(q))
        weighted = 0.0
        mags = np.zeros(len(rows))
        rn = 1.0
        for n in range(1, len(rows[0]) + 1):
            qn *= q
            rn *= r
            for i, row in enumerate(rows):
                a = row[n - 1]
                if a:
                    vals[i] += a * qn
                    mags[i] += abs(a) * rn
                    weighted += (n + 4) * abs(a) * rn
        eps = float(mpmath.mpf(2) ** (-mpmath.mp.prec))
        out = np.array([complex(v) for v in vals])
    # the final cast to complex128 adds a relative 2^-53
    cast = float(np.max(np.abs(out))) * np.finfo(float).eps
    return out, mags, 4 * eps * weighted + cast


def backend() -> str:
    return f"numba {numba.__version__}" if numba_enabled() else "numpy"
