"""Fixture bases of S_2^+(Gamma_0(N)): loading, validation, Fricke sanity check.

A fixture is a JSON object::

    {"N": 137, "gPlus": 4, "prec": 6000, "provenance": "...",
     "forms": [[a_1(1), ..., a_1(prec)], ...]}

Forms are rows of the reduced echelon basis over Q, each scaled to a
primitive integer vector, pivots ascending.
"""
from __future__ import annotations

import cmath
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import _kernels
from .arith import genus_plus, is_prime, sturm_bound
from .qseries import QSeries

DATA_ENV = "X0PLUS_DATA_DIR"


class FixtureError(ValueError):
    pass


@dataclass(frozen=True)
class BasisRecord:
    N: int
    gPlus: int
    forms: tuple[QSeries, ...]
    provenance: str = ""

    @property
    def prec(self) -> int:
        return self.forms[0].prec

    def coefficient_matrix(self, terms: int | None = None) -> np.ndarray:
        terms = self.prec if terms is None else terms
        return np.array([f.coeffs[:terms] for f in self.forms], dtype=np.float64)

    def to_json(self) -> dict:
        return {"N": self.N, "gPlus": self.gPlus, "prec": self.prec,
                "provenance": self.provenance,
                "forms": [list(f.coeffs) for f in self.forms]}


def default_data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else Path(__file__).with_name("data")


def fixture_path(N: int, data_dir: Path | str | None = None) -> Path:
    return Path(data_dir or default_data_dir()) / f"N{N}.json"


def available_levels(data_dir: Path | str | None = None) -> list[int]:
    d = Path(data_dir or default_data_dir())
    return sorted(int(p.stem[1:]) for p in d.glob("N*.json") if p.stem[1:].isdigit())


def min_precision(N: int, gPlus: int) -> int:
    return sturm_bound(N, 8 if gPlus == 3 else 6)


def validate(rec: BasisRecord, check_echelon: bool = True) -> BasisRecord:
    if not is_prime(rec.N):
        raise FixtureError(f"N={rec.N} is not prime")
    expected = genus_plus(rec.N)
    if rec.gPlus != expected or len(rec.forms) != expected:
        raise FixtureError(f"genus mismatch at N={rec.N}: genus_plus is {expected}, "
                           f"record declares {rec.gPlus} with {len(rec.forms)} forms")
    precs = {f.prec for f in rec.forms}
    if len(precs) != 1:
        raise FixtureError(f"forms have differing precisions {sorted(precs)}")
    need = min_precision(rec.N, rec.gPlus) if rec.gPlus in (3, 4) else 1
    if rec.prec < need:
        raise FixtureError(f"insufficient precision at N={rec.N}: {rec.prec} < {need}")
    if check_echelon:
        last = -1
        for i, f in enumerate(rec.forms):
            pivot = next((n for n, c in enumerate(f.coeffs) if c), None)
            if pivot is None or pivot <= last:
                raise FixtureError(f"form {i} breaks echelon order (pivot {pivot})")
            if math.gcd(*f.coeffs) != 1 or f.coeffs[pivot] < 0:
                raise FixtureError(f"form {i} is not primitive with positive pivot")
            if any(g.coeffs[pivot] for j, g in enumerate(rec.forms) if j != i):
                raise FixtureError(f"pivot column q^{pivot + 1} of form {i} is not cleared")
            last = pivot
    return rec


def parse_basis(obj: dict, check_echelon: bool = True) -> BasisRecord:
    try:
        N = int(obj["N"])
        g = int(obj["gPlus"])
        forms = []
        for row in obj["forms"]:
            for c in row:
                if not isinstance(c, int) or isinstance(c, bool):
                    raise FixtureError(f"non-integer coefficient {c!r}")
            forms.append(QSeries(tuple(row)))
        declared = obj.get("prec")
    except (KeyError, TypeError) as exc:
        raise FixtureError(f"malformed fixture: {exc}") from exc
    if not forms:
        raise FixtureError("fixture holds no forms")
    rec = BasisRecord(N, g, tuple(forms), str(obj.get("provenance", "")))
    if declared is not None and any(f.prec != declared for f in forms):
        raise FixtureError(f"declared prec {declared} disagrees with coefficient arrays")
    return validate(rec, check_echelon)


def load_basis(path: Path | str) -> BasisRecord:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: not valid JSON ({exc})") from exc
    return parse_basis(obj)


def load_level(N: int, data_dir: Path | str | None = None) -> BasisRecord:
    path = fixture_path(N, data_dir)
    if not path.exists():
        raise FixtureError(f"no fixture for N={N} in {path.parent} "
                           f"(available: {available_levels(data_dir)})")
    return load_basis(path)


def dumps_basis(rec: BasisRecord) -> str:
    return json.dumps(rec.to_json(), separators=(",", ":")) + "\n"


# ------------------------------------------------------------------ numerics


def tail_bound(terms: int, im_tau: float) -> float:
    """sum_{n > terms} n^2 e^{-2 pi n Im(tau)}, in closed form."""
    r = math.exp(-2 * math.pi * im_tau)
    m = terms + 1
    if r >= 1:
        return math.inf
    head = r**m
    return head * (m * m / (1 - r) + 2 * m * r / (1 - r) ** 2 + r * (1 + r) / (1 - r) ** 3)


@dataclass(frozen=True)
class FrickeReport:
    form: int
    max_deviation: float
    tail: float
    status: str  # "pass", "fail" or "inconclusive"


def fricke_samples(N: int, count: int) -> list[complex]:
    """Points on |tau| = 1/sqrt(N) with arguments in [pi/3, 2pi/3], avoiding i/sqrt(N)."""
    thetas = np.linspace(math.pi / 3, 2 * math.pi / 3, count + 2)[1:-1]
    thetas = [t if abs(t - math.pi / 2) > 1e-3 else t + 0.05 for t in thetas]
    return [cmath.rect(1 / math.sqrt(N), t) for t in thetas]


def fricke_check(basis: BasisRecord, sample_count: int = 8, tol: float = 1e-8) -> list[FrickeReport]:
    """Numerically test f(-1/(N tau)) = N tau^2 f(tau) for each basis form."""
    N = basis.N
    coeffs = basis.coefficient_matrix()
    devs = np.zeros(basis.gPlus)
    tails = np.zeros(basis.gPlus)
    for tau in fricke_samples(N, sample_count):
        if abs(tau - 1j / math.sqrt(N)) < 1e-9:
            raise ValueError("sample at the Fricke fixed point")
        img = -1 / (N * tau)
        lhs, lmag = _kernels.series_values(coeffs, img)
        rhs0, rmag = _kernels.series_values(coeffs, tau)
        rhs = N * tau * tau * rhs0
        tail = tail_bound(basis.prec, min(tau.imag, img.imag))
        scale = np.maximum(np.abs(lhs), np.abs(rhs))
        err = (tail + 1e-15 * lmag) + N * abs(tau) ** 2 * (tail + 1e-15 * rmag)
        devs = np.maximum(devs, np.abs(lhs - rhs) / scale)
        tails = np.maximum(tails, err / scale)
    out = []
    for i in range(basis.gPlus):
        if tails[i] > tol / 10:
            status = "inconclusive"
        else:
            status = "pass" if devs[i] < tol else "fail"
        out.append(FrickeReport(i, float(devs[i]), float(tails[i]), status))
    return out


def replace_form(basis: BasisRecord, index: int, coeffs: Sequence[int]) -> BasisRecord:
    forms = list(basis.forms)
    forms[index] = QSeries(tuple(int(c) for c in coeffs))
    return BasisRecord(basis.N, basis.gPlus, tuple(forms), basis.provenance)
