"""Height-bounded search for rational points on a canonical model."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from . import _kernels
from .linalg import primitive

log = logging.getLogger(__name__)

ProjPoint = tuple[int, ...]


def normalize(raw: Sequence[int]) -> ProjPoint:
    """Primitive integer representative with first nonzero coordinate positive."""
    if not any(raw):
        raise ValueError("the zero vector is not a projective point")
    return primitive([int(x) for x in raw])


def search(model, height: int = 100, workers: int = 1) -> list[ProjPoint]:
    """All points of height <= ``height`` on every model polynomial, sorted.

    The space is split into slabs by the position and value of the first
    nonzero coordinate; slabs are independent and may run on ``workers``
    threads (the numba kernel releases the GIL).
    """
    if height < 1:
        raise ValueError("height must be >= 1")
    g = model.gPlus
    exps, coefs, offsets = _kernels.pack_polys(model.polys)
    exact = not _kernels.fits_int64(model.polys, height)
    if exact:
        log.warning("coefficients too large for int64 at height %d; using exact objects", height)
    slabs = [(lead, v) for lead in range(g) for v in ([1] if lead == g - 1 else range(1, height + 1))]

    def run(slab):
        lead, v = slab
        return _kernels.search_slab(exps, coefs, offsets, g, lead, v, height, exact=exact)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            chunks = list(pool.map(run, slabs))
    else:
        chunks = [run(s) for s in slabs]
    found = {normalize(row.tolist()) for chunk in chunks for row in chunk}
    for p in found:
        assert model.contains(p), p
    return sorted(found)
