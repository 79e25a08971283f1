"""Reference N = 137 data: model, labelled points and planes, in coordinates (W, X, Y, Z).

Kept separate from the q-expansion fixtures so the geometric claims can be
checked without going through modular forms at all.
"""
from __future__ import annotations

from .model import CanonicalModel, HomogeneousPoly

VARIABLES = ("W", "X", "Y", "Z")

QUADRIC = "XY + WY + 2Y^2 + 2WZ + XZ + 6YZ + 3Z^2"
CUBIC = ("X^3 + WX^2 + 6X^2Z - 2XY^2 - 5XYZ + XZW + 13XZ^2 + 2Y^3"
         " + 3WY^2 + W^2Y + 3WYZ - 6YZ^2 + ZW^2 - 4Z^2W + 14Z^3")

# discriminant -> point as printed (not yet normalized)
TABLE = {
    0: (1, 0, 0, 0),
    -4: (2, -4, -3, 2),
    -7: (2, -1, -2, 1),
    -8: (-1, 1, 0, 0),
    -11: (1, 1, -1, 0),
    -16: (2, 0, -1, 0),
    -19: (1, -2, -1, 1),
    -28: (0, 1, 2, -1),
}
EXCEPTIONAL = (19, 2, -16, 4)

# plane normal (coefficients of W, X, Y, Z) -> reference divisor, in the rendering notation
PLANES = {
    (0, 0, 0, 1): "2(0) + 2(-8) + (-11) + (-16)",
    (1, 1, 2, 3): "(-7) + (-8) + 2(-11) + (-16) + (-19)",
    (0, 1, 1, 3): "(0) + 2(-7) + (-11) + (-19) + (-28)",
}
EXCEPTIONAL_PLANE = (0, 2, 2, 7)
EXCEPTIONAL_PLANE_RESIDUAL_DISCRIMINANT = 8
LINES = ((-7, -11, -19), (-8, -11, -16))


def golden_model() -> CanonicalModel:
    return CanonicalModel(137, 4, (HomogeneousPoly.parse(QUADRIC, VARIABLES),
                                   HomogeneousPoly.parse(CUBIC, VARIABLES)))


def golden_points() -> list[tuple[int, ...]]:
    from .points import normalize
    return sorted([normalize(p) for p in TABLE.values()] + [normalize(EXCEPTIONAL)])


def golden_labels() -> dict[tuple[int, ...], int]:
    from .points import normalize
    return {normalize(p): D for D, p in TABLE.items()}
