"""Minimal exterior algebra of 3D Euclidean space.

Vectors live on the basis ``(i, j, k)``; bivectors on
``(e_x^e_y, e_x^e_z, e_y^e_z)``, stored in that order as
``(b_xy, b_xz, b_yz)``. With this convention ``i^j`` is ``(1, 0, 0)``,
``i^k`` is ``(0, 1, 0)`` and ``j^i`` is ``(-1, 0, 0)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


class DegenerateBladeError(ValueError):
    """A zero bivector was given where a plane was required."""

    def __init__(self, msg: str = "degenerate blade"):
        super().__init__(msg)


def _check_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"non-finite component: {v!r}")


@dataclass(frozen=True, slots=True)
class Vector3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        _check_finite(self.x, self.y, self.z)

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def __add__(self, other: Vector3) -> Vector3:
        return Vector3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: Vector3) -> Vector3:
        return Vector3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, s: float) -> Vector3:
        return Vector3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def __neg__(self) -> Vector3:
        return Vector3(-self.x, -self.y, -self.z)

    def dot(self, other: Vector3) -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def norm(self) -> float:
        return math.sqrt(self.dot(self))


@dataclass(frozen=True, slots=True)
class Bivector3:
    b_xy: float
    b_xz: float
    b_yz: float

    def __post_init__(self):
        _check_finite(self.b_xy, self.b_xz, self.b_yz)

    def __iter__(self):
        yield self.b_xy
        yield self.b_xz
        yield self.b_yz

    def __add__(self, other: Bivector3) -> Bivector3:
        return Bivector3(self.b_xy + other.b_xy, self.b_xz + other.b_xz,
                         self.b_yz + other.b_yz)

    def __sub__(self, other: Bivector3) -> Bivector3:
        return Bivector3(self.b_xy - other.b_xy, self.b_xz - other.b_xz,
                         self.b_yz - other.b_yz)

    def __mul__(self, s: float) -> Bivector3:
        return Bivector3(self.b_xy * s, self.b_xz * s, self.b_yz * s)

    __rmul__ = __mul__

    def __neg__(self) -> Bivector3:
        return Bivector3(-self.b_xy, -self.b_xz, -self.b_yz)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.b_xy, self.b_xz, self.b_yz)


I = Vector3(1.0, 0.0, 0.0)
J = Vector3(0.0, 1.0, 0.0)
K = Vector3(0.0, 0.0, 1.0)

# Named unit blades used throughout the analysis.
I_WEDGE_J = Bivector3(1.0, 0.0, 0.0)
I_WEDGE_K = Bivector3(0.0, 1.0, 0.0)
J_WEDGE_I = Bivector3(-1.0, 0.0, 0.0)
J_WEDGE_K = Bivector3(0.0, 0.0, 1.0)


def wedge(u: Vector3, v: Vector3) -> Bivector3:
    """Outer product ``u ^ v``."""
    return Bivector3(
        u.x * v.y - u.y * v.x,
        u.x * v.z - u.z * v.x,
        u.y * v.z - u.z * v.y,
    )


def bivector_norm(b: Bivector3) -> float:
    return math.sqrt(b.b_xy * b.b_xy + b.b_xz * b.b_xz + b.b_yz * b.b_yz)


def normalize(b: Bivector3) -> Bivector3:
    """Return ``b / |b|``.

    Raises
    ------
    DegenerateBladeError
        If ``b`` is the zero bivector.
    """
    nrm = bivector_norm(b)
    if nrm == 0.0:
        raise DegenerateBladeError()
    return Bivector3(b.b_xy / nrm, b.b_xz / nrm, b.b_yz / nrm)


def bivector_scalar_product(a: Bivector3, b: Bivector3) -> float:
    """Euclidean inner product of bivector components."""
    return a.b_xy * b.b_xy + a.b_xz * b.b_xz + a.b_yz * b.b_yz


def plane_angle(a: Bivector3, b: Bivector3, up_to_sign: bool = False) -> float:
    """Angle in radians between the planes of two nonzero bivectors.

    Returns a value in ``[0, pi]``, or ``[0, pi/2]`` when ``up_to_sign`` is
    set (orientation ignored). Mathematically this is the arccos of the
    clamped normalized scalar product; it is evaluated as
    ``atan2(|a x b|, a . b)`` on the component triples so that angles near 0
    and near pi keep full relative precision.
    """
    na = bivector_norm(a)
    nb = bivector_norm(b)
    if na == 0.0 or nb == 0.0:
        raise DegenerateBladeError()
    ax, ay, az = a.b_xy / na, a.b_xz / na, a.b_yz / na
    bx, by, bz = b.b_xy / nb, b.b_xz / nb, b.b_yz / nb
    cos = max(-1.0, min(1.0, ax * bx + ay * by + az * bz))
    cx = ay * bz - az * by
    cy = az * bx - ax * bz
    cz = ax * by - ay * bx
    sin = min(1.0, math.sqrt(cx * cx + cy * cy + cz * cz))
    if up_to_sign:
        cos = abs(cos)
    return math.atan2(sin, cos)
