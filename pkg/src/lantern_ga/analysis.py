"""Refinement schedules and the limit of inscribed-triangle pseudoscalars.

A schedule couples the band count ``m`` to the angular count ``n = 2**i``.
Along a schedule the unit bivector of the apex triangle at ``(0, 1, 0)`` is
tracked; different schedules drive it to different planes.
"""
from __future__ import annotations

import enum
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field

from .ga3 import (I_WEDGE_K, J_WEDGE_I, K, Bivector3, Vector3,
                  bivector_scalar_product, normalize, plane_angle, wedge)
from . import kernels
from .lantern import (LanternParams, TriangleMesh, apex_edges, closed_form_area)

M_MAX = 2**62
CAUCHY_WINDOW = 4
CAUCHY_FINAL_GAP = 1e-3
C_EXP_RANGE = (-8, 8)


class ScheduleError(ValueError):
    pass


class NotConvergedError(RuntimeError):
    """A schedule failed the Cauchy test, so no verdict can be given."""

    def __init__(self, msg: str, reports=()):
        super().__init__(msg)
        self.reports = tuple(reports)


class ScheduleKind(enum.Enum):
    M_EQ_N = "m=n"
    M_EQ_N_CUBED = "m=n^3"
    M_EQ_C_N_SQUARED = "m=c*n^2"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Schedule:
    kind: ScheduleKind
    c_exp: int = 0
    custom_map: Callable[[int], int] | Mapping[int, int] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind is ScheduleKind.M_EQ_C_N_SQUARED:
            lo, hi = C_EXP_RANGE
            if not isinstance(self.c_exp, int) or not lo <= self.c_exp <= hi:
                raise ScheduleError(f"c_exp must be an integer in [{lo}, {hi}], got {self.c_exp!r}")
        if self.kind is ScheduleKind.CUSTOM and self.custom_map is None:
            raise ScheduleError("custom schedule needs a map n -> m")

    @classmethod
    def m_eq_n(cls) -> Schedule:
        return cls(ScheduleKind.M_EQ_N)

    @classmethod
    def m_eq_n_cubed(cls) -> Schedule:
        return cls(ScheduleKind.M_EQ_N_CUBED)

    @classmethod
    def m_eq_c_n_squared(cls, c_exp: int = 0) -> Schedule:
        return cls(ScheduleKind.M_EQ_C_N_SQUARED, c_exp=c_exp)

    @classmethod
    def custom(cls, mapping: Callable[[int], int] | Mapping[int, int]) -> Schedule:
        return cls(ScheduleKind.CUSTOM, custom_map=mapping)

    @classmethod
    def parse(cls, text: str, c_exp: int | None = None) -> Schedule:
        """Parse ``m=n``, ``m=n^3`` or ``m=c*n^2`` (the last needs ``c_exp``)."""
        try:
            kind = ScheduleKind(text.strip().replace(" ", ""))
        except ValueError:
            raise ScheduleError(f"unknown schedule {text!r}") from None
        if kind is ScheduleKind.CUSTOM:
            raise ScheduleError("custom schedules are built with Schedule.custom")
        if kind is ScheduleKind.M_EQ_C_N_SQUARED:
            if c_exp is None:
                raise ScheduleError("schedule m=c*n^2 requires c_exp")
            return cls.m_eq_c_n_squared(c_exp)
        return cls(kind)

    @property
    def c(self) -> float:
        return 2.0**self.c_exp

    @property
    def label(self) -> str:
        if self.kind is ScheduleKind.M_EQ_C_N_SQUARED:
            return f"m=c*n^2 (c=2^{self.c_exp})"
        return self.kind.value

    def m_for(self, n: int) -> int:
        if self.kind is ScheduleKind.M_EQ_N:
            m = n
        elif self.kind is ScheduleKind.M_EQ_N_CUBED:
            m = n**3
        elif self.kind is ScheduleKind.M_EQ_C_N_SQUARED:
            sq = n * n
            if self.c_exp >= 0:
                m = sq << self.c_exp
            elif sq % (1 << -self.c_exp):
                raise ScheduleError(f"c*n^2 is not an integer at n={n}, c=2^{self.c_exp}")
            else:
                m = sq >> -self.c_exp
        elif callable(self.custom_map):
            m = self.custom_map(n)
        else:
            try:
                m = self.custom_map[n]
            except KeyError:
                raise ScheduleError(f"custom schedule has no entry for n={n}") from None
        if not isinstance(m, int) or m < 1:
            raise ScheduleError(f"schedule gave invalid m={m!r} at n={n}")
        if m > M_MAX:
            raise ScheduleError(f"m={m} at n={n} overflows the supported range (2^62)")
        return m

    def to_dict(self) -> dict:
        d = {"kind": self.kind.name, "label": self.label}
        if self.kind is ScheduleKind.M_EQ_C_N_SQUARED:
            d["c_exp"] = self.c_exp
        return d


@dataclass(frozen=True)
class RefinementStep:
    i: int
    n: int
    m: int
    pseudoscalar_exact: Bivector3
    pseudoscalar_asymptotic: Bivector3
    area: float
    projected_area: float
    angle_to_prev: float | None = None
    angle_to_target: float | None = None


@dataclass(frozen=True)
class ConvergenceReport:
    schedule: Schedule
    a: float
    steps: tuple[RefinementStep, ...]
    cauchy_ok: bool
    target: Bivector3 | None = None
    target_angle: float | None = None

    @property
    def limit_estimate(self) -> Bivector3:
        return self.steps[-1].pseudoscalar_exact

    def to_dict(self) -> dict:
        return {
            "schedule": self.schedule.to_dict(),
            "a": self.a,
            "steps": [
                {
                    "i": s.i, "n": s.n, "m": s.m,
                    "pseudoscalar_exact": list(s.pseudoscalar_exact),
                    "pseudoscalar_asymptotic": list(s.pseudoscalar_asymptotic),
                    "area": s.area,
                    "projected_area": s.projected_area,
                    "angle_to_prev": s.angle_to_prev,
                    "angle_to_target": s.angle_to_target,
                }
                for s in self.steps
            ],
            "limit_estimate": list(self.limit_estimate),
            "cauchy_ok": self.cauchy_ok,
            "target": None if self.target is None else list(self.target),
            "target_angle": self.target_angle,
        }


def _analysis_params(n: int, m: int, a: float) -> LanternParams:
    return LanternParams(n=n, m=m, a=a, radius=1.0)


def pseudoscalar_estimate(n: int, m: int, a: float = 1.0) -> Bivector3:
    """Unit bivector of the apex triangle at (0, 1, 0) on the unit cylinder."""
    r, s = apex_edges(_analysis_params(n, m, a))
    return normalize(wedge(r, s))


def pseudoscalar_asymptotic(n: int, m: int, a: float = 1.0) -> Bivector3:
    """Leading-order form ``(pi/n) * ((pi/n)^2 j^i + (2a/m) i^k)``, normalized."""
    _analysis_params(n, m, a)
    t = math.pi / n
    return normalize(Bivector3(-(t**3), t * (2.0 * a / m), 0.0))


def mixture_limit(a: float = 1.0, c: float = 1.0) -> Bivector3:
    """Limit blade of the schedule ``m = c n^2``."""
    return normalize(Bivector3(-(math.pi**2), 2.0 * a / c, 0.0))


def tangent_pseudoscalar(point: Vector3, R: float = 1.0) -> Bivector3:
    """Unit tangent bivector ``t ^ k`` of the cylinder at ``point``.

    ``t`` is the counterclockwise unit tangent of the circle, so the dual
    points outward. At (0, 1, 0) this is ``-i^k``.
    """
    if abs(math.hypot(point.x, point.y) - R) > 1e-9 * max(1.0, R):
        raise ValueError(f"point {tuple(point)} is off the cylinder of radius {R}")
    t = Vector3(-point.y / R, point.x / R, 0.0)
    return normalize(wedge(t, K))


def projected_area(mesh: TriangleMesh, R: float | None = None) -> float:
    """Sum of triangle areas projected onto the cylinder's tangent planes.

    Each triangle is projected onto the tangent plane at its centroid pushed
    radially out to the cylinder.
    """
    if R is not None and R != mesh.params.radius:
        raise ValueError(f"mesh radius {mesh.params.radius} != R={R}")
    return kernels.impl.projected_area(mesh.vertices, mesh.triangles)


def projected_area_closed_form(p: LanternParams) -> float:
    """Projected area from one triangle, using the lantern's congruence.

    Every triangle is an isometric copy of the apex triangle about its own
    meridian, so the total is ``2nm`` times the apex triangle's share.
    """
    r, s = apex_edges(p)
    b = wedge(r, s) * 0.5
    R = float(p.radius)
    t = tangent_pseudoscalar(Vector3(0.0, R, 0.0), R)
    return 2.0 * p.n * float(p.m) * abs(bivector_scalar_product(b, t))


def _check_range(i_min: int, i_max: int) -> None:
    if not (isinstance(i_min, int) and isinstance(i_max, int)) or not 2 <= i_min < i_max:
        raise ScheduleError(f"need integers 2 <= i_min < i_max, got {i_min}, {i_max}")


def is_cauchy(gaps: list[float]) -> bool:
    """Last ``CAUCHY_WINDOW`` gaps strictly decreasing, final gap small."""
    if len(gaps) < CAUCHY_WINDOW:
        return False
    tail = gaps[-CAUCHY_WINDOW:]
    return all(x > y for x, y in zip(tail, tail[1:])) and tail[-1] < CAUCHY_FINAL_GAP


def run_schedule(s: Schedule, a: float = 1.0, i_min: int = 2, i_max: int = 12,
                 target: Bivector3 | None = None, up_to_sign: bool = True) -> ConvergenceReport:
    """Follow the apex pseudoscalar along ``n = 2**i``, ``m = s(n)``."""
    _check_range(i_min, i_max)
    steps = []
    prev = None
    for i in range(i_min, i_max + 1):
        n = 2**i
        m = s.m_for(n)
        p = _analysis_params(n, m, a)
        exact = pseudoscalar_estimate(n, m, a)
        steps.append(RefinementStep(
            i=i, n=n, m=m,
            pseudoscalar_exact=exact,
            pseudoscalar_asymptotic=pseudoscalar_asymptotic(n, m, a),
            area=closed_form_area(p),
            projected_area=projected_area_closed_form(p),
            angle_to_prev=None if prev is None else plane_angle(prev, exact, up_to_sign),
            angle_to_target=None if target is None else plane_angle(exact, target, up_to_sign),
        ))
        prev = exact
    gaps = [st.angle_to_prev for st in steps[1:]]
    return ConvergenceReport(
        schedule=s, a=a, steps=tuple(steps), cauchy_ok=is_cauchy(gaps),
        target=target, target_angle=steps[-1].angle_to_target,
    )


def area_sequence(s: Schedule, a: float = 1.0, R: float = 1.0, i_min: int = 2,
                  i_max: int = 12) -> list[tuple[int, int, float]]:
    _check_range(i_min, i_max)
    out = []
    for i in range(i_min, i_max + 1):
        n = 2**i
        m = s.m_for(n)
        out.append((n, m, closed_form_area(LanternParams(n=n, m=m, a=a, radius=R))))
    return out


class Verdict(enum.Enum):
    AGREE = "AGREE"
    DISAGREE = "DISAGREE"


@dataclass(frozen=True)
class ProbeResult:
    verdict: Verdict
    separation: float
    report_a: ConvergenceReport
    report_b: ConvergenceReport

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "separation_rad": self.separation,
            "report_a": self.report_a.to_dict(),
            "report_b": self.report_b.to_dict(),
        }


def well_definedness_probe(s1: Schedule, s2: Schedule, a: float = 1.0, i_max: int = 12,
                           tol_angle: float = 0.1, i_min: int = 2) -> ProbeResult:
    """Compare the limit planes reached by two schedules.

    Raises
    ------
    NotConvergedError
        If either sequence fails the Cauchy test.
    """
    ra = run_schedule(s1, a, i_min, i_max)
    rb = run_schedule(s2, a, i_min, i_max)
    bad = [r.schedule.label for r in (ra, rb) if not r.cauchy_ok]
    if bad:
        raise NotConvergedError(f"sequence not converged: {', '.join(bad)}", (ra, rb))
    sep = plane_angle(ra.limit_estimate, rb.limit_estimate, up_to_sign=True)
    verdict = Verdict.DISAGREE if sep > tol_angle else Verdict.AGREE
    return ProbeResult(verdict, sep, ra, rb)


TARGETS = {
    "ixk": I_WEDGE_K,
    "jxi": J_WEDGE_I,
}
