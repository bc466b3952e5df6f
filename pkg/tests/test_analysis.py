import math

import pytest

import oracles
from lantern_ga.analysis import (M_MAX, NotConvergedError, Schedule, ScheduleError, ScheduleKind,
                                 Verdict, area_sequence, mixture_limit, projected_area,
                                 projected_area_closed_form, pseudoscalar_asymptotic,
                                 pseudoscalar_estimate, run_schedule, tangent_pseudoscalar,
                                 well_definedness_probe)
from lantern_ga.ga3 import (I_WEDGE_K, J_WEDGE_I, J_WEDGE_K, Bivector3, Vector3, bivector_norm,
                            plane_angle)
from lantern_ga.lantern import LanternParams, generate_lantern

M_EQ_N = Schedule.m_eq_n()
M_EQ_N3 = Schedule.m_eq_n_cubed()
MIX = Schedule.m_eq_c_n_squared(0)
BUILTINS = [M_EQ_N, M_EQ_N3, MIX]


def oracle_angle_to(n, m, a, target):
    b = oracles.apex_pseudoscalar(n, m, a)
    return plane_angle(Bivector3(*map(float, b)), target, up_to_sign=True)


# -- schedules ---------------------------------------------------------------

def test_schedule_maps():
    assert [M_EQ_N.m_for(2**i) for i in (2, 3)] == [4, 8]
    assert M_EQ_N3.m_for(16) == 4096
    assert MIX.m_for(16) == 256
    assert Schedule.m_eq_c_n_squared(3).m_for(16) == 2048
    assert Schedule.m_eq_c_n_squared(-2).m_for(16) == 64
    assert Schedule.custom({4: 7}).m_for(4) == 7
    assert Schedule.custom(lambda n: 3 * n).m_for(8) == 24


@pytest.mark.parametrize("s", BUILTINS + [Schedule.m_eq_c_n_squared(-3)])
def test_builtin_schedules_give_powers_of_two(s):
    for i in range(2, 13):
        m = s.m_for(2**i)
        assert m >= 1 and m & (m - 1) == 0


def test_schedule_errors():
    with pytest.raises(ScheduleError):
        Schedule.m_eq_c_n_squared(9)
    with pytest.raises(ScheduleError):
        Schedule.m_eq_c_n_squared(-8).m_for(4)
    with pytest.raises(ScheduleError):
        M_EQ_N3.m_for(2**21)
    assert M_EQ_N3.m_for(2**20) == 2**60 <= M_MAX
    with pytest.raises(ScheduleError):
        Schedule.custom({4: 7}).m_for(8)
    with pytest.raises(ScheduleError):
        Schedule.custom(lambda n: 0).m_for(8)
    with pytest.raises(ScheduleError):
        Schedule(ScheduleKind.CUSTOM)


def test_schedule_parse():
    assert Schedule.parse("m=n") == M_EQ_N
    assert Schedule.parse("m=n^3") == M_EQ_N3
    assert Schedule.parse("m=c*n^2", 0) == MIX
    with pytest.raises(ScheduleError):
        Schedule.parse("m=c*n^2")
    with pytest.raises(ScheduleError):
        Schedule.parse("m=n^2")


# -- pseudoscalar sequences --------------------------------------------------

def test_estimate_matches_high_precision_oracle():
    for n, m, a in [(4, 4, 1), (1024, 1024, 1), (4096, 2**36, 1), (2**20, 2**60, 2.0), (64, 8192, 0.5)]:
        got = pseudoscalar_estimate(n, m, a)
        want = oracles.apex_pseudoscalar(n, m, a)
        assert all(abs(g - float(w)) <= 4e-16 for g, w in zip(got, want))


def test_estimate_m_eq_n():
    n = 2**10
    angle = plane_angle(pseudoscalar_estimate(n, n, 1.0), I_WEDGE_K, up_to_sign=True)
    # leading order: atan(pi^2 / (2n))
    assert angle == pytest.approx(oracle_angle_to(n, n, 1, I_WEDGE_K), rel=1e-12)
    assert angle == pytest.approx(math.atan(math.pi**2 / (2 * n)), rel=1e-5)
    assert 4.8e-3 < angle < 4.9e-3


def test_estimate_m_eq_n_cubed():
    n = 2**10
    angle = plane_angle(pseudoscalar_estimate(n, n**3, 1.0), J_WEDGE_I, up_to_sign=True)
    assert angle < 1e-2
    assert angle == pytest.approx(2 / (math.pi**2 * n), rel=1e-5)


def test_estimate_mixture():
    n = 2**10
    got = pseudoscalar_estimate(n, n * n, 1.0)
    want = [float(x) for x in oracles.mixture_limit(1, 1)]
    assert all(abs(g - w) < 1e-4 for g, w in zip(got, want))
    assert want[0] == pytest.approx(-0.98007, abs=1e-5)
    assert want[1] == pytest.approx(0.19861, abs=1e-5)


def test_asymptotic_equal_coefficients():
    n, m = 8, 16
    a = (math.pi / n) ** 2 * m / 2
    b = pseudoscalar_asymptotic(n, m, a)
    s = 1 / math.sqrt(2)
    assert all(abs(x - y) < 1e-15 for x, y in zip(b, (-s, s, 0.0)))


def test_asymptotic_m_eq_n():
    n = 2**10
    b = pseudoscalar_asymptotic(n, n, 1.0)
    r = math.pi**2 / (2 * n)
    assert b.b_xy == pytest.approx(-r / math.sqrt(1 + r * r), rel=1e-14)
    assert plane_angle(b, I_WEDGE_K) == pytest.approx(math.atan(math.pi**2 / (2 * n)), rel=1e-14)


@pytest.mark.parametrize("s", BUILTINS, ids=lambda s: s.label)
def test_exact_vs_asymptotic_is_second_order(s):
    rep = run_schedule(s, 1.0, 2, 20)
    angles = [plane_angle(st.pseudoscalar_exact, st.pseudoscalar_asymptotic) for st in rep.steps]
    for st, ang in zip(rep.steps, angles):
        if st.n >= 16:
            assert ang * st.n**2 <= 10.0
    tail = angles[2:]  # i >= 4
    assert all(x > y for x, y in zip(tail, tail[1:]))


def test_unit_norm_of_steps():
    for s in BUILTINS:
        for st in run_schedule(s, 1.0, 2, 20).steps:
            assert abs(bivector_norm(st.pseudoscalar_exact) - 1) <= 1e-14


def test_run_schedule_m_eq_n_at_desk_scale():
    rep = run_schedule(M_EQ_N, 1.0, 2, 12, I_WEDGE_K)
    assert rep.target_angle == pytest.approx(oracle_angle_to(4096, 4096, 1, I_WEDGE_K), rel=1e-12)
    assert rep.target_angle == pytest.approx(1.2047850515e-3, rel=1e-9)
    # final gap 1.2e-3 misses the 1e-3 Cauchy bound at n = 4096
    assert rep.steps[-1].angle_to_prev > 1e-3
    assert not rep.cauchy_ok


def test_run_schedule_m_eq_n_refined():
    rep = run_schedule(M_EQ_N, 1.0, 2, 20, I_WEDGE_K)
    assert rep.cauchy_ok
    assert rep.target_angle < 1e-5


def test_run_schedule_m_eq_n_cubed():
    rep = run_schedule(M_EQ_N3, 1.0, 2, 12, J_WEDGE_I)
    assert rep.cauchy_ok
    assert rep.target_angle < 1e-4
    assert rep.target_angle == pytest.approx(oracle_angle_to(4096, 2**36, 1, J_WEDGE_I), rel=1e-12)


def test_run_schedule_mixture():
    rep = run_schedule(MIX, 1.0, 2, 12, mixture_limit(1.0, 1.0))
    assert rep.cauchy_ok
    want = [float(x) for x in oracles.mixture_limit(1, 1)]
    assert all(abs(g - w) < 1e-4 for g, w in zip(rep.limit_estimate, want))


def test_run_schedule_report_shape():
    rep = run_schedule(M_EQ_N3, 1.0, 3, 7)
    assert [st.i for st in rep.steps] == [3, 4, 5, 6, 7]
    assert rep.steps[0].angle_to_prev is None
    assert rep.target is None and rep.target_angle is None
    assert rep.limit_estimate == rep.steps[-1].pseudoscalar_exact
    d = rep.to_dict()
    assert d["schedule"]["kind"] == "M_EQ_N_CUBED"
    assert len(d["steps"]) == 5


def test_run_schedule_few_steps_not_cauchy():
    assert not run_schedule(M_EQ_N3, 1.0, 8, 11).cauchy_ok
    assert run_schedule(M_EQ_N3, 1.0, 8, 12).cauchy_ok


@pytest.mark.parametrize("i_min, i_max", [(1, 5), (5, 5), (6, 3)])
def test_run_schedule_bad_range(i_min, i_max):
    with pytest.raises(ScheduleError):
        run_schedule(M_EQ_N, 1.0, i_min, i_max)


def test_run_schedule_overflow():
    with pytest.raises(ScheduleError):
        run_schedule(M_EQ_N3, 1.0, 2, 21)


def test_signed_comparison():
    rep = run_schedule(M_EQ_N, 1.0, 2, 12, -I_WEDGE_K, up_to_sign=False)
    assert rep.target_angle > math.pi - 2e-3


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_limit_independent_of_height(a):
    assert run_schedule(M_EQ_N, a, 2, 20, I_WEDGE_K).target_angle < 1e-5
    assert run_schedule(M_EQ_N3, a, 2, 20, J_WEDGE_I).target_angle < 1e-4


@pytest.mark.parametrize("a, c_exp", [(1.0, 0), (1.0, 1), (2.0, 0)])
def test_mixture_limit_depends_on_a_and_c(a, c_exp):
    s = Schedule.m_eq_c_n_squared(c_exp)
    want = [float(x) for x in oracles.mixture_limit(a, 2**c_exp)]
    got = run_schedule(s, a, 2, 12).limit_estimate
    assert all(abs(g - w) < 1e-4 for g, w in zip(got, want))
    assert all(abs(g - w) < 1e-15 for g, w in zip(mixture_limit(a, 2.0**c_exp), want))


# -- areas -------------------------------------------------------------------

def test_area_sequence_m_eq_n():
    n, m, area = area_sequence(M_EQ_N, 1.0, 1.0, 2, 12)[-1]
    assert (n, m) == (4096, 4096)
    assert area == pytest.approx(2 * math.pi, rel=1e-4)
    assert area == pytest.approx(float(oracles.closed_form_area(n, m, 1)), rel=1e-14)


def test_area_sequence_mixture():
    area = area_sequence(MIX, 1.0, 1.0, 2, 12)[-1][2]
    assert area == pytest.approx(2 * math.pi * math.sqrt(1 + math.pi**4 / 4), rel=1e-3)


def test_area_sequence_diverges_for_m_eq_n_cubed():
    seq = area_sequence(M_EQ_N3, 1.0, 1.0, 10, 12)
    ratios = [area / n for n, _, area in seq]
    assert ratios[-1] == pytest.approx(math.pi**3, rel=1e-3)
    assert abs(ratios[-1] - ratios[-2]) < abs(ratios[-2] - ratios[-3])


def test_area_separation():
    a_n = area_sequence(M_EQ_N, 1.0, 1.0, 2, 12)[-1][2]
    a_mix = area_sequence(MIX, 1.0, 1.0, 2, 12)[-1][2]
    assert a_n < a_mix


def test_area_sequence_scales_with_radius():
    n, m, area = area_sequence(M_EQ_N, 1.0, 3.0, 2, 12)[-1]
    assert area == pytest.approx(float(oracles.closed_form_area(n, m, 1, 3)), rel=1e-13)
    assert area == pytest.approx(2 * math.pi * 3.0, rel=1e-4)


# -- tangent plane estimator -------------------------------------------------

def test_tangent_pseudoscalar_examples():
    t = tangent_pseudoscalar(Vector3(0.0, 1.0, 0.0))
    assert tuple(t) == (0.0, -1.0, 0.0)
    assert plane_angle(t, I_WEDGE_K, up_to_sign=True) == 0.0
    assert tangent_pseudoscalar(Vector3(1.0, 0.0, 0.3)) == J_WEDGE_K
    assert tuple(tangent_pseudoscalar(Vector3(0.0, 2.0, 0.0), 2.0)) == (0.0, -1.0, 0.0)
    with pytest.raises(ValueError):
        tangent_pseudoscalar(Vector3(0.5, 0.5, 0.0))


def test_tangent_pseudoscalar_is_outward():
    for th in (0.1, 1.0, 2.5, 4.0):
        p = Vector3(math.cos(th), math.sin(th), 0.0)
        t = tangent_pseudoscalar(p)
        normal = (t.b_yz, -t.b_xz, t.b_xy)
        assert normal[0] * p.x + normal[1] * p.y == pytest.approx(1.0)


def test_projected_area_m_eq_n():
    mesh = generate_lantern(LanternParams(n=64, m=64))
    assert projected_area(mesh, 1.0) == pytest.approx(2 * math.pi, rel=1e-2)


def test_projected_area_steep_schedule():
    mesh = generate_lantern(LanternParams(n=16, m=2**12))
    assert projected_area(mesh, 1.0) == pytest.approx(2 * math.pi, rel=5e-2)


def test_projected_area_vanishes_with_height():
    for a in (1e-3, 1e-6, 1e-9):
        mesh = generate_lantern(LanternParams(n=32, m=8, a=a))
        assert projected_area(mesh) == pytest.approx(2 * math.pi * a, rel=1e-2)


def test_projected_area_radius_check():
    mesh = generate_lantern(LanternParams(n=8, m=2, radius=2.0))
    assert projected_area(mesh, 2.0) == pytest.approx(projected_area_closed_form(mesh.params))
    with pytest.raises(ValueError):
        projected_area(mesh, 1.0)


@pytest.mark.parametrize("s", BUILTINS, ids=lambda s: s.label)
def test_projected_area_schedule_independent(s):
    # closed form along each schedule: 2 n a R sin(pi/n) -> 2 pi a R
    for st in run_schedule(s, 1.0, 2, 12).steps:
        assert st.projected_area == pytest.approx(2 * st.n * math.sin(math.pi / st.n), rel=1e-12)
    assert st.projected_area == pytest.approx(2 * math.pi, rel=1e-6)


# -- well-definedness probe --------------------------------------------------

def test_probe_withheld_at_desk_scale():
    with pytest.raises(NotConvergedError, match="m=n"):
        well_definedness_probe(M_EQ_N, M_EQ_N3, 1.0, 12, 0.1)


def test_probe_orthogonal_limits():
    res = well_definedness_probe(M_EQ_N, M_EQ_N3, 1.0, 20, 0.1)
    assert res.verdict is Verdict.DISAGREE
    assert res.separation == pytest.approx(math.pi / 2, abs=1e-3)


def test_probe_mixture():
    res = well_definedness_probe(M_EQ_N, MIX, 1.0, 20, 0.1)
    assert res.verdict is Verdict.DISAGREE
    assert res.separation == pytest.approx(float(oracles.mixture_angle_to_ixk()), abs=1e-3)


def test_probe_identical_schedules_agree():
    res = well_definedness_probe(M_EQ_N3, M_EQ_N3, 1.0, 12, 0.1)
    assert res.verdict is Verdict.AGREE
    assert res.separation == 0.0
    res = well_definedness_probe(M_EQ_N, M_EQ_N, 1.0, 20, 0.1)
    assert res.verdict is Verdict.AGREE


def test_probe_n_cubed_vs_mixture():
    res = well_definedness_probe(M_EQ_N3, MIX, 1.0, 12, 0.1)
    assert res.verdict is Verdict.DISAGREE
    # angle between j^i and the mixture blade
    want = float(oracles.acos(-oracles.mixture_limit(1, 1)[0]))
    assert res.separation == pytest.approx(want, abs=1e-3)


# -- range limits ------------------------------------------------------------

def test_top_of_range_is_finite():
    n, m = 2**20, 2**60
    values = [*pseudoscalar_estimate(n, m, 1.0), *pseudoscalar_asymptotic(n, m, 1.0),
              projected_area_closed_form(LanternParams(n=n, m=m))]
    for s in BUILTINS:
        rep = run_schedule(s, 1.0, 18, 20)
        values += [st.area for st in rep.steps] + [st.projected_area for st in rep.steps]
    assert all(math.isfinite(v) for v in values)
