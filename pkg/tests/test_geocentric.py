import math
import random

import pytest

from conftest import make_el
from oracles import mp_geocentric, wrap_abs_deg
from urania import (
    DegenerateGeometryError,
    HeliocentricState,
    RectVec,
    geocentric_at,
    geocentric_reduce,
    helio_to_rect,
    heliocentric_state,
    normalize_deg,
    rect_to_spherical,
)


def state(l, b, r):
    return HeliocentricState(l=l, b=b, r=r)


# ---------------------------------------------------------------------------
# helio_to_rect / rect_to_spherical
# ---------------------------------------------------------------------------


def test_rect_axis_cases():
    v = helio_to_rect(state(0.0, 0.0, 1.0))
    assert (v.x, v.y, v.z) == (1.0, 0.0, 0.0)
    v = helio_to_rect(state(90.0, 0.0, 2.0))
    assert abs(v.x) < 1e-12 and v.y == pytest.approx(2.0, abs=1e-15) and v.z == 0.0
    v = helio_to_rect(state(0.0, 90.0, 1.0))
    assert abs(v.x) < 1e-12 and abs(v.y) < 1e-12 and v.z == pytest.approx(1.0, abs=1e-15)


def test_spherical_axis_case():
    assert rect_to_spherical(RectVec(1.0, 0.0, 0.0)) == (0.0, 0.0, 1.0)


def test_spherical_pole_convention():
    lam, beta, delta = rect_to_spherical(RectVec(0.0, 0.0, 2.0))
    assert lam == 0.0
    assert beta == 90.0
    assert delta == 2.0


def test_spherical_frozen_value():
    # closed form: lambda = 360 - atan(1/2) deg, delta = sqrt(5)
    lam, beta, delta = rect_to_spherical(RectVec(2.0, -1.0, 0.0))
    assert lam == pytest.approx(333.43494882292201, abs=1e-12)
    assert beta == 0.0
    assert delta == pytest.approx(2.2360679774997896, rel=1e-15)


def test_zero_vector_rejected():
    with pytest.raises(DegenerateGeometryError):
        rect_to_spherical(RectVec(0.0, 0.0, 0.0))


def test_round_trip_spherical_rect():
    rng = random.Random(8)
    for _ in range(500):
        s = state(rng.uniform(0.0, 360.0), rng.uniform(-89.9, 89.9), rng.uniform(0.1, 40.0))
        lam, beta, delta = rect_to_spherical(helio_to_rect(s))
        assert wrap_abs_deg(lam, s.l) < 1e-10
        assert abs(beta - s.b) < 1e-10
        assert abs(delta - s.r) / s.r < 1e-12


def test_round_trip_rect_spherical_rect():
    rng = random.Random(9)
    for _ in range(500):
        v = RectVec(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5))
        norm = math.sqrt(v.x**2 + v.y**2 + v.z**2)
        if norm < 1e-3:
            continue
        lam, beta, delta = rect_to_spherical(v)
        w = helio_to_rect(state(lam, beta, delta))
        for got, want in ((w.x, v.x), (w.y, v.y), (w.z, v.z)):
            assert abs(got - want) <= 1e-12 * norm


# ---------------------------------------------------------------------------
# geocentric_reduce
# ---------------------------------------------------------------------------


def test_opposition_geometry():
    pos = geocentric_reduce(state(0.0, 0.0, 2.0), state(0.0, 0.0, 1.0))
    assert pos.lam == 0.0
    assert pos.beta == 0.0
    assert pos.delta == 1.0


def test_conjunction_side_geometry():
    pos = geocentric_reduce(state(180.0, 0.0, 2.0), state(0.0, 0.0, 1.0))
    assert wrap_abs_deg(pos.lam, 180.0) < 1e-9
    assert pos.delta == pytest.approx(3.0, rel=1e-15)


def test_quadrature_frozen_value():
    pos = geocentric_reduce(state(0.0, 0.0, 2.0), state(90.0, 0.0, 1.0))
    assert pos.lam == pytest.approx(333.43494882292201, abs=1e-9)
    assert pos.beta == 0.0
    assert pos.delta == pytest.approx(2.2360679774997896, rel=1e-12)


def test_coincident_positions_rejected():
    with pytest.raises(DegenerateGeometryError):
        geocentric_reduce(state(12.0, 3.0, 1.5), state(12.0, 3.0, 1.5))


def test_translation_consistency():
    rng = random.Random(21)
    for _ in range(200):
        p = state(rng.uniform(0, 360), rng.uniform(-10, 10), rng.uniform(1.2, 9.0))
        e = state(rng.uniform(0, 360), rng.uniform(-1, 1), 1.0)
        delta_l = rng.uniform(0, 360)
        base = geocentric_reduce(p, e)
        moved = geocentric_reduce(
            state(normalize_deg(p.l + delta_l), p.b, p.r),
            state(normalize_deg(e.l + delta_l), e.b, e.r),
        )
        assert wrap_abs_deg(moved.lam, base.lam + delta_l) < 1e-9
        assert abs(moved.beta - base.beta) < 1e-9
        assert abs(moved.delta - base.delta) < 1e-12 * base.delta


def test_triangle_inequality_coplanar():
    rng = random.Random(22)
    for _ in range(300):
        p = state(rng.uniform(0, 360), 0.0, rng.uniform(0.5, 9.0))
        e = state(rng.uniform(0, 360), 0.0, rng.uniform(0.5, 9.0))
        if abs(p.l - e.l) < 1e-9 and abs(p.r - e.r) < 1e-9:
            continue
        pos = geocentric_reduce(p, e)
        assert abs(p.r - e.r) - 1e-12 <= pos.delta <= p.r + e.r + 1e-12


def test_swap_negates_vector():
    p = state(33.0, 4.0, 3.2)
    e = state(150.0, -1.0, 1.0)
    ab = geocentric_reduce(p, e)
    ba = geocentric_reduce(e, p)
    assert wrap_abs_deg(ba.lam, ab.lam + 180.0) < 1e-9
    assert ba.beta == pytest.approx(-ab.beta, abs=1e-12)
    assert ba.delta == ab.delta


# ---------------------------------------------------------------------------
# geocentric_at
# ---------------------------------------------------------------------------


def test_composition_identity(dataset):
    mars, earth = dataset["mars"], dataset["earth"]
    jd = 2451545.0 + 777.125
    composed = geocentric_reduce(heliocentric_state(mars, jd), heliocentric_state(earth, jd))
    direct = geocentric_at(mars, earth, jd)
    assert direct == composed


def test_identical_bodies_raise():
    el = make_el()
    with pytest.raises(DegenerateGeometryError):
        geocentric_at(el, el, el.T_aph + 12.0)


def test_collinear_construction_hits_common_longitude():
    # both at their own aphelia on the same ray: planet beyond earth
    planet = make_el(name="outer", a=3.0, e=0.1, i=0.0, Omega=0.0, omega=40.0, P=900.0)
    earth = make_el(name="earth", a=1.0, e=0.05, i=0.0, Omega=0.0, omega=40.0, P=365.0)
    jd = planet.T_aph  # same T_aph default for both
    aphelion_longitude = normalize_deg(40.0 + 180.0)
    pos = geocentric_at(planet, earth, jd)
    assert wrap_abs_deg(pos.lam, aphelion_longitude) < 1e-9
    assert abs(pos.beta) < 1e-12
    assert pos.delta == pytest.approx(3.0 * 1.1 - 1.0 * 1.05, rel=1e-12)


def test_matches_extended_precision_oracle(dataset):
    jupiter, earth = dataset["jupiter"], dataset["earth"]
    for jd in (2451545.0, 2451545.0 + 1234.5625, 2451545.0 - 2000.25):
        pos = geocentric_at(jupiter, earth, jd)
        lam_mp, beta_mp, delta_mp = mp_geocentric(jupiter, earth, jd)
        assert wrap_abs_deg(pos.lam, float(lam_mp)) < 1e-9
        assert abs(pos.beta - float(beta_mp)) < 1e-9
        assert abs(pos.delta - float(delta_mp)) / float(delta_mp) < 1e-11
