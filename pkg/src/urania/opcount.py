"""Operation counting and the instrumented direct-mode query chain.

OpCounter routes every arithmetic step of a query through a method that
tallies it, so a query's cost report is a measurement rather than an
estimate. The counted functions below mirror kepler.py and geocentric.py
op for op; tests assert bit-identical results, so keep the two in sync when
either changes.

What counts where: add/sub -> adds; mul/div/fmod -> muls; sin, cos, atan2,
asin, sqrt -> transcendental_calls; table fetches -> row_accesses. Index
bookkeeping (floor, comparisons, int arithmetic) is free.
"""

import math

from .angles import DEG2RAD, RAD2DEG, TWO_PI
from .errors import DegenerateGeometryError, DomainError
from .geocentric import COINCIDENCE_AU, GeocentricPosition
from .kepler import _EXIT_TOL, _MAX_BISECT, _MAX_NEWTON, OrbitalElements

__all__ = ["OpCounter", "counted_direct", "counted_heliocentric", "measure_compile_ops"]


class OpCounter:
    """Tally of additions, multiplications, transcendental calls, row accesses."""

    __slots__ = ("adds", "muls", "transcendental_calls", "row_accesses")

    def __init__(self):
        self.adds = 0
        self.muls = 0
        self.transcendental_calls = 0
        self.row_accesses = 0

    # -- arithmetic -------------------------------------------------------
    def add(self, a, b):
        self.adds += 1
        return a + b

    def sub(self, a, b):
        self.adds += 1
        return a - b

    def mul(self, a, b):
        self.muls += 1
        return a * b

    def div(self, a, b):
        self.muls += 1
        return a / b

    def fmod(self, a, b):
        self.muls += 1
        return math.fmod(a, b)

    # -- transcendental ---------------------------------------------------
    def sin(self, x):
        self.transcendental_calls += 1
        return math.sin(x)

    def cos(self, x):
        self.transcendental_calls += 1
        return math.cos(x)

    def atan2(self, y, x):
        self.transcendental_calls += 1
        return math.atan2(y, x)

    def asin(self, x):
        self.transcendental_calls += 1
        return math.asin(x)

    def sqrt(self, x):
        self.transcendental_calls += 1
        return math.sqrt(x)

    # -- table access -----------------------------------------------------
    def row(self, value):
        self.row_accesses += 1
        return value

    # -- reporting --------------------------------------------------------
    def total_ops(self) -> int:
        return self.adds + self.muls + self.transcendental_calls + self.row_accesses

    def as_dict(self) -> dict:
        return {
            "adds": self.adds,
            "muls": self.muls,
            "transcendental_calls": self.transcendental_calls,
            "row_accesses": self.row_accesses,
            "total": self.total_ops(),
        }

    def merge(self, other: "OpCounter") -> None:
        self.adds += other.adds
        self.muls += other.muls
        self.transcendental_calls += other.transcendental_calls
        self.row_accesses += other.row_accesses

    def __repr__(self):
        return (
            f"OpCounter(adds={self.adds}, muls={self.muls}, "
            f"transcendental_calls={self.transcendental_calls}, "
            f"row_accesses={self.row_accesses})"
        )


# ---------------------------------------------------------------------------
# Counted mirror of the direct chain.
# ---------------------------------------------------------------------------


def _c_normalize(c: OpCounter, x: float) -> float:
    if 0.0 <= x < 360.0:
        return x
    y = c.fmod(x, 360.0)
    if y < 0.0:
        y = c.add(y, 360.0)
    if y >= 360.0:
        y = 0.0
    return y


def _c_aphelion_shift(c: OpCounter, x: float) -> float:
    return _c_normalize(c, c.add(x, 180.0))


def _c_mean_anomaly_elapsed(c: OpCounter, el: OrbitalElements, dt: float) -> float:
    M = c.mul(c.div(360.0, el.P), dt)
    for term in el.corrections:
        phase = c.add(c.div(c.mul(360.0, dt), term.period), term.phase)
        M = c.add(M, c.mul(term.amplitude, c.sin(c.mul(phase, DEG2RAD))))
    return _c_normalize(c, M)


def _c_solve_kepler(c: OpCounter, M: float, e: float) -> float:
    if not (0.0 <= e < 1.0):
        raise DomainError(f"eccentricity must be in [0, 1), got {e!r}")
    k = math.floor(c.div(M, TWO_PI))
    Mr = c.sub(M, c.mul(TWO_PI, k))
    if Mr < 0.0:
        Mr = c.add(Mr, TWO_PI)
        k -= 1
    if Mr >= TWO_PI:
        Mr = c.sub(Mr, TWO_PI)
        k += 1

    E = Mr if e <= 0.8 else math.pi
    converged = False
    for _ in range(_MAX_NEWTON):
        f = c.sub(c.sub(E, c.mul(e, c.sin(E))), Mr)
        if abs(f) < _EXIT_TOL:
            converged = True
            break
        E = c.sub(E, c.div(f, c.sub(1.0, c.mul(e, c.cos(E)))))
    if not converged:
        lo, hi = 0.0, TWO_PI
        E = math.pi
        for _ in range(_MAX_BISECT):
            f = c.sub(c.sub(E, c.mul(e, c.sin(E))), Mr)
            if abs(f) < _EXIT_TOL:
                break
            if f > 0.0:
                hi = E
            else:
                lo = E
            E = c.mul(0.5, c.add(lo, hi))
    return c.add(E, c.mul(TWO_PI, k))


def _c_true_anomaly(c: OpCounter, E: float, e: float) -> float:
    k = math.floor(c.div(E, TWO_PI))
    Er = c.sub(E, c.mul(TWO_PI, k))
    if Er < 0.0:
        Er = c.add(Er, TWO_PI)
        k -= 1
    nu = c.mul(
        2.0,
        c.atan2(
            c.mul(c.sqrt(c.add(1.0, e)), c.sin(c.mul(0.5, Er))),
            c.mul(c.sqrt(c.sub(1.0, e)), c.cos(c.mul(0.5, Er))),
        ),
    )
    if nu < 0.0:
        nu = c.add(nu, TWO_PI)
    return c.add(nu, c.mul(TWO_PI, k))


def _c_radius(c: OpCounter, E: float, e: float, a: float) -> float:
    return c.mul(a, c.sub(1.0, c.mul(e, c.cos(E))))


def _c_nu_aph_from_E(c: OpCounter, E: float, e: float) -> float:
    E_aph = c.sub(E, math.pi)
    nu = c.mul(
        2.0,
        c.atan2(
            c.mul(c.sqrt(c.sub(1.0, e)), c.sin(c.mul(0.5, E_aph))),
            c.mul(c.sqrt(c.add(1.0, e)), c.cos(c.mul(0.5, E_aph))),
        ),
    )
    return _c_normalize(c, c.mul(nu, RAD2DEG))


def _c_position_since_aphelion(c: OpCounter, el: OrbitalElements, t: float):
    M_aph = _c_mean_anomaly_elapsed(c, el, t)
    E = _c_solve_kepler(c, c.mul(_c_aphelion_shift(c, M_aph), DEG2RAD), el.e)
    return _c_nu_aph_from_E(c, E, el.e), _c_radius(c, E, el.e, el.a)


def _c_heliocentric_elapsed(c: OpCounter, el: OrbitalElements, dt: float):
    """Returns (l, b, r), mirroring kepler.heliocentric_state_elapsed."""
    M_aph = _c_mean_anomaly_elapsed(c, el, dt)
    M_peri = _c_aphelion_shift(c, M_aph)
    E = _c_solve_kepler(c, c.mul(M_peri, DEG2RAD), el.e)
    nu = _c_true_anomaly(c, E, el.e)
    r = _c_radius(c, E, el.e, el.a)

    u = c.add(c.mul(el.omega, DEG2RAD), nu)
    node = c.mul(el.Omega, DEG2RAD)
    incl = c.mul(el.i, DEG2RAD)
    sin_u = c.sin(u)
    cos_u = c.cos(u)
    sin_O = c.sin(node)
    cos_O = c.cos(node)
    sin_i = c.sin(incl)
    cos_i = c.cos(incl)

    x = c.mul(r, c.sub(c.mul(cos_O, cos_u), c.mul(c.mul(sin_O, sin_u), cos_i)))
    y = c.mul(r, c.add(c.mul(sin_O, cos_u), c.mul(c.mul(cos_O, sin_u), cos_i)))
    z = c.mul(r, c.mul(sin_u, sin_i))

    l = _c_normalize(c, c.mul(c.atan2(y, x), RAD2DEG))
    sin_b = c.div(z, r)
    if sin_b > 1.0:
        sin_b = 1.0
    elif sin_b < -1.0:
        sin_b = -1.0
    b = c.mul(c.asin(sin_b), RAD2DEG)
    return l, b, r


def counted_heliocentric(c: OpCounter, el: OrbitalElements, jd: float):
    """Counted twin of kepler.heliocentric_state; returns (l, b, r)."""
    return _c_heliocentric_elapsed(c, el, c.sub(jd, el.T_aph))


def _c_helio_to_rect(c: OpCounter, l: float, b: float, r: float):
    lam = c.mul(l, DEG2RAD)
    bet = c.mul(b, DEG2RAD)
    r_cos_b = c.mul(r, c.cos(bet))
    return (
        c.mul(r_cos_b, c.cos(lam)),
        c.mul(r_cos_b, c.sin(lam)),
        c.mul(r, c.sin(bet)),
    )


def _c_rect_to_spherical(c: OpCounter, x: float, y: float, z: float):
    d = c.sqrt(c.add(c.add(c.mul(x, x), c.mul(y, y)), c.mul(z, z)))
    if d == 0.0:
        raise DegenerateGeometryError("zero vector has no direction")
    if x == 0.0 and y == 0.0:
        lam = 0.0
    else:
        lam = _c_normalize(c, c.mul(c.atan2(y, x), RAD2DEG))
    sin_b = c.div(z, d)
    if sin_b > 1.0:
        sin_b = 1.0
    elif sin_b < -1.0:
        sin_b = -1.0
    beta = c.mul(c.asin(sin_b), RAD2DEG)
    return lam, beta, d


def _c_reduce(c: OpCounter, planet, earth) -> GeocentricPosition:
    px, py, pz = _c_helio_to_rect(c, *planet)
    ex, ey, ez = _c_helio_to_rect(c, *earth)
    dx = c.sub(px, ex)
    dy = c.sub(py, ey)
    dz = c.sub(pz, ez)
    sep = c.sqrt(c.add(c.add(c.mul(dx, dx), c.mul(dy, dy)), c.mul(dz, dz)))
    if sep < COINCIDENCE_AU:
        raise DegenerateGeometryError(
            f"planet and Earth positions coincide (separation {sep:.3e} AU)"
        )
    lam, beta, delta = _c_rect_to_spherical(c, dx, dy, dz)
    return GeocentricPosition(lam=lam, beta=beta, delta=delta)


def counted_direct(
    c: OpCounter, planet_el: OrbitalElements, earth_el: OrbitalElements, jd: float
) -> GeocentricPosition:
    """Counted twin of geocentric.geocentric_at."""
    planet = counted_heliocentric(c, planet_el, jd)
    earth = counted_heliocentric(c, earth_el, jd)
    return _c_reduce(c, planet, earth)


# ---------------------------------------------------------------------------
# Measured cost of a full table compilation (the arithmetic-ops reading of
# the calculation census). Walks the same grid the builders walk.
# ---------------------------------------------------------------------------


def measure_compile_ops(
    bodies: dict[str, OrbitalElements],
    step_days: float = 1.0,
    double_shape: tuple[int, int] | None = (64, 64),
    earth_name: str = "earth",
) -> OpCounter:
    from .tables import MOTION_STENCIL_DAYS, row_count  # avoid import cycle

    c = OpCounter()
    h = MOTION_STENCIL_DAYS
    for el in bodies.values():
        for k in range(row_count(el.P, step_days)):
            t = k * step_days
            if t >= el.P:
                break
            _c_position_since_aphelion(c, el, t)
            nu_after, _ = _c_position_since_aphelion(c, el, c.add(t, h))
            nu_before, _ = _c_position_since_aphelion(c, el, c.sub(t, h))
            d = c.fmod(c.sub(nu_after, nu_before), 360.0)
            if d <= -180.0:
                d = c.add(d, 360.0)
            elif d > 180.0:
                d = c.sub(d, 360.0)
            per_day = c.div(d, c.mul(2.0, h))
            c.div(per_day, 24.0)
    if double_shape is not None and earth_name in bodies:
        n_u, n_v = double_shape
        earth_el = bodies[earth_name]
        for name, el in bodies.items():
            if name == earth_name:
                continue
            du = c.div(el.P, n_u)
            dv = c.div(earth_el.P, n_v)
            earth_states = [
                _c_heliocentric_elapsed(c, earth_el, c.mul(iv, dv)) for iv in range(n_v)
            ]
            for iu in range(n_u):
                planet_state = _c_heliocentric_elapsed(c, el, c.mul(iu, du))
                for es in earth_states:
                    _c_reduce(c, planet_state, es)
    return c
