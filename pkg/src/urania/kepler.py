"""Two-body orbital mechanics: Kepler's equation and heliocentric states.

Anomalies at public boundaries are measured from aphelion in degrees (the
convention the compiled tables index by); the textbook perihelion-referenced
formulas live inside and are bridged by a 180-degree shift.
"""

import math
from dataclasses import dataclass, field

from .angles import DEG2RAD, RAD2DEG, TWO_PI, aphelion_shift, normalize_deg
from .errors import DomainError, UnsupportedInversionError

__all__ = [
    "CorrectionTerm",
    "OrbitalElements",
    "HeliocentricState",
    "validate_elements",
    "mean_anomaly_elapsed",
    "mean_anomaly_aph",
    "solve_kepler",
    "true_anomaly",
    "radius",
    "position_since_aphelion",
    "heliocentric_state",
    "heliocentric_state_elapsed",
    "time_since_aphelion",
    "KEPLER_TOL",
]

# Guaranteed residual bound for Kepler's equation, radians.
KEPLER_TOL = 1e-12
# The solver iterates further than the guarantee: a residual of eps maps to
# a time error of P*eps/(2*pi) days, so long-period round trips need margin.
_EXIT_TOL = 1e-14
_MAX_NEWTON = 50
_MAX_BISECT = 200


@dataclass(frozen=True)
class CorrectionTerm:
    """Additive periodic correction to the mean anomaly.

    amplitude in degrees, period in days, phase in degrees.
    """

    amplitude: float
    period: float
    phase: float


@dataclass(frozen=True)
class OrbitalElements:
    """Keplerian elements of one body, with period and an aphelion epoch.

    a in AU, angles in degrees, P in days, T_aph a Julian Date at which the
    body passed aphelion. Elements are treated as constant in time.
    """

    name: str
    a: float
    e: float
    i: float
    Omega: float
    omega: float
    P: float
    T_aph: float
    corrections: tuple[CorrectionTerm, ...] = field(default=())


@dataclass(frozen=True)
class HeliocentricState:
    """Heliocentric ecliptic longitude/latitude (degrees) and radius (AU)."""

    l: float
    b: float
    r: float


def validate_elements(el: OrbitalElements) -> None:
    """Raise DomainError naming the offending field if ``el`` is invalid."""

    def bad(fieldname, why):
        raise DomainError(f"{el.name}: {fieldname} {why}")

    if not el.name:
        raise DomainError("element record has an empty name")
    if not (math.isfinite(el.a) and el.a > 0.0):
        bad("a (semi-major axis)", f"must be > 0, got {el.a!r}")
    if not (math.isfinite(el.e) and 0.0 <= el.e < 1.0):
        bad("e (eccentricity)", f"must be in [0, 1), got {el.e!r}")
    if not (math.isfinite(el.i) and 0.0 <= el.i < 180.0):
        bad("i (inclination)", f"must be in [0, 180), got {el.i!r}")
    if not (math.isfinite(el.Omega) and 0.0 <= el.Omega < 360.0):
        bad("Omega (ascending node)", f"must be normalized to [0, 360), got {el.Omega!r}")
    if not (math.isfinite(el.omega) and 0.0 <= el.omega < 360.0):
        bad("omega (argument of perihelion)", f"must be normalized to [0, 360), got {el.omega!r}")
    if not (math.isfinite(el.P) and el.P > 0.0):
        bad("P (period)", f"must be > 0, got {el.P!r}")
    if not math.isfinite(el.T_aph):
        bad("T_aph (aphelion epoch)", f"must be finite, got {el.T_aph!r}")
    for idx, c in enumerate(el.corrections):
        if not (math.isfinite(c.amplitude) and c.amplitude >= 0.0):
            bad(f"correction {idx + 1} amplitude", f"must be >= 0, got {c.amplitude!r}")
        if not (math.isfinite(c.period) and c.period > 0.0):
            bad(f"correction {idx + 1} period", f"must be > 0, got {c.period!r}")
        if not math.isfinite(c.phase):
            bad(f"correction {idx + 1} phase", f"must be finite, got {c.phase!r}")


def mean_anomaly_elapsed(el: OrbitalElements, dt_days: float) -> float:
    """Mean anomaly from aphelion, degrees in [0, 360), dt days after T_aph."""
    M = 360.0 / el.P * dt_days
    for c in el.corrections:
        M += c.amplitude * math.sin((360.0 * dt_days / c.period + c.phase) * DEG2RAD)
    return normalize_deg(M)


def mean_anomaly_aph(el: OrbitalElements, jd: float) -> float:
    """Mean anomaly from aphelion at Julian Date ``jd``, degrees in [0, 360)."""
    return mean_anomaly_elapsed(el, jd - el.T_aph)


def solve_kepler(M: float, e: float) -> float:
    """Solve E - e*sin(E) = M for the eccentric anomaly E (radians).

    Newton iteration started at M (at pi for e > 0.8), with a guaranteed
    bisection fallback on [0, 2*pi]; the residual of the returned E is below
    KEPLER_TOL. E is returned in the same revolution as M.
    """
    if not (0.0 <= e < 1.0):
        raise DomainError(f"eccentricity must be in [0, 1), got {e!r}")
    if not math.isfinite(M):
        raise DomainError(f"mean anomaly must be finite, got {M!r}")

    k = math.floor(M / TWO_PI)
    Mr = M - TWO_PI * k
    if Mr < 0.0:  # fp guard: the floor quotient can round up
        Mr += TWO_PI
        k -= 1
    if Mr >= TWO_PI:
        Mr -= TWO_PI
        k += 1

    E = Mr if e <= 0.8 else math.pi
    for _ in range(_MAX_NEWTON):
        f = E - e * math.sin(E) - Mr
        if abs(f) < _EXIT_TOL:
            break
        E = E - f / (1.0 - e * math.cos(E))
    else:
        lo, hi = 0.0, TWO_PI
        E = math.pi
        for _ in range(_MAX_BISECT):
            f = E - e * math.sin(E) - Mr
            if abs(f) < _EXIT_TOL:
                break
            if f > 0.0:
                hi = E
            else:
                lo = E
            E = 0.5 * (lo + hi)
    return E + TWO_PI * k


def true_anomaly(E: float, e: float) -> float:
    """True anomaly (radians, perihelion-referenced) from eccentric anomaly.

    Continuous with E: the result lies in the same revolution.
    """
    if not (0.0 <= e < 1.0):
        raise DomainError(f"eccentricity must be in [0, 1), got {e!r}")
    k = math.floor(E / TWO_PI)
    Er = E - TWO_PI * k
    if Er < 0.0:
        Er += TWO_PI
        k -= 1
    nu = 2.0 * math.atan2(
        math.sqrt(1.0 + e) * math.sin(0.5 * Er),
        math.sqrt(1.0 - e) * math.cos(0.5 * Er),
    )
    if nu < 0.0:
        nu += TWO_PI
    return nu + TWO_PI * k


def radius(E: float, e: float, a: float) -> float:
    """Radius vector a*(1 - e*cos(E)) in AU."""
    return a * (1.0 - e * math.cos(E))


def _nu_aph_from_E(E: float, e: float) -> float:
    """True anomaly measured from aphelion, degrees in [0, 360).

    Half-angle form written against E - pi so that the aphelion itself maps
    to exactly 0 instead of 360 minus a rounding error.
    """
    E_aph = E - math.pi
    nu = 2.0 * math.atan2(
        math.sqrt(1.0 - e) * math.sin(0.5 * E_aph),
        math.sqrt(1.0 + e) * math.cos(0.5 * E_aph),
    )
    return normalize_deg(nu * RAD2DEG)


def position_since_aphelion(el: OrbitalElements, t_days: float) -> tuple[float, float]:
    """(true anomaly from aphelion in degrees, radius in AU) at time t after T_aph."""
    M_aph = mean_anomaly_elapsed(el, t_days)
    E = solve_kepler(aphelion_shift(M_aph) * DEG2RAD, el.e)
    return _nu_aph_from_E(E, el.e), radius(E, el.e, el.a)


def heliocentric_state(el: OrbitalElements, jd: float) -> HeliocentricState:
    """Heliocentric ecliptic state of ``el`` at Julian Date ``jd``.

    Chain: mean anomaly (aphelion-referenced, with corrections) -> Kepler
    solve -> true anomaly and radius -> rotation through omega, i, Omega into
    the ecliptic frame.
    """
    return heliocentric_state_elapsed(el, jd - el.T_aph)


def heliocentric_state_elapsed(el: OrbitalElements, dt_days: float) -> HeliocentricState:
    """Heliocentric state ``dt_days`` after the aphelion passage.

    Same chain as :func:`heliocentric_state`; taking elapsed time directly
    keeps table abscissae exact (no T_aph round trip).
    """
    M_aph = mean_anomaly_elapsed(el, dt_days)
    M_peri = aphelion_shift(M_aph)
    E = solve_kepler(M_peri * DEG2RAD, el.e)
    nu = true_anomaly(E, el.e)
    r = radius(E, el.e, el.a)

    u = el.omega * DEG2RAD + nu  # argument of latitude
    node = el.Omega * DEG2RAD
    incl = el.i * DEG2RAD
    sin_u = math.sin(u)
    cos_u = math.cos(u)
    sin_O = math.sin(node)
    cos_O = math.cos(node)
    sin_i = math.sin(incl)
    cos_i = math.cos(incl)

    x = r * (cos_O * cos_u - sin_O * sin_u * cos_i)
    y = r * (sin_O * cos_u + cos_O * sin_u * cos_i)
    z = r * (sin_u * sin_i)

    l = normalize_deg(math.atan2(y, x) * RAD2DEG)
    sin_b = z / r
    if sin_b > 1.0:
        sin_b = 1.0
    elif sin_b < -1.0:
        sin_b = -1.0
    b = math.asin(sin_b) * RAD2DEG
    return HeliocentricState(l=l, b=b, r=r)


def time_since_aphelion(el: OrbitalElements, nu_aph: float) -> float:
    """Days after aphelion passage at which the true anomaly equals ``nu_aph``.

    Inverse of the anomaly chain, in [0, P). Only defined for elements with
    no correction terms: a corrected mean anomaly has no closed-form inverse
    (the table compiler never needs one, it walks forward in time).
    """
    if el.corrections:
        raise UnsupportedInversionError(
            f"{el.name}: time_since_aphelion is undefined with correction terms"
        )
    nu = normalize_deg(nu_aph)
    half = 0.5 * nu * DEG2RAD
    E_aph = 2.0 * math.atan2(
        math.sqrt(1.0 + el.e) * math.sin(half),
        math.sqrt(1.0 - el.e) * math.cos(half),
    )
    M_aph = E_aph + el.e * math.sin(E_aph)  # radians in [0, 2*pi)
    t = M_aph * RAD2DEG / 360.0 * el.P
    if t < 0.0:
        t = 0.0
    elif t >= el.P:
        t -= el.P
    return t
