"""Julian Date conversions on the proleptic Gregorian calendar.

The integer day-number arithmetic is the classic floor-division formulation,
so it remains valid for dates well outside the range of ``datetime``. No
time-zone or time-scale handling: a Julian Date here is just a continuous
day count.
"""

import math

from .errors import DomainError

__all__ = ["calendar_to_jd", "jd_to_calendar"]

_DAYS_IN_MONTH = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)


def _is_leap(year: int) -> bool:
    return year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)


def _days_in_month(year: int, month: int) -> int:
    if month == 2 and _is_leap(year):
        return 29
    return _DAYS_IN_MONTH[month - 1]


def calendar_to_jd(year: int, month: int, day: int, day_fraction: float = 0.0) -> float:
    """Julian Date of a proleptic Gregorian date.

    ``day_fraction`` is the fraction of the day elapsed since midnight,
    in [0, 1); 0.5 is noon, the instant the Julian day number refers to.
    """
    if not (1 <= month <= 12):
        raise DomainError(f"month must be 1..12, got {month}")
    if not (1 <= day <= _days_in_month(year, month)):
        raise DomainError(f"day {day} invalid for {year}-{month:02d}")
    if not (math.isfinite(day_fraction) and 0.0 <= day_fraction < 1.0):
        raise DomainError(f"day_fraction must be in [0, 1), got {day_fraction!r}")
    a = (14 - month) // 12
    y = year + 4800 - a
    m = month + 12 * a - 3
    jdn = day + (153 * m + 2) // 5 + 365 * y + y // 4 - y // 100 + y // 400 - 32045
    return jdn - 0.5 + day_fraction


def jd_to_calendar(jd: float) -> tuple[int, int, int, float]:
    """Inverse of :func:`calendar_to_jd`: (year, month, day, day_fraction)."""
    if not math.isfinite(jd):
        raise DomainError(f"jd must be finite, got {jd!r}")
    jdn = math.floor(jd + 0.5)
    day_fraction = jd + 0.5 - jdn
    f = jdn + 1401 + (((4 * jdn + 274277) // 146097) * 3) // 4 - 38
    e = 4 * f + 3
    g = (e % 1461) // 4
    h = 5 * g + 2
    day = (h % 153) // 5 + 1
    month = (h // 153 + 2) % 12 + 1
    year = e // 1461 - 4716 + (12 + 2 - month) // 12
    return int(year), int(month), int(day), day_fraction
