"""Loading orbital-element datasets from CSV.

The file is plain UTF-8 CSV with a fixed header
``name,a_au,e,i_deg,Omega_deg,omega_deg,P_days,T_aph_jd`` optionally followed
by correction-term triples (``ampK_deg,perK_days,phK_deg``). ``#`` lines are
comments. Node and perihelion angles are normalized on ingest; everything
else must already satisfy the element invariants.
"""

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from .angles import normalize_deg
from .errors import DomainError, ParseError
from .kepler import CorrectionTerm, OrbitalElements, validate_elements

__all__ = ["ElementsDataset", "load_elements", "default_elements_path", "REQUIRED_COLUMNS"]

REQUIRED_COLUMNS = ("name", "a_au", "e", "i_deg", "Omega_deg", "omega_deg", "P_days", "T_aph_jd")

_NAME_RE = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_.-]*$")


def default_elements_path() -> Path:
    """The dataset shipped with the package."""
    return Path(__file__).parent / "data" / "elements.csv"


@dataclass
class ElementsDataset:
    """Validated orbital elements keyed by unique body name."""

    bodies: dict[str, OrbitalElements]
    source: Path | None = field(default=None, compare=False)

    def __getitem__(self, name: str) -> OrbitalElements:
        try:
            return self.bodies[name]
        except KeyError:
            raise KeyError(
                f"no body named {name!r} in dataset (have: {', '.join(self.bodies)})"
            ) from None

    def __contains__(self, name: str) -> bool:
        return name in self.bodies

    def __iter__(self):
        return iter(self.bodies.values())

    def __len__(self) -> int:
        return len(self.bodies)

    @property
    def names(self) -> list[str]:
        return list(self.bodies)


def _parse_header(parts: list[str], path) -> int:
    """Validate the header row; returns the number of correction triples."""
    if tuple(parts[: len(REQUIRED_COLUMNS)]) != REQUIRED_COLUMNS:
        raise ParseError(
            f"header must start with {','.join(REQUIRED_COLUMNS)}; got {','.join(parts)!r}",
            path=path,
            line=1,
        )
    extra = parts[len(REQUIRED_COLUMNS):]
    if len(extra) % 3 != 0:
        raise ParseError(
            "correction columns must come in amp/per/ph triples", path=path, line=1
        )
    for k in range(0, len(extra), 3):
        amp, per, ph = extra[k : k + 3]
        if not (amp.startswith("amp") and per.startswith("per") and ph.startswith("ph")):
            raise ParseError(
                f"unexpected correction columns {extra[k:k + 3]!r} "
                "(expected ampK_deg,perK_days,phK_deg)",
                path=path,
                line=1,
            )
    return len(extra) // 3


def _parse_float(token: str, column: str, body: str, path, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(
            f"{body or 'row'}: column {column} is not a number: {token!r}",
            path=path,
            line=line,
        ) from None
    if not math.isfinite(value):
        raise ParseError(
            f"{body or 'row'}: column {column} must be finite, got {token!r}",
            path=path,
            line=line,
        )
    return value


def load_elements(path) -> ElementsDataset:
    """Parse and validate an elements CSV, with line-level diagnostics."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")

    bodies: dict[str, OrbitalElements] = {}
    header_triples = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if header_triples is None:
            header_triples = _parse_header(parts, path)
            continue

        expected = len(REQUIRED_COLUMNS) + 3 * header_triples
        if not (len(REQUIRED_COLUMNS) <= len(parts) <= expected):
            raise ParseError(
                f"expected {len(REQUIRED_COLUMNS)} to {expected} columns, got {len(parts)}",
                path=path,
                line=lineno,
            )
        name = parts[0]
        if not _NAME_RE.match(name):
            raise ParseError(f"invalid body name {name!r}", path=path, line=lineno)
        if name in bodies:
            raise ParseError(f"duplicate body name {name!r}", path=path, line=lineno)

        num = [
            _parse_float(tok, col, name, path, lineno)
            for tok, col in zip(parts[1:8], REQUIRED_COLUMNS[1:])
        ]
        if len(num) != 7:
            raise ParseError("row is missing element columns", path=path, line=lineno)

        corrections = []
        extras = parts[8:]
        for k in range(0, len(extras), 3):
            triple = extras[k : k + 3]
            if all(tok == "" for tok in triple):
                continue
            if len(triple) != 3 or any(tok == "" for tok in triple):
                raise ParseError(
                    f"{name}: correction term {k // 3 + 1} must set amp, per and ph together",
                    path=path,
                    line=lineno,
                )
            corrections.append(
                CorrectionTerm(
                    amplitude=_parse_float(triple[0], f"amp{k // 3 + 1}", name, path, lineno),
                    period=_parse_float(triple[1], f"per{k // 3 + 1}", name, path, lineno),
                    phase=_parse_float(triple[2], f"ph{k // 3 + 1}", name, path, lineno),
                )
            )

        try:
            el = OrbitalElements(
                name=name,
                a=num[0],
                e=num[1],
                i=num[2],
                Omega=normalize_deg(num[3]),
                omega=normalize_deg(num[4]),
                P=num[5],
                T_aph=num[6],
                corrections=tuple(corrections),
            )
            validate_elements(el)
        except DomainError as exc:
            raise ParseError(str(exc), path=path, line=lineno) from None
        bodies[name] = el

    if header_triples is None:
        raise ParseError("file contains no header row", path=path, line=1)
    if not bodies:
        raise ParseError("file contains no element rows", path=path, line=1)
    return ElementsDataset(bodies=bodies, source=path)
