"""Weierstrass models over Q(sqrt(m)) and their text/JSON serializations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path

from .quadfield import FieldElement, QuadraticField

NAMES = ("a1", "a2", "a3", "a4", "a6")


@dataclass(frozen=True)
class CurveModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over ``field``."""

    field: QuadraticField
    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    a6: FieldElement

    def __post_init__(self) -> None:
        if not self.discriminant:
            raise ValueError("singular model: discriminant is 0")

    @classmethod
    def from_coefficients(cls, field: QuadraticField, coeffs) -> CurveModel:
        """Build from five entries, each a FieldElement, a rational, or an (a, b) pair."""
        vals = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                vals.append(c)
            elif isinstance(c, tuple):
                vals.append(field(*c))
            else:
                vals.append(field(c))
        return cls(field, *vals)

    @property
    def a_invariants(self) -> tuple[FieldElement, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def b_invariants(self) -> tuple[FieldElement, ...]:
        return b_invariants(*self.a_invariants)

    @cached_property
    def c4(self) -> FieldElement:
        b2, b4, _, _ = self.b_invariants
        return b2 * b2 - 24 * b4

    @cached_property
    def c6(self) -> FieldElement:
        b2, b4, b6, _ = self.b_invariants
        return -(b2**3) + 36 * b2 * b4 - 216 * b6

    @cached_property
    def discriminant(self) -> FieldElement:
        return discriminant(*self.a_invariants)

    @cached_property
    def j(self) -> FieldElement:
        return self.c4**3 / self.discriminant

    def is_integral(self) -> bool:
        return all(a.is_integral() for a in self.a_invariants)

    def to_text(self) -> str:
        terms = ["y^2"]
        for name, mono in (("a1", "xy"), ("a3", "y")):
            terms.append(f"({_fmt(getattr(self, name))})*{mono}")
        rhs = ["x^3"]
        for name, mono in (("a2", "*x^2"), ("a4", "*x"), ("a6", "")):
            rhs.append(f"({_fmt(getattr(self, name))}){mono}")
        return f"{' + '.join(terms)} = {' + '.join(rhs)} over Q(sqrt({self.field.m}))"

    def to_record(self) -> dict:
        rec: dict = {"m": self.field.m}
        for name, a in zip(NAMES, self.a_invariants):
            rec[name] = [str(a.a), str(a.b)]
        return rec

    def to_json(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def from_record(cls, rec: dict) -> CurveModel:
        K = QuadraticField(int(rec["m"]))
        return cls(K, *(K(Fraction(rec[n][0]), Fraction(rec[n][1])) for n in NAMES))

    def to_file_text(self) -> str:
        lines = [f"m {self.field.m}"]
        for name, a in zip(NAMES, self.a_invariants):
            lines.append(f"{name} {a.a} {a.b}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_file_text(cls, text: str) -> CurveModel:
        """Parse the line format: ``m <int>`` then a1, a2, a3, a4, a6 as ``<rat> <rat>``.

        Coefficient lines may carry their name as a leading label.
        """
        lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines or len(lines[0]) != 2 or lines[0][0] != "m":
            raise CurveParseError("first line must be 'm <integer>'")
        if len(lines) != 6:
            raise CurveParseError(f"expected 6 lines (m, a1, a2, a3, a4, a6), got {len(lines)}")
        try:
            K = QuadraticField(int(lines[0][1]))
        except ValueError as exc:
            raise CurveParseError(str(exc)) from exc
        coeffs = []
        for name, parts in zip(NAMES, lines[1:]):
            if len(parts) == 3:
                if parts[0] != name:
                    raise CurveParseError(f"expected label {name}, got {parts[0]}")
                parts = parts[1:]
            if len(parts) != 2:
                raise CurveParseError(f"bad coefficient line for {name}: {' '.join(parts)}")
            try:
                coeffs.append(K(Fraction(parts[0]), Fraction(parts[1])))
            except (ValueError, ZeroDivisionError) as exc:
                raise CurveParseError(f"bad rational in {name}: {exc}") from exc
        try:
            return cls(K, *coeffs)
        except ValueError as exc:
            raise CurveParseError(str(exc)) from exc

    @classmethod
    def load(cls, path: str | Path) -> CurveModel:
        return cls.from_file_text(Path(path).read_text())

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_file_text())

    def transform(self, r=0, s=0, t=0, u=1) -> CurveModel:
        """Model after x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        a1, a2, a3, a4, a6 = self.a_invariants
        a = rst_transform(a1, a2, a3, a4, a6, r, s, t)
        if u != 1:
            a = tuple(ai / u**k for ai, k in zip(a, (1, 2, 3, 4, 6)))
        return CurveModel(self.field, *a)


class CurveParseError(ValueError):
    pass


def _fmt(x: FieldElement) -> str:
    return f"{x.a} + {x.b}*sqrt({x.field.m})"


def b_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def discriminant(a1, a2, a3, a4, a6):
    b2, b4, b6, b8 = b_invariants(a1, a2, a3, a4, a6)
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def rst_transform(a1, a2, a3, a4, a6, r, s, t):
    """a-invariants after x = x' + r, y = y' + s x' + t."""
    return (
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1,
    )
