"""Symbolic E^1 pages of the EHP spectral sequences.

Entries are labels ``Z_P (x) pi_(d + v alpha)(S^(a + b alpha))``; the ones in
the zero stem (d = a) or below it are resolved, the rest stay symbolic.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from .gw import FieldClass, REAL, gw_unit_family_holds, twist_class
from .localization import PrimeSet, Z2


class Resolution(Enum):
    ZERO = "Zero"
    INTEGERS = "Integers"
    KMW = "KMW"
    UNRESOLVED = "Unresolved"


def coefficient_ring(primes: PrimeSet) -> str:
    if primes.is_all:
        return "Z"
    return "Z_(" + ",".join(map(str, primes.primes)) + ")"


def _grading(n: int, q: int) -> str:
    if q == 0:
        return str(n)
    return f"{n}+{q}α" if q != 1 else f"{n}+α"


@dataclass(frozen=True)
class SheafLabel:
    degree: int
    twist: int
    sphere: tuple
    primes: PrimeSet
    resolution: Resolution
    kmw_index: Optional[int] = None

    def __post_init__(self):
        a, _ = self.sphere
        if a >= 2 and self.degree < a and self.resolution is not Resolution.ZERO:
            raise ValueError("entries below the connectivity range must be zero")

    def group(self) -> str:
        """The homotopy sheaf being labeled, without its value."""
        a, b = self.sphere
        ring = coefficient_ring(self.primes)
        pi = f"π_{{{_grading(self.degree, self.twist)}}}(S^{{{_grading(a, b)}}})"
        return pi if ring == "Z" else f"{ring}⊗{pi}"

    def value(self) -> str:
        """Resolved value, or the symbolic group when unresolved."""
        ring = coefficient_ring(self.primes)
        r = self.resolution
        if r is Resolution.ZERO:
            return "0"
        if r is Resolution.INTEGERS:
            return ring
        if r is Resolution.KMW:
            base = "GW" if self.kmw_index == 0 else f"K^MW_{self.kmw_index}"
            return base if ring == "Z" else f"{base}⊗{ring}"
        return self.group()

    @property
    def is_zero(self) -> bool:
        return self.resolution is Resolution.ZERO

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "twist": self.twist,
            "sphere": list(self.sphere),
            "primes": self.primes.to_json(),
            "resolution": self.resolution.value,
            "value": self.value(),
        }
        if self.resolution is Resolution.KMW:
            out["kmw"] = self.kmw_index
        return out

    def __str__(self):
        return self.value()


def morel_zero_stem(d: int, v: int, a: int, b: int, primes: PrimeSet = Z2) -> SheafLabel:
    """``pi_(d + v alpha)(S^(a + b alpha))`` where the zero-stem computation applies.

    Zero below the sphere's dimension; in the zero stem ``K^MW_(b - v)`` for
    b, v > 0, zero for b > 0 = v, and Z for b = v = 0. The case b = 0 < v and
    everything above the zero stem are left unresolved.
    """
    if d < 2 or a < 2:
        raise ValueError(f"needs simplicial degrees at least 2, got d={d}, a={a}")
    if v < 0 or b < 0:
        raise ValueError("weights must be nonnegative")
    label = lambda res, j=None: SheafLabel(d, v, (a, b), primes, res, j)
    if d < a:
        return label(Resolution.ZERO)
    if d > a:
        return label(Resolution.UNRESOLVED)
    if b > 0 and v > 0:
        return label(Resolution.KMW, b - v)
    if b > 0:
        return label(Resolution.ZERO)
    if v == 0:
        return label(Resolution.INTEGERS)
    return label(Resolution.UNRESOLVED)


def _zero(i: int, m: int, n: int, q: int, v: int, primes: PrimeSet) -> SheafLabel:
    return SheafLabel(m + 1 + i, v, (2 * m + 2 * n + 1, 2 * q), primes, Resolution.ZERO)


def e1_entry(i: int, m: int, n: int, q: int, v: int, primes: PrimeSet = Z2) -> SheafLabel:
    """``E^1_(i,m) = Z_P (x) pi_(m+1+i + v alpha)(S^(2m+2n+1 + 2q alpha))`` for ``i >= 2n-1+m``, else 0."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if i < 0 or m < 0 or i < 2 * n - 1 + m:
        return _zero(max(i, 0), max(m, 0), n, q, v, primes)
    return morel_zero_stem(m + 1 + i, v, 2 * m + 2 * n + 1, 2 * q, primes)


def truncated_e1_entry(i: int, m: int, n1: int, n2: int, q: int, v: int, primes: PrimeSet = Z2) -> SheafLabel:
    """As :func:`e1_entry` at ``n1``, and zero for ``m >= n2 - n1``."""
    if n1 < 2 or n2 < n1:
        raise ValueError("need n2 >= n1 >= 2")
    if m >= n2 - n1:
        return _zero(max(i, 0), max(m, 0), n1, q, v, primes)
    return e1_entry(i, m, n1, q, v, primes)


def abutment_label(i: int, n: int, q: int, v: int, primes: PrimeSet = Z2, n2: Optional[int] = None) -> str:
    ring = coefficient_ring(primes)
    stable = "" if n2 is not None else "^s"
    top = n if n2 is None else n2
    pi = f"π{stable}_{{{_grading(i, v)}}}(S^{{{_grading(top, q)}}})"
    return pi if ring == "Z" else f"{ring}⊗{pi}"


@dataclass(frozen=True)
class TableParams:
    n: int
    q: int
    v: int
    primes: PrimeSet = Z2
    field: FieldClass = REAL
    n2: Optional[int] = None

    def entry(self, i: int, m: int) -> SheafLabel:
        if self.n2 is None:
            return e1_entry(i, m, self.n, self.q, self.v, self.primes)
        return truncated_e1_entry(i, m, self.n, self.n2, self.q, self.v, self.primes)

    def condition(self) -> str:
        e = twist_class(self.n, self.q, self.primes)
        return str(gw_unit_family_holds(e, self.primes, self.field))

    def title(self) -> str:
        kind = "EHP" if self.n2 is None else f"truncated EHP (n2={self.n2})"
        return f"{kind} E^1 page, n={self.n} q={self.q} v={self.v}, coefficients {coefficient_ring(self.primes)}"


def build_table(params: TableParams, rows: int, cols: int) -> List[List[SheafLabel]]:
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be positive")
    return [[params.entry(i, m) for m in range(cols)] for i in range(rows)]


def render_table(params: TableParams, rows: int, cols: int, fmt: str = "text") -> str:
    """Grid with rows i = 0..rows-1 and columns m = 0..cols-1, plus an abutment column."""
    grid = build_table(params, rows, cols)
    abut = [abutment_label(i, params.n, params.q, params.v, params.primes, params.n2) for i in range(rows)]
    header = ["i"] + [f"m={m}" for m in range(cols)] + ["abutment"]
    cells = [[str(i)] + [c.value() for c in row] + [abut[i]] for i, row in enumerate(grid)]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(cells)
        return buf.getvalue()
    if fmt == "json":
        data = {
            "title": params.title(),
            "unit_condition": params.condition(),
            "field": str(params.field),
            "rows": [
                {"i": i, "abutment": abut[i], "entries": [c.to_json() for c in row]} for i, row in enumerate(grid)
            ],
        }
        return json.dumps(data, ensure_ascii=False, indent=1, sort_keys=True) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    widths = [max(len(r[k]) for r in [header] + cells) for k in range(len(header))]
    lines = [
        f"# {params.title()}",
        f"# unit condition ((m+1) + m e a unit for all m, field {params.field}): {params.condition()}",
    ]
    for r in [header] + cells:
        lines.append("  ".join(s.ljust(w) for s, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"
