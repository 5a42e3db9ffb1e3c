"""Truncated power series in q, z1, z2 with exact integer coefficients.

A series is a finite sparse map ``(n1, n2, d) -> int`` where ``n1``/``n2`` are the
exponents of z1/z2 and ``d`` is the exponent of q.  Every series carries an
inclusive q-degree cutoff; terms above it are never stored.  Only the q-degree is
truncated, the z exponents are left alone.
"""

from __future__ import annotations

import csv
import io
import json
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import QueryBeyondCutoff

__all__ = [
    "GradeKey",
    "TriGradedSeries",
    "make_constant",
    "add",
    "mul",
    "mul_monomial",
    "inv_pochhammer",
    "coeff",
    "equal_up_to",
    "series_sum",
]


class GradeKey(NamedTuple):
    n1: int
    n2: int
    d: int


def _sort_key(key: GradeKey) -> tuple[int, int, int]:
    return (key.d, key.n1, key.n2)


class TriGradedSeries:
    """Immutable normalized series. Zero coefficients and keys above the cutoff are dropped."""

    __slots__ = ("_cutoff", "_terms")

    def __init__(self, cutoff: int, terms: Mapping[tuple[int, int, int], int] | None = None):
        if cutoff < 0:
            raise ValueError(f"cutoff must be nonnegative, got {cutoff}")
        clean: dict[GradeKey, int] = {}
        for raw_key, c in (terms or {}).items():
            key = GradeKey(*raw_key)
            if min(key) < 0:
                raise ValueError(f"grade components must be nonnegative, got {tuple(key)}")
            if key.d > cutoff or c == 0:
                continue
            clean[key] = int(c)
        object.__setattr__(self, "_cutoff", int(cutoff))
        object.__setattr__(self, "_terms", MappingProxyType(clean))

    @classmethod
    def _trusted(cls, cutoff: int, terms: dict[GradeKey, int]) -> TriGradedSeries:
        # terms must already be normalized and truncated
        self = object.__new__(cls)
        object.__setattr__(self, "_cutoff", cutoff)
        object.__setattr__(self, "_terms", MappingProxyType(terms))
        return self

    def __setattr__(self, name, value):
        raise AttributeError("TriGradedSeries is immutable")

    def __reduce__(self):
        return (_rebuild, (self._cutoff, tuple(self._terms.items())))

    @property
    def cutoff(self) -> int:
        return self._cutoff

    @property
    def terms(self) -> Mapping[GradeKey, int]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sorted_terms(self) -> list[tuple[GradeKey, int]]:
        """Terms ordered by (d, n1, n2), the canonical serialization order."""
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __iter__(self) -> Iterator[GradeKey]:
        return iter(k for k, _ in self.sorted_terms())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TriGradedSeries):
            return NotImplemented
        return self._cutoff == other._cutoff and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        return hash((self._cutoff, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        body = " + ".join(_format_term(k, c) for k, c in self.sorted_terms()[:8])
        if len(self._terms) > 8:
            body += " + ..."
        return f"TriGradedSeries(cutoff={self._cutoff}, {body or '0'})"

    def __add__(self, other: TriGradedSeries) -> TriGradedSeries:
        return add(self, other)

    def __mul__(self, other: TriGradedSeries) -> TriGradedSeries:
        return mul(self, other)

    def __neg__(self) -> TriGradedSeries:
        return TriGradedSeries._trusted(self._cutoff, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: TriGradedSeries) -> TriGradedSeries:
        return add(self, -other)

    def coeff(self, key: tuple[int, int, int]) -> int:
        return coeff(self, key)

    def truncate(self, cutoff: int) -> TriGradedSeries:
        """Restrict to q-degrees <= cutoff. Raises if cutoff exceeds what is known."""
        if cutoff > self._cutoff:
            raise QueryBeyondCutoff(f"cannot extend a series known to q^{self._cutoff} up to q^{cutoff}")
        return TriGradedSeries._trusted(cutoff, {k: c for k, c in self._terms.items() if k.d <= cutoff})

    def q_coefficient(self, d: int) -> dict[tuple[int, int], int]:
        """The coefficient of q^d as a polynomial {(n1, n2): c} in z1, z2."""
        if d > self._cutoff:
            raise QueryBeyondCutoff(f"q^{d} is beyond cutoff {self._cutoff}")
        return {(k.n1, k.n2): c for k, c in self._terms.items() if k.d == d}

    def total(self) -> int:
        """Sum of all coefficients."""
        return sum(self._terms.values())

    # serialization

    def to_dict(self) -> dict:
        return {
            "cutoff": self._cutoff,
            "terms": [
                {"n1": k.n1, "n2": k.n2, "d": k.d, "c": str(c)} for k, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> TriGradedSeries:
        terms: dict[tuple[int, int, int], int] = {}
        for t in data["terms"]:
            key = (int(t["n1"]), int(t["n2"]), int(t["d"]))
            if key in terms:
                raise ValueError(f"duplicate term {key}")
            terms[key] = int(t["c"])
        return cls(int(data["cutoff"]), terms)

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> TriGradedSeries:
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n1", "n2", "d", "coeff"])
        for k, c in self.sorted_terms():
            writer.writerow([k.n1, k.n2, k.d, c])
        return buf.getvalue()


def _format_term(key: GradeKey, c: int) -> str:
    parts = [str(c)]
    for name, e in (("z1", key.n1), ("z2", key.n2), ("q", key.d)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def make_constant(c: int, cutoff: int) -> TriGradedSeries:
    return TriGradedSeries(cutoff, {(0, 0, 0): c})


def add(s: TriGradedSeries, t: TriGradedSeries) -> TriGradedSeries:
    cutoff = min(s.cutoff, t.cutoff)
    out: dict[GradeKey, int] = {k: c for k, c in s.terms.items() if k.d <= cutoff}
    for k, c in t.terms.items():
        if k.d > cutoff:
            continue
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return TriGradedSeries._trusted(cutoff, out)


def series_sum(items: Iterable[TriGradedSeries], cutoff: int) -> TriGradedSeries:
    """Sum many series in place; cheaper than chaining ``add``."""
    acc: dict[GradeKey, int] = {}
    for s in items:
        for k, c in s.terms.items():
            if k.d <= cutoff:
                acc[k] = acc.get(k, 0) + c
    return TriGradedSeries._trusted(cutoff, {k: c for k, c in acc.items() if c})


def mul(s: TriGradedSeries, t: TriGradedSeries) -> TriGradedSeries:
    cutoff = min(s.cutoff, t.cutoff)
    right = sorted(((k, c) for k, c in t.terms.items() if k.d <= cutoff), key=lambda kv: kv[0].d)
    out: dict[GradeKey, int] = {}
    for (a1, a2, ad), ca in s.terms.items():
        room = cutoff - ad
        if room < 0:
            continue
        for (b1, b2, bd), cb in right:
            if bd > room:
                break
            key = GradeKey(a1 + b1, a2 + b2, ad + bd)
            out[key] = out.get(key, 0) + ca * cb
    return TriGradedSeries._trusted(cutoff, {k: c for k, c in out.items() if c})


def mul_monomial(s: TriGradedSeries, shift: tuple[int, int, int], c: int = 1) -> TriGradedSeries:
    """Multiply by ``c * z1^shift.n1 * z2^shift.n2 * q^shift.d``."""
    sh = GradeKey(*shift)
    if min(sh) < 0:
        raise ValueError(f"shift components must be nonnegative, got {tuple(sh)}")
    if c == 0:
        return TriGradedSeries._trusted(s.cutoff, {})
    out = {}
    for k, v in s.terms.items():
        d = k.d + sh.d
        if d <= s.cutoff:
            out[GradeKey(k.n1 + sh.n1, k.n2 + sh.n2, d)] = v * c
    return TriGradedSeries._trusted(s.cutoff, out)


def partition_counts(max_part: int, cutoff: int) -> list[int]:
    """p[d] = number of partitions of d into parts of size at most ``max_part``."""
    p = [0] * (cutoff + 1)
    p[0] = 1
    for part in range(1, min(max_part, cutoff) + 1):
        for d in range(part, cutoff + 1):
            p[d] += p[d - part]
    return p


def inv_pochhammer(M: int, cutoff: int) -> TriGradedSeries:
    """1 / ((1-q)(1-q^2)...(1-q^M)) truncated at q^cutoff."""
    if M < 0:
        raise ValueError(f"M must be nonnegative, got {M}")
    p = partition_counts(M, cutoff)
    return TriGradedSeries._trusted(cutoff, {GradeKey(0, 0, d): c for d, c in enumerate(p) if c})


def coeff(s: TriGradedSeries, key: tuple[int, int, int]) -> int:
    key = GradeKey(*key)
    if key.d > s.cutoff:
        raise QueryBeyondCutoff(f"q^{key.d} requested from a series known only to q^{s.cutoff}")
    return s.terms.get(key, 0)


def equal_up_to(s: TriGradedSeries, t: TriGradedSeries, D: int) -> bool:
    if D > s.cutoff or D > t.cutoff:
        raise QueryBeyondCutoff(f"cannot compare to q^{D}; cutoffs are {s.cutoff} and {t.cutoff}")
    return first_difference(s, t, D) is None


def first_difference(s: TriGradedSeries, t: TriGradedSeries, D: int) -> GradeKey | None:
    """Smallest key in (d, n1, n2) order where s and t differ at q-degree <= D."""
    keys = {k for k in s.terms if k.d <= D} | {k for k in t.terms if k.d <= D}
    for k in sorted(keys, key=_sort_key):
        if s.terms.get(k, 0) != t.terms.get(k, 0):
            return k
    return None


def _rebuild(cutoff: int, items: tuple) -> TriGradedSeries:
    return TriGradedSeries._trusted(cutoff, {GradeKey(*k): c for k, c in items})
