"""Run the independent character computations side by side and compare them."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Callable

from .admissible import Weight, char_configs
from .cache import SeriesCache
from .errors import CacheCorrupt, CacheMiss, FSCharError
from .fermionic import (
    char_fermionic_georgiev,
    char_fermionic_M,
    char_fermionic_N,
    m_profiles,
    n_vectors,
    r_types,
)
from .quasiparticle import char_qp
from .series import GradeKey, TriGradedSeries, equal_up_to, first_difference

log = logging.getLogger(__name__)

CharFn = Callable[..., TriGradedSeries]

METHODS: dict[str, CharFn] = {
    "configs": char_configs,
    "qp": char_qp,
    "fermionic-m": char_fermionic_M,
    "fermionic-n": char_fermionic_N,
    "georgiev": char_fermionic_georgiev,
}

FORMS = {"m": "fermionic-m", "n": "fermionic-n", "georgiev": "georgiev"}

# number of summands behind each fermionic form
_SUMMANDS = {"fermionic-m": m_profiles, "fermionic-n": n_vectors, "georgiev": r_types}


class NothingToCompare(FSCharError, ValueError):
    """Fewer than two methods could handle the requested weight."""


@dataclass
class CharacterRuns:
    series: dict[str, TriGradedSeries] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    cached: dict[str, bool] = field(default_factory=dict)


def compute(method: str, w: Weight, D: int, jobs: int = 1, cache: SeriesCache | None = None) -> TriGradedSeries:
    """One character by one method, going through the cache when given.

    A corrupt cache entry is an error, never silently recomputed over.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if cache is not None:
        try:
            return cache.load(w, method, D)
        except CacheMiss:
            pass
    series = METHODS[method](w, D, jobs=jobs)
    if cache is not None:
        cache.store(w, method, series)
    return series


def _object_count(method: str, w: Weight, D: int, series: TriGradedSeries) -> int:
    if method in _SUMMANDS:
        return len(_SUMMANDS[method](w, D))
    # configs and qp count one basis element per unit of coefficient
    return series.total()


def run_characters(
    w: Weight,
    D: int,
    methods=tuple(METHODS),
    jobs: int = 1,
    cache: SeriesCache | None = None,
) -> CharacterRuns:
    """Each method computed on its own; a method that cannot handle ``w`` is recorded, not fatal."""
    runs = CharacterRuns()
    for method in methods:
        start = time.perf_counter()
        try:
            s = None
            if cache is not None:
                try:
                    s = cache.load(w, method, D)
                except CacheMiss:
                    pass
            cached = s is not None
            if s is None:
                s = compute(method, w, D, jobs=jobs, cache=cache)
        except CacheCorrupt:
            raise
        except FSCharError as exc:
            runs.errors[method] = f"{type(exc).__name__}: {exc}"
            continue
        runs.timings[method] = time.perf_counter() - start
        runs.series[method] = s
        runs.cached[method] = cached
        runs.counts[method] = _object_count(method, w, D, s)
        log.info("%s (%s) to q^%d: %.3fs%s", method, w, D, runs.timings[method], " [cache]" if cached else "")
    return runs


@dataclass
class VerificationReport:
    weight: Weight
    cutoff: int
    methods: list[str]
    agree: bool
    first_discrepancy: dict | None = None
    timings: dict[str, float] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.agree and not self.violations

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "weight": list(self.weight.components),
            "cutoff": self.cutoff,
            "methods": list(self.methods),
            "agree": self.agree,
            "first_discrepancy": self.first_discrepancy,
            "counts": dict(self.counts),
            "errors": dict(self.errors),
            "violations": list(self.violations),
        }
        if include_timings:
            out["timings"] = {m: round(t, 6) for m, t in self.timings.items()}
        return out


def _character_violations(method: str, s: TriGradedSeries) -> list[str]:
    bad = []
    if s.coeff((0, 0, 0)) != 1:
        bad.append(f"{method}: constant term is {s.coeff((0, 0, 0))}, expected 1")
    for key, c in s.sorted_terms():
        if c < 0:
            bad.append(f"{method}: negative coefficient {c} at {tuple(key)}")
        if key.n1 + key.n2 > key.d:
            bad.append(f"{method}: charge exceeds degree at {tuple(key)}")
    return bad


def compare_runs(w: Weight, D: int, runs: CharacterRuns) -> VerificationReport:
    methods = list(runs.series)
    if len(methods) < 2:
        raise NothingToCompare(
            f"weight ({w}) is handled by {len(methods)} method(s) ({', '.join(methods) or 'none'}); need two to compare"
        )
    first: GradeKey | None = None
    base = runs.series[methods[0]]
    for m in methods[1:]:
        other = runs.series[m]
        if equal_up_to(base, other, D):
            continue
        key = first_difference(base, other, D)
        if first is None or (key.d, key.n1, key.n2) < (first.d, first.n1, first.n2):
            first = key
    discrepancy = None
    if first is not None:
        discrepancy = {
            "key": {"n1": first.n1, "n2": first.n2, "d": first.d},
            "coefficients": {m: str(runs.series[m].coeff(first)) for m in methods},
        }
    violations = [v for m in methods for v in _character_violations(m, runs.series[m])]
    return VerificationReport(
        weight=w,
        cutoff=D,
        methods=methods,
        agree=first is None,
        first_discrepancy=discrepancy,
        timings=dict(runs.timings),
        counts=dict(runs.counts),
        errors=dict(runs.errors),
        violations=violations,
    )


def verify(
    w: Weight, D: int, methods=tuple(METHODS), jobs: int = 1, cache: SeriesCache | None = None
) -> VerificationReport:
    """Run every method that supports ``w`` and report the first coefficient where any two disagree."""
    return compare_runs(w, D, run_characters(w, D, methods, jobs=jobs, cache=cache))
