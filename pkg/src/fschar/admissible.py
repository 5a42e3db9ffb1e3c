"""(k, l+1)-admissible configurations and the brute-force character of W(Lambda).

A configuration ``(a_0, a_1, ...)`` stands for the particle monomial

    ... x_{g1}(-2)^{a_l} x_{g_l}(-1)^{a_{l-1}} ... x_{g1}(-1)^{a_0}

so position ``i`` carries color ``(i mod l) + 1`` and degree ``i // l + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import DimensionMismatch
from ._parallel import parallel_map
from .series import TriGradedSeries, series_sum

__all__ = [
    "Weight",
    "Configuration",
    "is_admissible",
    "grade",
    "enumerate_admissible",
    "char_configs",
    "count_configs",
]


@dataclass(frozen=True)
class Weight:
    """Dominant integral weight k_0 Lambda_0 + ... + k_l Lambda_l."""

    components: tuple[int, ...]

    def __post_init__(self):
        comps = tuple(int(c) for c in self.components)
        if not comps:
            raise ValueError("a weight needs at least one component")
        if any(c < 0 for c in comps):
            raise ValueError(f"weight components must be nonnegative, got {comps}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *components: int) -> Weight:
        return cls(tuple(components))

    @classmethod
    def parse(cls, text: str) -> Weight:
        """Parse ``"k0,k1,k2"``."""
        try:
            return cls(tuple(int(p) for p in text.split(",")))
        except ValueError as exc:
            raise ValueError(f"bad weight {text!r}: expected comma-separated nonnegative integers") from exc

    @property
    def level(self) -> int:
        return sum(self.components)

    @property
    def ell(self) -> int:
        return len(self.components) - 1

    @property
    def formula_supported(self) -> bool:
        """True for the sl(3) shapes (k0, k1, 0) and (0, k1, k2)."""
        if len(self.components) != 3:
            return False
        k0, _, k2 = self.components
        return k0 == 0 or k2 == 0

    def __str__(self) -> str:
        return ",".join(map(str, self.components))

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i: int) -> int:
        return self.components[i]


@dataclass(frozen=True)
class Configuration:
    entries: tuple[int, ...] = ()

    def __post_init__(self):
        entries = [int(a) for a in self.entries]
        if any(a < 0 for a in entries):
            raise ValueError(f"configuration entries must be nonnegative, got {entries}")
        while entries and entries[-1] == 0:
            entries.pop()
        object.__setattr__(self, "entries", tuple(entries))

    def to_dict(self) -> dict:
        return {"entries": list(self.entries)}

    @classmethod
    def from_dict(cls, data) -> Configuration:
        return cls(tuple(data["entries"]))

    def __len__(self) -> int:
        return len(self.entries)


def _entries(a: Configuration | Sequence[int]) -> tuple[int, ...]:
    return a.entries if isinstance(a, Configuration) else Configuration(tuple(a)).entries


def _check_dims(w: Weight, ell: int) -> None:
    if ell < 1:
        raise ValueError(f"ell must be positive, got {ell}")
    if len(w.components) != ell + 1:
        raise DimensionMismatch(f"weight {w} has {len(w.components)} components, ell={ell} needs {ell + 1}")


def is_admissible(a: Configuration | Sequence[int], w: Weight, ell: int = 2) -> bool:
    _check_dims(w, ell)
    entries = _entries(a)
    k = w.level
    bound = 0
    prefix = 0
    for j in range(ell):
        bound += w[j]
        prefix += entries[j] if j < len(entries) else 0
        if prefix > bound:
            return False
    # windows reaching past the stored entries are dominated by ones ending at the last entry
    for end in range(ell, len(entries)):
        if sum(entries[end - ell : end + 1]) > k:
            return False
    return True


def grade(a: Configuration | Sequence[int], ell: int = 2) -> tuple[tuple[int, ...], int]:
    """Charges per color and total degree of a configuration."""
    entries = _entries(a)
    charges = [0] * ell
    degree = 0
    for i, ai in enumerate(entries):
        charges[i % ell] += ai
        degree += ai * (i // ell + 1)
    return tuple(charges), degree


def _position_limit(i: int, ell: int, w: Weight, window: tuple[int, ...], prefix: int) -> int:
    """Largest a_i compatible with the already-placed entries."""
    k = w.level
    if i < ell:
        return sum(w.components[: i + 1]) - prefix
    # window holds the previous ell entries
    return k - sum(window)


def _exact_degree(w: Weight, ell: int, degree: int) -> Iterator[tuple[int, ...]]:
    """Admissible configurations of exactly ``degree``, in descending lexicographic order."""
    out: list[int] = []

    def rec(i: int, remaining: int, prefix: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield tuple(out)
            return
        weight_i = i // ell + 1
        if weight_i > remaining:
            return
        window = tuple(out[max(0, i - ell) : i])
        top = min(remaining // weight_i, _position_limit(i, ell, w, window, prefix))
        for ai in range(top, -1, -1):
            out.append(ai)
            yield from rec(i + 1, remaining - ai * weight_i, prefix + ai)
            out.pop()

    for entries in rec(0, degree, 0):
        yield Configuration(entries).entries


def enumerate_admissible(w: Weight, ell: int, Dmax: int) -> Iterator[Configuration]:
    """Every admissible configuration of degree <= Dmax, by degree then descending lex order."""
    _check_dims(w, ell)
    for degree in range(Dmax + 1):
        for entries in _exact_degree(w, ell, degree):
            yield Configuration(entries)


def count_configs(
    w: Weight, ell: int, D: int, leading: int | None = None
) -> dict[tuple[tuple[int, ...], int], int]:
    """Counts of admissible configurations keyed by (charges, degree), any ell.

    Walks the same search tree as ``enumerate_admissible`` but shares identical
    subtrees: what can follow a partial configuration depends only on the position,
    the last ell entries, the prefix sum (initial conditions) and the remaining
    degree budget.  ``leading`` pins a_0, which splits the work into disjoint parts.
    """
    _check_dims(w, ell)
    k = w.level
    initial_bounds = [sum(w.components[: j + 1]) for j in range(ell)]
    empty = ((0,) * ell, 0)

    @lru_cache(maxsize=None)
    def completions(i: int, window: tuple[int, ...], prefix: int, remaining: int):
        # {(charges, degree): count} over choices of a_i, a_{i+1}, ... within `remaining`
        result: dict[tuple[tuple[int, ...], int], int] = {empty: 1}
        weight_i = i // ell + 1
        if weight_i > remaining:
            return result
        top = initial_bounds[i] - prefix if i < ell else k - sum(window)
        top = min(top, remaining // weight_i)
        lo = 0
        if i == 0 and leading is not None:
            if leading > top:
                return {}
            lo = top = leading
        color = i % ell
        for ai in range(lo, top + 1):
            nxt = (window + (ai,))[-ell:]
            nxt_prefix = prefix + ai if i + 1 < ell else 0
            sub = completions(i + 1, nxt, nxt_prefix, remaining - ai * weight_i)
            for (charges, deg), cnt in sub.items():
                if ai == 0 and (charges, deg) == empty:
                    continue  # all-zero tail already counted in `result`
                ch = list(charges)
                ch[color] += ai
                key = (tuple(ch), deg + ai * weight_i)
                result[key] = result.get(key, 0) + cnt
        return result

    out = dict(completions(0, (), 0, D))
    if leading is not None:
        if leading == 0:
            return out
        out.pop(empty, None)
    return out


def _branch(args: tuple[Weight, int, int]) -> TriGradedSeries:
    w, D, a0 = args
    counts = count_configs(w, 2, D, leading=a0)
    return TriGradedSeries(D, {(ch[0], ch[1], d): c for (ch, d), c in counts.items()})


def char_configs(w: Weight, D: int, jobs: int = 1) -> TriGradedSeries:
    """Character of W(Lambda) for sl(3), counting admissible configurations.

    With ``jobs > 1`` the configurations are split by their leading entry a_0 and the
    parts are counted in separate processes; the exact sum does not depend on the split.
    """
    _check_dims(w, 2)
    if jobs <= 1:
        return _branch((w, D, None))
    tasks = [(w, D, a0) for a0 in range(min(w[0], D) + 1)]
    return series_sum(parallel_map(_branch, tasks, jobs), D)
