"""Quasi-particle monomial bases of W(Lambda) for sl(3).

A monomial is stored per color as a tuple of ``(charge, degree)`` pairs sorted
ascending, i.e. in the written order

    x_{n_{i,a}}(m_{i,a}) ... x_{n_{i,1}}(m_{i,1})

so index j = 1 is the *last* stored pair (largest charge, highest degree).
Degrees are negative integers; the grading degree of a monomial is ``-sum(m)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from ._parallel import chunked, parallel_map
from .admissible import Weight
from .errors import ChargeOutOfRange, DimensionMismatch, UnsupportedWeight
from .series import TriGradedSeries, series_sum

__all__ = [
    "QuasiParticle",
    "QPMonomial",
    "ChargeProfile",
    "dmax_level1",
    "dmax",
    "satisfies_basis",
    "enumerate_basis",
    "char_qp",
    "minimal_monomial",
    "compare",
    "dual_charges",
    "profile_from_dual",
]

GAMMA1, GAMMA2 = 1, 2


def require_supported(w: Weight) -> None:
    if not w.formula_supported:
        raise UnsupportedWeight(
            f"weight ({w}) is not of the form (k0,k1,0) or (0,k1,k2); no quasi-particle basis is available"
        )


@dataclass(frozen=True)
class QuasiParticle:
    color: int
    charge: int
    degree: int

    def __post_init__(self):
        if self.color not in (GAMMA1, GAMMA2):
            raise ValueError(f"color must be 1 or 2, got {self.color}")
        if self.charge < 1:
            raise ValueError(f"charge must be positive, got {self.charge}")

    def order_key(self) -> tuple[int, int, int]:
        # gamma_2 < gamma_1, then charge, then degree
        return (0 if self.color == GAMMA2 else 1, self.charge, self.degree)

    def __str__(self) -> str:
        n = "" if self.charge == 1 else str(self.charge)
        return f"x_{n}g{self.color}({self.degree})"


def _canon(pairs) -> tuple[tuple[int, int], ...]:
    out = tuple(sorted((int(n), int(m)) for n, m in pairs))
    for n, _ in out:
        if n < 1:
            raise ValueError(f"quasi-particle charges must be positive, got {n}")
    return out


@dataclass(frozen=True)
class QPMonomial:
    gamma1: tuple[tuple[int, int], ...] = ()
    gamma2: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gamma1", _canon(self.gamma1))
        object.__setattr__(self, "gamma2", _canon(self.gamma2))

    @property
    def charges(self) -> tuple[int, int]:
        return sum(n for n, _ in self.gamma1), sum(n for n, _ in self.gamma2)

    @property
    def degree(self) -> int:
        return -sum(m for _, m in self.gamma1) - sum(m for _, m in self.gamma2)

    def particles(self) -> list[QuasiParticle]:
        """Factors in written order, left to right."""
        return [QuasiParticle(GAMMA2, n, m) for n, m in self.gamma2] + [
            QuasiParticle(GAMMA1, n, m) for n, m in self.gamma1
        ]

    def profile(self, k: int) -> ChargeProfile:
        m1, m2 = [0] * k, [0] * k
        for n, _ in self.gamma1:
            if n > k:
                raise ChargeOutOfRange(f"charge {n} exceeds level {k}")
            m1[n - 1] += 1
        for n, _ in self.gamma2:
            if n > k:
                raise ChargeOutOfRange(f"charge {n} exceeds level {k}")
            m2[n - 1] += 1
        return ChargeProfile(tuple(m1), tuple(m2))

    def order_key(self) -> tuple:
        """Sort key realizing the monomial order; see ``compare``."""
        factors = sorted((p.order_key() for p in self.particles()), reverse=True)
        # an exhausted monomial compares above any further factor
        return tuple(factors) + ((2, 0, 0),)

    def __mul__(self, other: QPMonomial) -> QPMonomial:
        return QPMonomial(self.gamma1 + other.gamma1, self.gamma2 + other.gamma2)

    def to_dict(self) -> dict:
        return {
            "gamma1": [{"n": n, "m": m} for n, m in self.gamma1],
            "gamma2": [{"n": n, "m": m} for n, m in self.gamma2],
        }

    @classmethod
    def from_dict(cls, data) -> QPMonomial:
        return cls(
            tuple((p["n"], p["m"]) for p in data.get("gamma1", [])),
            tuple((p["n"], p["m"]) for p in data.get("gamma2", [])),
        )

    def __str__(self) -> str:
        return " ".join(str(p) for p in self.particles()) or "1"


@dataclass(frozen=True)
class ChargeProfile:
    """M[i][j-1] = number of color-i quasi-particles of charge j."""

    gamma1: tuple[int, ...]
    gamma2: tuple[int, ...]

    def __post_init__(self):
        g1, g2 = tuple(map(int, self.gamma1)), tuple(map(int, self.gamma2))
        if len(g1) != len(g2):
            raise DimensionMismatch(f"color rows have lengths {len(g1)} and {len(g2)}")
        if any(x < 0 for x in g1 + g2):
            raise ValueError("quasi-particle counts must be nonnegative")
        object.__setattr__(self, "gamma1", g1)
        object.__setattr__(self, "gamma2", g2)

    @classmethod
    def zero(cls, k: int) -> ChargeProfile:
        return cls((0,) * k, (0,) * k)

    @classmethod
    def from_vector(cls, vec: Sequence[int]) -> ChargeProfile:
        """Inverse of ``vector``: (M_11..M_1k, M_21..M_2k)."""
        if len(vec) % 2:
            raise DimensionMismatch(f"profile vector length {len(vec)} is odd")
        k = len(vec) // 2
        return cls(tuple(vec[:k]), tuple(vec[k:]))

    @property
    def k(self) -> int:
        return len(self.gamma1)

    @property
    def charges(self) -> tuple[int, int]:
        return (
            sum(j * c for j, c in enumerate(self.gamma1, 1)),
            sum(j * c for j, c in enumerate(self.gamma2, 1)),
        )

    @property
    def vector(self) -> tuple[int, ...]:
        return self.gamma1 + self.gamma2

    def row(self, color: int) -> tuple[int, ...]:
        return self.gamma1 if color == GAMMA1 else self.gamma2


def dmax_level1(color: int, fundamental: int) -> int:
    """Largest degree m with x_{gamma_color}(m) v_{Lambda_fundamental} != 0."""
    return -2 if color <= fundamental else -1


def dmax(n: int, color: int, w: Weight) -> int:
    """Largest degree at which a charge-n quasi-particle of the given color survives on v_Lambda."""
    require_supported(w)
    if not 1 <= n <= w.level:
        raise ChargeOutOfRange(f"charge {n} outside 1..{w.level}")
    k0, k1, _ = w.components
    free = k0 if color == GAMMA1 else k0 + k1
    return -min(n, free) - 2 * max(n - free, 0)


def _check_charges(b: QPMonomial, k: int) -> None:
    for n, _ in b.gamma1 + b.gamma2:
        if n > k:
            raise ChargeOutOfRange(f"charge {n} exceeds level {k}")


def _upper_bounds(charges1: Sequence[int], charges2: Sequence[int], w: Weight) -> tuple[list[int], list[int]]:
    """Profile-only bounds from the initial conditions, charges listed in index order j = 1, 2, ..."""
    k = w.level
    ub1 = [dmax(n, GAMMA1, w) - 2 * j * n for j, n in enumerate(charges1)]
    ub2 = []
    for j, n in enumerate(charges2):
        cross = sum(max(0, n + n1 - k) for n1 in charges1)
        ub2.append(dmax(n, GAMMA2, w) - 2 * j * n - cross)
    return ub1, ub2


def satisfies_basis(b: QPMonomial, w: Weight) -> bool:
    require_supported(w)
    _check_charges(b, w.level)
    c1 = list(reversed(b.gamma1))
    c2 = list(reversed(b.gamma2))
    ub1, ub2 = _upper_bounds([n for n, _ in c1], [n for n, _ in c2], w)
    for seq, ub in ((c1, ub1), (c2, ub2)):
        for j, (n, m) in enumerate(seq):
            if m > ub[j]:
                return False
            if j and seq[j - 1][0] == n and m > seq[j - 1][1] - 2 * n:
                return False
    return True


def minimal_monomial(M: ChargeProfile, w: Weight) -> QPMonomial:
    """The basis monomial of profile M whose degrees all sit at their largest allowed value."""
    require_supported(w)
    k = w.level
    if M.k != k:
        if any(M.gamma1[k:]) or any(M.gamma2[k:]):
            raise ChargeOutOfRange(f"profile has charges above level {k}")
        raise DimensionMismatch(f"profile has {M.k} charge slots, level is {k}")
    charges1 = [j for j in range(k, 0, -1) for _ in range(M.gamma1[j - 1])]
    charges2 = [j for j in range(k, 0, -1) for _ in range(M.gamma2[j - 1])]
    ub1, ub2 = _upper_bounds(charges1, charges2, w)
    picked = []
    for charges, ub in ((charges1, ub1), (charges2, ub2)):
        ms: list[int] = []
        for j, n in enumerate(charges):
            m = ub[j]
            if j and charges[j - 1] == n:
                m = min(m, ms[-1] - 2 * n)
            ms.append(m)
        picked.append(tuple(zip(charges, ms)))
    return QPMonomial(picked[0], picked[1])


def _partitions_bounded(total_max: int, k: int) -> Iterator[tuple[int, ...]]:
    """Count vectors (M_1..M_k) with sum j*M_j <= total_max."""

    def rec(j: int, room: int) -> Iterator[tuple[int, ...]]:
        if j == 0:
            yield ()
            return
        for c in range(room // j + 1):
            for rest in rec(j - 1, room - c * j):
                yield rest + (c,)

    yield from rec(k, total_max)


def basis_profiles(w: Weight, D: int) -> list[ChargeProfile]:
    """Profiles whose minimal monomial has degree <= D (all others have no basis element below D)."""
    require_supported(w)
    k = w.level
    if k == 0:
        return [ChargeProfile.zero(0)]
    zero = (0,) * k
    out = []
    for m1 in _partitions_bounded(D, k):
        if minimal_monomial(ChargeProfile(m1, zero), w).degree > D:
            continue
        n1 = sum(j * c for j, c in enumerate(m1, 1))
        for m2 in _partitions_bounded(D - n1, k):
            prof = ChargeProfile(m1, m2)
            if minimal_monomial(prof, w).degree <= D:
                out.append(prof)
    return out


def _monomials_of_profile(M: ChargeProfile, w: Weight, D: int) -> Iterator[QPMonomial]:
    k = w.level
    charges1 = [j for j in range(k, 0, -1) for _ in range(M.gamma1[j - 1])]
    charges2 = [j for j in range(k, 0, -1) for _ in range(M.gamma2[j - 1])]
    ub1, ub2 = _upper_bounds(charges1, charges2, w)
    charges = charges1 + charges2
    ub = ub1 + ub2
    split = len(charges1)
    # cheapest possible degree still owed by particles t, t+1, ...
    owed = [0] * (len(charges) + 1)
    for t in range(len(charges) - 1, -1, -1):
        owed[t] = owed[t + 1] - ub[t]
    ms: list[int] = []

    def rec(t: int, spent: int) -> Iterator[QPMonomial]:
        if t == len(charges):
            yield QPMonomial(tuple(zip(charges1, ms[:split])), tuple(zip(charges2, ms[split:])))
            return
        hi = ub[t]
        if t not in (0, split) and charges[t - 1] == charges[t]:
            hi = min(hi, ms[-1] - 2 * charges[t])
        lo = -(D - spent - owed[t + 1])
        for m in range(hi, lo - 1, -1):
            ms.append(m)
            yield from rec(t + 1, spent - m)
            ms.pop()

    yield from rec(0, 0)


def enumerate_basis(w: Weight, D: int) -> Iterator[QPMonomial]:
    """Every basis monomial of degree <= D, exactly once, grouped by charge profile."""
    for prof in basis_profiles(w, D):
        yield from _monomials_of_profile(prof, w, D)


def _count_profiles(args) -> TriGradedSeries:
    w, D, profiles = args
    counts: dict[tuple[int, int, int], int] = {}
    for prof in profiles:
        for b in _monomials_of_profile(prof, w, D):
            n1, n2 = b.charges
            key = (n1, n2, b.degree)
            counts[key] = counts.get(key, 0) + 1
    return TriGradedSeries(D, counts)


def char_qp(w: Weight, D: int, jobs: int = 1) -> TriGradedSeries:
    """Character of W(Lambda) counted monomial by monomial over the quasi-particle basis."""
    profiles = basis_profiles(w, D)
    tasks = [(w, D, part) for part in chunked(profiles, jobs)]
    return series_sum(parallel_map(_count_profiles, tasks, jobs), D)


def compare(x: QuasiParticle | QPMonomial, y: QuasiParticle | QPMonomial) -> int:
    """-1, 0 or 1 as x precedes, equals or follows y in the linear order on (monomials of) quasi-particles.

    Monomials are compared factor by factor from the right after sorting each into
    non-increasing order; when one runs out first, the longer monomial is the smaller.
    """
    if isinstance(x, QuasiParticle):
        x = QPMonomial(*_as_rows(x))
    if isinstance(y, QuasiParticle):
        y = QPMonomial(*_as_rows(y))
    kx, ky = x.order_key(), y.order_key()
    return (kx > ky) - (kx < ky)


def _as_rows(p: QuasiParticle):
    pair = ((p.charge, p.degree),)
    return (pair, ()) if p.color == GAMMA1 else ((), pair)


def dual_charges(M: ChargeProfile) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(N1, N2) with N1[j] = M_1j + ... + M_1k and N2[j] = M_2,k-j+1 + ... + M_2k (1-based j)."""
    k = M.k
    n1 = tuple(sum(M.gamma1[j:]) for j in range(k))
    n2 = tuple(sum(M.gamma2[k - j - 1 :]) for j in range(k))
    return n1, n2


def profile_from_dual(N1: Sequence[int], N2: Sequence[int]) -> ChargeProfile:
    k = len(N1)
    if len(N2) != k:
        raise DimensionMismatch("dual charge rows differ in length")
    m1 = tuple(N1[j] - (N1[j + 1] if j + 1 < k else 0) for j in range(k))
    m2 = [0] * k
    for j in range(1, k + 1):
        m2[k - j] = N2[j - 1] - (N2[j - 2] if j >= 2 else 0)
    return ChargeProfile(m1, tuple(m2))


def all_profiles(k: int, max_count: int) -> Iterator[ChargeProfile]:
    """Every profile with entries in 0..max_count (for exhaustive checks)."""
    for vec in product(range(max_count + 1), repeat=2 * k):
        yield ChargeProfile.from_vector(vec)
