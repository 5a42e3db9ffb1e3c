"""Fermionic sums for the character of W(Lambda) and the matrices behind them.

Three summation forms are provided.  They are written out separately on purpose
(charge profiles M, dual charges N, and Georgiev's r-variables) so that agreement
between them is a genuine check rather than a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from ._parallel import chunked, parallel_map
from .admissible import Weight
from .errors import DimensionMismatch, UnsupportedWeight
from .quasiparticle import ChargeProfile
from .series import TriGradedSeries, inv_pochhammer, make_constant, mul, mul_monomial, series_sum

__all__ = [
    "QuadraticForm",
    "LinearForm",
    "TransitionMatrix",
    "build_Q",
    "build_L",
    "build_R",
    "primed_forms",
    "exponent",
    "char_fermionic_M",
    "char_fermionic_N",
    "char_fermionic_georgiev",
    "generalized_binomial",
    "bareiss_det",
    "binom_matrix_det",
    "matrices_payload",
]

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class QuadraticForm:
    k: int
    Q: Matrix

    def value(self, v: Sequence[int]) -> int:
        return quad(self.Q, v)


@dataclass(frozen=True)
class LinearForm:
    k: int
    L: tuple[int, ...]

    def value(self, v: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.L, v))


@dataclass(frozen=True)
class TransitionMatrix:
    """Block-diagonal (C, D) taking dual-charge vectors N to profiles M = R N."""

    k: int
    R: Matrix

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.R)


def quad(Q: Matrix, v: Sequence[int]) -> int:
    return sum(v[i] * Q[i][j] * v[j] for i in range(len(v)) if v[i] for j in range(len(v)) if v[j])


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def _require_supported(w: Weight) -> None:
    if not w.formula_supported:
        raise UnsupportedWeight(f"no fermionic formula for weight ({w}); need (k0,k1,0) or (0,k1,k2)")


def build_Q(k: int) -> QuadraticForm:
    if k < 0:
        raise ValueError(f"level must be nonnegative, got {k}")
    rows = []
    for i in range(1, 2 * k + 1):
        row = []
        for j in range(1, 2 * k + 1):
            if i <= k and j <= k:
                row.append(min(i, j))
            elif i <= k < j:
                row.append(max(0, i + (j - k) - k))
            elif i > k and j > k:
                row.append(min(i - k, j - k))
            else:
                row.append(0)
        rows.append(tuple(row))
    return QuadraticForm(k, tuple(rows))


def build_L(w: Weight) -> LinearForm:
    _require_supported(w)
    k0, k1, k2 = w.components
    k = w.level
    first = (0,) * k0 + tuple(range(1, k - k0 + 1))
    second = (0,) * (k0 + k1) + tuple(range(1, k2 + 1))
    return LinearForm(k, first + second)


def build_R(k: int) -> TransitionMatrix:
    rows = [[0] * (2 * k) for _ in range(2 * k)]
    for i in range(1, k + 1):
        # C block: M_1i = N_1i - N_1,i+1
        rows[i - 1][i - 1] = 1
        if i + 1 <= k:
            rows[i - 1][i] = -1
        # D block: M_2i = N_2,k-i+1 - N_2,k-i
        rows[k + i - 1][k + (k - i + 1) - 1] = 1
        if k - i >= 1:
            rows[k + i - 1][k + (k - i) - 1] = -1
    return TransitionMatrix(k, tuple(tuple(r) for r in rows))


def primed_forms(w: Weight) -> tuple[QuadraticForm, LinearForm]:
    """Q' = R^t Q R and L' = R^t L, the forms in dual-charge variables."""
    k = w.level
    Q = build_Q(k).Q
    R = build_R(k).R
    Rt = transpose(R)
    L = build_L(w).L
    Lp = tuple(sum(Rt[i][j] * L[j] for j in range(2 * k)) for i in range(2 * k))
    return QuadraticForm(k, matmul(matmul(Rt, Q), R)), LinearForm(k, Lp)


def exponent(M: ChargeProfile | Sequence[int], w: Weight) -> int:
    """M^t Q M + L . M for the flattened profile (M_11..M_1k, M_21..M_2k)."""
    _require_supported(w)
    vec = M.vector if isinstance(M, ChargeProfile) else tuple(M)
    if len(vec) != 2 * w.level:
        raise DimensionMismatch(f"profile of length {len(vec)} does not match level {w.level}")
    return build_Q(w.level).value(vec) + build_L(w).value(vec)


@lru_cache(maxsize=4096)
def _denominator(parts: tuple[int, ...], cutoff: int) -> TriGradedSeries:
    """prod over parts of 1/(q)_part, parts given sorted."""
    acc = make_constant(1, cutoff)
    for p in parts:
        if p:
            acc = mul(acc, inv_pochhammer(p, cutoff))
    return acc


def _summand(e: int, parts: Sequence[int], n1: int, n2: int, D: int) -> TriGradedSeries:
    den = _denominator(tuple(sorted(p for p in parts if p)), D - e)
    return mul_monomial(TriGradedSeries(D, dict(den.terms)), (n1, n2, e))


def _bounded_counts(k: int, room: int) -> Iterator[tuple[int, ...]]:
    """(c_1..c_k) with sum j*c_j <= room."""
    if k == 0:
        yield ()
        return
    for rest in _bounded_counts(k - 1, room):
        used = sum(j * c for j, c in enumerate(rest, 1))
        for c in range((room - used) // k + 1):
            yield rest + (c,)


def m_profiles(w: Weight, D: int) -> list[tuple[tuple[int, ...], int]]:
    """(M vector, exponent) for every profile whose exponent is <= D."""
    _require_supported(w)
    k = w.level
    Q = build_Q(k)
    L = build_L(w)
    out = []
    for m1 in _bounded_counts(k, D):
        n1 = sum(j * c for j, c in enumerate(m1, 1))
        for m2 in _bounded_counts(k, D - n1):
            vec = m1 + m2
            e = Q.value(vec) + L.value(vec)
            # pruning by charge relies on this
            assert e >= n1 + sum(j * c for j, c in enumerate(m2, 1)), vec
            if e <= D:
                out.append((vec, e))
    return out


def _sum_m(args) -> TriGradedSeries:
    k, D, items = args
    parts = []
    for vec, e in items:
        n1 = sum(j * c for j, c in enumerate(vec[:k], 1))
        n2 = sum(j * c for j, c in enumerate(vec[k:], 1))
        parts.append(_summand(e, vec, n1, n2, D))
    return series_sum(parts, D)


def char_fermionic_M(w: Weight, D: int, jobs: int = 1) -> TriGradedSeries:
    """Sum over charge profiles M of q^(M Q M + L M) z1^n1 z2^n2 / prod (q)_{M_ij}."""
    items = m_profiles(w, D)
    tasks = [(w.level, D, part) for part in chunked(items, jobs)]
    return series_sum(parallel_map(_sum_m, tasks, jobs), D)


def _monotone(k: int, total_max: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing (x_1 >= ... >= x_k >= 0) with sum <= total_max."""

    def rec(slots: int, cap: int, room: int) -> Iterator[tuple[int, ...]]:
        if slots == 0:
            yield ()
            return
        for x in range(min(cap, room) + 1):
            for rest in rec(slots - 1, x, room - x):
                yield (x,) + rest

    yield from rec(k, total_max, total_max)


def n_vectors(w: Weight, D: int) -> list[tuple[tuple[int, ...], int]]:
    """(N vector, exponent) for dual-charge vectors with exponent <= D."""
    _require_supported(w)
    k = w.level
    Qp, Lp = primed_forms(w)
    out = []
    for n1 in _monotone(k, D):
        room = D - sum(n1)
        for dec in _monotone(k, room):
            n2 = tuple(reversed(dec))  # N_2k >= ... >= N_21
            vec = n1 + n2
            e = Qp.value(vec) + Lp.value(vec)
            if e <= D:
                out.append((vec, e))
    return out


def _sum_n(args) -> TriGradedSeries:
    k, D, items = args
    parts = []
    for vec, e in items:
        N1, N2 = vec[:k], vec[k:]
        dens = [N1[j] - (N1[j + 1] if j + 1 < k else 0) for j in range(k)]
        dens += [N2[j] - (N2[j - 1] if j else 0) for j in range(k)]
        parts.append(_summand(e, dens, sum(N1), sum(N2), D))
    return series_sum(parts, D)


def char_fermionic_N(w: Weight, D: int, jobs: int = 1) -> TriGradedSeries:
    """Sum over monotone dual-charge vectors N with the form N Q' N + L' N."""
    items = n_vectors(w, D)
    tasks = [(w.level, D, part) for part in chunked(items, jobs)]
    return series_sum(parallel_map(_sum_n, tasks, jobs), D)


def georgiev_exponent(r1: Sequence[int], r2: Sequence[int], w: Weight) -> int:
    _require_supported(w)
    k0, _, k2 = w.components
    k = w.level
    e = sum(x * x for x in r1) + sum(x * x for x in r2)
    e += sum(r2[j] * r1[k - 1 - j] for j in range(k))
    if k2 == 0:
        e += sum(r1[k0:])
    else:
        e += sum(r1) + sum(r2[k - k2 :])
    return e


def r_types(w: Weight, D: int) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
    _require_supported(w)
    k = w.level
    out = []
    for r1 in _monotone(k, D):
        for r2 in _monotone(k, D - sum(r1)):
            e = georgiev_exponent(r1, r2, w)
            if e <= D:
                out.append((r1, r2, e))
    return out


def _sum_r(args) -> TriGradedSeries:
    k, D, items = args
    parts = []
    for r1, r2, e in items:
        dens = [r[j] - (r[j + 1] if j + 1 < k else 0) for r in (r1, r2) for j in range(k)]
        parts.append(_summand(e, dens, sum(r1), sum(r2), D))
    return series_sum(parts, D)


def char_fermionic_georgiev(w: Weight, D: int, jobs: int = 1) -> TriGradedSeries:
    """Sum over color-dual-charge types (r_i^(1) >= ... >= r_i^(k) >= 0)."""
    items = r_types(w, D)
    tasks = [(w.level, D, part) for part in chunked(items, jobs)]
    return series_sum(parallel_map(_sum_r, tasks, jobs), D)


def generalized_binomial(x: int, i: int) -> int:
    """x (x-1) ... (x-i+1) / i! for any integer x."""
    if i < 0:
        return 0
    num, den = 1, 1
    for t in range(i):
        num *= x - t
        den *= t + 1
    return num // den


def bareiss_det(A: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination; every intermediate stays integral."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    if any(len(row) != n for row in M):
        raise DimensionMismatch("determinant needs a square matrix")
    sign = 1
    prev = 1
    for c in range(n - 1):
        if M[c][c] == 0:
            swap = next((r for r in range(c + 1, n) if M[r][c] != 0), None)
            if swap is None:
                return 0
            M[c], M[swap] = M[swap], M[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                M[i][j] = (M[i][j] * M[c][c] - M[i][c] * M[c][j]) // prev
            M[i][c] = 0
        prev = M[c][c]
    return sign * M[n - 1][n - 1]


def binom_matrix(p: int, r: int) -> list[list[int]]:
    """(r+1) x (r+1) matrix with entry (i, j) = binomial(p + j, i)."""
    return [[generalized_binomial(p + j, i) for j in range(r + 1)] for i in range(r + 1)]


def binom_matrix_det(p: int, r: int) -> int:
    if r < 0:
        raise ValueError(f"r must be nonnegative, got {r}")
    return bareiss_det(binom_matrix(p, r))


def matrices_payload(w: Weight) -> dict:
    """JSON-ready {"k", "Q", "L", "R"} for a supported weight."""
    k = w.level
    return {
        "k": k,
        "Q": [list(row) for row in build_Q(k).Q],
        "L": list(build_L(w).L),
        "R": [list(row) for row in build_R(k).R],
    }
