"""Exhaustive reference computations used as independent oracles.

Nothing here shares a search strategy with the package: sequences and monomials
are generated with no constraints except a degree budget, then filtered through
the public membership predicates.
"""

from __future__ import annotations

from collections import Counter

from fschar.admissible import Weight, grade, is_admissible
from fschar.quasiparticle import QPMonomial, satisfies_basis
from fschar.series import TriGradedSeries

SUPPORTED_UP_TO_3 = [
    (1, 0, 0), (0, 1, 0), (0, 0, 1),
    (2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 1, 1), (0, 0, 2),
    (3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
]  # fmt: skip


def all_sequences(ell: int, D: int) -> list[tuple[int, ...]]:
    """Every trimmed nonnegative sequence whose degree (position i weighs i//ell + 1) is <= D."""
    out = []

    def rec(i: int, budget: int, prefix: list[int]):
        out.append(tuple(prefix))
        for j in range(i, ell * D):
            w = j // ell + 1
            for a in range(1, budget // w + 1):
                rec(j + 1, budget - a * w, prefix + [0] * (j - i) + [a])

    rec(0, D, [])
    return out


def brute_admissible(w: Weight, ell: int, D: int) -> set[tuple[int, ...]]:
    return {seq for seq in all_sequences(ell, D) if is_admissible(seq, w, ell)}


def brute_char_configs(w: Weight, D: int) -> TriGradedSeries:
    counts = Counter()
    for seq in brute_admissible(w, 2, D):
        (n1, n2), d = grade(seq, 2)
        counts[(n1, n2, d)] += 1
    return TriGradedSeries(D, counts)


def all_qp_monomials(k: int, D: int) -> list[QPMonomial]:
    """Every multiset of quasi-particles with charges 1..k, negative degrees, total degree <= D."""
    candidates = [(color, n, m) for color in (1, 2) for n in range(1, k + 1) for m in range(-D, 0)]
    out = []

    def rec(start: int, budget: int, chosen: list):
        g1 = tuple((n, m) for c, n, m in chosen if c == 1)
        g2 = tuple((n, m) for c, n, m in chosen if c == 2)
        out.append(QPMonomial(g1, g2))
        for idx in range(start, len(candidates)):
            c, n, m = candidates[idx]
            if -m <= budget:
                chosen.append(candidates[idx])
                rec(idx, budget + m, chosen)
                chosen.pop()

    rec(0, D, [])
    return out


def brute_basis(w: Weight, D: int) -> set[QPMonomial]:
    return {b for b in all_qp_monomials(w.level, D) if satisfies_basis(b, w)}


def charge_polynomial_at(series: TriGradedSeries, d: int) -> dict[tuple[int, int], int]:
    return series.q_coefficient(d)
