"""Exact rank of rational matrices."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import lcm


def _integer_rows(M) -> list:
    rows = []
    for row in M:
        row = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * scale) for x in row])
    return rows


def rational_rank(M) -> int:
    """Rank by fraction-free (Bareiss) elimination; entries may be int or Fraction."""
    A = _integer_rows(M)
    if not A or not A[0]:
        return 0
    m, n = len(A), len(A[0])
    if any(len(r) != n for r in A):
        raise ValueError("matrix is not rectangular")
    rank = 0
    prev = 1
    for col in range(n):
        pivot = next((r for r in range(rank, m) if A[r][col] != 0), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        p = A[rank][col]
        for r in range(rank + 1, m):
            for c in range(col + 1, n):
                # exact division is guaranteed by Sylvester's identity
                A[r][c] = (p * A[r][c] - A[r][col] * A[rank][c]) // prev
            A[r][col] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def determinant_by_expansion(M) -> Fraction:
    """Leibniz-formula determinant; independent check for small matrices."""
    n = len(M)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i in range(n):
            term *= Fraction(M[i][perm[i]])
            if term == 0:
                break
        total += term
    return total


def rank_by_minors(M) -> int:
    """Largest k with a nonzero k-by-k minor."""
    m = len(M)
    n = len(M[0]) if m else 0
    for k in range(min(m, n), 0, -1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                if determinant_by_expansion([[M[r][c] for c in cols] for r in rows]) != 0:
                    return k
    return 0
