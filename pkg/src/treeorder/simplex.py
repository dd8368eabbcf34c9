"""Exact feasibility of ``A x >= 1, x >= 0`` over the rationals.

Phase-one simplex on a dense Fraction tableau with Bland's rule. When the
system is infeasible the final reduced costs of the surplus columns give a
Farkas vector ``y >= 0`` with ``y A <= 0`` and ``sum(y) > 0``, which is
checked exactly before being returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class Certificate:
    """Nonnegative row multipliers whose combination has no positive coefficient."""

    weights: dict

    def verify(self, rows: Sequence[Sequence[int]]) -> bool:
        if not self.weights or any(w < 0 for w in self.weights.values()):
            return False
        if sum(self.weights.values()) <= 0:
            return False
        width = len(rows[0]) if rows else 0
        combo = [Fraction(0)] * width
        for i, w in self.weights.items():
            for j, a in enumerate(rows[i]):
                if a:
                    combo[j] += w * a
        return all(c <= 0 for c in combo)


def _phase_one(rows):
    m, n = len(rows), len(rows[0])
    # columns: x (n), surplus (m), artificial (m); last entry is the rhs
    width = n + 2 * m
    T = []
    for i, row in enumerate(rows):
        r = [Fraction(a) for a in row] + [Fraction(0)] * (2 * m) + [Fraction(1)]
        r[n + i] = Fraction(-1)
        r[n + m + i] = Fraction(1)
        T.append(r)
    basis = [n + m + i for i in range(m)]
    # reduced costs of min sum(artificial): c_j - sum over rows
    cost = [Fraction(0)] * (width + 1)
    for r in T:
        for j in range(width + 1):
            if r[j]:
                cost[j] -= r[j]
    for i in range(m):
        cost[n + m + i] = Fraction(0)
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(T):
            a = r[enter]
            if a > 0:
                ratio = r[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded cannot happen: objective is bounded below by 0
            raise ArithmeticError("phase one reported unbounded")
        i = best[1]
        pr = T[i]
        piv = pr[enter]
        if piv != 1:
            pr = [v / piv for v in pr]
            T[i] = pr
        nz = [j for j, v in enumerate(pr) if v]
        for k, r in enumerate(T):
            f = r[enter]
            if k != i and f:
                for j in nz:
                    r[j] -= f * pr[j]
        f = cost[enter]
        for j in nz:
            cost[j] -= f * pr[j]
        basis[i] = enter
    return T, basis, cost, n, m


def solve(rows: Sequence[Sequence[int]]):
    """Return ``(x, None)`` with ``A x >= 1, x >= 0`` or ``(None, Certificate)``."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], None
    T, basis, cost, n, m = _phase_one(rows)
    if -cost[-1] == 0:
        x = [Fraction(0)] * n
        for i, b in enumerate(basis):
            if b < n:
                x[b] = T[i][-1]
        return x, None
    y = {i: cost[n + i] for i in range(m) if cost[n + i]}
    cert = Certificate(y)
    if not cert.verify(rows):
        raise ArithmeticError("phase one ended infeasible without a valid certificate")
    return None, cert


def guide_rows(rows: Sequence[Sequence[int]], tol: float = 1e-7) -> list:
    """Indices of rows likely to decide the system, from a floating-point LP.

    Solves ``min sum(a) s.t. A x + a >= 1`` with HiGHS. A positive optimum
    points at the rows carrying dual weight; otherwise the rows tight at
    the float solution. Only used to seed the exact solver.
    """
    from scipy.optimize import linprog

    A = np.asarray(rows, dtype=float)
    m, n = A.shape
    c = np.concatenate([np.zeros(n), np.ones(m)])
    A_ub = -np.hstack([A, np.eye(m)])
    res = linprog(c, A_ub=A_ub, b_ub=-np.ones(m), bounds=(0, None), method="highs")
    if res.status != 0:
        return []
    if res.fun > tol:
        duals = -res.ineqlin.marginals
        return [int(i) for i in np.flatnonzero(duals > tol)]
    values = A @ res.x[:n]
    return [int(i) for i in np.flatnonzero(values < 1 + 1e-6)]


def solve_incremental(rows: Sequence[Sequence[int]], seed: Sequence[int] = (), batch: int = 40,
                      guided: bool = False):
    """Row generation: solve on a growing subset, adding the most violated rows.

    Infeasibility of any subset is infeasibility of the whole system, so the
    certificate refers to indices of ``rows``. ``guided`` seeds the subset
    from :func:`guide_rows`; the answer is still decided exactly.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], None
    if guided:
        seed = list(seed) + guide_rows(rows)
    active = list(dict.fromkeys(seed)) or [0]
    while True:
        x, cert = solve([rows[i] for i in active])
        if cert is not None:
            return None, Certificate({active[i]: w for i, w in cert.weights.items()})
        values = [(sum(a * v for a, v in zip(r, x) if a), k) for k, r in enumerate(rows)]
        taken = set(active)
        bad = sorted((val, k) for val, k in values if val < 1 and k not in taken)
        if not bad:
            return x, None
        active.extend(k for _, k in bad[:batch])
