"""Depth-first lifting of F_2 solutions to solutions modulo 2^k.

A node at level j is an integer vector x with every polynomial of the system
divisible by 2^j at x.  Since the system is quadratic,

    q(x + 2^j e) = q(x) + 2^j J(x) e + 2^(2j) (...)

so for j >= 1 its children are x + 2^j e with e running over the solutions
of the affine F_2 system  q(x)/2^j + J(x) e = 0 (mod 2).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from ..poly import Poly
from .system import QuadraticSystem

Compiled = list[tuple[int, tuple[tuple[int, int], ...]]]


def compile_int(p: Poly, free_vars: tuple[str, ...]) -> Compiled:
    index = {v: i for i, v in enumerate(free_vars)}
    out = []
    for e, c in p.terms.items():
        if c.denominator != 1:
            raise ValueError("system coefficients must be integers")
        mono = []
        for v, k in zip(p.vars, e):
            if k:
                if v not in index:
                    raise ValueError(f"variable {v} is not free")
                mono.append((index[v], k))
        out.append((int(c.numerator), tuple(mono)))
    return out


def eval_int(poly: Compiled, x) -> int:
    total = 0
    for c, mono in poly:
        t = c
        for i, k in mono:
            t *= x[i] if k == 1 else x[i] ** k
        total += t
    return total


def solve_affine_f2(rows: list[int], rhs: list[int], n: int):
    """Solve ``rows * e = rhs`` over F_2 with rows as n-bit masks (bit i = var i).

    Returns ``(particular, kernel basis)`` or None when inconsistent.
    """
    pivots: list[tuple[int, int, int]] = []  # (pivot bit, row mask, rhs bit)
    for r, b in zip(rows, rhs):
        for pbit, pmask, prhs in pivots:
            if r >> pbit & 1:
                r ^= pmask
                b ^= prhs
        if r == 0:
            if b:
                return None
            continue
        pbit = r.bit_length() - 1
        # keep earlier pivot rows reduced against the new one
        pivots = [
            (qb, qm ^ r, qr ^ b) if qm >> pbit & 1 else (qb, qm, qr) for qb, qm, qr in pivots
        ]
        pivots.append((pbit, r, b))
    pivot_bits = {pb for pb, _, _ in pivots}
    particular = 0
    for pbit, pmask, prhs in pivots:
        if prhs:
            particular |= 1 << pbit
    kernel = []
    for f in range(n):
        if f in pivot_bits:
            continue
        v = 1 << f
        for pbit, pmask, _ in pivots:
            if pmask >> f & 1:
                v |= 1 << pbit
        kernel.append(v)
    return particular, kernel


@dataclass
class LiftReport:
    root: tuple[int, ...]
    k: int
    status: str  # "reached", "exhausted" or "inconclusive"
    max_level: int
    nodes_expanded: int
    level_counts: list[int] = field(default_factory=list)
    residues: tuple[int, ...] | None = None

    @property
    def reached(self) -> bool:
        return self.status == "reached"

    @property
    def lifts_mod4(self) -> bool:
        return self.max_level >= 2

    def to_json(self, free_vars=None) -> dict:
        doc = {
            "root": list(self.root),
            "k": self.k,
            "status": self.status,
            "max_level": self.max_level,
            "nodes_expanded": self.nodes_expanded,
            "level_counts": self.level_counts,
        }
        if self.residues is not None:
            doc["lift"] = {
                "vars": list(free_vars) if free_vars else None,
                "mod": f"2^{self.max_level}",
                "values": list(self.residues),
            }
        return doc


class Lifter:
    def __init__(self, sys: QuadraticSystem):
        if sys.slack:
            raise ValueError("lifting runs on the system without slack")
        self.free_vars = sys.free_vars
        self.n = len(sys.free_vars)
        self.polys = [compile_int(p, sys.free_vars) for p in sys.polys]
        self.jac = [
            [compile_int(p.derivative(v), sys.free_vars) for v in sys.free_vars] for p in sys.polys
        ]

    def values(self, x) -> list[int]:
        return [eval_int(p, x) for p in self.polys]

    def children(self, x, j: int):
        vals = self.values(x)
        mod = 1 << j
        if any(v % mod for v in vals):
            raise AssertionError(f"node at level {j} does not solve the system mod 2^{j}")
        rhs = [(v >> j) & 1 for v in vals]
        rows = []
        for grad in self.jac:
            mask = 0
            for i, d in enumerate(grad):
                if eval_int(d, x) & 1:
                    mask |= 1 << i
            rows.append(mask)
        sol = solve_affine_f2(rows, rhs, self.n)
        if sol is None:
            return
        particular, kernel = sol
        for coeffs in product((0, 1), repeat=len(kernel)):
            e = particular
            for bit, kv in zip(coeffs, kernel):
                if bit:
                    e ^= kv
            yield tuple(xi + (mod if e >> i & 1 else 0) for i, xi in enumerate(x))

    def lift(self, root, k: int = 50, cap: int = 1 << 16) -> LiftReport:
        if k < 2:
            raise ValueError("k must be at least 2")
        root = tuple(int(v) & 1 for v in root)
        if any(v % 2 for v in self.values(root)):
            raise ValueError("root is not an F_2 solution")
        counts = [0] * (k + 1)
        counts[1] = 1
        expanded = 0
        best = (1, root)
        stack = [(1, self.children(root, 1))]
        expanded += 1
        while stack:
            level, it = stack[-1]
            child = next(it, None)
            if child is None:
                stack.pop()
                continue
            lvl = level + 1
            counts[lvl] += 1
            if lvl > best[0]:
                best = (lvl, child)
            if lvl == k:
                if any(v % (1 << k) for v in self.values(child)):
                    raise AssertionError("final node does not solve the system")
                return LiftReport(root, k, "reached", k, expanded, counts[1:], child)
            if expanded >= cap:
                return LiftReport(root, k, "inconclusive", best[0], expanded, counts[1:], best[1])
            expanded += 1
            stack.append((lvl, self.children(child, lvl)))
        return LiftReport(root, k, "exhausted", best[0], expanded, counts[1:], best[1])


def _lift_job(args):
    sys, roots, k, cap = args
    lifter = Lifter(sys)
    return [lifter.lift(r, k, cap) for r in roots]


def lift_2adic(sys: QuadraticSystem, sol, k: int = 50, cap: int = 1 << 16) -> LiftReport:
    return Lifter(sys).lift(sol, k, cap)


def lift_all(sys: QuadraticSystem, sols, k: int = 50, cap: int = 1 << 16, workers: int = 1) -> list[LiftReport]:
    sols = list(sols)
    if workers <= 1:
        return _lift_job((sys, sols, k, cap))
    parts = [sols[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        results = list(ex.map(_lift_job, [(sys, p, k, cap) for p in parts]))
    out = [None] * len(sols)
    for w, res in enumerate(results):
        for j, r in enumerate(res):
            out[w + j * workers] = r
    return out


def lift_summary(reports: list[LiftReport], k: int) -> dict:
    survivors = [r for r in reports if r.lifts_mod4]
    reached = [r for r in reports if r.reached]
    return {
        "f2_count": len(reports),
        "mod4_survivors": len(survivors),
        "no_mod4_lift": len(reports) - len(survivors),
        "reached_count": len(reached),
        "inconclusive": sum(r.status == "inconclusive" for r in reports),
        "reached": f"2^{k}",
    }
