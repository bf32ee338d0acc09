"""Exhaustive search of the gauged system over F_2."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..poly import Poly
from .system import QuadraticSystem


@dataclass(frozen=True)
class F2Result:
    free_vars: tuple[str, ...]
    solutions: tuple[tuple[int, ...], ...]
    candidates: int

    @property
    def count(self) -> int:
        return len(self.solutions)

    def to_json(self) -> dict:
        return {
            "vars": list(self.free_vars),
            "mod": "2^1",
            "candidates": self.candidates,
            "f2_count": self.count,
            "solutions": [list(s) for s in self.solutions],
        }


def compile_mod2(p: Poly, free_vars: tuple[str, ...]) -> tuple[int, list[tuple[int, ...]]]:
    """(constant bit, monomials as index tuples) of ``p`` reduced mod 2 with x^2 = x."""
    index = {v: i for i, v in enumerate(free_vars)}
    const = 0
    monos: dict[tuple[int, ...], int] = {}
    for e, c in p.terms.items():
        if c.denominator != 1:
            raise ValueError("system coefficients must be integers")
        if int(c.numerator) % 2 == 0:
            continue
        support = []
        for v, k in zip(p.vars, e):
            if k:
                if v not in index:
                    raise ValueError(f"variable {v} is not free")
                support.append(index[v])
        key = tuple(sorted(support))
        if not key:
            const ^= 1
        else:
            monos[key] = monos.get(key, 0) ^ 1
    return const, sorted(k for k, bit in monos.items() if bit)


def _scan(args) -> np.ndarray:
    compiled, nvars, start, stop = args
    idx = np.arange(start, stop, dtype=np.int64)
    # first free variable is the most significant bit: lexicographic order
    bits = [((idx >> (nvars - 1 - j)) & 1).astype(bool) for j in range(nvars)]
    bad = np.zeros(stop - start, dtype=bool)
    for const, monos in compiled:
        acc = np.full(stop - start, bool(const))
        for mono in monos:
            t = bits[mono[0]]
            for j in mono[1:]:
                t = t & bits[j]
            acc ^= t
        bad |= acc
    return idx[~bad]


def enumerate_f2(sys: QuadraticSystem, workers: int = 1, chunks: int | None = None) -> F2Result:
    """All F_2 solutions of a gauged system, lexicographic in the free variables."""
    if not sys.gauge or sys.fix_a13 or sys.slack:
        raise ValueError("F_2 enumeration expects the gauged system with a13 free and no slack")
    n = len(sys.free_vars)
    if n != 20:
        raise ValueError(f"expected 20 free variables, got {n}")
    compiled = [compile_mod2(p, sys.free_vars) for p in sys.polys]
    total = 1 << n
    chunks = chunks or max(1, workers) * 4
    step = -(-total // chunks)
    jobs = [(compiled, n, s, min(s + step, total)) for s in range(0, total, step)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan, jobs))
    else:
        parts = [_scan(j) for j in jobs]
    found = np.concatenate(parts)
    found.sort()
    sols = tuple(tuple(int(x >> (n - 1 - j)) & 1 for j in range(n)) for x in found)
    return F2Result(sys.free_vars, sols, total)
