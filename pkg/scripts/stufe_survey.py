"""Construct unit-determinant matrices over prime fields and Q(i).

For every odd prime below the bound, records the Stufe, the number of
witnesses (a, b, c, d) with a^2+b^2+c^2+d^2 = -1 (searched on a small slice),
how many of them needed the a<->b swap and how many are degenerate.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from itertools import product
from pathlib import Path

from _common import parse_config, save

from hedgehog import finite_field_stufe, make_ring
from hedgehog.comb import DegenerateWitness, Witness, robust_construct


@dataclass
class Config:
    prime_bound: int = 60
    slice_bound: int = 7  # a, b, c, d range over 0..slice_bound-1
    out: str = "results"


def survey(p: int, bound: int) -> dict:
    F = make_ring(f"Fp:{p}")
    stats = {"witnesses": 0, "swapped": 0, "degenerate": 0}
    r = range(min(p, bound))
    for a, b, c, d in product(r, r, r, r):
        if (a * a + b * b + c * c + d * d + 1) % p:
            continue
        stats["witnesses"] += 1
        try:
            _, det, swapped = robust_construct(Witness(F, a, b, c, d))
        except DegenerateWitness:
            stats["degenerate"] += 1
            continue
        assert det.is_unit()
        stats["swapped"] += swapped
    return stats


def main(cfg: Config) -> dict:
    rows = {}
    for p in range(3, cfg.prime_bound):
        if any(p % q == 0 for q in range(2, p)):
            continue
        s, wit = finite_field_stufe(p)
        rows[p] = {"stufe": s, "witness": [str(x) for x in wit], **survey(p, cfg.slice_bound)}
        logging.info("p=%d %s", p, rows[p])
    doc = {"config": asdict(cfg), "primes": rows}
    save(Path(cfg.out), "stufe_survey.json", doc)
    return doc


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
