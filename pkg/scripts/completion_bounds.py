"""Smallest degree bound at which complete_by_ansatz finds a completion.

Rows come from the second rows of constructed matrices (scaled to
determinant 1) and from random unimodular rows (1, c, 0) over Q(i).
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from pathlib import Path

from _common import Timer, parse_config, save

from hedgehog import Poly
from hedgehog.comb import normalize_to_sl3, robust_construct, theorem13
from hedgehog.search.sampling import sample_witnesses
from hedgehog.tangent import complete_by_ansatz

XYZ = ("X", "Y", "Z")


@dataclass
class Config:
    witnesses: int = 5
    seed: int = 0
    max_bound: int = 2
    out: str = "results"


def first_bound(row, max_bound: int):
    for bound in range(max_bound + 1):
        with Timer() as t:
            cert = complete_by_ansatz(*row, degree_bound=bound)
        if cert is not None:
            return bound, t.seconds
    return None, None


def main(cfg: Config) -> dict:
    rows = {"theorem13": normalize_to_sl3(theorem13(), 2).matrix.rows[1]}
    for k, (w, _) in enumerate(sample_witnesses(cfg.witnesses, "Q(sqrt:-1)", cfg.seed)):
        cm, _, _ = robust_construct(w)
        rows[f"theorem12[{k}]"] = normalize_to_sl3(cm, 2).matrix.rows[1]
    K = rows["theorem12[0]"][0].ring
    rows["stufe2"] = [Poly.parse(s, K, XYZ) for s in ("1", "w", "0")]
    out = {}
    for name, row in rows.items():
        bound, secs = first_bound(row, cfg.max_bound)
        out[name] = {"bound": bound, "seconds": None if secs is None else round(secs, 3)}
        logging.info("%s: bound %s", name, bound)
    doc = {"config": asdict(cfg), "rows": out}
    save(Path(cfg.out), "completion_bounds.json", doc)
    return doc


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
