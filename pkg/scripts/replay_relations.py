"""Sample the good component and recover the vanishing relations.

Reports the dimension of degree <= d relations among the nine coordinates
a14, a16..a23, the lowest relation involving a18, and the degree-10 relation f
in a14, a17, a21, a22 together with its substitution image.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from pathlib import Path

from _common import Timer, parse_config, save

from hedgehog.search.relations import NINE_VARS, find_vanishing, normalize_integral, recover_f
from hedgehog.search.sampling import sample_component
from hedgehog.search.sos import f_substitution_ratio


@dataclass
class Config:
    samples: int = 2200
    seed: int = 0
    ring: str = "Q(sqrt:-1)"
    max_degree: int = 4
    skip_f: bool = False
    out: str = "results"


def main(cfg: Config) -> dict:
    with Timer() as t:
        pts = sample_component(cfg.samples, cfg.ring, cfg.seed)
    logging.info("%d samples in %.1fs", len(pts), t.seconds)
    dims = {}
    for d in range(1, cfg.max_degree + 1):
        with Timer() as t:
            rb = find_vanishing(pts, NINE_VARS, d, seed=cfg.seed, reconstruct=False)
        dims[d] = {"dimension": rb.dimension, "per_prime": rb.dims_per_prime, "seconds": round(t.seconds, 2)}
        logging.info("degree %d: dimension %d (%.1fs)", d, rb.dimension, t.seconds)

    a18 = None
    for d in range(1, 5):
        rb = find_vanishing(pts, ("a18", "a17", "a21", "a22"), d, seed=cfg.seed)
        if rb.dimension:
            a18 = {"degree": d, "relations": [str(normalize_integral(p)) for p in rb.basis]}
            break
    logging.info("lowest a18 relation: %s", a18)

    doc = {"config": asdict(cfg), "nine_variable_dimensions": dims, "a18_relation": a18}
    if not cfg.skip_f:
        with Timer() as t:
            rf = recover_f(pts, degree=10, seed=cfg.seed)
        ratio = f_substitution_ratio(rf.f)
        logging.info("f: degrees %s, %d terms, ratio %s (%.1fs)", rf.degrees, len(rf.f.terms), ratio, t.seconds)
        doc["f"] = {
            "poly": str(rf.f),
            "degrees": list(rf.degrees),
            "total_degree": rf.total_degree,
            "ratio_to_target": None if ratio is None else str(ratio),
            "seconds": round(t.seconds, 2),
        }
    save(Path(cfg.out), f"relations_seed{cfg.seed}.json", doc)
    return doc


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
