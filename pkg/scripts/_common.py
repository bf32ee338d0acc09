"""Small helpers shared by the experiment scripts."""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import time
from pathlib import Path


def parse_config(cls, description: str):
    """Build a dataclass config from command-line flags named after its fields."""
    p = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        default = f.default
        kind = type(default)
        if kind is bool:
            p.add_argument(f"--{f.name.replace('_', '-')}", action="store_true", default=default)
        else:
            p.add_argument(f"--{f.name.replace('_', '-')}", type=kind, default=default)
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    return cls(**vars(args))


def save(out_dir: Path, name: str, doc: dict) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(json.dumps(doc, indent=2) + "\n")
    logging.info("wrote %s", path)
    return path


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start
