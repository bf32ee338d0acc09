"""Command-line entry point: ``hedgehog <command> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
import time
from dataclasses import dataclass, field
from typing import Callable

from .comb import (
    XYZ,
    VerificationError,
    Witness,
    normalize_to_sl3,
    robust_construct,
    theorem13,
    verify_theorem12,
)
from .poly import Poly
from .rings import PrimeField, finite_field_stufe, make_ring

log = logging.getLogger("hedgehog")

EXIT = {"pass": 0, "fail": 1, "inconclusive": 1, "error": 2}


class InputError(ValueError):
    pass


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    human_summary: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _read_json(path: str | None):
    if path is None:
        return None
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _witness(args) -> Witness:
    if not args.witness:
        raise InputError("--witness is required")
    return Witness.parse(args.ring, args.witness)


# --- commands -------------------------------------------------------------


def cmd_verify(args) -> CommandResult:
    what = args.target
    if what == "theorem12":
        s = verify_theorem12()
        return CommandResult("pass", {"sign": s}, f"determinant = {s:+d} * 2a^2(a^2+d^2)(2abc-a^2+b^2) mod q2")
    if what == "theorem13":
        m = theorem13()
        normed = normalize_to_sl3(m, 2)
        ok = m.det == 5 and normed.det == 1
        payload = {"det": str(m.det), "normalized_det": str(normed.det), "matrix": m.to_json()}
        return CommandResult(_status(ok), payload, f"det = {m.det}, after scaling row 2: {normed.det}")
    if what == "sos":
        from .search.sos import sos_verify

        r = sos_verify()
        ok = r.matches and r.leading_term == "36*r^2*s^2*t^4" and r.value_at_0001 == 1
        return CommandResult(
            _status(ok), r.to_json(),
            f"F = q0^2+q1^2+q2^2+q3^2+q4^{r.exponent}: {r.matches}; leading {r.leading_term}",
        )
    if what == "parametrization":
        from .search.sos import verify_parametrization

        r = verify_parametrization()
        return CommandResult(_status(r.ok), r.to_json(), f"parametrization identities hold: {r.ok}")
    raise InputError(f"unknown verify target {what!r}")


def cmd_construct(args) -> CommandResult:
    w = _witness(args)
    cm, det, swapped = robust_construct(w)
    payload = cm.to_json()
    payload["swapped"] = swapped
    payload["det_value"] = str(det)
    return CommandResult("pass", payload, f"det = {det}" + (" (a and b swapped)" if swapped else ""))


def _system():
    from .search.system import build_system

    return build_system(gauge=True)


def cmd_enumerate_f2(args) -> CommandResult:
    from .search.f2 import enumerate_f2

    log.info("scanning 2^20 assignments with %d worker(s)", args.workers)
    res = enumerate_f2(_system(), workers=args.workers)
    return CommandResult("pass", res.to_json(), f"{res.count} solutions over F_2 among {res.candidates} candidates")


def cmd_lift(args) -> CommandResult:
    from .search.f2 import enumerate_f2
    from .search.lift import lift_all, lift_summary

    sys_ = _system()
    doc = _read_json(args.input)
    if doc is not None:
        roots = [tuple(s) for s in doc["solutions"]]
    else:
        log.info("enumerating F_2 solutions")
        roots = list(enumerate_f2(sys_, workers=args.workers).solutions)
    if not args.all:
        if args.index is None:
            raise InputError("give --all or --index")
        if not 0 <= args.index < len(roots):
            raise InputError(f"--index must be below {len(roots)}")
        roots = [roots[args.index]]
    log.info("lifting %d root(s) to 2^%d", len(roots), args.k)
    reports = lift_all(sys_, roots, k=args.k, cap=args.cap, workers=args.workers)
    summary = lift_summary(reports, args.k)
    payload = {"summary": summary, "reports": [r.to_json(sys_.free_vars) for r in reports]}
    status = "inconclusive" if summary["inconclusive"] else "pass"
    return CommandResult(
        status, payload,
        f"{summary['mod4_survivors']} of {summary['f2_count']} lift mod 4, "
        f"{summary['reached_count']} reach {summary['reached']}",
    )


def _samples(args):
    from .comb import AnsatzPoint
    from .search.sampling import sample_witnesses

    doc = _read_json(args.input)
    if doc is not None:
        return [AnsatzPoint.from_json(d["point"]) for d in doc["samples"]]
    log.info("sampling %d points over %s (seed %d)", args.samples, args.ring, args.seed)
    return [pt for _, pt in sample_witnesses(args.samples, args.ring, args.seed)]


def cmd_sample(args) -> CommandResult:
    from .search.sampling import sample_witnesses
    from .search.system import build_system

    pairs = sample_witnesses(args.samples, args.ring, args.seed)
    sys_ = build_system(gauge=True)
    ok = all(sys_.vanishes_at(p) for _, p in pairs)
    payload = {
        "ring": args.ring,
        "samples": [{"witness": w.to_json(), "point": p.to_json()} for w, p in pairs],
        "on_system": ok,
    }
    return CommandResult(_status(ok), payload, f"{len(pairs)} samples, all on the system: {ok}")


def cmd_relations(args) -> CommandResult:
    from .search.relations import NINE_VARS, find_vanishing, relation_status

    pts = _samples(args)
    t = time.time()
    rb = find_vanishing(pts, NINE_VARS, args.degree, seed=args.seed, reconstruct=False)
    log.info("kernel computed in %.1f s", time.time() - t)
    status = relation_status(rb)
    summary = f"dimension {rb.dimension} at degree {rb.degree} (per prime {rb.dims_per_prime})"
    if status == "fail":
        summary += "; differs from the recorded dimension"
    return CommandResult(status, rb.to_json(with_basis=False), summary)


def cmd_recover_f(args) -> CommandResult:
    from .search.relations import recover_f
    from .search.sos import f_substitution_ratio

    pts = _samples(args)
    rf = recover_f(pts, degree=args.degree, seed=args.seed)
    ratio = f_substitution_ratio(rf.f)
    payload = {
        "f": str(rf.f),
        "vars": list(rf.f.vars),
        "degrees": list(rf.degrees),
        "total_degree": rf.total_degree,
        "terms": len(rf.f.terms),
        "ratio_to_target": None if ratio is None else str(ratio),
        "primes": rf.relations.primes,
    }
    return CommandResult(
        _status(ratio is not None), payload,
        f"degree {rf.total_degree}, profile {rf.degrees}, proportional to (t^2+u^2)^2 F: {ratio is not None}",
    )


def cmd_tangent(args) -> CommandResult:
    from .comb import CombMatrix
    from .tangent import check_nonvanishing, sphere_points, tangent_from_row

    doc = _read_json(args.input)
    cm = CombMatrix.from_json(doc) if doc is not None else robust_construct(_witness(args))[0]
    v = tangent_from_row(cm.matrix.rows[1])
    pts = sphere_points(args.samples, cm.ring, args.seed)
    report = check_nonvanishing(v, pts)
    payload = report.to_json()
    payload["field"] = v.to_json()
    return CommandResult(_status(report.ok), payload, f"{len(report.zeros)} zeros among {report.checked} points")


def _row(args):
    ring = make_ring(args.ring)
    if args.row:
        parts = [s.strip() for s in args.row.split(",")]
    else:
        doc = _read_json(args.input)
        if doc is None:
            raise InputError("--row or --input is required")
        ring = make_ring(doc["ring"])
        parts = doc["row"] if "row" in doc else doc["rows"][1]
    if len(parts) != 3:
        raise InputError("a row has three entries")
    if ring.spec == "Q(sqrt:-1)":
        parts = [re.sub(r"\bi\b", "w", s) for s in parts]
    return [Poly.parse(s, ring, XYZ) for s in parts]


def cmd_complete(args) -> CommandResult:
    from .tangent import complete_by_ansatz

    row = _row(args)
    cert = complete_by_ansatz(*row, degree_bound=args.degree)
    if cert is None:
        return CommandResult("fail", {"feasible": False, "degree_bound": args.degree}, "no completion at this bound")
    payload = cert.to_json()
    payload["row"] = [str(q) for q in row]
    payload["feasible"] = True
    return CommandResult("pass", payload, f"third row {payload['third_row']}, m7 = {payload['m7']}")


def cmd_stufe(args) -> CommandResult:
    ring = make_ring(args.ring)
    if not isinstance(ring, PrimeField):
        raise InputError("stufe is defined for prime fields Fp:p only")
    s, wit = finite_field_stufe(ring.prime)
    return CommandResult("pass", {"p": ring.prime, "stufe": s, "witness": [str(x) for x in wit]}, f"Stufe {s}")


COMMANDS: dict[str, Callable] = {
    "verify": cmd_verify,
    "construct": cmd_construct,
    "enumerate-f2": cmd_enumerate_f2,
    "lift": cmd_lift,
    "sample": cmd_sample,
    "relations": cmd_relations,
    "recover-f": cmd_recover_f,
    "tangent": cmd_tangent,
    "complete": cmd_complete,
    "stufe": cmd_stufe,
}

DEFAULT_RING = {"construct": "Q(sqrt:-1)", "sample": "Q(sqrt:-1)", "relations": "Q(sqrt:-1)",
                "recover-f": "Q(sqrt:-1)", "tangent": "Q(sqrt:-1)", "complete": "Q(sqrt:-1)", "stufe": "Fp:7"}
DEFAULT_SAMPLES = {"relations": 2200, "recover-f": 2100, "tangent": 1000, "sample": 100}
DEFAULT_DEGREE = {"relations": 4, "recover-f": 10, "complete": 1}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring")
    common.add_argument("--witness")
    common.add_argument("--k", type=int, default=50)
    common.add_argument("--degree", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--json", action="store_true", help="print the JSON payload on stdout")
    common.add_argument("--cap", type=int, default=1 << 16, help="node budget per lift")
    common.add_argument("--input")
    common.add_argument("--output")

    p = argparse.ArgumentParser(prog="hedgehog", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("target", choices=["theorem12", "theorem13", "sos", "parametrization"])
    lift = sub.add_parser("lift", parents=[common])
    lift.add_argument("--all", action="store_true")
    lift.add_argument("--index", type=int)
    comp = sub.add_parser("complete", parents=[common])
    comp.add_argument("--row", help="three comma-separated entries in X, Y, Z")
    for name in COMMANDS:
        if name not in ("verify", "lift", "complete"):
            sub.add_parser(name, parents=[common])
    return p


def execute(args: argparse.Namespace) -> CommandResult:
    args.ring = args.ring or DEFAULT_RING.get(args.command, "Q")
    args.samples = args.samples if args.samples is not None else DEFAULT_SAMPLES.get(args.command, 100)
    args.degree = args.degree if args.degree is not None else DEFAULT_DEGREE.get(args.command, 1)
    try:
        result = COMMANDS[args.command](args)
    except (ValueError, KeyError) as exc:  # RingError, PolyError, DegenerateWitness included
        result = CommandResult("error", {"error": str(exc)}, f"error: {exc}")
    except VerificationError as exc:
        result = CommandResult("fail", {"error": str(exc)}, f"verification failed: {exc}")
    result.payload = {"command": args.command, "status": result.status, "seed": args.seed, **result.payload}
    return result


def run(argv: list[str]) -> CommandResult:
    """Parse ``argv`` and execute; input errors come back with status "error"."""
    return execute(build_parser().parse_args(argv))


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(message)s")
    args = build_parser().parse_args(argv)
    result = execute(args)
    text = json.dumps(result.payload, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
    else:
        print(f"{args.command}: {result.status} (seed {args.seed})")
        if result.human_summary:
            print(result.human_summary)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
