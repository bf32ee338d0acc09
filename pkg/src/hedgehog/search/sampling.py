"""Points on the good component from the four-square family.

Witnesses are second intersections of random rational lines through a base
point of ``a^2+b^2+c^2+d^2 = -1`` (``(i, 0, 0, 0)`` over Q(i)).
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..comb import AnsatzPoint, DegenerateWitness, Witness, theorem12_to_ansatz
from ..rings import QuadraticField, Ring, RingElem, make_ring
from .system import QuadraticSystem


# 1/7 is not a sum of two rational squares, so Q(sqrt:-7) needs all four slots
KNOWN_BASE_POINTS = {-7: "w/7, 1, 3*w/7, 2*w/7"}


def base_point(ring: Ring) -> tuple[RingElem, ...]:
    """A point ``(alpha*w, beta*w, 0, 0)`` with alpha^2 + beta^2 = -1/discriminant.

    The smallest beta is preferred, so Q(i) gives ``(i, 0, 0, 0)``.
    """
    if not isinstance(ring, QuadraticField) or ring.discriminant >= 0:
        raise ValueError(f"{ring.spec} has no square root of -1 and no small Stufe-2 base point")
    target = Fraction(-1, ring.discriminant)
    w = ring.elem(ring.gen())
    for den in range(1, 25):
        for p in range(0, 25):
            rest = target - Fraction(p, den) ** 2
            if rest < 0:
                break
            num, d = rest.numerator, rest.denominator
            rn, rd = _isqrt_exact(num), _isqrt_exact(d)
            if rn is not None and rd is not None:
                alpha, beta = Fraction(rn, rd), Fraction(p, den)
                pt = (w * ring(alpha), w * ring(beta), ring(0), ring(0))
                return pt
    if ring.discriminant in KNOWN_BASE_POINTS:
        return Witness.parse(ring, KNOWN_BASE_POINTS[ring.discriminant]).abcd
    raise ValueError(f"no small base point found for {ring.spec}")


def _isqrt_exact(n: int):
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def line_witness(ring: Ring, base, v) -> Witness:
    """Second intersection of ``base + lam*v`` with the quadric."""
    v = [ring(x) for x in v]
    pv = sum((p * x for p, x in zip(base, v)), ring(0))
    vv = sum((x * x for x in v), ring(0))
    lam = -2 * pv / vv
    return Witness(ring, *(p + lam * x for p, x in zip(base, v)))


def sample_witnesses(n: int, ring: Ring | str = "Q(sqrt:-1)", seed: int = 0, bound: int = 12):
    """``n`` distinct witnesses whose ansatz image exists; yields (witness, point)."""
    if isinstance(ring, str):
        ring = make_ring(ring)
    base = base_point(ring)
    rng = random.Random(seed)
    seen = set()
    out = []
    tries = 0
    while len(out) < n:
        tries += 1
        if tries > 100 * n:
            raise RuntimeError(f"only {len(out)} of {n} samples after {tries - 1} draws")
        v = [rng.randint(-bound, bound) for _ in range(4)]
        if not any(v):
            continue
        try:
            w = line_witness(ring, base, v)
            pt = theorem12_to_ansatz(w)
        except (DegenerateWitness, ZeroDivisionError):
            continue
        key = tuple(x.value for x in w.abcd)
        if key in seen:
            continue
        seen.add(key)
        out.append((w, pt))
    return out


def sample_component(n: int, ring: Ring | str = "Q(sqrt:-1)", seed: int = 0) -> list[AnsatzPoint]:
    """``n`` gauged points of the quadratic system, deterministic in ``seed``."""
    return [pt for _, pt in sample_witnesses(n, ring, seed)]


def check_samples(sys: QuadraticSystem, points) -> bool:
    return all(sys.vanishes_at(p) for p in points)
