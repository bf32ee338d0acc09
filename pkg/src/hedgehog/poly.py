"""Sparse multivariate polynomials over the exact rings of :mod:`hedgehog.rings`.

A polynomial is a mapping from exponent tuples (one entry per variable of
its variable set) to nonzero raw coefficients.  Variable order is fixed at
creation and defines the graded lexicographic order used for printing.

The expression grammar (shared with the CLI and the JSON formats)::

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := rational | name | name '^' nat | '(' expr ')'
    rational := int | int '/' posint

``w`` is reserved for the generator of a quadratic field.  Also accepted: a
leading sign on an expression or factor, ``^`` after a parenthesised group,
and ``/ posint`` after any factor (so ``w/7`` reads as ``1/7*w``).
"""

from __future__ import annotations

import operator
import re
from collections.abc import Iterable, Mapping, Sequence
from typing import Union

from .rings import QQ, NonUnitError, Ring, RingElem, RingError

VarSet = tuple[str, ...]
Scalar = Union[int, RingElem]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class PolyError(ValueError):
    pass


def varset(names: Iterable[str]) -> VarSet:
    names = tuple(names)
    if len(set(names)) != len(names):
        raise PolyError(f"duplicate variable names in {names}")
    for n in names:
        if not _NAME_RE.fullmatch(n) or n == "w":
            raise PolyError(f"invalid variable name {n!r}")
    return names


def _grlex_key(e):
    return (sum(e), e)


class Poly:
    """Immutable sparse polynomial.  Build with the classmethods, not by hand."""

    __slots__ = ("ring", "vars", "terms")

    def __init__(self, ring: Ring, vars: VarSet, terms: dict | None = None):
        self.ring = ring
        self.vars = vars
        self.terms = terms if terms is not None else {}

    # --- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, ring: Ring, vars: Sequence[str]) -> Poly:
        return cls(ring, varset(vars))

    @classmethod
    def const(cls, ring: Ring, vars: Sequence[str], c) -> Poly:
        vars = varset(vars)
        raw = ring.coerce(c)
        if ring.is_zero(raw):
            return cls(ring, vars)
        return cls(ring, vars, {(0,) * len(vars): raw})

    @classmethod
    def var(cls, ring: Ring, vars: Sequence[str], name: str) -> Poly:
        vars = varset(vars)
        if name not in vars:
            raise PolyError(f"unknown variable {name!r}")
        e = tuple(int(v == name) for v in vars)
        return cls(ring, vars, {e: ring.one})

    @classmethod
    def gens(cls, ring: Ring, vars: Sequence[str]) -> tuple[Poly, ...]:
        vars = varset(vars)
        return tuple(cls.var(ring, vars, v) for v in vars)

    @classmethod
    def from_dict(cls, ring: Ring, vars: Sequence[str], terms: Mapping) -> Poly:
        """From ``{exponent tuple: scalar}``; zero coefficients are dropped."""
        vars = varset(vars)
        out = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != len(vars) or min(e, default=0) < 0:
                raise PolyError(f"bad exponent vector {e} for {vars}")
            raw = ring.coerce(c)
            if not ring.is_zero(raw):
                out[e] = raw
        return cls(ring, vars, out)

    @classmethod
    def parse(cls, text: str, ring: Ring, vars: Sequence[str]) -> Poly:
        return _Parser(text, ring, varset(vars)).parse()

    # --- basic queries ----------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self) -> RingElem:
        return self.ring.elem(self.terms.get((0,) * len(self.vars), self.ring.zero))

    def coeff(self, monomial: Mapping[str, int]) -> RingElem:
        e = tuple(monomial.get(v, 0) for v in self.vars)
        return self.ring.elem(self.terms.get(e, self.ring.zero))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        i = self._index(var)
        return max((e[i] for e in self.terms), default=-1)

    def degrees(self) -> tuple[int, ...]:
        return tuple(self.degree(v) for v in self.vars)

    def variables_used(self) -> list[str]:
        return [v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)]

    def items(self):
        """(exponent tuple, RingElem) pairs in grlex descending order."""
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            yield e, self.ring.elem(self.terms[e])

    def leading(self) -> tuple[tuple[int, ...], RingElem]:
        e = max(self.terms, key=_grlex_key)
        return e, self.ring.elem(self.terms[e])

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise PolyError(f"variable {var!r} not in {self.vars}") from None

    # --- arithmetic -------------------------------------------------------
    def _check(self, other: Poly):
        if self.ring != other.ring:
            raise RingError(f"ring mismatch: {self.ring.spec} vs {other.ring.spec}")
        if self.vars != other.vars:
            raise PolyError(f"variable set mismatch: {self.vars} vs {other.vars}")

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.ring, self.vars, other)

    def __add__(self, other) -> Poly:
        other = self._lift(other)
        ring = self.ring
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = ring.add(out[e], c)
                if ring.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Poly(ring, self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        neg = self.ring.neg
        return Poly(self.ring, self.vars, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Poly:
        return self._lift(other) + (-self)

    def scale(self, c) -> Poly:
        ring = self.ring
        raw = ring.coerce(c)
        if ring.is_zero(raw):
            return Poly(ring, self.vars)
        mul = ring.mul
        out = {}
        for e, v in self.terms.items():
            m = mul(v, raw)
            if not ring.is_zero(m):
                out[e] = m
        return Poly(ring, self.vars, out)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except RingError:
                return NotImplemented
        self._check(other)
        ring = self.ring
        mul, add, is_zero = ring.mul, ring.add, ring.is_zero
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        plus = operator.add
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(plus, e1, e2))
                c = mul(c1, c2)
                prev = get(e)
                out[e] = c if prev is None else add(prev, c)
        return Poly(ring, self.vars, {e: c for e, c in out.items() if not is_zero(c)})

    def __rmul__(self, other) -> Poly:
        return self.__mul__(other)

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise PolyError("negative power")
        result = Poly.const(self.ring, self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.vars == other.vars and self.terms == other.terms
        try:
            return self == self._lift(other)
        except (RingError, NonUnitError):
            return False

    def __hash__(self):
        return hash((self.ring, self.vars, frozenset(self.terms.items())))

    # --- structural helpers ----------------------------------------------
    def collect(self, names: Sequence[str]) -> dict[tuple[int, ...], Poly]:
        """Group by the exponents of ``names``.

        Returns ``{exponents of names: coefficient}`` where each coefficient
        lives in the same variable set with those variables removed (zero
        exponent).
        """
        idx = [self._index(n) for n in names]
        groups: dict[tuple[int, ...], dict] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in idx)
            rest = list(e)
            for i in idx:
                rest[i] = 0
            groups.setdefault(key, {})[tuple(rest)] = c
        return {k: Poly(self.ring, self.vars, d) for k, d in groups.items()}

    def embed(self, vars: Sequence[str]) -> Poly:
        """Same polynomial in a different variable set containing all used variables."""
        vars = varset(vars)
        if vars == self.vars:
            return self
        pos = []
        for i, v in enumerate(self.vars):
            if v in vars:
                pos.append((i, vars.index(v)))
            elif any(e[i] for e in self.terms):
                raise PolyError(f"variable {v!r} is used but missing from target")
        n = len(vars)
        out = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, j in pos:
                new[j] = e[i]
            out[tuple(new)] = c
        return Poly(self.ring, vars, out)

    def map_coeffs(self, ring: Ring, fn) -> Poly:
        """Apply ``fn`` (raw -> raw of ``ring``) to each coefficient."""
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not ring.is_zero(v):
                out[e] = v
        return Poly(ring, self.vars, out)

    def derivative(self, var: str) -> Poly:
        i = self._index(var)
        ring = self.ring
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                v = ring.mul(c, ring.from_int(e[i]))
                if not ring.is_zero(v):
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        return Poly(ring, self.vars, out)

    # --- printing -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            parts.append(_format_term(self.ring, self.vars, e, self.terms[e]))
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"Poly({self.ring.spec}, {list(self.vars)}, {self})"


def _format_term(ring: Ring, vars: VarSet, e, c) -> str:
    mono = "*".join(
        v if k == 1 else f"{v}^{k}" for v, k in zip(vars, e) if k
    )
    cs = ring.fmt(c)
    if not mono:
        return cs if not _needs_parens(cs) else f"({cs})"
    if cs == "1":
        return mono
    if cs == "-1":
        return "-" + mono
    if _needs_parens(cs):
        cs = f"({cs})"
    return f"{cs}*{mono}"


def _needs_parens(s: str) -> bool:
    return "+" in s or "-" in s[1:]


# --- parser -------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


class _Parser:
    def __init__(self, text: str, ring: Ring, vars: VarSet):
        self.ring = ring
        self.vars = vars
        self.toks = self._tokenize(text)
        self.i = 0

    @staticmethod
    def _tokenize(text):
        toks = []
        for m in _TOKEN_RE.finditer(text):
            num, name, sym = m.groups()
            if num is not None:
                toks.append(("num", int(num)))
            elif name is not None:
                toks.append(("name", name))
            elif sym is not None and not sym.isspace():
                if sym not in "+-*/^()":
                    raise PolyError(f"unexpected character {sym!r}")
                toks.append(("sym", sym))
        return toks

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, sym=None):
        tok = self.peek()
        if tok[0] is None:
            raise PolyError("unexpected end of expression")
        if sym is not None and tok != ("sym", sym):
            raise PolyError(f"expected {sym!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.toks:
            raise PolyError("empty expression")
        p = self.expr()
        if self.i != len(self.toks):
            raise PolyError(f"trailing input at token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in (("sym", "-"), ("sym", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            if self.take()[1] == "*":
                acc = acc * self.factor()
            else:
                den = self._nat()
                if den == 0:
                    raise NonUnitError("zero denominator")
                acc = acc.scale(self.ring.elem(self.ring.from_rational(1, den)))
        return acc

    def _nat(self) -> int:
        kind, val = self.take()
        if kind != "num":
            raise PolyError("exponent must be a natural number")
        return val

    def factor(self) -> Poly:
        kind, val = self.take()
        if kind == "sym" and val in "+-":
            f = self.factor()
            return -f if val == "-" else f
        if kind == "num":
            den = 1
            if self.peek() == ("sym", "/"):
                self.take()
                den = self._nat()
                if den == 0:
                    raise NonUnitError("zero denominator")
            return Poly.const(self.ring, self.vars, self.ring.elem(self.ring.from_rational(val, den)))
        if kind == "name":
            if val == "w":
                base = Poly(self.ring, self.vars, {(0,) * len(self.vars): self.ring.gen()})
            elif val in self.vars:
                base = Poly.var(self.ring, self.vars, val)
            else:
                raise PolyError(f"unknown variable {val!r}")
        elif val == "(":
            base = self.expr()
            self.take(")")
        else:
            raise PolyError(f"unexpected token {val!r}")
        if self.peek() == ("sym", "^"):
            self.take()
            base = base ** self._nat()
        return base


def ring_eval(expr: str, ring: Ring) -> RingElem:
    """Evaluate a variable-free expression exactly in ``ring``."""
    p = Poly.parse(expr, ring, ())
    return p.constant_coeff()


# --- operations on polynomials ----------------------------------------


def divide_monic(p: Poly, divisor: Poly, var: str) -> tuple[Poly, Poly]:
    """Division by a polynomial monic in ``var`` over the other variables.

    Returns ``(quotient, remainder)`` with ``p = divisor*quotient + remainder``
    and ``deg_var(remainder) < deg_var(divisor)``.
    """
    p._check(divisor)
    i = p._index(var)
    n = divisor.degree(var)
    if n < 1:
        raise PolyError(f"divisor has no positive degree in {var}")
    lead = divisor.collect([var]).get((n,))
    if lead is None or lead != Poly.const(p.ring, p.vars, 1):
        raise PolyError(f"divisor is not monic in {var}")
    ring = p.ring
    vars = p.vars
    quotient: dict = {}
    rem = p
    while True:
        top = rem.degree(var)
        if top < n:
            break
        shift = top - n
        chunk = {}
        for e, c in rem.terms.items():
            if e[i] == top:
                ne = list(e)
                ne[i] = shift
                chunk[tuple(ne)] = c
        q = Poly(ring, vars, chunk)
        for e, c in chunk.items():
            quotient[e] = c
        rem = rem - q * divisor
    return Poly(ring, vars, quotient), rem


def sphere_relation(ring: Ring, vars: Sequence[str]) -> Poly:
    """X^2 + Y^2 + Z^2 - 1 in the given variable set."""
    X, Y, Z = (Poly.var(ring, vars, v) for v in "XYZ")
    return X * X + Y * Y + Z * Z - 1


def sphere_normal_form(p: Poly) -> Poly:
    """Representative of ``p`` modulo X^2+Y^2+Z^2-1 with Z-degree <= 1."""
    for v in "XYZ":
        if v not in p.vars:
            raise PolyError(f"sphere normal form needs X, Y, Z; {v} missing from {p.vars}")
    if p.degree("Z") < 2:
        return p
    return divide_monic(p, sphere_relation(p.ring, p.vars), "Z")[1]


def substitute(p: Poly, assignment: Mapping[str, Poly], target: VarSet | None = None) -> Poly:
    """Simultaneous substitution ``var -> polynomial``.

    Assigned polynomials share one ring and variable set (the target); any
    unassigned variable of ``p`` that occurs must also exist in the target.
    """
    values = list(assignment.values())
    if target is None:
        if not values:
            return p
        target = values[0].vars
    ring = values[0].ring if values else p.ring
    if ring != p.ring:
        raise RingError(f"ring mismatch: {p.ring.spec} vs {ring.spec}")
    for q in values:
        if q.ring != ring or q.vars != target:
            raise PolyError("substituted polynomials must share ring and variables")
    images = []
    for v in p.vars:
        if v in assignment:
            images.append(assignment[v])
        elif v in target:
            images.append(Poly.var(ring, target, v))
        else:
            images.append(None)
    cache: dict[tuple[int, int], Poly] = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = images[i] if k == 1 else power(i, k - 1) * images[i]
        return cache[key]

    one = Poly.const(ring, target, 1)
    acc: dict = {}
    for e, c in p.terms.items():
        t = one
        for i, k in enumerate(e):
            if k:
                if images[i] is None:
                    raise PolyError(f"variable {p.vars[i]!r} unassigned and absent from target")
                t = t * power(i, k)
        _accumulate(ring, acc, t, c)
    return Poly(ring, target, {e: c for e, c in acc.items() if not ring.is_zero(c)})


def _accumulate(ring: Ring, acc: dict, t: Poly, c) -> None:
    mul, add = ring.mul, ring.add
    for e, v in t.terms.items():
        v = mul(v, c)
        prev = acc.get(e)
        acc[e] = v if prev is None else add(prev, v)


def substitute_rational(
    p: Poly, assignment: Mapping[str, Poly | tuple[Poly, Poly]]
) -> tuple[Poly, Poly]:
    """Substitute rational functions given as (numerator, denominator) pairs.

    Returns ``(N, D)`` with ``p(num/den) = N/D``; ``D`` is the product of
    each denominator raised to the maximal degree of its variable in ``p``.
    Denominators are cleared, never divided.
    """
    pairs = {}
    for v, val in assignment.items():
        if isinstance(val, Poly):
            val = (val, Poly.const(val.ring, val.vars, 1))
        pairs[v] = val
    some = next(iter(pairs.values()))[0]
    ring, target = some.ring, some.vars
    one = Poly.const(ring, target, 1)
    images = []
    for i, v in enumerate(p.vars):
        if v in pairs:
            images.append(pairs[v])
        elif v in target:
            images.append((Poly.var(ring, target, v), one))
        elif p.degree(v) > 0:
            raise PolyError(f"variable {v!r} unassigned and absent from target")
        else:
            images.append((one, one))
    maxdeg = [p.degree(v) if p.terms else 0 for v in p.vars]
    cache: dict = {}

    def pw(i, which, k):
        key = (i, which, k)
        if key not in cache:
            cache[key] = one if k == 0 else pw(i, which, k - 1) * images[i][which]
        return cache[key]

    acc: dict = {}
    for e, c in p.terms.items():
        t = one
        for i, k in enumerate(e):
            t = t * pw(i, 0, k) * pw(i, 1, maxdeg[i] - k)
        _accumulate(ring, acc, t, c)
    num = Poly(ring, target, {e: c for e, c in acc.items() if not ring.is_zero(c)})
    den = one
    for i, k in enumerate(maxdeg):
        den = den * pw(i, 1, max(k, 0))
    return num, den


def evaluate(p: Poly, point: Mapping[str, Scalar]) -> RingElem:
    """Total evaluation at a point given as ``{name: scalar}``."""
    ring = p.ring
    missing = [v for v in p.vars if v not in point]
    if missing:
        raise PolyError(f"missing assignment for {missing}")
    vals = [ring.coerce(point[v]) for v in p.vars]
    return ring.elem(eval_raw(p, vals))


def eval_raw(p: Poly, vals: Sequence) -> object:
    ring = p.ring
    mul, add, pw = ring.mul, ring.add, ring.pow
    cache: dict = {}
    acc = ring.zero
    for e, c in p.terms.items():
        t = c
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = pw(vals[i], k)
                t = mul(t, cache[key])
        acc = add(acc, t)
    return acc


class Mat3:
    """A 3x3 matrix of polynomials over one ring and variable set."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Poly]]):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise PolyError("Mat3 needs exactly 3 rows of 3 entries")
        first = rows[0][0]
        for r in rows:
            for q in r:
                first._check(q)
        self.rows = rows

    @classmethod
    def parse(cls, rows: Sequence[Sequence[str]], ring: Ring, vars: Sequence[str]) -> Mat3:
        return cls([[Poly.parse(s, ring, vars) for s in r] for r in rows])

    @property
    def ring(self) -> Ring:
        return self.rows[0][0].ring

    @property
    def vars(self) -> VarSet:
        return self.rows[0][0].vars

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def with_row(self, i: int, row: Sequence[Poly]) -> Mat3:
        rows = list(self.rows)
        rows[i] = tuple(row)
        return Mat3(rows)

    def to_strings(self) -> list[list[str]]:
        return [[str(q) for q in r] for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, Mat3) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Mat3({self.to_strings()})"


def minors2(top: Sequence[Poly], bottom: Sequence[Poly]) -> tuple[Poly, Poly, Poly]:
    """The 2x2 minors (cols 1,2), (0,2), (0,1) of a 2x3 block."""
    return (
        top[1] * bottom[2] - top[2] * bottom[1],
        top[0] * bottom[2] - top[2] * bottom[0],
        top[0] * bottom[1] - top[1] * bottom[0],
    )


def det3(m: Mat3) -> Poly:
    """Cofactor expansion along the first row."""
    a, b, c = m.rows[0]
    m0, m1, m2 = minors2(m.rows[1], m.rows[2])
    return a * m0 - b * m1 + c * m2


def poly_arith(op: str, p: Poly, q: Poly | None = None) -> Poly:
    if op == "neg":
        return -p
    if q is None:
        raise PolyError(f"{op} needs two operands")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise PolyError(f"unknown op {op!r}")


def qq_poly(text: str, vars: Sequence[str]) -> Poly:
    """Shorthand for parsing over the rationals."""
    return Poly.parse(text, QQ, vars)
