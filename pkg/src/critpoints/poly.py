"""Monomials, monomial orders and sparse multivariate polynomials over GF(q).

A monomial is a plain tuple of ``n`` nonnegative exponents; variable ``x1``
is index 0 and is the largest variable in both orders. A polynomial is a
mapping monomial -> nonzero residue attached to a :class:`PolyRing`, which
carries the field, the variable names and the active monomial order.

The text format shared with the system files::

    field 65521
    vars 3
    3*x1^2*x3 + x2 + 65520
"""
from __future__ import annotations

import re
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from critpoints.gf import DEFAULT_MODULUS, FieldElement, PrimeField, get_field

Monomial = Tuple[int, ...]


# ----------------------------------------------------------------------------
# monomials and orders
# ----------------------------------------------------------------------------

def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b`` (coordinatewise <=)."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int) -> Iterator[Monomial]:
    """All exponent vectors of total degree ``d`` in ``n`` variables (lex-decreasing)."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - e):
            yield (e,) + rest


def monomials_up_to_degree(n: int, d: int) -> Iterator[Monomial]:
    for k in range(d + 1):
        yield from monomials_of_degree(n, k)


class MonomialOrder:
    """A monomial order on exponent tuples with x1 > x2 > ... > xn.

    ``key`` maps a monomial to a value whose natural ordering agrees with the
    monomial order, so ``sorted(ms, key=order.key, reverse=True)`` lists
    monomials from largest to smallest.
    """

    def __init__(self, name: str):
        if name not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {name!r}")
        self.name = name
        self.is_degree_order = name == "grevlex"

    def key(self, m: Monomial):
        if self.name == "lex":
            return m
        # degree first; ties: the smaller exponent on the last differing variable wins
        return (sum(m), tuple(-e for e in reversed(m)))

    def compare(self, a: Monomial, b: Monomial) -> int:
        if len(a) != len(b):
            raise ValueError(f"monomials have different lengths: {len(a)} vs {len(b)}")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def get_order(order) -> MonomialOrder:
    if isinstance(order, MonomialOrder):
        return order
    if order == "grevlex":
        return GREVLEX
    if order == "lex":
        return LEX
    raise ValueError(f"unknown monomial order {order!r}")


def compare(m1: Monomial, m2: Monomial, order="grevlex") -> int:
    """Return 1, 0 or -1 as ``m1`` is greater than, equal to or less than ``m2``."""
    return get_order(order).compare(m1, m2)


# ----------------------------------------------------------------------------
# rings and polynomials
# ----------------------------------------------------------------------------

class PolyRing:
    """``GF(q)[x1, ..., xn]`` with a fixed monomial order."""

    def __init__(self, nvars: int, field: PrimeField | int | None = None,
                 order="grevlex", names: Sequence[str] | None = None):
        if nvars < 1:
            raise ValueError("a polynomial ring needs at least one variable")
        if field is None:
            field = get_field(DEFAULT_MODULUS)
        elif isinstance(field, int):
            field = get_field(field)
        self.nvars = nvars
        self.field = field
        self.order = get_order(order)
        self.names = tuple(names) if names is not None else tuple(f"x{i + 1}" for i in range(nvars))
        if len(self.names) != nvars:
            raise ValueError("number of names does not match number of variables")

    @property
    def q(self) -> int:
        return self.field.q

    def __repr__(self):
        return f"PolyRing({self.nvars}, GF({self.q}), {self.order.name})"

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.nvars == self.nvars
                and other.field == self.field and other.order == self.order
                and other.names == self.names)

    def __hash__(self):
        return hash((self.nvars, self.field, self.order, self.names))

    def compatible(self, other: PolyRing) -> bool:
        """Same field and variables; the order may differ."""
        return self.nvars == other.nvars and self.field == other.field and self.names == other.names

    def with_order(self, order) -> PolyRing:
        return PolyRing(self.nvars, self.field, order, self.names)

    def __call__(self, value=0) -> Polynomial:
        if isinstance(value, Polynomial):
            return value.change_ring(self)
        if isinstance(value, dict):
            return Polynomial(self, value)
        if isinstance(value, str):
            return parse_polynomial(value, self)
        c = int(value) % self.q
        return Polynomial(self, {self.one_monomial: c} if c else {}, _clean=False)

    @property
    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {}, _clean=False)

    @property
    def one(self) -> Polynomial:
        return Polynomial(self, {self.one_monomial: 1}, _clean=False)

    def gen(self, i: int) -> Polynomial:
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, {tuple(m): 1}, _clean=False)

    @property
    def gens(self) -> List[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Monomial, coeff: int = 1) -> Polynomial:
        return Polynomial(self, {tuple(exps): coeff})

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)


class Polynomial:
    """Sparse polynomial; immutable once built."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, int], _clean: bool = True):
        self.ring = ring
        if _clean:
            q = ring.q
            n = ring.nvars
            cleaned = {}
            for m, c in terms.items():
                c = int(c) % q
                if c:
                    m = tuple(m)
                    if len(m) != n or min(m, default=0) < 0:
                        raise ValueError(f"bad exponent vector {m} for {n} variables")
                    cleaned[m] = c
            terms = cleaned
        self._terms = terms

    # -- inspection -----------------------------------------------------------
    @property
    def coeffs(self) -> Dict[Monomial, int]:
        """Read-only view intended for engine code; do not mutate."""
        return self._terms

    def terms(self, order=None) -> List[Tuple[Monomial, int]]:
        """Terms sorted strictly decreasing in ``order`` (default: the ring's)."""
        key = (get_order(order) if order is not None else self.ring.order).key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.terms()]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(tuple(m), 0)

    def leading_monomial(self, order=None) -> Monomial:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading monomial")
        key = (get_order(order) if order is not None else self.ring.order).key
        return max(self._terms, key=key)

    def leading_coefficient(self, order=None) -> int:
        return self._terms[self.leading_monomial(order)]

    def total_degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(sum(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def homogeneous_component(self, d: int) -> Polynomial:
        return Polynomial(self.ring, {m: c for m, c in self._terms.items() if sum(m) == d}, _clean=False)

    def top_component(self) -> Polynomial:
        return self.homogeneous_component(self.total_degree())

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: Polynomial):
        if not self.ring.compatible(other.ring):
            raise ValueError("polynomials live in incompatible rings")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q = self.ring.q
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = (out.get(m, 0) + c) % q
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _clean=False)

    __radd__ = __add__

    def __neg__(self):
        q = self.ring.q
        return Polynomial(self.ring, {m: q - c for m, c in self._terms.items()}, _clean=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> Polynomial:
        q = self.ring.q
        c = int(c) % q
        if c == 0:
            return self.ring.zero
        return Polynomial(self.ring, {m: v * c % q for m, v in self._terms.items()}, _clean=False)

    def mul_term(self, mono: Monomial, c: int = 1) -> Polynomial:
        q = self.ring.q
        c %= q
        if c == 0:
            return self.ring.zero
        return Polynomial(self.ring, {monomial_mul(m, mono): v * c % q for m, v in self._terms.items()},
                          _clean=False)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(int(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q = self.ring.q
        out: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = (out.get(m, 0) + c1 * c2) % q
        return Polynomial(self.ring, {m: c for m, c in out.items() if c}, _clean=False)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def monic(self, order=None) -> Polynomial:
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def derivative(self, j: int) -> Polynomial:
        """Formal partial derivative with respect to variable index ``j`` (0-based)."""
        if not 0 <= j < self.ring.nvars:
            raise IndexError(f"variable index {j} out of range")
        q = self.ring.q
        out = {}
        for m, c in self._terms.items():
            e = m[j]
            if e == 0:
                continue
            v = c * e % q
            if v:
                out[m[:j] + (e - 1,) + m[j + 1:]] = v
        return Polynomial(self.ring, out, _clean=False)

    def evaluate(self, point: Sequence) -> int:
        if len(point) != self.ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.ring.nvars}")
        q = self.ring.q
        pt = [int(v) % q for v in point]
        total = 0
        for m, c in self._terms.items():
            t = c
            for v, e in zip(pt, m):
                if e:
                    t = t * pow(v, e, q) % q
            total += t
        return total % q

    def change_ring(self, ring: PolyRing) -> Polynomial:
        if not self.ring.compatible(ring):
            raise ValueError("target ring is incompatible")
        return Polynomial(ring, self._terms, _clean=False)

    # -- comparison / display ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.compatible(other.ring) and self._terms == other._terms
        if isinstance(other, int):
            return self == self.ring(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# functional aliases

def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_scale(f: Polynomial, c) -> Polynomial:
    return f.scale(c)


def partial_derivative(f: Polynomial, j: int) -> Polynomial:
    return f.derivative(j)


def total_degree(f: Polynomial) -> int:
    return f.total_degree()


def is_homogeneous(f: Polynomial) -> bool:
    return f.is_homogeneous()


def evaluate(f: Polynomial, point: Sequence) -> int:
    return f.evaluate(point)


# ----------------------------------------------------------------------------
# text format
# ----------------------------------------------------------------------------

def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f:
        return "0"
    out = []
    for m, c in f.terms():
        mono = format_monomial(m, f.ring.names)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


_TERM_SPLIT = re.compile(r"([+-])")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``"3*x1^2*x3 + x2 - 5"`` style text (no parentheses)."""
    index = {name: i for i, name in enumerate(ring.names)}
    text = text.replace("**", "^").replace(" ", "")
    if not text:
        raise ValueError("empty polynomial text")
    q = ring.q
    terms: Dict[Monomial, int] = {}
    sign = 1
    for tok in _TERM_SPLIT.split(text):
        if tok == "":
            continue
        if tok in "+-":
            sign = sign * (-1 if tok == "-" else 1)
            continue
        coeff = sign
        exps = [0] * ring.nvars
        for factor in tok.split("*"):
            if not factor:
                raise ValueError(f"malformed term {tok!r}")
            base, _, power = factor.partition("^")
            e = int(power) if power else 1
            if base.isdigit():
                coeff *= pow(int(base), e, q)
            elif base in index:
                exps[index[base]] += e
            else:
                raise ValueError(f"unknown variable {base!r} in {tok!r}")
        m = tuple(exps)
        terms[m] = (terms.get(m, 0) + coeff) % q
        sign = 1
    return Polynomial(ring, terms)


def dump_system(polys: Iterable[Polynomial], ring: PolyRing, meta: Dict[str, object] | None = None) -> str:
    lines = [f"field {ring.q}", f"vars {ring.nvars}"]
    if list(ring.names) != [f"x{i + 1}" for i in range(ring.nvars)]:
        lines.append("names " + " ".join(ring.names))
    if meta:
        lines.append("# " + " ".join(f"{k}={v}" for k, v in meta.items()))
    lines.extend(format_polynomial(f) for f in polys)
    return "\n".join(lines) + "\n"


def load_system(text: str, order="grevlex") -> Tuple[PolyRing, List[Polynomial], Dict[str, str]]:
    """Parse a system file; returns the ring, the polynomials and ``# key=value`` metadata."""
    q = None
    n = None
    names = None
    meta: Dict[str, str] = {}
    body = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for item in line[1:].split():
                k, sep, v = item.partition("=")
                if sep:
                    meta[k] = v
            continue
        head, _, rest = line.partition(" ")
        if head == "field" and q is None and not body:
            q = int(rest)
        elif head == "vars" and n is None and not body:
            n = int(rest)
        elif head == "names" and names is None and not body:
            names = rest.split()
        else:
            body.append(line)
    if q is None or n is None:
        raise ValueError("system text needs 'field <q>' and 'vars <n>' header lines")
    ring = PolyRing(n, q, order, names=names)
    return ring, [parse_polynomial(line, ring) for line in body], meta
