"""Integer power series, Hilbert series formulas and complexity estimates.

Everything here is exact integer arithmetic (Python ints) except the two
log-gamma evaluators at the bottom, so this module can serve as an
oracle for the modular Groebner engine.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, lgamma, log
from typing import List, Optional, Sequence, Tuple

import numpy as np


class InexactDivision(ArithmeticError):
    pass


class PowerSeries:
    """Integer series known modulo ``t**truncation``."""

    __slots__ = ("coeffs", "truncation")

    def __init__(self, coeffs: Sequence[int], truncation: int):
        if truncation < 0:
            raise ValueError("truncation must be nonnegative")
        c = [int(x) for x in coeffs[:truncation]]
        c.extend([0] * (truncation - len(c)))
        self.coeffs = c
        self.truncation = truncation

    @classmethod
    def polynomial(cls, coeffs: Sequence[int], truncation: Optional[int] = None) -> PowerSeries:
        if truncation is None:
            truncation = len(coeffs)
        return cls(coeffs, truncation)

    @classmethod
    def one(cls, truncation: int) -> PowerSeries:
        return cls([1], truncation)

    def __getitem__(self, d: int) -> int:
        if d >= self.truncation:
            raise IndexError(f"coefficient {d} is beyond the truncation {self.truncation}")
        return self.coeffs[d] if d >= 0 else 0

    def __len__(self):
        return self.truncation

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        t = min(self.truncation, other.truncation)
        return self.coeffs[:t] == other.coeffs[:t]

    def __repr__(self):
        terms = [f"{c}*t^{d}" for d, c in enumerate(self.coeffs) if c]
        return f"PowerSeries({' + '.join(terms) or '0'} + O(t^{self.truncation}))"

    def truncate(self, truncation: int) -> PowerSeries:
        if truncation > self.truncation:
            raise ValueError(f"cannot extend a series known to {self.truncation} terms")
        return PowerSeries(self.coeffs, truncation)

    def degree(self) -> int:
        """Largest degree with a nonzero coefficient (-1 for zero)."""
        for d in range(self.truncation - 1, -1, -1):
            if self.coeffs[d]:
                return d
        return -1

    def value_at_one(self) -> int:
        return sum(self.coeffs)

    def __add__(self, other: PowerSeries) -> PowerSeries:
        t = min(self.truncation, other.truncation)
        return PowerSeries([a + b for a, b in zip(self.coeffs[:t], other.coeffs[:t])], t)

    def __neg__(self):
        return PowerSeries([-a for a in self.coeffs], self.truncation)

    def __sub__(self, other: PowerSeries) -> PowerSeries:
        return self + (-other)

    def __mul__(self, other: PowerSeries) -> PowerSeries:
        t = min(self.truncation, other.truncation)
        out = [0] * t
        a, b = self.coeffs, other.coeffs
        for i in range(t):
            if a[i]:
                ai = a[i]
                for j in range(t - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return PowerSeries(out, t)

    def shift_down(self, s: int) -> PowerSeries:
        """Divide by ``t**s``; the dropped coefficients must vanish."""
        if any(self.coeffs[:s]):
            raise InexactDivision(f"series is not divisible by t^{s}")
        return PowerSeries(self.coeffs[s:], self.truncation - s)

    def divide_exact(self, other: PowerSeries) -> PowerSeries:
        """Quotient ``self / other`` over the integers.

        A zero constant term of ``other`` is handled by first dividing both
        by the matching power of ``t``. Raises :class:`InexactDivision` when
        a coefficient of the quotient is not an integer.
        """
        s = next((d for d, c in enumerate(other.coeffs) if c), None)
        if s is None:
            raise ZeroDivisionError("division by the zero series")
        a = self.shift_down(s) if s else self
        b = other.shift_down(s) if s else other
        t = min(a.truncation, b.truncation)
        b0 = b.coeffs[0]
        out = [0] * t
        rem = list(a.coeffs[:t])
        for d in range(t):
            q, r = divmod(rem[d], b0)
            if r:
                raise InexactDivision(f"non-integer quotient coefficient in degree {d}")
            out[d] = q
            if q:
                for j in range(1, t - d):
                    if b.coeffs[j]:
                        rem[d + j] -= q * b.coeffs[j]
        return PowerSeries(out, t)


def series_add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a + b


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a * b


def series_divide_exact(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a.divide_exact(b)


def _one_minus_t_pow(e: int, truncation: int) -> PowerSeries:
    c = [0] * max(truncation, 1)
    c[0] = 1
    if e < truncation:
        c[e] -= 1
    return PowerSeries(c, truncation)


def _power(s: PowerSeries, k: int) -> PowerSeries:
    out = PowerSeries.one(s.truncation)
    for _ in range(k):
        out = out * s
    return out


# ----------------------------------------------------------------------------
# exact polynomials (dense coefficient lists, index = degree)
# ----------------------------------------------------------------------------

def _padd(a: List[int], b: List[int]) -> List[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _pmul(a: List[int], b: List[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _ptrim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivexact(a: List[int], b: List[int]) -> List[int]:
    a = _ptrim(list(a))
    b = _ptrim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return []
    if len(a) < len(b):
        raise InexactDivision("dividend has smaller degree than divisor")
    q = [0] * (len(a) - len(b) + 1)
    lb = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c, r = divmod(a[k + len(b) - 1], lb)
        if r:
            raise InexactDivision("non-integer quotient in polynomial division")
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    if any(a):
        raise InexactDivision("nonzero remainder in polynomial division")
    return q


# ----------------------------------------------------------------------------
# the matrix A and its determinant
# ----------------------------------------------------------------------------

@dataclass
class SeriesMatrix:
    entries: List[List[PowerSeries]]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> PowerSeries:
        i, j = ij
        return self.entries[i][j]


def _a_entry(n: int, p: int, i: int, j: int, e: int) -> List[int]:
    # 1-based (i, j)
    top = min(p - i, n - 1 - j)
    c = [0] * (e * top + 1)
    for k in range(top + 1):
        c[e * k] = comb(p - i, k) * comb(n - 1 - j, k)
    return c


def matrix_A(n: int, p: int, e: int = 1) -> SeriesMatrix:
    """(p-1) x (p-1) matrix with entry (i, j) = sum_k C(p-i,k) C(n-1-j,k) t^(e k)."""
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= n, got p={p}, n={n}")
    if e < 1:
        raise ValueError("substitution degree must be >= 1")
    rows = []
    for i in range(1, p):
        rows.append([PowerSeries.polynomial(_a_entry(n, p, i, j, e)) for j in range(1, p)])
    return SeriesMatrix(rows)


def _det_cofactor(m: List[List[List[int]]]) -> List[int]:
    k = len(m)
    if k == 0:
        return [1]
    if k == 1:
        return list(m[0][0])
    acc: List[int] = []
    for j in range(k):
        if not m[0][j]:
            continue
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = _pmul(m[0][j], _det_cofactor(sub))
        acc = _padd(acc, term if j % 2 == 0 else [-x for x in term])
    return acc


def _det_bareiss(m: List[List[List[int]]]) -> List[int]:
    m = [[list(x) for x in row] for row in m]
    k = len(m)
    sign = 1
    prev = [1]
    for c in range(k - 1):
        if not m[c][c]:
            swap = next((r for r in range(c + 1, k) if m[r][c]), None)
            if swap is None:
                return []
            m[c], m[swap] = m[swap], m[c]
            sign = -sign
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                num = _padd(_pmul(m[i][j], m[c][c]), [-x for x in _pmul(m[i][c], m[c][j])])
                m[i][j] = _pdivexact(num, prev) if num else []
        prev = m[c][c]
    d = m[k - 1][k - 1] if k else [1]
    return d if sign > 0 else [-x for x in d]


def det_series(M: SeriesMatrix) -> PowerSeries:
    """Determinant of a matrix of polynomials (empty matrix gives 1)."""
    polys = [[_ptrim(list(x.coeffs)) for x in row] for row in M.entries]
    d = _det_cofactor(polys) if M.size <= 6 else _det_bareiss(polys)
    return PowerSeries.polynomial(d or [0])


def det_A_at_one(n: int, p: int) -> int:
    """Integer determinant of A(1)."""
    M = [[sum(_a_entry(n, p, i, j, 1)) for j in range(1, p)] for i in range(1, p)]
    k = len(M)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for c in range(k - 1):
        if M[c][c] == 0:
            swap = next((r for r in range(c + 1, k) if M[r][c]), None)
            if swap is None:
                return 0
            M[c], M[swap] = M[swap], M[c]
            sign = -sign
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                M[i][j] = (M[i][j] * M[c][c] - M[i][c] * M[c][j]) // prev
        prev = M[c][c]
    return sign * M[k - 1][k - 1]


# ----------------------------------------------------------------------------
# closed-form Hilbert series and formulas
# ----------------------------------------------------------------------------

def _check_npd(n: int, p: int, D: int):
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= n, got p={p}, n={n}")
    if D < 2:
        raise ValueError(f"need D >= 2, got D={D}")


def dreg_formula(n: int, p: int, D: int) -> int:
    _check_npd(n, p, D)
    return D * (p - 1) + (D - 2) * n + 2


def deg_formula(n: int, p: int, D: int) -> int:
    _check_npd(n, p, D)
    return comb(n - 1, p - 1) * D**p * (D - 1) ** (n - p)


@lru_cache(maxsize=None)
def _det_A(n: int, p: int) -> Tuple[int, ...]:
    return tuple(_ptrim(list(det_series(matrix_A(n, p, 1)).coeffs)))


def hs_unmixed(n: int, p: int, D: int, truncation: Optional[int] = None) -> PowerSeries:
    """Hilbert series of the critical-point ideal of p generic degree-D forms in n variables."""
    _check_npd(n, p, D)
    if truncation is None:
        truncation = dreg_formula(n, p, D) + 8
    e = D - 1
    # det A(t^e) is det A(t) with t -> t^e
    det = [0] * (e * (len(_det_A(n, p)) - 1) + 1)
    for k, c in enumerate(_det_A(n, p)):
        det[e * k] = c
    det = _ptrim(det)
    s = e * comb(p - 1, 2)
    if any(det[:s]):
        raise InexactDivision(f"det A(t^{e}) is not divisible by t^{s}")
    num = det[s:]
    for _ in range(p):
        num = _pmul(num, [1] + [0] * (D - 1) + [-1])
    for _ in range(n - p):
        num = _pmul(num, [1] + [0] * (e - 1) + [-1])
    q = _pdivexact(num, _pmul_pow([1, -1], n))
    return PowerSeries(q, truncation)


def _pmul_pow(a: List[int], k: int) -> List[int]:
    out = [1]
    for _ in range(k):
        out = _pmul(out, a)
    return out


def hs_determinantal(p: int, m: int, truncation: int = 16) -> PowerSeries:
    """Hilbert series of the quotient by the maximal minors of a p x m matrix of variables."""
    if not 1 <= p <= m:
        raise ValueError(f"need 1 <= p <= m, got p={p}, m={m}")
    n = m + 1
    s = comb(p - 1, 2)
    det = det_series(matrix_A(n, p, 1))
    work = truncation + s
    num = PowerSeries(det.coeffs, work).shift_down(s)
    den = _power(_one_minus_t_pow(1, truncation), (m + 1) * (p - 1))
    return num.divide_exact(den)


# ----------------------------------------------------------------------------
# Hilbert series of monomial ideals
# ----------------------------------------------------------------------------

def _minimalize(G: np.ndarray) -> np.ndarray:
    if G.shape[0] <= 1:
        return G
    G = np.unique(G, axis=0)
    G = G[np.argsort(G.sum(axis=1), kind="stable")]
    keep = np.ones(G.shape[0], dtype=bool)
    for a in range(1, G.shape[0]):
        kept = G[:a][keep[:a]]
        if (kept <= G[a]).all(axis=1).any():
            keep[a] = False
    return G[keep]


def _numerator(G: np.ndarray, n: int) -> List[int]:
    if G.shape[0] == 0:
        return [1]
    if (G.sum(axis=1) == 0).any():
        return []
    support = (G > 0).sum(axis=1)
    if (support == 1).all():
        out = [1]
        for d in G.sum(axis=1).tolist():
            out = _pmul(out, [1] + [0] * (d - 1) + [-1])
        return out
    mixed = G[support > 1]
    j = int(np.argmax((mixed > 0).sum(axis=0)))
    col = mixed[:, j]
    e = max(1, int(np.median(col[col > 0])))
    unit = np.zeros((1, n), dtype=G.dtype)
    unit[0, j] = e
    plus = _minimalize(np.vstack([G, unit]))
    colon = G.copy()
    colon[:, j] = np.maximum(colon[:, j] - e, 0)
    colon = _minimalize(colon)
    return _padd(_numerator(plus, n), [0] * e + _numerator(colon, n))


def monomial_ideal_hilbert_numerator(gens: Sequence[Sequence[int]], n: int) -> List[int]:
    """N(t) with HS(K[x1..xn]/<gens>) = N(t) / (1-t)^n."""
    G = np.array([list(g) for g in gens], dtype=np.int64).reshape(len(gens), n)
    return _numerator(_minimalize(G), n) or [0]


def series_from_numerator(numer: Sequence[int], n: int, truncation: int) -> PowerSeries:
    num = PowerSeries(numer, truncation)
    return num.divide_exact(_power(_one_minus_t_pow(1, truncation), n))


# ----------------------------------------------------------------------------
# complexity estimates
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexityBound:
    """The two summands of the lex-basis cost bound.

    ``log10_*`` are always finite; ``binomial_exact`` is the integer
    binomial raised to omega in ``log10_linear_algebra`` and
    ``change_of_order_exact`` is the second summand, both kept only when
    they have at most ``max_digits`` decimal digits.
    """

    log10_linear_algebra: float
    log10_change_of_order: float
    binomial_exact: Optional[int]
    change_of_order_exact: Optional[int]

    @property
    def linear_algebra(self) -> float:
        return _pow10(self.log10_linear_algebra)

    @property
    def change_of_order(self) -> float:
        return _pow10(self.log10_change_of_order)


def _pow10(x: float) -> float:
    return 10.0**x if x < 308 else float("inf")


def _log_comb(a: int, b: int) -> float:
    return lgamma(a + 1) - lgamma(b + 1) - lgamma(a - b + 1)


def complexity_bound(n: int, p: int, D: int, omega: float = 2.373, max_digits: int = 10_000) -> ComplexityBound:
    if not 2 <= omega <= 3:
        raise ValueError("omega must lie in [2, 3]")
    _check_npd(n, p, D)
    top = D * (p - 1) + (D - 1) * n + 2
    bottom = dreg_formula(n, p, D)
    log_binom = _log_comb(top, bottom)
    log_second = (log(n) + 3 * _log_comb(n - 1, p - 1) + 3 * p * log(D) + 3 * (n - p) * log(D - 1))
    exact_binom = None
    if log_binom / log(10) <= max_digits:
        exact_binom = comb(top, bottom)
    exact_second = None
    if log_second / log(10) <= max_digits:
        exact_second = n * comb(n - 1, p - 1) ** 3 * D ** (3 * p) * (D - 1) ** (3 * (n - p))
    if exact_binom is not None and exact_binom < 10**15:
        log_binom = log(exact_binom)
    return ComplexityBound(omega * log_binom / log(10), log_second / log(10), exact_binom, exact_second)


def complexity_ratio(n: int, p: int, D: int) -> float:
    """log C(n + dreg, n) / log DEG."""
    dreg = dreg_formula(n, p, D)
    log_deg = _log_comb(n - 1, p - 1) + p * log(D) + (n - p) * log(D - 1)
    return _log_comb(n + dreg, n) / log_deg


def log10_deg(n: int, p: int, D: int) -> float:
    return (_log_comb(n - 1, p - 1) + p * log(D) + (n - p) * log(D - 1)) / log(10)


__all__ = [
    "ComplexityBound", "InexactDivision", "PowerSeries", "SeriesMatrix",
    "complexity_bound", "complexity_ratio", "deg_formula", "det_A_at_one", "det_series",
    "dreg_formula", "hs_determinantal", "hs_unmixed", "matrix_A",
    "monomial_ideal_hilbert_numerator", "series_add", "series_divide_exact", "series_mul",
    "series_from_numerator", "log10_deg",
]
