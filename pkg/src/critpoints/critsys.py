"""Random dense systems, truncated Jacobians, maximal minors and I(F, 1).

Random coefficients come from :class:`SplitMix64`, a fixed 64-bit generator
(Steele, Lea & Flood's SplitMix64 finaliser, state increment
``0x9E3779B97F4A7C15``) so that a system is reproducible from
``(n, p, D, seed, q)`` on any machine. Residues are drawn by rejection
sampling against the largest multiple of ``q`` below ``2**64``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from critpoints.gf import DEFAULT_MODULUS
from critpoints.poly import (
    Polynomial,
    PolyRing,
    monomials_of_degree,
    monomials_up_to_degree,
)

RNG_ALGORITHM = "splitmix64-rejection"

_MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self, q: int) -> int:
        """Uniform residue in [0, q)."""
        limit = (1 << 64) - ((1 << 64) % q)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % q


@dataclass
class PolySystem:
    """A list of generators plus provenance metadata."""

    generators: List[Polynomial]
    ring: PolyRing
    p: Optional[int] = None
    D: Optional[int] = None
    seed: Optional[int] = None
    homogeneous: bool = False
    meta: Dict[str, object] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.ring.nvars

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]

    def header(self) -> Dict[str, object]:
        info = {"n": self.n}
        for k in ("p", "D", "seed"):
            v = getattr(self, k)
            if v is not None:
                info[k] = v
        info["homogeneous"] = self.homogeneous
        info.update(self.meta)
        return info


@dataclass
class PolyMatrix:
    entries: List[List[Polynomial]]

    def __post_init__(self):
        if self.entries and len({len(r) for r in self.entries}) != 1:
            raise ValueError("matrix rows have different lengths")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def _check_params(n: int, p: int, D: int):
    if not 1 <= p <= n:
        raise ValueError(f"need 1 <= p <= n, got p={p}, n={n}")
    if D < 2:
        raise ValueError(f"need D >= 2, got D={D}")


def gen_random_system(n: int, p: int, D: int, seed: int = 0, homogeneous: bool = False,
                      q: int = DEFAULT_MODULUS) -> PolySystem:
    """``p`` random polynomials of degree exactly ``D`` in ``n`` variables.

    Affine systems draw every coefficient of degree <= D; homogeneous ones
    only the degree-D coefficients. Coefficients are drawn polynomial by
    polynomial, monomials in grevlex-decreasing order.
    """
    _check_params(n, p, D)
    ring = PolyRing(n, q)
    if homogeneous:
        support = list(monomials_of_degree(n, D))
    else:
        support = list(monomials_up_to_degree(n, D))
    support.sort(key=ring.order.key, reverse=True)
    top = [m for m in support if sum(m) == D]
    rng = SplitMix64(seed)
    gens = []
    for _ in range(p):
        while True:
            coeffs = {m: rng.uniform(q) for m in support}
            if any(coeffs[m] for m in top):
                break
        gens.append(Polynomial(ring, coeffs))
    return PolySystem(gens, ring, p=p, D=D, seed=seed, homogeneous=homogeneous)


def truncated_jacobian(F: PolySystem, i: int = 1) -> PolyMatrix:
    """Jacobian of ``F`` with the derivatives in the first ``i`` variables removed."""
    n = F.n
    if not 0 <= i < n:
        raise ValueError(f"need 0 <= i < n, got i={i}, n={n}")
    return PolyMatrix([[f.derivative(j) for j in range(i, n)] for f in F.generators])


def maximal_minors(M: PolyMatrix) -> List[Polynomial]:
    """All p x p minors of a p x m matrix, column subsets in lexicographic order.

    Sub-determinants are shared: the k x k minors on rows 0..k-1 are built for
    every k-subset of columns from the (k-1) x (k-1) ones by expansion along
    row k-1.
    """
    p, m = M.rows, M.cols
    if p > m:
        raise ValueError(f"no maximal minors: {p} rows exceed {m} columns")
    ring = M.entries[0][0].ring
    prev: Dict[Tuple[int, ...], Polynomial] = {(): ring.one}
    for k in range(1, p + 1):
        row = M.entries[k - 1]
        cur: Dict[Tuple[int, ...], Polynomial] = {}
        for cols in combinations(range(m), k):
            acc = ring.zero
            for t, c in enumerate(cols):
                entry = row[c]
                if not entry:
                    continue
                sub = prev[cols[:t] + cols[t + 1:]]
                if not sub:
                    continue
                term = entry * sub
                acc = acc + term if (k - 1 - t) % 2 == 0 else acc - term
            cur[cols] = acc
        prev = cur
    return [prev[cols] for cols in combinations(range(m), p)]


def laplace_determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Plain recursive cofactor expansion along the first row (no memoisation)."""
    k = len(rows)
    if k == 1:
        return rows[0][0]
    ring = rows[0][0].ring
    acc = ring.zero
    for j in range(k):
        if not rows[0][j]:
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * laplace_determinant(sub)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def build_critical_system(F: PolySystem) -> PolySystem:
    """Generators of I(F, 1): ``F`` followed by the maximal minors of jac(F, 1)."""
    minors = maximal_minors(truncated_jacobian(F, 1))
    out = replace(F, generators=list(F.generators) + minors, meta=dict(F.meta))
    out.meta["critical"] = True
    return out


def top_components(F: PolySystem) -> PolySystem:
    """Replace each generator by its homogeneous component of highest degree."""
    if any(not f for f in F.generators):
        raise ValueError("top_components needs nonzero generators")
    return replace(F, generators=[f.top_component() for f in F.generators], homogeneous=True,
                   meta=dict(F.meta))


def variable_matrix_minors(p: int, m: int, q: int = DEFAULT_MODULUS) -> PolySystem:
    """Maximal minors of the p x m matrix of distinct variables ``u{i}_{j}``.

    Variables are ordered row by row: u1_1 > u1_2 > ... > up_m.
    """
    if not 1 <= p <= m:
        raise ValueError(f"need 1 <= p <= m, got p={p}, m={m}")
    names = [f"u{i + 1}_{j + 1}" for i in range(p) for j in range(m)]
    ring = PolyRing(p * m, q, names=names)
    U = PolyMatrix([[ring.gen(i * m + j) for j in range(m)] for i in range(p)])
    minors = maximal_minors(U)
    assert len(minors) == comb(m, p)
    return PolySystem(minors, ring, p=p, homogeneous=True, meta={"columns": m})
