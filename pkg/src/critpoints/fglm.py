"""Change of ordering for zero-dimensional ideals and solution sampling."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from critpoints import _kernels as K
from critpoints.critsys import PolySystem, SplitMix64, truncated_jacobian
from critpoints.groebner import (
    GroebnerBasis,
    NotZeroDimensional,
    QuotientData,
    _divide_remainder,
    groebner_basis,
    is_zero_dimensional,
    quotient_data,
)
from critpoints.poly import LEX, Monomial, Polynomial, PolyRing, monomial_divides


@dataclass
class MultiplicationMatrices:
    """Matrices of multiplication by each variable on a staircase basis."""

    matrices: List[np.ndarray]
    staircase: List[Monomial]
    q: int
    _quotient: Optional[QuotientData] = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.matrices)

    @property
    def degree(self) -> int:
        return len(self.staircase)

    def __getitem__(self, j: int) -> np.ndarray:
        return self.matrices[j]

    @property
    def quotient(self) -> QuotientData:
        if self._quotient is None:
            self._quotient = QuotientData(self.staircase, self.matrices, self.q)
        return self._quotient

    def commute(self) -> bool:
        return self.quotient.commute()


@dataclass(frozen=True)
class DensityReport:
    """Nonzero counts of the multiplication matrices.

    ``density`` aggregates all matrices; ``last_density`` is the matrix of
    the last (smallest) variable, the one a sparse change of order
    multiplies by.
    """
    nnz: int
    total: int
    per_matrix: Tuple[int, ...] = ()

    @property
    def density(self) -> float:
        """Percentage of nonzero entries."""
        return 100.0 * self.nnz / self.total if self.total else 0.0

    def matrix_density(self, j: int) -> float:
        size = self.total // len(self.per_matrix) if self.per_matrix else 0
        return 100.0 * self.per_matrix[j] / size if size else 0.0

    @property
    def last_density(self) -> float:
        return self.matrix_density(-1) if self.per_matrix else 0.0

    def __str__(self):
        return f"{self.density:.2f}%"


def multiplication_matrices(G: GroebnerBasis) -> MultiplicationMatrices:
    qd = quotient_data(G)
    return MultiplicationMatrices(qd.matrices, qd.staircase, qd.q, qd)


def density(M: MultiplicationMatrices) -> DensityReport:
    per = tuple(int(np.count_nonzero(t)) for t in M.matrices)
    return DensityReport(sum(per), M.n * M.degree**2, per)


def fglm_lex(G: GroebnerBasis, M: Optional[MultiplicationMatrices] = None) -> GroebnerBasis:
    """Reduced lex basis of the ideal of the zero-dimensional basis ``G``.

    Monomials are visited in increasing lex order starting from 1; each
    vector is one matrix-vector product away from an earlier standard
    monomial. A vector that depends on the earlier ones yields a basis
    element and every multiple of its leading monomial is skipped.
    """
    if not is_zero_dimensional(G):
        raise NotZeroDimensional("FGLM needs a zero-dimensional ideal")
    if M is None:
        M = multiplication_matrices(G)
    ring = G.ring.with_order(LEX)
    n, N, q = ring.nvars, M.degree, M.q
    one = (0,) * n
    if N == 0:
        return GroebnerBasis(LEX, [ring.one], ring, stop_reason="fglm", _staircase=[])
    T = [np.ascontiguousarray(t, dtype=np.float64) for t in M.matrices]
    E = np.zeros((N, N), dtype=np.int64)
    C = np.zeros((N, N), dtype=np.int64)
    piv = np.zeros(N, dtype=np.int64)
    stair: List[Monomial] = []
    vecs: Dict[Monomial, np.ndarray] = {}
    parent: Dict[Monomial, tuple] = {one: None}
    leads: List[Monomial] = []
    basis: List[Polynomial] = []
    heap = [one]
    e1 = np.zeros(N, dtype=np.int64)
    e1[M.staircase.index(one)] = 1
    while heap:
        m = heapq.heappop(heap)
        if any(monomial_divides(l, m) for l in leads):
            continue
        if m == one:
            v = e1
        else:
            par, j = parent[m]
            v = np.fmod(T[j] @ vecs[par].astype(np.float64), q).astype(np.int64)
        dependent, lam = K.echelon_insert(E, piv, C, len(stair), v, q)
        if dependent:
            terms = {m: 1}
            for b in np.nonzero(lam)[0]:
                terms[stair[b]] = (q - int(lam[b])) % q
            leads.append(m)
            basis.append(Polynomial(ring, terms))
            continue
        if len(stair) == N:
            raise ArithmeticError("more independent vectors than the quotient dimension")
        stair.append(m)
        vecs[m] = v
        for j in range(n):
            child = m[:j] + (m[j] + 1,) + m[j + 1:]
            if child not in parent:
                parent[child] = (m, j)
                heapq.heappush(heap, child)
    basis.sort(key=lambda g: LEX.key(g.leading_monomial()))
    return GroebnerBasis(LEX, basis, ring, stop_reason="fglm", _staircase=sorted(stair))


# ----------------------------------------------------------------------------
# shape position
# ----------------------------------------------------------------------------

def _shape_parts(Glex: GroebnerBasis):
    """(generators x_i - g_i(x_n) indexed by i, eliminant h) or None."""
    n = Glex.ring.nvars
    if len(Glex.basis) != n:
        return None
    by_lead = {}
    for g in Glex.basis:
        by_lead[g.leading_monomial(LEX)] = g
    gs = []
    for i in range(n - 1):
        g = by_lead.pop(tuple(1 if k == i else 0 for k in range(n)), None)
        if g is None:
            return None
        if any(any(m[:n - 1]) for m in g.coeffs if m[i] == 0):
            return None
        gs.append(g)
    (lead, h), = by_lead.items()
    if any(lead[:n - 1]) or any(any(m[:n - 1]) for m in h.coeffs):
        return None
    return gs, h


def is_shape_position(Glex: GroebnerBasis) -> bool:
    """Basis of the form {x_i - g_i(x_n) for i < n} + {h(x_n)}."""
    return Glex.order == LEX and _shape_parts(Glex) is not None


def _univariate(f: Polynomial) -> List[int]:
    """Coefficient list (index = degree) of a polynomial in the last variable."""
    deg = max(m[-1] for m in f.coeffs)
    c = [0] * (deg + 1)
    for m, v in f.coeffs.items():
        c[m[-1]] = v
    return c


def _shape_quotient(Glex: GroebnerBasis) -> QuotientData:
    """Multiplication matrices of a shape-position lex basis on {1, x_n, ..., x_n^(N-1)}."""
    n, q = Glex.ring.nvars, Glex.ring.q
    gs, hpoly = _shape_parts(Glex)
    h = _univariate(hpoly)
    N = len(h) - 1
    tail = np.array([(q - c) % q for c in h[:N]], dtype=np.int64)  # x_n^N = sum tail[k] x_n^k

    def times_xn(v):
        out = np.empty_like(v)
        out[0] = 0
        out[1:] = v[:-1]
        return (out + v[-1] * tail) % q

    comp = np.zeros((N, N), dtype=np.int64)
    col = np.zeros(N, dtype=np.int64)
    if N:
        col[0] = 1
    for k in range(N):
        comp[:, k] = times_xn(col)
        col = comp[:, k]
    mats = []
    for i in range(n - 1):
        g = np.zeros(N, dtype=np.int64)
        for m, v in gs[i].coeffs.items():
            if not any(m[:n - 1]):
                g[m[-1]] = (q - v) % q  # x_i = -(rest)
        Mi = np.zeros((N, N), dtype=np.int64)
        col = g
        for k in range(N):
            Mi[:, k] = col
            col = times_xn(col)
        mats.append(Mi)
    mats.append(comp)
    stair = [(0,) * (n - 1) + (k,) for k in range(N)]
    return QuotientData(stair, mats, q)


def lex_normal_forms(fs: Sequence[Polynomial], Glex: GroebnerBasis) -> List[Polynomial]:
    """Normal forms modulo a lex basis (fast path for shape position)."""
    ring = Glex.ring
    fs = [f.change_ring(ring) for f in fs]
    if is_shape_position(Glex):
        if Glex._shape is None:
            Glex._shape = _shape_quotient(Glex)
        qd = Glex._shape
        return [qd.normal_form(f) if f else ring.zero for f in fs]
    return [_divide_remainder(f, Glex.basis, LEX) for f in fs]


def lex_buchberger_check(Glex: GroebnerBasis) -> bool:
    """S-polynomials of every non-coprime pair reduce to zero modulo ``Glex``."""
    from itertools import combinations

    from critpoints.groebner import s_polynomial

    pairs = []
    lms = Glex.leading_monomials
    for i, j in combinations(range(len(Glex.basis)), 2):
        if all(a == 0 or b == 0 for a, b in zip(lms[i], lms[j])):
            continue
        pairs.append(s_polynomial(Glex.basis[i], Glex.basis[j], LEX))
    return all(not r for r in lex_normal_forms(pairs, Glex))


# ----------------------------------------------------------------------------
# solutions
# ----------------------------------------------------------------------------

NOT_SHAPE_POSITION = "not shape position"


@dataclass
class SolutionSample:
    """GF(q)-rational solutions read off a lex basis."""

    points: List[tuple]
    shape_position: bool
    notice: Optional[str] = None

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def _eval_all(coeffs: Sequence[int], q: int) -> np.ndarray:
    xs = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % q
    return acc


def _lex_points(Glex: GroebnerBasis) -> List[tuple]:
    """All GF(q)-points of a zero-dimensional lex basis, one coordinate at a time.

    Working upwards from x_n, each partial solution is extended by every
    field element at which all basis elements in the remaining variables
    vanish; those elements generate the elimination ideals.
    """
    q, n = Glex.ring.q, Glex.ring.nvars
    xs = np.arange(q, dtype=np.int64)
    partial: List[tuple] = [()]
    for k in range(n - 1, -1, -1):
        # lex: a leading monomial free of x_1..x_k means the whole element is
        level = [g for g in Glex.basis if not any(g.leading_monomial(LEX)[:k])]
        nxt = []
        for tail in partial:
            ok = np.ones(q, dtype=bool)
            for g in level:
                val = np.zeros(q, dtype=np.int64)
                for m, c in g.coeffs.items():
                    coef = c
                    for e, x in zip(m[k + 1:], tail):
                        coef = coef * pow(x, e, q) % q
                    val = (val + coef * _powmod(xs, m[k], q)) % q
                ok &= val == 0
            nxt.extend((int(x),) + tail for x in np.nonzero(ok)[0])
        partial = nxt
        if not partial:
            break
    return sorted(partial)


def _powmod(xs: np.ndarray, e: int, q: int) -> np.ndarray:
    out = np.ones_like(xs)
    base = xs % q
    while e:
        if e & 1:
            out = out * base % q
        base = base * base % q
        e >>= 1
    return out


def sample_solutions(Glex: GroebnerBasis) -> SolutionSample:
    """All GF(q)-rational points of a zero-dimensional lex basis.

    In shape position the roots of the eliminant are found by evaluating it
    at every field element and the other coordinates follow by
    back-substitution. Otherwise the result carries a notice and the points
    come from a coordinate-by-coordinate exhaustive search.
    """
    if not is_shape_position(Glex):
        pts = _lex_points(Glex) if Glex.order == LEX and is_zero_dimensional(Glex) else []
        return SolutionSample(pts, False, NOT_SHAPE_POSITION)
    q, n = Glex.ring.q, Glex.ring.nvars
    gs, hpoly = _shape_parts(Glex)
    roots = np.nonzero(_eval_all(_univariate(hpoly), q) == 0)[0]
    points = []
    for r in roots.tolist():
        pt = [0] * n
        pt[-1] = r
        for i in range(n - 1):
            # gs[i] = x_i + (terms in x_n), so x_i = -(terms)
            val = sum(c * pow(r, m[-1], q) for m, c in gs[i].coeffs.items() if m[i] == 0) % q
            pt[i] = (-val) % q
        points.append(tuple(pt))
    return SolutionSample(points, True)


def rank_mod(rows: List[List[int]], q: int) -> int:
    """Rank of an integer matrix over GF(q)."""
    A = [[x % q for x in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        pr = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if pr is None:
            continue
        A[rank], A[pr] = A[pr], A[rank]
        inv = pow(A[rank][c], -1, q)
        A[rank] = [x * inv % q for x in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % q for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def jacobian_rank(F: PolySystem, point: Sequence[int]) -> int:
    J = truncated_jacobian(F, 1)
    return rank_mod([[e.evaluate(point) for e in row] for row in J.entries], F.ring.q)


def verify_rank_deficiency(F: PolySystem, points) -> List[bool]:
    """For each point, whether jac(F, 1) evaluated there has rank < p."""
    p = len(F.generators)
    return [jacobian_rank(F, pt) < p for pt in points]


def sample_variety_point(F: PolySystem, seed: int = 0, attempts: int = 20) -> Optional[tuple]:
    """A GF(q)-point of V(F) found by fixing x_{p+1}, ..., x_n at random values.

    Returns None when no attempt produced a rational point.
    """
    n, p, q = F.n, len(F.generators), F.ring.q
    rng = SplitMix64(seed ^ 0x5EED)
    small = PolyRing(p, q)
    for _ in range(attempts):
        fixed = [rng.uniform(q) for _ in range(n - p)]
        subs = []
        for f in F.generators:
            terms: Dict[Monomial, int] = {}
            for m, c in f.coeffs.items():
                v = c
                for k, e in enumerate(m[p:]):
                    if e:
                        v = v * pow(fixed[k], e, q) % q
                key = m[:p]
                terms[key] = (terms.get(key, 0) + v) % q
            subs.append(Polynomial(small, terms))
        if any(not s for s in subs):
            continue
        G = groebner_basis(subs)
        if not is_zero_dimensional(G) or not G.staircase:
            continue
        sols = sample_solutions(fglm_lex(G))
        if sols.points:
            return tuple(sols.points[0]) + tuple(fixed)
    return None
