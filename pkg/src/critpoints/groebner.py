"""Degree-by-degree F4 Groebner bases over GF(q).

Each step takes every pending critical pair of the smallest degree (normal
strategy) together with the input generators of that degree, builds the
Macaulay block of their monomial multiples plus the reducers found by
symbolic preprocessing, and row-reduces it. Pairs are pruned with the
Gebauer-Moeller installation of Buchberger's two criteria.

Inside the engine monomials are int64 keys: a positive linear form in the
exponents that is strictly monotone for the active order on monomials of
degree below the encoder base, so multiplying monomials is adding keys and
sorting keys sorts monomials.

The run stops when no pair is left, or earlier once the basis is provably
complete:

* homogeneous input: the leading monomials already contain every monomial
  of the degree just finished, so the truncated basis is a full basis;
* otherwise, when the leading-monomial ideal is zero-dimensional and the
  next pair degree exceeds every degree reduced so far, the multiplication
  matrices on its staircase are built; if they commute and every input
  generator is zero in the quotient they define, the basis is complete.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from critpoints import _kernels as K
from critpoints.critsys import PolySystem
from critpoints.hilbert import PowerSeries
from critpoints.poly import (
    Monomial,
    MonomialOrder,
    Polynomial,
    PolyRing,
    get_order,
    monomial_div,
    monomial_divides,
    monomial_lcm,
)

log = logging.getLogger(__name__)


class DegreeCapExceeded(RuntimeError):
    pass


class NotZeroDimensional(ValueError):
    pass


# ----------------------------------------------------------------------------
# monomial keys
# ----------------------------------------------------------------------------

class MonomialEncoder:
    """Order-monotone additive int64 keys for monomials of bounded degree."""

    def __init__(self, n: int, order: MonomialOrder):
        self.n = n
        self.order = order
        B = int(round(2 ** (62 / n))) + 1
        while B**n > 2**62:
            B -= 1
        self.base = B
        self.max_degree = B - 1
        if order.name == "lex":
            w = [B ** (n - 1 - i) for i in range(n)]
        else:
            top = B ** (n - 1)
            w = [top] + [top - B ** (i - 1) for i in range(1, n)]
        self.weights = np.array(w, dtype=np.int64)
        self._pows = np.array([B**i for i in range(n)], dtype=np.int64)

    def encode(self, exps: np.ndarray) -> np.ndarray:
        return np.asarray(exps, dtype=np.int64) @ self.weights

    def decode(self, keys: np.ndarray) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        n, B = self.n, self.base
        out = np.empty((keys.shape[0], n), dtype=np.int32)
        if self.order.name == "lex":
            for i in range(n):
                out[:, i] = (keys // self._pows[n - 1 - i]) % B
            return out
        top = self._pows[n - 1] if n > 1 else np.int64(1)
        if n == 1:
            out[:, 0] = keys
            return out
        deg = (keys + top - 1) // top
        r = deg * top - keys
        rest = np.zeros(keys.shape[0], dtype=np.int64)
        for i in range(1, n):
            e = (r // self._pows[i - 1]) % B
            out[:, i] = e
            rest += e
        out[:, 0] = deg - rest
        return out

    def degree(self, keys: np.ndarray) -> np.ndarray:
        return self.decode(keys).sum(axis=1)


class _EPoly:
    """Engine polynomial: keys sorted decreasing, residues aligned."""

    __slots__ = ("keys", "coeffs", "lm", "deg", "maxdeg")

    def __init__(self, keys: np.ndarray, coeffs: np.ndarray, enc: MonomialEncoder):
        self.keys = keys
        self.coeffs = coeffs
        self.lm = enc.decode(keys[:1])[0]
        self.deg = int(self.lm.sum())
        if enc.order.is_degree_order:
            self.maxdeg = self.deg
        else:
            self.maxdeg = int(enc.degree(keys).max())

    @property
    def lm_key(self) -> int:
        return int(self.keys[0])

    def __len__(self):
        return self.keys.shape[0]


def _to_epoly(f: Polynomial, enc: MonomialEncoder, p: int, monic: bool = True) -> _EPoly:
    items = list(f.coeffs.items())
    exps = np.array([m for m, _ in items], dtype=np.int64).reshape(len(items), enc.n)
    if exps.sum(axis=1).max(initial=0) > enc.max_degree:
        raise DegreeCapExceeded(f"degree {int(exps.sum(axis=1).max())} exceeds the encoder limit {enc.max_degree}")
    keys = enc.encode(exps)
    coeffs = np.array([c for _, c in items], dtype=np.int64)
    idx = np.argsort(-keys, kind="stable")
    keys, coeffs = keys[idx], coeffs[idx]
    if monic and coeffs[0] != 1:
        coeffs = coeffs * pow(int(coeffs[0]), -1, p) % p
    return _EPoly(keys, coeffs, enc)


def _from_epoly(e: _EPoly, ring: PolyRing, enc: MonomialEncoder) -> Polynomial:
    exps = enc.decode(e.keys).tolist()
    return Polynomial(ring, dict(zip(map(tuple, exps), e.coeffs.tolist())), _clean=False)


# ----------------------------------------------------------------------------
# shared reduction machinery
# ----------------------------------------------------------------------------

class _ReducerSet:
    """Basis elements available as reducers, shortest first."""

    def __init__(self, polys: Sequence[_EPoly], n: int):
        order = sorted(range(len(polys)), key=lambda i: (len(polys[i]), i))
        self.polys = [polys[i] for i in order]
        self.lms = (np.array([p.lm for p in self.polys], dtype=np.int32).reshape(len(order), n))
        self.lm_keys = np.array([p.lm_key for p in self.polys], dtype=np.int64)


def _symbolic_preprocessing(enc: MonomialEncoder, reducers: _ReducerSet, seen: np.ndarray,
                            todo: np.ndarray) -> Tuple[List[Tuple[_EPoly, int]], np.ndarray]:
    """Add a reducer for every reducible monomial reachable from ``todo``.

    ``seen`` (sorted, unique) holds every monomial already in the block.
    Returns the reducer rows (poly, multiplier key) and the final ``seen``.
    """
    rows: List[Tuple[_EPoly, int]] = []
    while todo.size:
        if reducers.lms.shape[0] == 0:
            break
        idx = K.find_divisors(enc.decode(todo), reducers.lms)
        hit = np.nonzero(idx >= 0)[0]
        if hit.size == 0:
            break
        parts = []
        check = not enc.order.is_degree_order
        if check:
            mult_deg = enc.degree(todo[hit]) - np.array([reducers.polys[idx[t]].deg for t in hit])
        for r, t in enumerate(hit):
            g = reducers.polys[idx[t]]
            if check and g.maxdeg + mult_deg[r] > enc.max_degree:
                raise DegreeCapExceeded(f"degree {g.maxdeg + mult_deg[r]} exceeds the encoder limit {enc.max_degree}")
            mk = int(todo[t]) - g.lm_key
            rows.append((g, mk))
            parts.append(g.keys[1:] + mk)
        new = np.unique(np.concatenate(parts)) if parts else np.empty(0, np.int64)
        new = np.setdiff1d(new, seen, assume_unique=True)
        if new.size:
            seen = np.union1d(seen, new)
        todo = new
    return rows, seen


def _csr(rows: Sequence[Tuple[_EPoly, int]], seen: np.ndarray):
    """CSR arrays for ``rows`` with columns indexed by decreasing monomial."""
    ncols = seen.shape[0]
    lengths = np.fromiter((len(g) for g, _ in rows), dtype=np.int64, count=len(rows))
    ptr = np.zeros(len(rows) + 1, dtype=np.int64)
    np.cumsum(lengths, out=ptr[1:])
    if rows:
        keys = np.concatenate([g.keys + mk for g, mk in rows])
        vals = np.concatenate([g.coeffs for g, _ in rows])
    else:
        keys = np.empty(0, np.int64)
        vals = np.empty(0, np.int64)
    cols = (ncols - 1 - np.searchsorted(seen, keys)).astype(np.int32)
    return ptr, cols, vals


def _reduce_block(enc: MonomialEncoder, p: int, pivots: List[Tuple[_EPoly, int]],
                  targets: List[Tuple[_EPoly, int]], seen: np.ndarray, echelon: bool):
    ncols = seen.shape[0]
    piv_ptr, piv_cols, piv_vals = _csr(pivots, seen)
    pivot_of_col = np.full(ncols, -1, dtype=np.int64)
    if pivots:
        pivot_of_col[piv_cols[piv_ptr[:-1]]] = np.arange(len(pivots))
    tgt_ptr, tgt_cols, tgt_vals = _csr(targets, seen)
    out_ptr, out_cols, out_vals, out_src = K.reduce_rows(
        ncols, p, piv_ptr, piv_cols, piv_vals, pivot_of_col, tgt_ptr, tgt_cols, tgt_vals, echelon)
    desc = seen[::-1]
    result = []
    for r in range(out_src.shape[0]):
        s, e = out_ptr[r], out_ptr[r + 1]
        result.append((int(out_src[r]), desc[out_cols[s:e]], out_vals[s:e].copy()))
    return result


def _normal_forms(enc: MonomialEncoder, p: int, reducers: _ReducerSet,
                  targets: Sequence[Tuple[np.ndarray, np.ndarray]]) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Fully reduced remainders of ``(keys, coeffs)`` targets modulo ``reducers``."""
    if not targets:
        return []
    tpolys = []
    for keys, coeffs in targets:
        t = _EPoly.__new__(_EPoly)
        t.keys, t.coeffs = keys, coeffs
        tpolys.append((t, 0))
    nonempty = [k for k, _ in targets if k.size]
    seen = np.unique(np.concatenate(nonempty)) if nonempty else np.empty(0, np.int64)
    rows, seen = _symbolic_preprocessing(enc, reducers, seen, seen)
    out = [(np.empty(0, np.int64), np.empty(0, np.int64))] * len(targets)
    if seen.size == 0:
        return out
    for src, keys, vals in _reduce_block(enc, p, rows, tpolys, seen, echelon=False):
        out[src] = (keys, vals)
    return out


# ----------------------------------------------------------------------------
# staircases and quotient algebra
# ----------------------------------------------------------------------------

def _lms_zero_dimensional(lms: np.ndarray, n: int) -> bool:
    if lms.shape[0] == 0:
        return False
    if (lms.sum(axis=1) == 0).any():
        return True
    pure = (np.count_nonzero(lms, axis=1) == 1)
    covered = np.zeros(n, dtype=bool)
    covered[np.nonzero(lms[pure])[1]] = True
    return bool(covered.all())


def _staircase_exps(lms: np.ndarray, n: int, limit: Optional[int] = None) -> np.ndarray:
    """Standard monomials of a zero-dimensional monomial ideal, by increasing degree."""
    lms = np.ascontiguousarray(lms, dtype=np.int32)
    one = np.zeros((1, n), dtype=np.int32)
    if lms.shape[0] and K.find_divisors(one, lms)[0] >= 0:
        return np.zeros((0, n), dtype=np.int32)
    eye = np.eye(n, dtype=np.int32)
    levels = [one]
    level = one
    total = 1
    while level.shape[0]:
        cand = (level[:, None, :] + eye[None, :, :]).reshape(-1, n)
        cand = np.unique(cand, axis=0)
        keep = K.find_divisors(cand, lms) < 0 if lms.shape[0] else np.ones(cand.shape[0], bool)
        level = cand[keep]
        total += level.shape[0]
        if limit is not None and total > limit:
            raise NotZeroDimensional(f"staircase larger than {limit}")
        if level.shape[0]:
            levels.append(level)
    return np.concatenate(levels)


@dataclass
class QuotientData:
    """Multiplication matrices of GF(q)[X]/I on a staircase basis.

    ``matrices[j][:, b]`` holds the coordinates of the normal form of
    ``x_j * staircase[b]``.
    """

    staircase: List[Monomial]
    matrices: List[np.ndarray]
    q: int

    def __post_init__(self):
        self._float = None
        self._cache: Dict[Monomial, np.ndarray] = {}

    def vectors(self, monos) -> Dict[Monomial, np.ndarray]:
        """Coordinates of the normal form of each monomial in ``monos`` (cached)."""
        cache = self._cache
        N = len(self.staircase)
        n = len(self.matrices)
        one = (0,) * n
        if one not in cache:
            e1 = np.zeros(N, dtype=np.int64)
            if N:
                e1[self.staircase.index(one)] = 1
            cache[one] = e1
        if self._float is None:
            self._float = [t.astype(np.float64) for t in self.matrices]
        Tf = self._float
        for m in monos:
            chain = []
            cur = m
            while cur not in cache:
                j = next(i for i, e in enumerate(cur) if e)
                chain.append((cur, j))
                cur = cur[:j] + (cur[j] - 1,) + cur[j + 1:]
            for c, j in reversed(chain):
                prev = c[:j] + (c[j] - 1,) + c[j + 1:]
                # exact: entries < q and N * q**2 < 2**53
                cache[c] = np.fmod(Tf[j] @ cache[prev].astype(np.float64), self.q).astype(np.int64)
        return cache

    def coordinates(self, f: Polynomial) -> np.ndarray:
        """Staircase coordinates of the normal form of ``f``."""
        if not f:
            return np.zeros(len(self.staircase), dtype=np.int64)
        cache = self.vectors(f.coeffs)
        V = np.stack([cache[m] for m in f.coeffs])
        c = np.fromiter(f.coeffs.values(), dtype=np.int64, count=len(f.coeffs))
        return (c @ V) % self.q

    def normal_form(self, f: Polynomial) -> Polynomial:
        ring = f.ring
        v = self.coordinates(f)
        return Polynomial(ring, {self.staircase[i]: int(v[i]) for i in np.nonzero(v)[0]}, _clean=False)

    def commute(self) -> bool:
        if self._float is None:
            self._float = [t.astype(np.float64) for t in self.matrices]
        Tf = self._float
        for i in range(len(Tf)):
            for j in range(i + 1, len(Tf)):
                if np.fmod(Tf[i] @ Tf[j] - Tf[j] @ Tf[i], self.q).any():
                    return False
        return True


def _quotient_data(enc: MonomialEncoder, p: int, reducers: _ReducerSet,
                   stair: np.ndarray) -> QuotientData:
    n = enc.n
    N = stair.shape[0]
    stair_keys = enc.encode(stair)
    order_idx = np.argsort(stair_keys, kind="stable")
    stair = stair[order_idx]
    stair_keys = stair_keys[order_idx]
    pos = {int(k): i for i, k in enumerate(stair_keys)}
    T = [np.zeros((N, N), dtype=np.int64) for _ in range(n)]
    border: Dict[int, List[Tuple[int, int]]] = {}
    for j in range(n):
        prod = stair_keys + enc.weights[j]
        for b, key in enumerate(prod.tolist()):
            i = pos.get(key)
            if i is not None:
                T[j][i, b] = 1
            else:
                border.setdefault(key, []).append((j, b))
    bkeys = list(border)
    one = np.ones(1, dtype=np.int64)
    nfs = _normal_forms(enc, p, reducers, [(np.array([k], dtype=np.int64), one) for k in bkeys])
    for key, (keys, vals) in zip(bkeys, nfs):
        rows = np.fromiter((pos[int(k)] for k in keys), dtype=np.int64, count=keys.shape[0])
        for j, b in border[key]:
            T[j][rows, b] = vals
    return QuotientData([tuple(int(x) for x in m) for m in stair], T, p)


# ----------------------------------------------------------------------------
# F4
# ----------------------------------------------------------------------------

@dataclass
class StepRecord:
    degree: int
    rows: int
    cols: int
    pairs: int
    new: int


class _F4:
    def __init__(self, ring: PolyRing, order: MonomialOrder, degree_cap: Optional[int],
                 early_stop: bool = True):
        self.ring = ring
        self.n = ring.nvars
        self.p = ring.q
        self.order = order
        self.enc = MonomialEncoder(self.n, order)
        self.degree_cap = degree_cap
        self.early_stop = early_stop
        self.basis: List[_EPoly] = []
        self.L = np.zeros((0, self.n), dtype=np.int32)
        self.active = np.zeros(0, dtype=bool)
        self.sugar = np.zeros(0, np.int64)
        self.pi = np.zeros(0, np.int64)
        self.pj = np.zeros(0, np.int64)
        self.plcm = np.zeros((0, self.n), np.int32)
        self.max_step_degree = 0
        self.steps: List[StepRecord] = []
        self.stop_reason = "pairs exhausted"

    # -- bookkeeping --------------------------------------------------------
    def _add_elements(self, polys: List[_EPoly], sugar: int):
        if not polys:
            return
        start = len(self.basis)
        self.basis.extend(polys)
        self.sugar = np.concatenate([self.sugar, np.full(len(polys), sugar, np.int64)])
        self.L = np.vstack([self.L, np.array([g.lm for g in polys], dtype=np.int32)])
        self.active = np.concatenate([self.active, np.zeros(len(polys), dtype=bool)])
        alive = np.ones(self.pi.shape[0], dtype=bool)
        ni, nj, nl, nalive = K.gm_update(self.L, self.active, np.arange(start, len(self.basis)),
                                         self.pi, self.pj, self.plcm, alive)
        self.pi = np.concatenate([self.pi[alive], ni[nalive]])
        self.pj = np.concatenate([self.pj[alive], nj[nalive]])
        self.plcm = np.vstack([self.plcm[alive], nl[nalive]])

    def _reducers(self) -> _ReducerSet:
        return _ReducerSet([g for g, a in zip(self.basis, self.active) if a], self.n)

    def _active_lms(self) -> np.ndarray:
        return self.L[self.active]

    # -- main loop ----------------------------------------------------------
    def run(self, inputs: List[_EPoly]) -> List[_EPoly]:
        homogeneous = all(g.maxdeg == int(self.enc.degree(g.keys).min()) for g in inputs)
        # degree orders select by lcm degree; other orders by sugar degree
        sugar = not self.order.is_degree_order
        pending = sorted(inputs, key=lambda g: g.maxdeg if sugar else g.deg)
        while True:
            pdeg = self._pair_degrees(sugar)
            cands = []
            if pdeg.size:
                cands.append(int(pdeg.min()))
            if pending:
                cands.append(pending[0].maxdeg if sugar else pending[0].deg)
            if not cands:
                break
            d = min(cands)
            if self.early_stop and d > self.max_step_degree and self.basis and self._complete(homogeneous, pending):
                break
            if self.degree_cap is not None and d > self.degree_cap:
                raise DegreeCapExceeded(f"step degree {d} exceeds cap {self.degree_cap}")
            sel = np.nonzero(pdeg == d)[0] if pdeg.size else np.zeros(0, np.int64)
            due = [g for g in pending if (g.maxdeg if sugar else g.deg) == d]
            pending = [g for g in pending if (g.maxdeg if sugar else g.deg) != d]
            pairs = (self.pi[sel], self.pj[sel], self.plcm[sel])
            keep = np.ones(self.pi.shape[0], dtype=bool)
            keep[sel] = False
            self.pi, self.pj, self.plcm = self.pi[keep], self.pj[keep], self.plcm[keep]
            new = self._step(d, pairs, due)
            if any(g.deg == 0 for g in new):
                one = [g for g in new if g.deg == 0][0]
                self.basis, self.L = [one], one.lm[None, :].astype(np.int32)
                self.active = np.ones(1, dtype=bool)
                self.sugar = np.zeros(1, np.int64)
                self.pi = self.pj = np.zeros(0, np.int64)
                self.plcm = np.zeros((0, self.n), np.int32)
                self.stop_reason = "unit ideal"
                break
            self._add_elements(new, d)
        return self._reduced_basis()

    def _pair_degrees(self, sugar: bool) -> np.ndarray:
        if not self.pi.size:
            return np.zeros(0, np.int64)
        lcm_deg = self.plcm.sum(axis=1).astype(np.int64)
        if not sugar:
            return lcm_deg
        lm_deg = self.L.sum(axis=1).astype(np.int64)
        si = self.sugar[self.pi] - lm_deg[self.pi]
        sj = self.sugar[self.pj] - lm_deg[self.pj]
        return lcm_deg + np.maximum(si, sj)

    def _step(self, d: int, pairs, due: List[_EPoly]) -> List[_EPoly]:
        enc = self.enc
        pi, pj, plcm = pairs
        row_set = {}
        if pi.size:
            lcm_keys = enc.encode(plcm)
            for a, b, lk in zip(pi.tolist(), pj.tolist(), lcm_keys.tolist()):
                for g in (a, b):
                    mk = lk - self.basis[g].lm_key
                    row_set.setdefault((g, mk), None)
        pair_rows = [(self.basis[g], mk) for g, mk in row_set]
        if pair_rows:
            mult_deg = enc.degree(np.array([mk for _, mk in pair_rows], dtype=np.int64))
            top = max(g.maxdeg + int(md) for (g, _), md in zip(pair_rows, mult_deg))
            if top > enc.max_degree:
                raise DegreeCapExceeded(f"degree {top} exceeds the encoder limit {enc.max_degree}")
        input_rows = [(g, 0) for g in due]
        all_rows = pair_rows + input_rows
        seen = np.unique(np.concatenate([g.keys + mk for g, mk in all_rows]))
        done = np.unique(np.array([g.lm_key + mk for g, mk in pair_rows], dtype=np.int64))
        todo = np.setdiff1d(seen, done, assume_unique=True)
        reducers, seen = _symbolic_preprocessing(enc, self._reducers(), seen, todo)

        pivots = list(reducers)
        targets: List[Tuple[_EPoly, int]] = []
        chosen = {}
        for g, mk in sorted(pair_rows, key=lambda r: (-(r[0].lm_key + r[1]), len(r[0]))):
            lead = g.lm_key + mk
            if lead in chosen:
                targets.append((g, mk))
            else:
                chosen[lead] = True
                pivots.append((g, mk))
        targets.extend(input_rows)
        targets.sort(key=lambda r: (-(r[0].lm_key + r[1]), len(r[0])))
        out = _reduce_block(enc, self.p, pivots, targets, seen, echelon=True) if targets else []
        new = [_EPoly(keys, vals, enc) for _, keys, vals in out]
        self.max_step_degree = max(self.max_step_degree, d)
        self.steps.append(StepRecord(d, len(pivots) + len(targets), seen.shape[0], int(pi.size), len(new)))
        log.debug("step d=%d rows=%d cols=%d pairs=%d new=%d", d, len(pivots) + len(targets),
                  seen.shape[0], pi.size, len(new))
        return new

    def _complete(self, homogeneous: bool, pending: List[_EPoly]) -> bool:
        lms = self._active_lms()
        if not _lms_zero_dimensional(lms, self.n):
            return False
        if homogeneous:
            d = self.max_step_degree
            from critpoints.poly import monomials_of_degree
            mons = np.array(list(monomials_of_degree(self.n, d)), dtype=np.int32)
            if (K.find_divisors(mons, lms) >= 0).all():
                self.stop_reason = f"all degree-{d} monomials are leading monomials"
                return True
            return False
        try:
            stair = _staircase_exps(lms, self.n, limit=50000)
        except NotZeroDimensional:
            return False
        if stair.shape[0] and stair.sum(axis=1).max() + 1 > self.enc.max_degree:
            return False
        qd = _quotient_data(self.enc, self.p, self._reducers(), stair)
        if not qd.commute():
            return False
        if any(qd.coordinates(f).any() for f in self._inputs_as_polys):
            return False
        self.stop_reason = "commuting multiplication matrices certify completeness"
        return True

    def _reduced_basis(self) -> List[_EPoly]:
        lms = [g for g, a in zip(self.basis, self.active) if a]
        lms.sort(key=lambda g: g.lm_key)
        if not lms:
            return []
        reducers = _ReducerSet(lms, self.n)
        tails = [(g.keys[1:], g.coeffs[1:]) for g in lms]
        nfs = _normal_forms(self.enc, self.p, reducers, tails)
        out = []
        for g, (keys, vals) in zip(lms, nfs):
            out.append(_EPoly(np.concatenate([g.keys[:1], keys]),
                              np.concatenate([np.ones(1, np.int64), vals]), self.enc))
        return out


# ----------------------------------------------------------------------------
# public API
# ----------------------------------------------------------------------------

@dataclass
class GroebnerBasis:
    """A reduced Groebner basis together with run statistics."""

    order: MonomialOrder
    basis: List[Polynomial]
    ring: PolyRing
    max_step_degree: int = 0
    steps: List[StepRecord] = field(default_factory=list)
    stop_reason: str = ""
    _staircase: Optional[List[Monomial]] = field(default=None, repr=False)
    _engine: Optional[Tuple[MonomialEncoder, _ReducerSet]] = field(default=None, repr=False)
    _shape: Optional[QuotientData] = field(default=None, repr=False)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    @property
    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial(self.order) for g in self.basis]

    @property
    def staircase(self) -> List[Monomial]:
        if self._staircase is None:
            self._staircase = staircase(self)
        return self._staircase

    @property
    def degree(self) -> int:
        return len(self.staircase)

    def engine(self) -> Tuple[MonomialEncoder, _ReducerSet]:
        """Encoder and reducer set for fast normal forms (grevlex-sized degrees only)."""
        if self._engine is None:
            enc = MonomialEncoder(self.ring.nvars, self.order)
            polys = [_to_epoly(g, enc, self.ring.q) for g in self.basis]
            self._engine = (enc, _ReducerSet(polys, self.ring.nvars))
        return self._engine


def groebner_basis(S, order="grevlex", degree_cap: Optional[int] = None,
                   early_stop: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``S``.

    ``S`` is a :class:`PolySystem` or a sequence of polynomials. Raises
    :class:`DegreeCapExceeded` if a step degree would pass ``degree_cap``.
    """
    gens = list(S.generators if isinstance(S, PolySystem) else S)
    if not gens:
        raise ValueError("need at least one generator")
    order = get_order(order)
    ring = gens[0].ring.with_order(order)
    gens = [g.change_ring(ring) for g in gens]
    if any(not g for g in gens):
        raise ValueError("generators must be nonzero")
    engine = _F4(ring, order, degree_cap, early_stop)
    engine._inputs_as_polys = gens
    inputs = [_to_epoly(g, engine.enc, ring.q) for g in gens]
    out = sorted(engine.run(inputs), key=lambda e: e.lm_key)
    polys = [_from_epoly(e, ring, engine.enc) for e in out]
    return GroebnerBasis(order, polys, ring, engine.max_step_degree, engine.steps, engine.stop_reason,
                         _engine=(engine.enc, _ReducerSet(out, ring.nvars)))


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of ``f`` modulo the basis ``G`` (no term divisible by a leading monomial)."""
    return normal_forms([f], G)[0]


def normal_forms(fs: Sequence[Polynomial], G: GroebnerBasis) -> List[Polynomial]:
    ring = G.ring
    fs = [f.change_ring(ring) for f in fs]
    try:
        enc, reducers = G.engine()
        targets = []
        for f in fs:
            if not f:
                targets.append((np.empty(0, np.int64), np.empty(0, np.int64)))
                continue
            e = _to_epoly(f, enc, ring.q, monic=False)
            targets.append((e.keys, e.coeffs))
        reduced = _normal_forms(enc, ring.q, reducers, targets)
    except DegreeCapExceeded:
        return [_divide_remainder(f, G.basis, G.order) for f in fs]
    out = []
    for keys, vals in reduced:
        if keys.size == 0:
            out.append(ring.zero)
            continue
        exps = enc.decode(keys).tolist()
        out.append(Polynomial(ring, dict(zip(map(tuple, exps), vals.tolist())), _clean=False))
    return out


def _divide_remainder(f: Polynomial, basis: Sequence[Polynomial], order) -> Polynomial:
    """Plain multivariate division remainder (pure Python fallback)."""
    order = get_order(order)
    ring = f.ring
    q = ring.q
    lead = [(g.leading_monomial(order), g.leading_coefficient(order), g) for g in basis]
    rem: Dict[Monomial, int] = {}
    work = dict(f.coeffs)
    key = order.key
    while work:
        m = max(work, key=key)
        c = work[m]
        for lm, lc, g in lead:
            if monomial_divides(lm, m):
                t = monomial_div(m, lm)
                s = c * pow(lc, -1, q) % q
                for gm, gc in g.coeffs.items():
                    mm = tuple(a + b for a, b in zip(gm, t))
                    v = (work.get(mm, 0) - s * gc) % q
                    if v:
                        work[mm] = v
                    else:
                        work.pop(mm, None)
                break
        else:
            rem[m] = c
            del work[m]
    return Polynomial(ring, rem, _clean=False)


def is_zero_dimensional(G: GroebnerBasis) -> bool:
    """Every variable has a pure power among the leading monomials (or 1 is in the ideal)."""
    lms = G.leading_monomials
    if any(sum(m) == 0 for m in lms):
        return True
    n = G.ring.nvars
    covered = set()
    for m in lms:
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            covered.add(nz[0])
    return len(covered) == n


def staircase(G: GroebnerBasis) -> List[Monomial]:
    """Standard monomials of a zero-dimensional basis, increasing in its order."""
    if not is_zero_dimensional(G):
        raise NotZeroDimensional("the staircase of a positive-dimensional ideal is infinite")
    n = G.ring.nvars
    lms = np.array(G.leading_monomials, dtype=np.int32).reshape(len(G.basis), n)
    stair = [tuple(int(x) for x in m) for m in _staircase_exps(lms, n)]
    stair.sort(key=G.order.key)
    return stair


def s_polynomial(f: Polynomial, g: Polynomial, order) -> Polynomial:
    order = get_order(order)
    q = f.ring.q
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = monomial_lcm(lf, lg)
    cf = pow(f.leading_coefficient(order), -1, q)
    cg = pow(g.leading_coefficient(order), -1, q)
    return f.mul_term(monomial_div(lcm, lf), cf) - g.mul_term(monomial_div(lcm, lg), cg)


def buchberger_check(G: GroebnerBasis, max_pairs: Optional[int] = None, seed: int = 0,
                     skip_coprime: bool = True) -> bool:
    """Every S-polynomial of basis pairs reduces to zero modulo ``G``.

    Pairs with coprime leading monomials reduce to zero by Buchberger's first
    criterion and are skipped when ``skip_coprime``. With ``max_pairs`` a
    seeded random sample of the remaining pairs is checked.
    """
    order = G.order
    pairs = []
    for i, j in combinations(range(len(G.basis)), 2):
        a, b = G.basis[i].leading_monomial(order), G.basis[j].leading_monomial(order)
        if skip_coprime and all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue
        pairs.append((i, j))
    if max_pairs is not None and len(pairs) > max_pairs:
        pairs = random.Random(seed).sample(pairs, max_pairs)
    spolys = [s_polynomial(G.basis[i], G.basis[j], order) for i, j in pairs]
    return all(not r for r in normal_forms(spolys, G))


def hilbert_series_from_lm(G: GroebnerBasis, truncation: int) -> PowerSeries:
    """Hilbert series of K[X]/<LM(G)> truncated below degree ``truncation``."""
    from critpoints.hilbert import monomial_ideal_hilbert_numerator, series_from_numerator

    numer = monomial_ideal_hilbert_numerator(G.leading_monomials, G.ring.nvars)
    return series_from_numerator(numer, G.ring.nvars, truncation)


def quotient_data(G: GroebnerBasis) -> QuotientData:
    """Multiplication matrices of a zero-dimensional basis on its staircase."""
    if not is_zero_dimensional(G):
        raise NotZeroDimensional("multiplication matrices need a zero-dimensional ideal")
    enc, reducers = G.engine()
    n = G.ring.nvars
    stair = np.array(G.staircase, dtype=np.int32).reshape(len(G.staircase), n)
    return _quotient_data(enc, G.ring.q, reducers, stair)
