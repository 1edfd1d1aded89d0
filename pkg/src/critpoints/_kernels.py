"""Compiled inner loops for the Groebner engine.

Rows are CSR: ``ptr`` (int64), ``cols`` (int32, strictly increasing within a
row, column 0 = largest monomial) and ``vals`` (int64 residues). Every pivot
row is monic.
"""
import numpy as np
from numba import njit

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT)
def inv_mod(a, p):
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r != 0:
        qq = r // new_r
        t, new_t = new_t, t - qq * new_t
        r, new_r = new_r, r - qq * new_r
    if t < 0:
        t += p
    return t


@njit(**_JIT)
def find_divisors(mons, lms):
    """Index of the first row of ``lms`` dividing each row of ``mons`` (-1 if none)."""
    k, n = mons.shape
    g = lms.shape[0]
    out = np.full(k, -1, np.int64)
    for a in range(k):
        for b in range(g):
            ok = True
            for v in range(n):
                if lms[b, v] > mons[a, v]:
                    ok = False
                    break
            if ok:
                out[a] = b
                break
    return out


@njit(**_JIT)
def reduce_rows(ncols, p, piv_ptr, piv_cols, piv_vals, pivot_of_col,
                tgt_ptr, tgt_cols, tgt_vals, echelon):
    """Reduce target rows against pivot rows over GF(p).

    ``pivot_of_col[c]`` is the pivot row whose leading column is ``c`` or -1.
    In echelon mode every nonzero reduced target is made monic and becomes a
    pivot for the targets after it; only nonzero rows are returned, with the
    index of the target each came from. Otherwise one (possibly empty) row is
    returned per target and nothing is added to the pivot set.
    """
    ntg = tgt_ptr.shape[0] - 1
    acc = np.zeros(ncols, np.int64)
    piv_of = pivot_of_col.copy()
    out_ptr = np.zeros(ntg + 1, np.int64)
    out_src = np.empty(ntg, np.int64)
    cap = max(1024, tgt_cols.shape[0])
    out_cols = np.empty(cap, np.int32)
    out_vals = np.empty(cap, np.int64)
    used = 0
    nout = 0
    for r in range(ntg):
        s = tgt_ptr[r]
        e = tgt_ptr[r + 1]
        start = ncols
        for k in range(s, e):
            c = tgt_cols[k]
            acc[c] = tgt_vals[k]
            if c < start:
                start = c
        first = -1
        cnt = 0
        for c in range(start, ncols):
            v = acc[c]
            if v == 0:
                continue
            v = v % p
            if v == 0:
                acc[c] = 0
                continue
            pv = piv_of[c]
            if pv == -1:
                acc[c] = v
                cnt += 1
                if first < 0:
                    first = c
                continue
            f = p - v
            if pv >= 0:
                for k in range(piv_ptr[pv], piv_ptr[pv + 1]):
                    acc[piv_cols[k]] += f * piv_vals[k]
            else:
                o = -pv - 2
                for k in range(out_ptr[o], out_ptr[o + 1]):
                    acc[out_cols[k]] += f * out_vals[k]
            acc[c] = 0
        if cnt == 0:
            if not echelon:
                out_src[nout] = r
                nout += 1
                out_ptr[nout] = used
            continue
        if used + cnt > cap:
            cap = max(2 * cap, used + cnt)
            nc = np.empty(cap, np.int32)
            nv = np.empty(cap, np.int64)
            nc[:used] = out_cols[:used]
            nv[:used] = out_vals[:used]
            out_cols = nc
            out_vals = nv
        scale = 1
        if echelon:
            scale = inv_mod(acc[first], p)
        for c in range(first, ncols):
            v = acc[c]
            if v != 0:
                out_cols[used] = c
                out_vals[used] = (v * scale) % p
                used += 1
                acc[c] = 0
        out_src[nout] = r
        nout += 1
        out_ptr[nout] = used
        if echelon:
            piv_of[first] = -(nout - 1) - 2
    return out_ptr[:nout + 1], out_cols[:used], out_vals[:used], out_src[:nout]


@njit(**_JIT)
def _divides(a, b):
    for v in range(a.shape[0]):
        if a[v] > b[v]:
            return False
    return True


@njit(**_JIT)
def _equal(a, b):
    for v in range(a.shape[0]):
        if a[v] != b[v]:
            return False
    return True


@njit(**_JIT)
def gm_update(L, active, new_elems, pi, pj, plcm, alive):
    """Gebauer-Moeller update for a batch of new basis elements.

    ``L`` holds the leading exponent vectors of every basis element. Existing
    pairs are ``(pi, pj, plcm)`` with liveness mask ``alive`` (modified in
    place, as is ``active``). Returns the arrays of pairs created.
    """
    n = L.shape[1]
    cap = 64
    ni = np.empty(cap, np.int64)
    nj = np.empty(cap, np.int64)
    nl = np.empty((cap, n), np.int32)
    nalive = np.empty(cap, np.bool_)
    used = 0
    nb = L.shape[0]
    for h in new_elems:
        lh = L[h]
        # prune old pairs (criterion B_k), first the pre-existing ones
        for t in range(pi.shape[0]):
            if not alive[t]:
                continue
            if not _divides(lh, plcm[t]):
                continue
            same_i = True
            same_j = True
            li = L[pi[t]]
            lj = L[pj[t]]
            for v in range(n):
                if max(li[v], lh[v]) != plcm[t, v]:
                    same_i = False
                if max(lj[v], lh[v]) != plcm[t, v]:
                    same_j = False
            if not same_i and not same_j:
                alive[t] = False
        for t in range(used):
            if not nalive[t]:
                continue
            if not _divides(lh, nl[t]):
                continue
            same_i = True
            same_j = True
            li = L[ni[t]]
            lj = L[nj[t]]
            for v in range(n):
                if max(li[v], lh[v]) != nl[t, v]:
                    same_i = False
                if max(lj[v], lh[v]) != nl[t, v]:
                    same_j = False
            if not same_i and not same_j:
                nalive[t] = False
        # candidate pairs with every active element
        cand = np.empty(nb, np.int64)
        k = 0
        for g in range(nb):
            if active[g] and g != h:
                cand[k] = g
                k += 1
        clcm = np.empty((k, n), np.int32)
        coprime = np.empty(k, np.bool_)
        for a in range(k):
            lg = L[cand[a]]
            cp = True
            for v in range(n):
                clcm[a, v] = max(lg[v], lh[v])
                if lg[v] > 0 and lh[v] > 0:
                    cp = False
            coprime[a] = cp
        status = np.zeros(k, np.int8)  # 0 pending, 1 kept, 2 dropped
        for a in range(k):
            if coprime[a]:
                status[a] = 1
                continue
            drop = False
            for b in range(k):
                if b == a or status[b] == 2:
                    continue
                if _divides(clcm[b], clcm[a]):
                    drop = True
                    break
            status[a] = 2 if drop else 1
        for a in range(k):
            if status[a] != 1 or coprime[a]:
                continue
            if used == cap:
                cap *= 2
                ni2 = np.empty(cap, np.int64)
                nj2 = np.empty(cap, np.int64)
                nl2 = np.empty((cap, n), np.int32)
                na2 = np.empty(cap, np.bool_)
                ni2[:used] = ni[:used]
                nj2[:used] = nj[:used]
                nl2[:used] = nl[:used]
                na2[:used] = nalive[:used]
                ni, nj, nl, nalive = ni2, nj2, nl2, na2
            ni[used] = cand[a]
            nj[used] = h
            nl[used] = clcm[a]
            nalive[used] = True
            used += 1
        # drop active elements whose leading monomial is a multiple of LM(h)
        for g in range(nb):
            if active[g] and g != h and _divides(lh, L[g]):
                active[g] = False
        active[h] = True
    return ni[:used], nj[:used], nl[:used], nalive[:used]



@njit(**_JIT)
def echelon_insert(E, piv, C, k, v, p):
    """Reduce ``v`` by the first ``k`` rows of an incremental echelon form.

    Row r of ``E`` is monic at column ``piv[r]`` and equals ``C[r, :r+1]``
    applied to the vectors inserted so far. If ``v`` is dependent, returns
    (True, lam) with ``v`` = sum lam[b] * (b-th inserted vector); otherwise
    stores it as row ``k`` and returns (False, empty).
    """
    N = v.shape[0]
    w = v.copy()
    c = np.zeros(k, np.int64)
    for r in range(k):
        f = w[piv[r]]
        if f == 0:
            continue
        c[r] = f
        for t in range(N):
            if E[r, t] != 0:
                w[t] = (w[t] - f * E[r, t]) % p
    lead = -1
    for t in range(N):
        if w[t] != 0:
            lead = t
            break
    lam = np.zeros(k, np.int64)
    for r in range(k):
        if c[r] == 0:
            continue
        for b in range(r + 1):
            if C[r, b] != 0:
                lam[b] = (lam[b] + c[r] * C[r, b]) % p
    if lead < 0:
        return True, lam
    s = inv_mod(w[lead], p)
    for t in range(N):
        E[k, t] = (w[t] * s) % p
    for b in range(k):
        C[k, b] = ((p - lam[b]) * s) % p
    C[k, k] = s
    piv[k] = lead
    return False, lam[:0]
