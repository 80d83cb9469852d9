# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same signatures and results as ``akb._pykernels``.

Bitsets are packed into rows of 64-bit words for the inner loops and handed
back as Python ints.  The defeat relation is built the same way as in the
Python version, through inverted indexes (key -> row of arguments), so the
cost is linear in the number of (argument, key) entries times the row width
rather than quadratic in the number of arguments.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


cdef inline Py_ssize_t _nwords(Py_ssize_t n):
    return max(1, (n + 63) >> 6)


cdef inline uint64_t* _ptr(arr):
    cdef uint64_t[::1] flat = arr.reshape(-1)
    return &flat[0]


cdef inline int64_t* _iptr(arr):
    cdef int64_t[::1] flat = arr
    return &flat[0]


cdef tuple _csr(members):
    """Ragged ``[[key, ...], ...]`` as (offsets, keys) int64 arrays."""
    offsets = np.zeros(len(members) + 1, dtype=np.int64)
    flat = []
    for i, keys in enumerate(members):
        flat.extend(keys)
        offsets[i + 1] = len(flat)
    keys_arr = np.array(flat if flat else [0], dtype=np.int64)
    return offsets, keys_arr


cdef object _pack_ints(values, Py_ssize_t n_bits):
    cdef Py_ssize_t w = _nwords(n_bits)
    buf = b"".join([int(v).to_bytes(w * 8, "little") for v in values])
    return np.frombuffer(buf, dtype="<u8").astype(np.uint64).reshape(len(values), w)


cdef list _unpack(arr, Py_ssize_t rows):
    cdef Py_ssize_t w = arr.shape[1], step = w * 8, i
    view = memoryview(arr.tobytes())
    return [int.from_bytes(view[i * step:(i + 1) * step], "little") for i in range(rows)]


cdef inline void _set(uint64_t* m, Py_ssize_t w, Py_ssize_t row, Py_ssize_t bit) noexcept nogil:
    m[row * w + (bit >> 6)] |= (<uint64_t>1) << (bit & 63)


cdef inline bint _bit(const uint64_t* v, Py_ssize_t i) noexcept nogil:
    return (v[i >> 6] >> (i & 63)) & 1


cdef inline void _or_row(uint64_t* dst, const uint64_t* src, Py_ssize_t w) noexcept nogil:
    cdef Py_ssize_t k
    for k in range(w):
        dst[k] |= src[k]


cdef void _invert(const int64_t* off, const int64_t* keys, Py_ssize_t n,
                  uint64_t* out, Py_ssize_t w) noexcept nogil:
    # out[key] gets bit a for every argument a listing key
    cdef Py_ssize_t a, j
    for a in range(n):
        for j in range(off[a], off[a + 1]):
            _set(out, w, keys[j], a)


cdef void _gather(const int64_t* off, const int64_t* keys, Py_ssize_t n,
                  const uint64_t* index, uint64_t* out, Py_ssize_t w) noexcept nogil:
    # out[a] = OR of index[key] over the keys of argument a
    cdef Py_ssize_t a, j
    for a in range(n):
        for j in range(off[a], off[a + 1]):
            _or_row(out + a * w, index + keys[j] * w, w)


def defeat_relation(Py_ssize_t n_lits, Py_ssize_t n_pairs, concl, weak, pairs,
                    rebuts, Py_ssize_t empty, thin):
    cdef Py_ssize_t n = len(concl)
    if n == 0:
        return [], [], [], [], []
    cdef Py_ssize_t wn = _nwords(n)
    cdef Py_ssize_t nl = max(n_lits, 1), np_ = max(n_pairs, 1)

    c_off, c_keys = _csr(concl)
    w_off, w_keys = _csr(weak)
    p_off, p_keys = _csr(pairs)
    r_off, r_keys = _csr(rebuts)
    t_off, t_keys = _csr(thin)
    cdef const int64_t* CO = _iptr(c_off)
    cdef const int64_t* CK = _iptr(c_keys)
    cdef const int64_t* WO = _iptr(w_off)
    cdef const int64_t* WK = _iptr(w_keys)
    cdef const int64_t* PO = _iptr(p_off)
    cdef const int64_t* PK = _iptr(p_keys)
    cdef const int64_t* RO = _iptr(r_off)
    cdef const int64_t* RK = _iptr(r_keys)
    cdef const int64_t* TO = _iptr(t_off)
    cdef const int64_t* TK = _iptr(t_keys)
    cdef Py_ssize_t n_rebut_src = len(rebuts)

    concl_by_arr = np.zeros((nl, wn), dtype=np.uint64)
    weak_by_arr = np.zeros((nl, wn), dtype=np.uint64)
    has_pair_arr = np.zeros((np_, wn), dtype=np.uint64)
    rebutted_by_arr = np.zeros((np_, wn), dtype=np.uint64)
    rebut_tgt_arr = np.zeros((np_, wn), dtype=np.uint64)
    uc_col_arr = np.zeros((n, wn), dtype=np.uint64)
    uc_row_arr = np.zeros((n, wn), dtype=np.uint64)
    rb_col_arr = np.zeros((n, wn), dtype=np.uint64)
    rb_row_arr = np.zeros((n, wn), dtype=np.uint64)
    th_col_arr = np.zeros((n, wn), dtype=np.uint64)
    th_row_arr = np.zeros((n, wn), dtype=np.uint64)
    dc_arr = np.zeros((n, wn), dtype=np.uint64)
    dr_arr = np.zeros((n, wn), dtype=np.uint64)
    self_arr = np.zeros(wn, dtype=np.uint64)

    cdef uint64_t* CB = _ptr(concl_by_arr)
    cdef uint64_t* WB = _ptr(weak_by_arr)
    cdef uint64_t* HP = _ptr(has_pair_arr)
    cdef uint64_t* RBY = _ptr(rebutted_by_arr)
    cdef uint64_t* RT = _ptr(rebut_tgt_arr)
    cdef uint64_t* UCC = _ptr(uc_col_arr)
    cdef uint64_t* UCR = _ptr(uc_row_arr)
    cdef uint64_t* RBC = _ptr(rb_col_arr)
    cdef uint64_t* RBR = _ptr(rb_row_arr)
    cdef uint64_t* THC = _ptr(th_col_arr)
    cdef uint64_t* THR = _ptr(th_row_arr)
    cdef uint64_t* DC = _ptr(dc_arr)
    cdef uint64_t* DR = _ptr(dr_arr)
    cdef uint64_t* SELF = _ptr(self_arr)
    cdef Py_ssize_t a, x, p, q, j, k
    cdef uint64_t ebit = 0
    cdef Py_ssize_t eword = 0
    if empty >= 0:
        eword = empty >> 6
        ebit = (<uint64_t>1) << (empty & 63)

    with nogil:
        _invert(CO, CK, n, CB, wn)
        _invert(WO, WK, n, WB, wn)
        _invert(PO, PK, n, HP, wn)
        for p in range(n_rebut_src):
            for j in range(RO[p], RO[p + 1]):
                q = RK[j]
                _or_row(RBY + q * wn, HP + p * wn, wn)
                _or_row(RT + p * wn, HP + q * wn, wn)
        _gather(WO, WK, n, CB, UCC, wn)
        _gather(CO, CK, n, WB, UCR, wn)
        _gather(PO, PK, n, RBY, RBC, wn)
        _gather(PO, PK, n, RT, RBR, wn)
        for a in range(n):
            for j in range(TO[a], TO[a + 1]):
                x = TK[j]
                _set(THC, wn, x, a)
                _set(THR, wn, a, x)
        for x in range(n):
            if _bit(UCC + x * wn, x):
                _set(SELF, wn, 0, x)
        for x in range(n):
            for k in range(wn):
                DC[x * wn + k] = (UCC[x * wn + k] | (RBC[x * wn + k] & ~UCR[x * wn + k])
                                  | THC[x * wn + k])
                DR[x * wn + k] = (UCR[x * wn + k] | (RBR[x * wn + k] & ~UCC[x * wn + k])
                                  | THR[x * wn + k])
            if ebit and _bit(SELF, x):
                DC[x * wn + eword] |= ebit
            if x == empty:
                _or_row(DR + x * wn, SELF, wn)

    return (_unpack(uc_col_arr, n), _unpack(rb_col_arr, n), _unpack(th_col_arr, n),
            _unpack(dc_arr, n), _unpack(dr_arr, n))


cdef void _admit(const uint64_t* D, const uint64_t* cov, uint64_t* out,
                 Py_ssize_t n, Py_ssize_t wn) noexcept nogil:
    cdef Py_ssize_t x, k
    cdef bint ok
    for k in range(wn):
        out[k] = 0
    for x in range(n):
        ok = True
        for k in range(wn):
            if D[x * wn + k] & ~cov[k]:
                ok = False
                break
        if ok:
            out[x >> 6] |= (<uint64_t>1) << (x & 63)


def fixpoint_trace(def_col, strict_row):
    cdef Py_ssize_t n = len(def_col)
    if n == 0:
        return [0]
    cdef Py_ssize_t wn = _nwords(n)
    d_arr = _pack_ints(def_col, n)
    s_arr = _pack_ints(strict_row, n)
    cur_arr = np.zeros(wn, dtype=np.uint64)
    new_arr = np.zeros(wn, dtype=np.uint64)
    cov_arr = np.zeros(wn, dtype=np.uint64)
    cdef const uint64_t* D = _ptr(d_arr)
    cdef const uint64_t* S = _ptr(s_arr)
    cdef uint64_t* cur = _ptr(cur_arr)
    cdef uint64_t* new = _ptr(new_arr)
    cdef uint64_t* cov = _ptr(cov_arr)
    cdef Py_ssize_t x, k
    cdef bint same
    trace = []
    while True:
        with nogil:
            _admit(D, cov, new, n, wn)
            same = True
            for k in range(wn):
                if new[k] != cur[k]:
                    same = False
                    break
        if trace and same:
            return trace
        trace.append(int.from_bytes(new_arr.tobytes(), "little"))
        with nogil:
            for x in range(n):
                if _bit(new, x) and not _bit(cur, x):
                    _or_row(cov, S + x * wn, wn)
            for k in range(wn):
                cur[k] = new[k]


def apply_pi(def_col, strict_row, members):
    cdef Py_ssize_t n = len(def_col)
    if n == 0:
        return 0
    cdef Py_ssize_t wn = _nwords(n)
    d_arr = _pack_ints(def_col, n)
    s_arr = _pack_ints(strict_row, n)
    m_arr = _pack_ints([members], n)
    cov_arr = np.zeros(wn, dtype=np.uint64)
    out_arr = np.zeros(wn, dtype=np.uint64)
    cdef const uint64_t* D = _ptr(d_arr)
    cdef const uint64_t* S = _ptr(s_arr)
    cdef const uint64_t* M = _ptr(m_arr)
    cdef uint64_t* cov = _ptr(cov_arr)
    cdef uint64_t* out = _ptr(out_arr)
    cdef Py_ssize_t x
    with nogil:
        for x in range(n):
            if _bit(M, x):
                _or_row(cov, S + x * wn, wn)
        _admit(D, cov, out, n, wn)
    return int.from_bytes(out_arr.tobytes(), "little")
