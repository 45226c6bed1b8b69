# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: word-parallel stepping and the LZ78 phrase counter."""

import sys

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport calloc, free

cnp.import_array()

NAME = "cython"

ctypedef uint64_t word_t


cdef inline word_t _get_bits(const word_t* ext, Py_ssize_t start) nogil:
    # 64 bits of ext starting at bit ``start``; ext carries one spare word
    cdef Py_ssize_t w = start >> 6
    cdef int s = start & 63
    if s == 0:
        return ext[w]
    return (ext[w] >> s) | (ext[w + 1] << (64 - s))


cdef inline int _get_bit(const word_t* row, Py_ssize_t i) nogil:
    return <int>((row[i >> 6] >> (i & 63)) & 1)


cdef inline void _set_bit(word_t* row, Py_ssize_t i) nogil:
    row[i >> 6] |= (<word_t>1) << (i & 63)


def evolve(table, int radius, row0, Py_ssize_t steps):
    """Evolve ``row0`` for ``steps`` steps; returns a (steps+1, width) uint8 matrix."""
    cdef const cnp.uint8_t[::1] tab = np.ascontiguousarray(table, dtype=np.uint8)
    cdef const cnp.uint8_t[::1] r0 = np.ascontiguousarray(row0, dtype=np.uint8)
    cdef Py_ssize_t width = r0.shape[0]
    cdef int n = 2 * radius + 1
    cdef int ntab = 1 << n
    cdef Py_ssize_t nwords = (width + 63) >> 6
    cdef Py_ssize_t ext_bits = width + 2 * radius
    cdef Py_ssize_t ext_words = ((ext_bits + 63) >> 6) + 1
    packed_arr = np.zeros((steps + 1, nwords), dtype=np.uint64)
    cdef uint64_t[:, ::1] packed = packed_arr
    cdef word_t* row = <word_t*>calloc(nwords, sizeof(word_t))
    cdef word_t* ext = <word_t*>calloc(ext_words, sizeof(word_t))
    cdef word_t nb[32]
    cdef int terms[32]
    cdef int nterms = 0, ones = 0, invert, idx, j, i
    cdef Py_ssize_t x, k, t
    cdef word_t acc, m, last_mask
    if row == NULL or ext == NULL:
        free(row)
        free(ext)
        raise MemoryError()
    for i in range(ntab):
        ones += tab[i]
    invert = 1 if 2 * ones > ntab else 0
    for i in range(ntab):
        if tab[i] != invert:
            terms[nterms] = i
            nterms += 1
    last_mask = (~(<word_t>0)) if (width & 63) == 0 else (((<word_t>1) << (width & 63)) - 1)
    with nogil:
        for x in range(width):
            if r0[x]:
                _set_bit(row, x)
        for k in range(nwords):
            packed[0, k] = row[k]
        for t in range(1, steps + 1):
            # ext bit i holds cell (i - radius) mod width
            for k in range(ext_words):
                ext[k] = 0
                if k < nwords:
                    ext[k] = row[k] << radius
                if 0 < k <= nwords:
                    ext[k] |= row[k - 1] >> (64 - radius)
            for x in range(radius):
                if _get_bit(row, width - radius + x):
                    _set_bit(ext, x)
                if _get_bit(row, x):
                    _set_bit(ext, width + radius + x)
            for k in range(nwords):
                for j in range(n):
                    nb[j] = _get_bits(ext, (k << 6) + j)
                acc = 0
                for i in range(nterms):
                    idx = terms[i]
                    m = ~(<word_t>0)
                    for j in range(n):
                        if (idx >> (n - 1 - j)) & 1:
                            m &= nb[j]
                        else:
                            m &= ~nb[j]
                    acc |= m
                if invert:
                    acc = ~acc
                row[k] = acc
            row[nwords - 1] &= last_mask
            for k in range(nwords):
                packed[t, k] = row[k]
    free(row)
    free(ext)
    if sys.byteorder != "little":
        packed_arr = packed_arr.byteswap()
    out = np.unpackbits(packed_arr.view(np.uint8), axis=1, bitorder="little")
    return np.ascontiguousarray(out[:, :width])


def lz78_cost(bits):
    """Return (phrase_count, bit_length) of the binary LZ78 parse of ``bits``."""
    cdef const cnp.uint8_t[::1] src = np.ascontiguousarray(bits, dtype=np.uint8)
    cdef Py_ssize_t n = src.shape[0]
    # a binary trie over at most n + 1 nodes; child[2*node + bit], 0 = absent
    cdef int64_t* child = <int64_t*>calloc(2 * (n + 1), sizeof(int64_t))
    cdef int64_t node = 0, nodes = 1, phrases = 0, nxt
    cdef Py_ssize_t i
    cdef int b
    if child == NULL and n > 0:
        raise MemoryError()
    with nogil:
        for i in range(n):
            b = src[i] & 1
            nxt = child[2 * node + b]
            if nxt == 0:
                child[2 * node + b] = nodes
                nodes += 1
                phrases += 1
                node = 0
            else:
                node = nxt
        if node != 0:
            phrases += 1
    free(child)
    return phrases, phrase_cost(phrases)


cpdef long long phrase_cost(long long m):
    """Sum over j=1..m of ceil(log2 j) + 1."""
    cdef long long total = m, k = 0, lo = 1, hi = 1, top
    while lo <= m:
        top = hi if hi < m else m
        total += k * (top - lo + 1)
        lo = hi + 1
        hi *= 2
        k += 1
    return total
