# cython: language_level=3, boundscheck=False, wraparound=False
"""Bit-level kernels over alpha planes, compiled edition.

Same signatures and semantics as _kernels_py; see that module for the
contract. Alpha planes arrive as bytes/bytearray, mutating kernels require
a writable buffer (bytearray).
"""

ELIGIBLE_MIN = 2

cdef unsigned char _ELIGIBLE_MIN = 2


def count_eligible(const unsigned char[::1] alpha) -> int:
    cdef Py_ssize_t i, n = alpha.shape[0]
    cdef Py_ssize_t count = 0
    for i in range(n):
        if alpha[i] >= _ELIGIBLE_MIN:
            count += 1
    return count


def eligible_indices(const unsigned char[::1] alpha) -> list:
    cdef Py_ssize_t i, n = alpha.shape[0]
    out = []
    for i in range(n):
        if alpha[i] >= _ELIGIBLE_MIN:
            out.append(i)
    return out


def write_lsbs(unsigned char[::1] alpha, const unsigned char[::1] data,
               Py_ssize_t bit_start, Py_ssize_t max_bits) -> int:
    cdef Py_ssize_t i, n = alpha.shape[0]
    cdef Py_ssize_t pos = bit_start
    cdef Py_ssize_t end = bit_start + max_bits
    cdef unsigned char a, bit
    for i in range(n):
        if pos >= end:
            break
        a = alpha[i]
        if a >= _ELIGIBLE_MIN:
            bit = (data[pos >> 3] >> (7 - (pos & 7))) & 1
            alpha[i] = (a & 0xFE) | bit
            pos += 1
    return pos - bit_start


def read_lsbs(const unsigned char[::1] alpha, unsigned char[::1] out,
              Py_ssize_t bit_start, Py_ssize_t max_bits) -> int:
    cdef Py_ssize_t i, n = alpha.shape[0]
    cdef Py_ssize_t pos = bit_start
    cdef Py_ssize_t end = bit_start + max_bits
    cdef unsigned char a
    for i in range(n):
        if pos >= end:
            break
        a = alpha[i]
        if a >= _ELIGIBLE_MIN:
            if a & 1:
                out[pos >> 3] |= 1 << (7 - (pos & 7))
            pos += 1
    return pos - bit_start


def lsb_counts(const unsigned char[::1] alpha) -> tuple:
    cdef Py_ssize_t i, n = alpha.shape[0]
    cdef Py_ssize_t zeros = 0, ones = 0
    cdef unsigned char a
    for i in range(n):
        a = alpha[i]
        if a >= _ELIGIBLE_MIN:
            if a & 1:
                ones += 1
            else:
                zeros += 1
    return zeros, ones


def alpha_histogram(const unsigned char[::1] alpha) -> list:
    cdef Py_ssize_t i, n = alpha.shape[0]
    cdef Py_ssize_t[256] counts
    for i in range(256):
        counts[i] = 0
    for i in range(n):
        counts[alpha[i]] += 1
    return [counts[i] for i in range(256)]


def randomize_lsbs(unsigned char[::1] alpha, const unsigned char[::1] randbits) -> int:
    cdef Py_ssize_t i, n = alpha.shape[0]
    cdef Py_ssize_t pos = 0
    cdef unsigned char a, bit
    for i in range(n):
        a = alpha[i]
        if a >= _ELIGIBLE_MIN:
            bit = (randbits[pos >> 3] >> (7 - (pos & 7))) & 1
            alpha[i] = (a & 0xFE) | bit
            pos += 1
    return pos


def normalize_extremes(unsigned char[::1] alpha) -> int:
    cdef Py_ssize_t i, n = alpha.shape[0]
    cdef Py_ssize_t changed = 0
    cdef unsigned char a
    for i in range(n):
        a = alpha[i]
        if a == 1:
            alpha[i] = 0
            changed += 1
        elif a == 254:
            alpha[i] = 255
            changed += 1
    return changed


def classify_diff(const unsigned char[::1] cover, const unsigned char[::1] suspect,
                  Py_ssize_t cap) -> tuple:
    cdef Py_ssize_t i, base, n = cover.shape[0] // 4
    cdef Py_ssize_t lsb = 0, other = 0, rgb = 0
    cdef int delta
    indices = []
    for i in range(n):
        base = 4 * i
        if (cover[base] == suspect[base]
                and cover[base + 1] == suspect[base + 1]
                and cover[base + 2] == suspect[base + 2]):
            if cover[base + 3] == suspect[base + 3]:
                continue
            delta = cover[base + 3] - suspect[base + 3]
            if delta == 1 or delta == -1:
                lsb += 1
            else:
                other += 1
        else:
            rgb += 1
        if len(indices) < cap:
            indices.append(i)
    return lsb, other, rgb, indices
