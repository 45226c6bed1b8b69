"""Pure-Python kernels.

Rows are packed into Python integers (bit x of the int is cell x) so a step
is a handful of big-integer operations regardless of width.
"""

import numpy as np

NAME = "python"


def _pack(row):
    bits = np.asarray(row, dtype=np.uint8)
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _unpack(word, width):
    nbytes = (width + 7) // 8
    raw = np.frombuffer(word.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:width]


def _rotate(word, shift, width, mask):
    """Cell x of the result holds cell (x + shift) mod width of ``word``."""
    shift %= width
    if shift == 0:
        return word
    return ((word >> shift) | (word << (width - shift))) & mask


def evolve(table, radius, row0, steps):
    """Evolve ``row0`` for ``steps`` steps; returns a (steps+1, width) uint8 matrix."""
    table = [int(b) for b in np.asarray(table, dtype=np.uint8)]
    width = len(row0)
    mask = (1 << width) - 1
    n = 2 * radius + 1
    out = np.empty((steps + 1, width), dtype=np.uint8)
    out[0] = row0
    word = _pack(row0)
    # minterm expansion over whichever polarity has fewer terms
    ones = [i for i, b in enumerate(table) if b]
    invert = len(ones) * 2 > len(table)
    terms = [i for i, b in enumerate(table) if b != invert]
    for t in range(1, steps + 1):
        # neighbor j (0 = leftmost) of cell x is cell x + j - radius
        nb = [_rotate(word, j - radius, width, mask) for j in range(n)]
        acc = 0
        for idx in terms:
            m = mask
            for j in range(n):
                bit = (idx >> (n - 1 - j)) & 1
                m &= nb[j] if bit else ~nb[j]
            acc |= m
        word = (acc ^ mask) if invert else acc
        out[t] = _unpack(word, width)
    return out


def lz78_cost(bits):
    """Return (phrase_count, bit_length) of the binary LZ78 parse of ``bits``."""
    children = {}
    node = 0
    nodes = 1
    phrases = 0
    for b in np.asarray(bits, dtype=np.uint8).tolist():
        key = (node << 1) | b
        nxt = children.get(key)
        if nxt is None:
            children[key] = nodes
            nodes += 1
            phrases += 1
            node = 0
        else:
            node = nxt
    if node != 0:
        phrases += 1
    return phrases, phrase_cost(phrases)


def phrase_cost(m):
    """Sum over j=1..m of ceil(log2 j) + 1."""
    total = m
    k, lo, hi = 0, 1, 1
    # ceil(log2 j) == k on [lo, hi]
    while lo <= m:
        total += k * (min(m, hi) - lo + 1)
        lo, hi, k = hi + 1, hi * 2, k + 1
    return total
