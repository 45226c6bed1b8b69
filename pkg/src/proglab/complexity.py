"""LZ78 over {0,1} with an idealised cost model, and block entropy.

Phrase ``j`` (1-based) costs ``ceil(log2 j)`` index bits plus one bit that is
either the next symbol or, for a final phrase that repeats an existing one,
an end flag.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import CorruptStreamError, ValidationError

END = None  # symbol slot of a trailing phrase that matched an existing entry


def _bits(bits) -> np.ndarray:
    if isinstance(bits, str):
        if set(bits) - {"0", "1"}:
            raise ValidationError("bit strings may only contain '0' and '1'")
        return np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0")
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValidationError("bits must be 0 or 1")
    return arr


def phrase_cost(count: int) -> int:
    return _backend.get("python").phrase_cost(count)


@dataclass(frozen=True)
class CodewordStream:
    phrases: tuple[tuple[int, int | None], ...]

    @property
    def bit_length(self) -> int:
        return phrase_cost(len(self.phrases))

    def __len__(self):
        return len(self.phrases)


@dataclass(frozen=True)
class CompressionReport:
    raw_bits: int
    compressed_bits: int

    @property
    def ratio(self) -> float:
        return self.compressed_bits / self.raw_bits if self.raw_bits else 0.0


def lz78_compress(bits) -> CodewordStream:
    src = _bits(bits).tolist()
    table: dict[tuple[int, int], int] = {}
    phrases = []
    node = 0
    for b in src:
        nxt = table.get((node, b))
        if nxt is None:
            phrases.append((node, b))
            table[(node, b)] = len(phrases)
            node = 0
        else:
            node = nxt
    if node:
        phrases.append((node, END))
    return CodewordStream(tuple(phrases))


def lz78_decompress(stream: CodewordStream) -> str:
    words = [""]
    out = []
    for j, (index, symbol) in enumerate(stream.phrases, start=1):
        if not 0 <= index < j:
            raise CorruptStreamError(f"phrase {j} references index {index}; only 0..{j - 1} exist")
        if symbol is END:
            if j != len(stream.phrases) or index == 0:
                raise CorruptStreamError(f"end flag on phrase {j} is not a valid trailing phrase")
            word = words[index]
        elif symbol in (0, 1):
            word = words[index] + str(symbol)
        else:
            raise CorruptStreamError(f"phrase {j} has symbol {symbol!r}")
        words.append(word)
        out.append(word)
    return "".join(out)


def lz78_length(bits, backend: str | None = None) -> int:
    """Compressed size in bits without materialising the phrase list."""
    return _backend.get(backend).lz78_cost(_bits(bits))[1]


def compression_ratio(bits, backend: str | None = None) -> CompressionReport:
    arr = _bits(bits)
    return CompressionReport(arr.size, lz78_length(arr, backend) if arr.size else 0)


def block_entropy(bits, k: int) -> float:
    """Entropy of overlapping ``k``-blocks, in bits per symbol."""
    arr = _bits(bits)
    if k < 1:
        raise ValidationError(f"block size must be >= 1, got {k}")
    if k > arr.size:
        raise ValidationError(f"block size {k} exceeds sequence length {arr.size}")
    n = arr.size - k + 1
    if k <= 62:
        weights = 1 << np.arange(k - 1, -1, -1, dtype=np.int64)
        blocks = np.lib.stride_tricks.sliding_window_view(arr.astype(np.int64), k) @ weights
        _, counts = np.unique(blocks, return_counts=True)
    else:
        counts = np.array(list(Counter(arr[i:i + k].tobytes() for i in range(n)).values()))
    p = counts / n
    return float(-(p * np.log2(p)).sum()) / k + 0.0


SERIALIZATIONS = ("diagram", "rows", "center-column")


def serialize(diagram, mode: str = "diagram", include_input: bool = True) -> list[np.ndarray]:
    """Bit sequences to compress for a diagram.

    ``diagram`` flattens row-major (time-major); ``rows`` yields each row
    separately; ``center-column`` yields the middle column. With
    ``include_input=False`` row 0 is dropped.
    """
    rows = getattr(diagram, "rows", diagram)
    if not include_input:
        rows = rows[1:]
    if mode == "diagram":
        return [rows.ravel()]
    if mode == "rows":
        return list(rows)
    if mode == "center-column":
        return [rows[:, rows.shape[1] // 2]]
    raise ValidationError(f"unknown serialization {mode!r}; use diagram, rows or center-column")


def diagram_complexity(diagram, mode: str = "diagram", include_input: bool = True,
                       backend: str | None = None) -> int:
    """Total compressed bits of ``diagram`` under ``mode``."""
    return sum(lz78_length(part, backend) for part in serialize(diagram, mode, include_input))
