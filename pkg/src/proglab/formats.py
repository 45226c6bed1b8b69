"""Flat-file formats: P1 bitmaps, CSV tables, observation windows.

Every writer takes a ``meta`` mapping that is echoed as comment lines so an
artifact records the configuration that produced it.
"""

from __future__ import annotations

import csv
import io
import json
import re

import numpy as np

from .errors import ValidationError
from .inference import ObservationWindow

PBM_LINE = 70


def meta_lines(meta) -> list[str]:
    if not meta:
        return []
    from . import __version__

    return [f"proglab {__version__}", "config " + json.dumps(meta, sort_keys=True, separators=(",", ":"))]


def pbm_text(bits, meta=None) -> str:
    """ASCII (P1) bitmap, 1 = black, one matrix row per image row."""
    bits = np.atleast_2d(np.asarray(bits, dtype=np.uint8))
    h, w = bits.shape
    out = ["P1"] + [f"# {line}" for line in meta_lines(meta)] + [f"{w} {h}"]
    for row in bits:
        s = "".join("1" if b else "0" for b in row)
        out.extend(s[i:i + PBM_LINE] for i in range(0, len(s), PBM_LINE))
    return "\n".join(out) + "\n"


def read_pbm(text: str) -> np.ndarray:
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    tokens = " ".join(lines).split()
    if not tokens or tokens[0] != "P1":
        raise ValidationError("not a P1 bitmap")
    w, h = int(tokens[1]), int(tokens[2])
    digits = "".join(tokens[3:])
    if len(digits) != w * h or set(digits) - {"0", "1"}:
        raise ValidationError(f"bitmap body has {len(digits)} digits, expected {w * h}")
    return np.frombuffer(digits.encode(), dtype=np.uint8).reshape(h, w) - ord("0")


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".6g")
    return str(value)


def csv_text(header, rows, meta=None) -> str:
    buf = io.StringIO(newline="")
    for line in meta_lines(meta):
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(body))


_HEADER = re.compile(r"^width\s+(\d+)\s+radius\s+(\d+)$")


def parse_window(text: str) -> tuple[ObservationWindow, int]:
    """Parse ``width W radius R`` followed by ``t x v`` lines."""
    header = None
    triples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise ValidationError(f"line {lineno}: expected 'width W radius R', got {line!r}")
            header = int(m.group(1)), int(m.group(2))
            continue
        parts = line.split()
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            raise ValidationError(f"line {lineno}: expected 't x v', got {line!r}")
        triples.append(tuple(int(p) for p in parts))
    if header is None:
        raise ValidationError("window file has no 'width W radius R' header")
    width, radius = header
    if radius not in (1, 2):
        raise ValidationError(f"radius must be 1 or 2, got {radius}")
    return ObservationWindow.from_triples(width, triples), radius


def window_text(window: ObservationWindow, radius: int = 1, meta=None) -> str:
    out = [f"# {line}" for line in meta_lines(meta)]
    out.append(f"width {window.width} radius {radius}")
    out.extend(f"{t} {x} {v}" for (t, x), v in sorted(window.observations.items()))
    return "\n".join(out) + "\n"
