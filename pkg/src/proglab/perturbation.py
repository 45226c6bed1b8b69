"""Damage spreading: flip input cells and follow the XOR of two evolutions."""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .eca import RuleTable, SpaceTimeDiagram, as_config, evolve
from .errors import ValidationError

EXTINCT = "extinct"
BOUNDED = "bounded"
SPREADING = "spreading"


def flip(config, indices) -> np.ndarray:
    cells = np.array(config, dtype=np.uint8)
    idx = sorted(set(int(i) for i in indices))
    for i in idx:
        if not 0 <= i < cells.size:
            raise ValidationError(f"flip index {i} outside [0, {cells.size})")
    cells[idx] ^= 1
    return cells


def difference_diagram(a: SpaceTimeDiagram, b: SpaceTimeDiagram) -> np.ndarray:
    ra = a.rows if isinstance(a, SpaceTimeDiagram) else np.asarray(a)
    rb = b.rows if isinstance(b, SpaceTimeDiagram) else np.asarray(b)
    if ra.shape != rb.shape:
        raise ValidationError(f"diagram shapes differ: {ra.shape} vs {rb.shape}")
    return ra ^ rb


@dataclass(frozen=True)
class DamageProfile:
    origin: int
    hamming: np.ndarray
    left_front: np.ndarray   # NaN where a row carries no damage
    right_front: np.ndarray
    speed: float
    outcome: str
    wrapped: bool

    @property
    def final_hamming(self) -> int:
        return int(self.hamming[-1])


def damage_profile(diff, origin: int, radius: int = 1) -> DamageProfile:
    """Summarise a difference diagram around the flip site ``origin``.

    Front positions are signed offsets from ``origin``. Offsets are taken
    inside the light cone ``[-r*t, r*t]`` while that cone fits on the tape;
    past that point the fronts may have met around the ring and ``wrapped``
    is set.
    """
    diff = np.asarray(diff, dtype=np.uint8)
    if diff.ndim != 2 or diff.shape[0] < 2:
        raise ValidationError("difference diagram needs at least two rows")
    steps = diff.shape[0] - 1
    width = diff.shape[1]
    if not diff[0].any():
        raise ValidationError("no initial damage to track")
    if not 0 <= origin < width:
        raise ValidationError(f"origin {origin} outside [0, {width})")
    hamming = diff.sum(axis=1).astype(np.int64)
    left = np.full(steps + 1, np.nan)
    right = np.full(steps + 1, np.nan)
    # initial damage may be several cells; size the cone from its span
    half = (width - 1) // 2
    initial = ((np.flatnonzero(diff[0]) - origin + half) % width) - half
    spread0 = int(np.abs(initial).max())
    wrapped = False
    for t in range(steps + 1):
        pos = np.flatnonzero(diff[t])
        if pos.size == 0:
            continue
        reach = spread0 + radius * t
        if 2 * reach + 1 <= width:
            off = ((pos - origin + reach) % width) - reach
        else:
            wrapped = True
            off = ((pos - origin + half) % width) - half
        left[t] = off.min()
        right[t] = off.max()
    if hamming[-1] == 0:
        outcome = EXTINCT
        speed = 0.0
    else:
        speed = float((right[-1] - right[0]) / steps)
        tail = math.ceil(steps / 2)
        extent = (right - left)[steps - tail:]
        growing = bool(np.all(np.diff(extent) >= 0)) and extent[-1] > extent[0]
        outcome = SPREADING if growing else BOUNDED
    return DamageProfile(origin, hamming, left, right, speed, outcome, wrapped)


def perturbation_scan(rule: RuleTable, base, steps: int, sites=None) -> list[DamageProfile]:
    """One damage profile per single-cell flip, ordered by site."""
    if steps < 1:
        raise ValidationError(f"steps must be >= 1, got {steps}")
    base = as_config(base, rule.radius)
    reference = evolve(rule, base, steps)
    sites = range(base.size) if sites is None else sites
    out = []
    for site in sites:
        other = evolve(rule, flip(base, [site]), steps)
        out.append(damage_profile(difference_diagram(reference, other), site, rule.radius))
    return out
