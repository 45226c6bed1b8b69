"""Recovering rules from partial space-time observations.

A cell observed at time t >= 1 whose whole neighborhood was observed at t-1
pins one table entry. Everything else stays free, so the consistent set has
2**free members (or none, if two observations disagree).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .eca import RuleTable, rule_from_code, table_size
from .errors import ValidationError

DE_BRUIJN_3 = (0, 0, 0, 1, 0, 1, 1, 1)


@dataclass(frozen=True)
class ObservationWindow:
    width: int
    observations: dict = field(default_factory=dict)  # (t, x) -> bit

    def __post_init__(self):
        if self.width < 1:
            raise ValidationError(f"width must be positive, got {self.width}")
        for (t, x), v in self.observations.items():
            if t < 0 or not 0 <= x < self.width:
                raise ValidationError(f"observation ({t}, {x}) outside window of width {self.width}")
            if v not in (0, 1):
                raise ValidationError(f"observation ({t}, {x}) has value {v!r}; expected 0 or 1")

    @classmethod
    def from_triples(cls, width: int, triples) -> "ObservationWindow":
        obs = {}
        for t, x, v in triples:
            key = (int(t), int(x))
            if key in obs and obs[key] != int(v):
                raise ValidationError(f"cell (t={key[0]}, x={key[1]}) observed as both 0 and 1")
            obs[key] = int(v)
        return cls(width, obs)

    @classmethod
    def from_rows(cls, rows, times=None) -> "ObservationWindow":
        """Fully observed rows (``times`` picks which rows of ``rows``)."""
        rows = np.asarray(rows)
        times = range(rows.shape[0]) if times is None else times
        obs = {(t, x): int(rows[t, x]) for t in times for x in range(rows.shape[1])}
        return cls(rows.shape[1], obs)

    def without(self, *cells) -> "ObservationWindow":
        obs = dict(self.observations)
        for c in cells:
            obs.pop(tuple(c), None)
        return ObservationWindow(self.width, obs)

    def __len__(self):
        return len(self.observations)


@dataclass(frozen=True)
class ConstraintTable:
    radius: int
    entries: dict  # neighborhood index -> bit
    contradiction: bool = False

    @property
    def free_count(self) -> int:
        return table_size(self.radius) - len(self.entries)


def collect_constraints(window: ObservationWindow, radius: int = 1) -> ConstraintTable:
    if radius not in (1, 2):
        raise ValidationError(f"radius must be 1 or 2, got {radius}")
    obs = window.observations
    w = window.width
    entries: dict[int, int] = {}
    contradiction = False
    for (t, x), v in sorted(obs.items()):
        if t == 0:
            continue
        idx = 0
        for dx in range(-radius, radius + 1):
            prev = obs.get((t - 1, (x + dx) % w))
            if prev is None:
                break
            idx = (idx << 1) | prev
        else:
            seen = entries.setdefault(idx, v)
            if seen != v:
                contradiction = True
    return ConstraintTable(radius, entries, contradiction)


def consistent_count(table: ConstraintTable) -> int:
    return 0 if table.contradiction else 1 << table.free_count


def enumerate_consistent(table: ConstraintTable) -> list[RuleTable]:
    if table.radius != 1:
        raise ValidationError("enumeration is limited to radius 1; use consistent_count for radius 2")
    if table.contradiction:
        return []
    fixed = sum(v << i for i, v in table.entries.items())
    care = sum(1 << i for i in table.entries)
    return [rule_from_code(c) for c in range(256) if c & care == fixed]


def brute_force_consistent(window: ObservationWindow) -> list[int]:
    """Codes of every radius-1 rule reproducing all complete neighborhoods.

    Independent of the constraint table: each rule is tested against the
    window cell by cell.
    """
    obs = window.observations
    w = window.width
    checks = []
    for (t, x), v in obs.items():
        nb = [obs.get((t - 1, (x + dx) % w)) for dx in (-1, 0, 1)] if t else [None]
        if None not in nb:
            checks.append((4 * nb[0] + 2 * nb[1] + nb[2], v))
    return [c for c in range(256) if all((c >> i) & 1 == v for i, v in checks)]


@dataclass(frozen=True)
class Identification:
    verdict: str  # "unique", "ambiguous" or "contradiction"
    candidates: int
    rule: int | None = None

    def __str__(self):
        if self.verdict == "unique":
            return f"unique: {self.rule}"
        if self.verdict == "contradiction":
            return "contradiction"
        return f"ambiguous: {self.candidates} candidates"


def identify(window: ObservationWindow) -> Identification:
    table = collect_constraints(window, 1)
    n = consistent_count(table)
    if table.contradiction:
        return Identification("contradiction", 0)
    if n == 1:
        return Identification("unique", 1, sum(v << i for i, v in table.entries.items()))
    return Identification("ambiguous", n)


def overfit_count(window: ObservationWindow) -> int:
    """Consistent radius-2 rules for the same observations."""
    if window.width < 5:
        raise ValidationError("radius-2 neighborhoods need width >= 5")
    return consistent_count(collect_constraints(window, 2))


def de_bruijn_window(code: int) -> ObservationWindow:
    """Two fully observed rows of ``code`` started from the B(2,3) tape."""
    from .eca import evolve

    rows = evolve(rule_from_code(code), DE_BRUIJN_3, 1).rows
    return ObservationWindow.from_rows(rows)
