"""Elementary (radius 1) and radius-2 binary cellular automata on cyclic tapes."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import ValidationError

RADII = (1, 2)


def table_size(radius: int) -> int:
    return 1 << (2 * radius + 1)


def _check_radius(radius: int) -> None:
    if radius not in RADII:
        raise ValidationError(f"radius must be one of {RADII}, got {radius}")


@dataclass(frozen=True)
class RuleTable:
    """A local rule; ``table[i]`` is the output for neighborhood value ``i``.

    Neighborhoods are read big-endian, so for radius 1 the triple
    (left, center, right) has index ``4*left + 2*center + right``.
    """

    radius: int
    code: int
    table: np.ndarray = field(repr=False, compare=False)

    def __post_init__(self):
        self.table.setflags(write=False)

    def __call__(self, neighborhood: int) -> int:
        return int(self.table[neighborhood])


def rule_from_code(code: int, radius: int = 1) -> RuleTable:
    _check_radius(radius)
    size = table_size(radius)
    code = int(code)
    if not 0 <= code < (1 << size):
        raise ValidationError(f"rule code must satisfy 0 <= code < 2**{size}, got {code}")
    table = np.array([(code >> i) & 1 for i in range(size)], dtype=np.uint8)
    return RuleTable(radius, code, table)


def code_of(table, radius: int = 1) -> int:
    bits = np.asarray(table, dtype=np.uint8)
    if bits.shape != (table_size(radius),):
        raise ValidationError(f"table for radius {radius} needs {table_size(radius)} entries")
    return sum(int(b) << i for i, b in enumerate(bits))


def rule_transforms(rule: RuleTable) -> dict[str, RuleTable]:
    """Left-right mirror and 0/1 complement of ``rule``."""
    n = 2 * rule.radius + 1
    size = table_size(rule.radius)
    full = size - 1
    mirror = [0] * size
    complement = [0] * size
    for i in range(size):
        rev = int(format(i, f"0{n}b")[::-1], 2)
        mirror[rev] = rule(i)
        complement[full ^ i] = 1 - rule(i)
    return {
        "mirror": rule_from_code(code_of(mirror, rule.radius), rule.radius),
        "complement": rule_from_code(code_of(complement, rule.radius), rule.radius),
    }


def as_config(cells, radius: int = 1) -> np.ndarray:
    """Validate a tape and return it as a read-only uint8 array."""
    arr = np.array(cells, dtype=np.int64).ravel()
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValidationError("cells must be 0 or 1")
    if arr.size < 2 * radius + 1:
        raise ValidationError(f"width must be at least {2 * radius + 1} for radius {radius}, got {arr.size}")
    out = arr.astype(np.uint8)
    out.setflags(write=False)
    return out


def single_seed(width: int, position: int | None = None) -> np.ndarray:
    """All-zero tape with one live cell (centered by default)."""
    cells = np.zeros(width, dtype=np.uint8)
    cells[width // 2 if position is None else position] = 1
    return cells


@dataclass(frozen=True)
class SpaceTimeDiagram:
    rule: RuleTable
    rows: np.ndarray = field(repr=False)

    @property
    def steps(self) -> int:
        return self.rows.shape[0] - 1

    @property
    def width(self) -> int:
        return self.rows.shape[1]

    def __eq__(self, other):
        if not isinstance(other, SpaceTimeDiagram):
            return NotImplemented
        return self.rule.code == other.rule.code and self.rule.radius == other.rule.radius \
            and np.array_equal(self.rows, other.rows)

    __hash__ = None


def evolve(rule: RuleTable, config, steps: int, backend: str | None = None) -> SpaceTimeDiagram:
    if steps < 0:
        raise ValidationError(f"steps must be >= 0, got {steps}")
    cells = as_config(config, rule.radius)
    rows = _backend.get(backend).evolve(rule.table, rule.radius, cells, int(steps))
    rows.setflags(write=False)
    return SpaceTimeDiagram(rule, rows)


def step(rule: RuleTable, config, backend: str | None = None) -> np.ndarray:
    return evolve(rule, config, 1, backend).rows[1]


def center_column(diagram: SpaceTimeDiagram, column: int | None = None) -> np.ndarray:
    if column is None:
        if diagram.width % 2 == 0:
            raise ValidationError(f"width {diagram.width} is even; pass an explicit column")
        column = diagram.width // 2
    if not 0 <= column < diagram.width:
        raise ValidationError(f"column {column} outside [0, {diagram.width})")
    return diagram.rows[:, column].copy()
