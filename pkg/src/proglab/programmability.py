"""Compression-based interrogation of a rule over an ensemble of inputs.

Each input tape is a question; the answer is the evolution that follows it
(rows 1..T, the input row itself excluded). Variability V is the coefficient of variation of the compressed output
sizes, controllability S the Spearman correlation between compressed input
and output sizes, and programmability P = V * S. V and S are clamped to
[0, 1].
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import math

import numpy as np

from .complexity import diagram_complexity, lz78_length
from .eca import RuleTable, as_config, evolve, rule_from_code
from .errors import ValidationError
from .rng import Xoshiro256

DEFAULT_SEED = 0x5EED
DEFAULT_DENSITIES = tuple(round(0.1 * i, 1) for i in range(1, 10))
MIN_ENSEMBLE = 3


@dataclass(frozen=True)
class EnsembleSpec:
    width: int = 256
    densities: tuple[float, ...] = DEFAULT_DENSITIES
    samples_per_density: int = 8
    seed: int = DEFAULT_SEED
    mirror_closed: bool = True

    def __post_init__(self):
        d = tuple(float(x) for x in self.densities)
        object.__setattr__(self, "densities", d)
        if not d:
            raise ValidationError("at least one density is required")
        if any(not 0.0 <= x <= 1.0 for x in d):
            raise ValidationError(f"densities must lie in [0, 1], got {d}")
        if any(b <= a for a, b in zip(d, d[1:])):
            raise ValidationError(f"densities must be strictly ascending, got {d}")
        if self.samples_per_density < 1:
            raise ValidationError("samples_per_density must be >= 1")
        if self.width < 3:
            raise ValidationError("width must be >= 3")
        if not 0 <= self.seed < 1 << 64:
            raise ValidationError("seed must be an unsigned 64-bit integer")

    @property
    def size(self) -> int:
        return len(self.densities) * self.samples_per_density


def build_ensemble(spec: EnsembleSpec) -> list[np.ndarray]:
    """Seeded random tapes, ``samples_per_density`` per density.

    With ``mirror_closed`` each density block holds ``ceil(n/2)`` draws
    followed by the reversals of the first ``floor(n/2)`` of them.
    """
    rng = Xoshiro256(spec.seed)
    tapes = []
    n = spec.samples_per_density
    for d in spec.densities:
        if spec.mirror_closed:
            drawn = [np.array(rng.bits(spec.width, d), dtype=np.uint8) for _ in range(n - n // 2)]
            block = drawn + [t[::-1].copy() for t in drawn[: n // 2]]
        else:
            block = [np.array(rng.bits(spec.width, d), dtype=np.uint8) for _ in range(n)]
        tapes.extend(block)
    return tapes


def variability(output_c) -> float:
    x = np.asarray(output_c, dtype=float)
    if x.size < MIN_ENSEMBLE:
        raise ValidationError(f"variability needs at least {MIN_ENSEMBLE} values, got {x.size}")
    mean = x.mean()
    if mean == 0:
        return 0.0
    return float(min(1.0, x.std() / mean))


def average_ranks(values) -> np.ndarray:
    """1-based ranks with ties sharing the mean of their positions."""
    x = np.asarray(values, dtype=float)
    order = np.argsort(x, kind="stable")
    ranks = np.empty(x.size)
    sx = x[order]
    i = 0
    while i < x.size:
        j = i
        while j + 1 < x.size and sx[j + 1] == sx[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def spearman(a, b) -> float:
    """Spearman's rho (Pearson correlation of average ranks); NaN on zero variance."""
    ra, rb = average_ranks(a), average_ranks(b)
    if ra.size != rb.size:
        raise ValidationError("rank correlation needs paired samples")
    da, db = ra - ra.mean(), rb - rb.mean()
    denom = math.sqrt(float((da * da).sum()) * float((db * db).sum()))
    if denom == 0:
        return math.nan
    return float((da * db).sum()) / denom


def controllability(input_c, output_c) -> float:
    if len(input_c) != len(output_c):
        raise ValidationError(f"length mismatch: {len(input_c)} inputs, {len(output_c)} outputs")
    if len(input_c) < MIN_ENSEMBLE:
        raise ValidationError(f"controllability needs at least {MIN_ENSEMBLE} pairs")
    rho = spearman(input_c, output_c)
    if math.isnan(rho):
        return 0.0
    return max(0.0, min(1.0, rho))


@dataclass(frozen=True)
class BehaviouralProfile:
    rule_code: int
    input_c: tuple[int, ...] = field(repr=False)
    output_c: tuple[int, ...] = field(repr=False)
    variability: float
    controllability: float

    @property
    def programmability(self) -> float:
        return self.variability * self.controllability

    def as_dict(self) -> dict:
        return {
            "rule": self.rule_code,
            "V": self.variability,
            "S": self.controllability,
            "P": self.programmability,
            "input_c": list(self.input_c),
            "output_c": list(self.output_c),
        }


def profile_from_lengths(rule_code: int, input_c, output_c) -> BehaviouralProfile:
    return BehaviouralProfile(
        rule_code,
        tuple(int(v) for v in input_c),
        tuple(int(v) for v in output_c),
        variability(output_c),
        controllability(input_c, output_c),
    )


def interrogate(rule: RuleTable, spec: EnsembleSpec, steps: int, serialize: str = "diagram",
                ensemble=None) -> BehaviouralProfile:
    if steps < 1:
        raise ValidationError(f"steps must be >= 1, got {steps}")
    tapes = build_ensemble(spec) if ensemble is None else [as_config(t, rule.radius) for t in ensemble]
    if len(tapes) < MIN_ENSEMBLE:
        raise ValidationError(f"ensemble has {len(tapes)} members; need at least {MIN_ENSEMBLE}")
    input_c = [lz78_length(t) for t in tapes]
    output_c = [diagram_complexity(evolve(rule, t, steps), serialize, include_input=False) for t in tapes]
    return profile_from_lengths(rule.code, input_c, output_c)


def _profile_job(args):
    code, radius, spec, steps, serialize = args
    return interrogate(rule_from_code(code, radius), spec, steps, serialize)


def rank_profiles(profiles) -> list[BehaviouralProfile]:
    return sorted(profiles, key=lambda p: (-p.programmability, p.rule_code))


def classify(rule_codes, spec: EnsembleSpec, steps: int, serialize: str = "diagram",
             radius: int = 1, workers: int | None = 1) -> list[BehaviouralProfile]:
    """Profiles for ``rule_codes`` ranked by P descending, then rule code."""
    codes = list(rule_codes)
    if not codes:
        raise ValidationError("no rules to classify")
    jobs = [(c, radius, spec, steps, serialize) for c in codes]
    if workers == 1 or len(codes) == 1:
        profiles = [_profile_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            profiles = list(pool.map(_profile_job, jobs))
    return rank_profiles(profiles)
