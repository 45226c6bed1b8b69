
import numpy as np
import pytest

from proglab.eca import evolve, rule_from_code, single_seed
from proglab.errors import ValidationError
from proglab.inference import (
    DE_BRUIJN_3,
    ConstraintTable,
    ObservationWindow,
    brute_force_consistent,
    collect_constraints,
    consistent_count,
    de_bruijn_window,
    enumerate_consistent,
    identify,
    overfit_count,
)
from proglab.rng import Xoshiro256


def rule30_rows():
    return evolve(rule_from_code(30), single_seed(11), 1).rows


def random_window(g, width=None):
    width = width or 3 + g.next_u64() % 10
    steps = 1 + g.next_u64() % 3
    code = g.next_u64() % 256
    rows = evolve(rule_from_code(code), g.bits(width), steps).rows
    keep = g.random()
    obs = {(t, x): int(rows[t, x]) for t in range(steps + 1) for x in range(width) if g.random() < keep}
    # occasional observation noise
    if obs and g.random() < 0.3:
        key = sorted(obs)[g.next_u64() % len(obs)]
        obs[key] ^= 1
    return ObservationWindow(width, obs), code


def test_de_bruijn_sequence():
    tape = DE_BRUIJN_3
    triples = {tuple(tape[(i + k) % 8] for k in range(3)) for i in range(8)}
    assert len(triples) == 8


def test_rule30_single_seed_constraints():
    table = collect_constraints(ObservationWindow.from_rows(rule30_rows()))
    assert sorted(table.entries) == [0, 1, 2, 4]
    assert table.free_count == 4
    assert consistent_count(table) == 16
    codes = [r.code for r in enumerate_consistent(table)]
    assert len(codes) == 16 and 30 in codes
    assert codes == sorted(codes)


def test_empty_window():
    table = collect_constraints(ObservationWindow(8))
    assert table.entries == {} and table.free_count == 8
    assert consistent_count(table) == 256
    assert [r.code for r in enumerate_consistent(table)] == list(range(256))
    assert overfit_count(ObservationWindow(8)) == 2**32


def test_flipped_center_excludes_rule30():
    rows = rule30_rows().copy()
    rows[1, 5] ^= 1
    window = ObservationWindow.from_rows(rows)
    table = collect_constraints(window)
    assert not table.contradiction
    assert table.entries[0b010] == 0
    codes = [r.code for r in enumerate_consistent(table)]
    assert len(codes) == 16 and 30 not in codes
    assert codes == brute_force_consistent(window)


def test_contradiction():
    # 000 -> 0 at x=0 and 000 -> 1 at x=4 on an all-zero row
    obs = {(0, x): 0 for x in range(8)}
    obs[(1, 0)] = 0
    obs[(1, 4)] = 1
    table = collect_constraints(ObservationWindow(8, obs))
    assert table.contradiction
    assert consistent_count(table) == 0
    assert enumerate_consistent(table) == []
    assert identify(ObservationWindow(8, obs)).verdict == "contradiction"
    assert overfit_count(ObservationWindow(8, obs)) == 0


def test_conflicting_duplicate_rejected():
    with pytest.raises(ValidationError):
        ObservationWindow.from_triples(8, [(0, 1, 0), (0, 1, 1)])
    with pytest.raises(ValidationError):
        ObservationWindow(8, {(0, 8): 1})
    with pytest.raises(ValidationError):
        ObservationWindow(8, {(0, 1): 2})


def test_consistent_count_values():
    assert consistent_count(ConstraintTable(1, {i: 0 for i in range(8)})) == 1
    assert consistent_count(ConstraintTable(1, {i: 0 for i in range(4)})) == 16
    assert consistent_count(ConstraintTable(1, {}, contradiction=True)) == 0


def test_enumerate_radius2_unsupported():
    with pytest.raises(ValidationError):
        enumerate_consistent(ConstraintTable(2, {}))


def test_de_bruijn_identifies_every_rule():
    for code in range(256):
        window = de_bruijn_window(code)
        assert len(window) == 16
        result = identify(window)
        assert result.verdict == "unique" and result.rule == code
        assert [r.code for r in enumerate_consistent(collect_constraints(window))] == [code]
        for x in range(8):
            assert identify(window.without((1, x))).candidates == 2


def test_all_zero_row_is_uninformative():
    for code in (0, 30, 110, 255):
        window = ObservationWindow.from_rows(evolve(rule_from_code(code), np.zeros(8), 1).rows)
        table = collect_constraints(window)
        assert list(table.entries) == [0]
        assert identify(window).candidates >= 128


def test_overfit_count_de_bruijn():
    window = de_bruijn_window(30)
    r2 = collect_constraints(window, 2)
    assert len(r2.entries) <= 8
    assert overfit_count(window) == 2 ** (32 - len(r2.entries))
    assert overfit_count(window) >= 2**24


def test_oracle_equivalence_fuzz():
    g = Xoshiro256(0xC0FFEE)
    for _ in range(1000):
        window, _ = random_window(g)
        table = collect_constraints(window)
        brute = brute_force_consistent(window)
        assert consistent_count(table) == len(brute)
        assert [r.code for r in enumerate_consistent(table)] == brute


def test_more_observations_never_help_count_grow():
    g = Xoshiro256(0xBEEF)
    for _ in range(300):
        window, _ = random_window(g)
        cells = sorted(window.observations)
        sub = window.without(*cells[: g.next_u64() % (len(cells) + 1)])
        assert consistent_count(collect_constraints(window)) <= consistent_count(collect_constraints(sub))
        if window.width >= 5:
            assert overfit_count(window) <= overfit_count(sub)


def test_generator_soundness():
    g = Xoshiro256(5)
    for code in range(256):
        rows = evolve(rule_from_code(code), g.bits(12), 3).rows
        table = collect_constraints(ObservationWindow.from_rows(rows))
        assert not table.contradiction
        assert code in [r.code for r in enumerate_consistent(table)]


def test_fewer_than_eight_first_row_cells_leave_ambiguity():
    # the constrained-entry count depends only on which t=0 cells are seen and their values
    for mask in range(255):
        seen = [x for x in range(8) if mask >> x & 1]
        for tape_bits in range(256):
            tape = [(tape_bits >> i) & 1 for i in range(8)]
            obs = {(0, x): tape[x] for x in seen}
            obs.update({(1, x): 0 for x in range(8)})
            table = collect_constraints(ObservationWindow(8, obs))
            assert len(table.entries) <= len(seen)
            assert consistent_count(table) >= 2
