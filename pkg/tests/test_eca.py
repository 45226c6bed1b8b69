import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from proglab.eca import (
    as_config,
    center_column,
    code_of,
    evolve,
    rule_from_code,
    rule_transforms,
    single_seed,
    step,
)
from proglab.errors import ValidationError

from conftest import naive_evolve


def test_rule_30_table():
    assert rule_from_code(30).table[::-1].tolist() == [0, 0, 0, 1, 1, 1, 1, 0]


def test_rule_0_table_is_zero():
    assert not rule_from_code(0).table.any()


def test_rule_204_is_identity():
    rule = rule_from_code(204)
    for left in (0, 1):
        for center in (0, 1):
            for right in (0, 1):
                assert rule(4 * left + 2 * center + right) == center


@pytest.mark.parametrize("code,radius", [(-1, 1), (256, 1), (2**32, 2), (5, 3), (5, 0)])
def test_rule_from_code_rejects(code, radius):
    with pytest.raises(ValidationError):
        rule_from_code(code, radius)


def test_bound_named_in_error():
    with pytest.raises(ValidationError, match=r"2\*\*8"):
        rule_from_code(256)


@given(st.integers(0, 255))
def test_round_trip_r1(code):
    assert code_of(rule_from_code(code).table) == code


@given(st.integers(0, 2**32 - 1))
def test_round_trip_r2(code):
    rule = rule_from_code(code, 2)
    assert rule.table.size == 32
    assert code_of(rule.table, 2) == code


def test_rule_30_single_seed_step(backend):
    row = step(rule_from_code(30), single_seed(11), backend)
    assert np.flatnonzero(row).tolist() == [4, 5, 6]


@pytest.mark.parametrize("code,expected", [(30, [1, 1, 0, 0, 1]), (22, [1, 0, 0, 0, 1])])
def test_second_row(code, expected, backend):
    d = evolve(rule_from_code(code), single_seed(11), 2, backend)
    assert d.rows[1, 4:7].tolist() == [1, 1, 1]
    assert d.rows[2, 3:8].tolist() == expected
    assert d.rows[2].sum() == sum(expected)


def test_zero_steps():
    tape = single_seed(9)
    d = evolve(rule_from_code(110), tape, 0)
    assert d.rows.shape == (1, 9)
    assert np.array_equal(d.rows[0], tape)


def test_negative_steps():
    with pytest.raises(ValidationError):
        evolve(rule_from_code(30), single_seed(9), -1)


@pytest.mark.parametrize("width,radius", [(2, 1), (4, 2)])
def test_width_below_neighborhood(width, radius):
    with pytest.raises(ValidationError):
        step(rule_from_code(0, radius), np.zeros(width))


def test_non_binary_cells():
    with pytest.raises(ValidationError):
        as_config([0, 1, 2, 0])


def test_constant_and_identity_rules(rng):
    tape = rng.integers(0, 2, 37)
    assert np.array_equal(step(rule_from_code(204), tape), tape)
    assert not step(rule_from_code(0), tape).any()
    assert step(rule_from_code(255), tape).all()


@pytest.mark.parametrize("width", [3, 5, 8, 63, 64, 65, 100, 128, 129, 257])
@pytest.mark.parametrize("radius", [1, 2])
def test_matches_naive_evolution(width, radius, backend, rng):
    if width < 2 * radius + 1:
        pytest.skip("too narrow")
    for _ in range(10):
        code = int(rng.integers(0, 1 << (1 << (2 * radius + 1))))
        row = rng.integers(0, 2, width).astype(np.uint8)
        got = evolve(rule_from_code(code, radius), row, 12, backend).rows
        assert np.array_equal(got, naive_evolve(code, radius, row, 12))


def test_backends_agree(rng):
    from proglab import _backend

    if len(_backend.BACKENDS) < 2:
        pytest.skip("compiled extension not built")
    for code in range(256):
        row = rng.integers(0, 2, 150).astype(np.uint8)
        a = evolve(rule_from_code(code), row, 20, "python").rows
        b = evolve(rule_from_code(code), row, 20, "cython").rows
        assert np.array_equal(a, b)


def test_determinism(rng):
    row = rng.integers(0, 2, 101)
    a = evolve(rule_from_code(110), row, 50)
    b = evolve(rule_from_code(110), row, 50)
    assert a == b


def _relabel(code, f):
    """Brute-force transform: new_table[f(i)] = g(old_table[i])."""
    out = 0
    for i in range(8):
        j, bit = f(i, (code >> i) & 1)
        out |= bit << j
    return out


def test_mirror_and_complement_codes():
    mirror = lambda i, b: (int(format(i, "03b")[::-1], 2), b)
    complement = lambda i, b: (7 - i, 1 - b)
    assert _relabel(30, mirror) == 86
    assert _relabel(30, complement) == 135
    t = rule_transforms(rule_from_code(30))
    assert t["mirror"].code == 86
    assert t["complement"].code == 135
    assert rule_transforms(rule_from_code(204))["mirror"].code == 204
    for code in range(256):
        t = rule_transforms(rule_from_code(code))
        assert t["mirror"].code == _relabel(code, mirror)
        assert t["complement"].code == _relabel(code, complement)


def test_symmetry_commutation_all_rules(rng):
    for code in range(256):
        rule = rule_from_code(code)
        t = rule_transforms(rule)
        for _ in range(3):
            tape = rng.integers(0, 2, 9).astype(np.uint8)
            base = evolve(rule, tape, 10).rows
            mirrored = evolve(t["mirror"], tape[::-1], 10).rows
            flipped = evolve(t["complement"], 1 - tape, 10).rows
            assert np.array_equal(mirrored, base[:, ::-1])
            assert np.array_equal(flipped, 1 - base)


def test_transforms_r2_are_involutions():
    for code in (0, 1, 0xDEADBEEF, 2**32 - 1, 123456789):
        rule = rule_from_code(code, 2)
        t = rule_transforms(rule)
        assert rule_transforms(t["mirror"])["mirror"].code == code
        assert rule_transforms(t["complement"])["complement"].code == code


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 255), st.integers(0, 2**21 - 1), st.integers(0, 20))
def test_light_cone(code, tape_bits, site):
    width, steps = 21, 8
    tape = np.array([(tape_bits >> i) & 1 for i in range(width)], dtype=np.uint8)
    other = tape.copy()
    other[site] ^= 1
    rule = rule_from_code(code)
    diff = evolve(rule, tape, steps).rows ^ evolve(rule, other, steps).rows
    for t in range(steps + 1):
        for x in np.flatnonzero(diff[t]):
            d = min((x - site) % width, (site - x) % width)
            assert d <= t


def test_center_column():
    tape = single_seed(9)
    assert center_column(evolve(rule_from_code(0), tape, 3)).tolist() == [1, 0, 0, 0]
    assert center_column(evolve(rule_from_code(204), tape, 3)).tolist() == [1, 1, 1, 1]
    assert center_column(evolve(rule_from_code(30), single_seed(11), 4)).tolist() == [1, 1, 0, 1, 1]


def test_center_column_even_width():
    d = evolve(rule_from_code(30), single_seed(10), 3)
    with pytest.raises(ValidationError):
        center_column(d)
    assert center_column(d, 5).tolist() == d.rows[:, 5].tolist()


def test_diagram_is_read_only():
    d = evolve(rule_from_code(30), single_seed(11), 2)
    with pytest.raises(ValueError):
        d.rows[0, 0] = 1
