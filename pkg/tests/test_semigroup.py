"""tests/test_semigroup.py - Words, schedules, word evaluation and abelian evidence."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from map_expr.map_expr import IntervalBox2
from semigroup.semigroup import (IDENTITY, GeneratorSystem, Word, abelian_evidence, apply_word,
    check_abelian_sampled, enumerate_words, expand_schedule, format_word, is_forward_invariant_sampled,
    orbit_points, parse_word, word_box_image)
from utils.errors import BudgetExceeded, ConfigError, PreconditionError


def test_enumeration_order_identity_first():
    words = enumerate_words(2, 2)
    assert [w.indices for w in words] == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
    assert words[0] == IDENTITY and words[0].is_identity


def test_enumeration_caps():
    with pytest.raises(BudgetExceeded):
        enumerate_words(2, 11)
    with pytest.raises(BudgetExceeded):
        enumerate_words(10, 7)
    with pytest.raises(ConfigError):
        enumerate_words(2, -1)


def test_word_counts_and_text():
    w = Word((1, 0, 0))
    assert w.count(0) == 2 and w.counts[1] == 1
    assert format_word(w) == "[1,0,0]"
    assert parse_word("[1,0,0]") == w
    assert Word((1,)) * Word((0,)) == Word((1, 0))


@pytest.mark.parametrize("text", ["[1,", "{}", "[true]", "[0.5]"])
def test_parse_word_rejects_malformed(text):
    with pytest.raises(ConfigError):
        parse_word(text)


def test_parse_word_checks_index_range():
    with pytest.raises(ConfigError) as info:
        parse_word([0, 2], 2, "h")
    assert info.value.field == "h"


def test_schedule_all_k():
    words = expand_schedule("all:2", 2)
    assert len(words) == 6
    assert all(not w.is_identity for w in words)


@pytest.mark.parametrize("spec", ["all:0", "all:x", "some:2", [], [[]], [[2]]])
def test_schedule_errors_name_the_field(spec):
    with pytest.raises(ConfigError) as info:
        expand_schedule(spec, 2)
    assert info.value.field == "g_schedule"


def test_explicit_schedule():
    assert expand_schedule([[0], [1, 0]], 2) == [Word((0,)), Word((1, 0))]


def test_rightmost_generator_acts_first():
    sys = GeneratorSystem.from_sources(["z^2", "z + 1"])
    assert apply_word(sys, Word((1, 0)), 2) == 5
    assert apply_word(sys, Word((0, 1)), 2) == 9
    assert apply_word(sys, IDENTITY, 2) == 2


def test_bad_word_index():
    sys = GeneratorSystem.from_sources(["z^2"])
    with pytest.raises(PreconditionError):
        apply_word(sys, Word((1,)), 0.5)


def test_generator_errors_name_the_index():
    with pytest.raises(ConfigError) as info:
        GeneratorSystem.from_sources(["z^2", "z/2"])
    assert info.value.field == "generators[1]"
    with pytest.raises(ConfigError):
        GeneratorSystem.from_sources([])


def test_orbit_points_size(powers):
    pts = orbit_points(powers, 0.5, 2)
    assert pts.size == 1 + 2 + 4
    assert pts[0] == 0.5
    assert np.isclose(pts[1], 0.25) and np.isclose(pts[2], 0.125)


def test_word_box_image_of_fourth_power():
    sys = GeneratorSystem.from_sources(["z^2"])
    b = word_box_image(sys, Word((0, 0)), IntervalBox2(0.5, 0.6, 0.0, 0.0))
    assert b.re_lo <= 0.0625 and b.re_hi >= 0.1296


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=4), st.floats(-1.0, 0.9), st.floats(-1.0, 0.9),
       st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_word_enclosure_contains_point_image(indices, x0, y0, tx, ty):
    sys = GeneratorSystem.from_sources(["z^2 + 0.25*z", "0.5*z - i"])
    b = IntervalBox2(x0, x0 + 0.1, y0, y0 + 0.1)
    p = complex(min(x0 + 0.1 * tx, b.re_hi), min(y0 + 0.1 * ty, b.im_hi))
    w = Word(tuple(indices))
    assert word_box_image(sys, w, b).contains_point(apply_word(sys, w, p))


def test_commuting_powers_pass(powers):
    ev = abelian_evidence(powers, 500, seed=3)
    assert ev.passed and ev.samples == 500
    assert ev.max_defect <= ev.tolerance


def test_non_commuting_maps_fail():
    sys = GeneratorSystem.from_sources(["z^2", "z + 1"])
    ev = abelian_evidence(sys, 200, seed=1)
    assert not ev.passed
    assert ev.worst_pair == [0, 1]
    assert not check_abelian_sampled(sys, 200)


def test_single_generator_is_trivially_abelian():
    sys = GeneratorSystem.from_sources(["0.5*z"])
    assert check_abelian_sampled(sys, 10)


def test_closed_disc_is_forward_invariant(powers):
    rng = np.random.default_rng(5)
    x, y = rng.uniform(-1.2, 1.2, (2, 2000))
    unit = lambda a, b: np.hypot(a, b) <= 1.0
    assert is_forward_invariant_sampled(powers, unit, x, y)
    shifted = GeneratorSystem.from_sources(["z^2", "z + 0.5"])
    assert not is_forward_invariant_sampled(shifted, unit, x, y)
