import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import is_canonical_all_spans, random_order_normal_form, random_word, words_over
from kiselman.canonical import (
    StepKind,
    StepSite,
    apply_step,
    canonical_form,
    canonical_form_restricted,
    canonical_words,
    eligible_steps,
    enumerate_kn,
    find_step,
    is_canonical,
    is_special,
    multiply,
    random_fiber_word,
    same_kn_element,
)
from kiselman.errors import ResourceGuardError
from kiselman.words import STAR, delete, is_quasi_subword, parse_word, truncate

W = parse_word


def test_is_special_examples():
    assert is_special((2, 1, 3, 2), 0, 3)
    assert not is_special((1, 2, 1), 0, 2)
    assert not is_special((2, 3, 2), 0, 2)
    with pytest.raises(ValueError):
        is_special((1, 2), 0, 1)


def test_is_canonical_examples():
    assert not is_canonical((1, 2, 1))
    assert is_canonical((2, 1, 3, 2))
    assert is_canonical(STAR)
    assert is_canonical((3,))


@given(words_over(4, 9))
def test_is_canonical_matches_the_all_spans_check(w):
    assert is_canonical(w) == is_canonical_all_spans(w)


def test_apply_step_on_the_worked_sequence():
    w = W("bdbcdabcdc")
    w = apply_step(w, StepSite(4, 8, StepKind.ALL_SMALLER))
    assert w == W("bdbcabcdc")
    w = apply_step(w, StepSite(1, 7, StepKind.ALL_SMALLER))
    assert w == W("bbcabcdc")
    w = apply_step(w, StepSite(0, 1, StepKind.ADJACENT))
    assert w == W("bcabcdc")


def test_apply_step_rejects_bad_sites():
    with pytest.raises(ValueError):
        apply_step((1, 2, 3), StepSite(0, 2, StepKind.ALL_LARGER))  # ends differ
    with pytest.raises(ValueError):
        apply_step((2, 1, 2), StepSite(0, 2, StepKind.ALL_LARGER))  # 1 < 2
    with pytest.raises(ValueError):
        apply_step((1, 2, 1), StepSite(0, 2, StepKind.ALL_SMALLER))
    with pytest.raises(ValueError):
        apply_step((1, 2, 1), StepSite(0, 2, StepKind.ADJACENT))


def test_find_step_examples():
    assert find_step((1, 2, 1)) == StepSite(0, 2, StepKind.ALL_LARGER)
    assert find_step((1, 1)) == StepSite(0, 1, StepKind.ADJACENT)
    assert find_step((2, 1, 3, 2)) is None


@given(words_over(5, 12))
def test_find_step_none_means_canonical(w):
    site = find_step(w)
    if site is None:
        assert is_canonical(w)
    else:
        shorter = apply_step(w, site)
        assert len(shorter) == len(w) - 1
        assert is_quasi_subword(shorter, w)


def test_canonical_form_examples():
    assert canonical_form((1, 2, 1)) == (1, 2)
    assert canonical_form((2, 1, 2)) == (1, 2)
    assert canonical_form(W("bdbcdabcdc")) == W("abcd")
    assert canonical_form(STAR) == STAR
    assert canonical_form((2, 1, 3, 2)) == (2, 1, 3, 2)


def test_random_order_simplification_agrees_on_the_worked_example():
    rng = random.Random(7)
    for _ in range(60):
        assert random_order_normal_form(W("bdbcdabcdc"), rng) == W("abcd")


def test_confluence_on_random_words():
    rng = random.Random(99)
    for _ in range(400):
        n = rng.randint(1, 6)
        w = random_word(rng, n, 12)
        assert random_order_normal_form(w, rng) == canonical_form(w)


@given(words_over(5, 12))
def test_canonical_form_properties(w):
    c = canonical_form(w)
    assert is_canonical(c)
    assert canonical_form(c) == c
    assert is_quasi_subword(c, w)
    assert set(c) == set(w)


@given(words_over(5, 12))
def test_extreme_letters_appear_at_most_once(w):
    c = canonical_form(w)
    if c:
        assert c.count(min(c)) == 1
        assert c.count(max(c)) == 1


def test_canonical_form_restricted_examples():
    assert canonical_form_restricted((1, 2, 1, 2), 2) == (2,)
    w = W("bdbcdabcdc")
    assert canonical_form_restricted(w, 1) == canonical_form(w)
    assert canonical_form_restricted((1, 1, 2), 3) == STAR


@given(words_over(5, 10), st.integers(1, 5))
def test_restriction_commutes_with_truncation(w, i):
    left = truncate(canonical_form_restricted(w, i), i)
    right = canonical_form_restricted(truncate(w, i), i)
    assert left == right


@given(words_over(5, 10), st.integers(1, 5))
def test_restriction_is_blind_to_simplification(w, k):
    c = canonical_form(w)
    restricted = canonical_form_restricted(w, k)
    assert restricted == canonical_form_restricted(c, k)
    assert is_quasi_subword(restricted, c)


@given(words_over(5, 8), words_over(5, 8))
def test_reduction_is_constant_on_products(u, v):
    c = canonical_form(u + v)
    assert c == canonical_form(canonical_form(u) + v)
    assert c == canonical_form(u + canonical_form(v))
    assert c == canonical_form(canonical_form(u) + canonical_form(v))


@given(st.integers(2, 5), words_over(5, 8))
def test_outside_letters_pass_through_reduction(h, u):
    # words over [h, k] prefixed by a letter outside the band
    k = 5
    u = tuple(x for x in u if h <= x <= k)
    for j in list(range(1, h)) + [6]:
        assert canonical_form((j,) + u) == (j,) + canonical_form(u)
        assert is_canonical((j,) + u) == is_canonical(u)


def test_multiply_examples():
    assert multiply((1,), (1,)) == (1,)
    assert multiply((1, 2), (1,)) == (1, 2)
    assert multiply((2, 1), (2,)) == (1, 2)


def test_same_kn_element():
    assert same_kn_element((1, 2, 1), (2, 1, 2))
    assert not same_kn_element((1, 2), (2, 1))
    assert same_kn_element((2, 1, 2), (2, 1, 2))


@given(words_over(4, 10))
def test_fiber_edits_stay_in_the_fiber(w):
    rng = random.Random(17)
    v = random_fiber_word(w, rng, edits=5)
    assert canonical_form(v) == canonical_form(w)


def test_enumerate_kn_small():
    k1 = enumerate_kn(1)
    assert {e.canon for e in k1} == {STAR, (1,)}
    k2 = enumerate_kn(2)
    assert {e.canon for e in k2} == {STAR, (1,), (2,), (1, 2), (2, 1)}
    assert len(k2) == 5


def test_enumerate_kn_guards():
    with pytest.raises(ResourceGuardError):
        enumerate_kn(8)
    with pytest.raises(ResourceGuardError):
        enumerate_kn(4, max_elements=20)
    with pytest.raises(ValueError):
        enumerate_kn(0)


def test_enumerate_kn_matches_direct_generation():
    for n in (3, 4):
        monoid = enumerate_kn(n)
        margin = monoid.max_word_length + 2
        direct = set(canonical_words(n, margin))
        assert direct == {e.canon for e in monoid}
        assert max(len(w) for w in direct) == monoid.max_word_length


def test_monoid_is_closed_under_multiplication():
    monoid = enumerate_kn(3)
    for a in monoid:
        for b in monoid:
            c = monoid.multiply(a, b)
            assert c.canon == canonical_form(a.canon + b.canon)
    idem = monoid.identity
    assert all(monoid.multiply(idem, e) == e for e in monoid)


def test_canonical_words_contain_generators_and_identity():
    k3 = enumerate_kn(3)
    canons = {e.canon for e in k3}
    assert STAR in canons
    assert all((g,) in canons for g in (1, 2, 3))


def test_canonical_form_is_the_unique_shortest_in_its_fiber():
    """Group all words over 4 letters of length <= 8 by canonical form."""
    fibers = {}
    for length in range(9):
        for w in itertools.product((1, 2, 3, 4), repeat=length):
            fibers.setdefault(canonical_form(w), []).append(w)
    for canon, members in fibers.items():
        shortest = min(len(w) for w in members)
        assert len(canon) == shortest
        assert sum(1 for w in members if len(w) == shortest) == 1


def test_prefix_survives_removing_a_bottom_letter():
    """If u.a1.v is canonical, reducing u.v keeps u as a prefix."""
    rng = random.Random(3)
    seen = 0
    while seen < 150:
        c = canonical_form(random_word(rng, 4, 10))
        if 1 not in c:
            continue
        seen += 1
        p = c.index(1)
        u, v = c[:p], c[p + 1:]
        assert canonical_form(u + v)[:len(u)] == u


@settings(max_examples=60)
@given(words_over(5, 10), st.data())
def test_restricted_reduction_preserves_canonicity_after_a_low_letter(w, data):
    c = canonical_form(w)
    spots = [p for p, j in enumerate(c) if p > 0 and min(c[:p]) > j]
    if not spots:
        return
    p = data.draw(st.sampled_from(spots))
    j = c[p]
    u, v = c[:p], c[p + 1:]
    k = data.draw(st.integers(j + 1, min(u)))
    assert is_canonical(u + (j,) + canonical_form_restricted(v, k))
