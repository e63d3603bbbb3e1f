import random

import pytest
from hypothesis import given, settings

from conftest import random_word, words_over
from kiselman.canonical import canonical_form, canonical_words, is_canonical
from kiselman.errors import ResourceGuardError
from kiselman.sds import reachable_states
from kiselman.universal import (
    PredictedState,
    build_universal,
    exhaustive_words,
    fold_join,
    predicted_state,
    random_words,
    reachability_report,
    reconstruct_canonical,
    star_state,
    verify_isomorphism,
    verify_theorem,
)
from kiselman.words import STAR, head, truncate_set


def test_fold_join_basics():
    assert fold_join([]) == STAR
    assert fold_join([(2, 3)]) == (2, 3)
    assert fold_join([STAR, STAR, STAR]) == STAR
    # vertices 2, 3 of a three-vertex system: [s_3, s_2]
    assert fold_join([(2, 3), (3,)]) == (2, 3)


def test_build_universal_small_state_sets():
    u1 = build_universal(1)
    assert u1.state_sets == (((), (1,)),)
    assert u1.system.vertex_functions[0][()] == (1,)
    u2 = build_universal(2)
    assert u2.state_sets[1] == ((), (2,))
    assert u2.state_sets[0] == ((), (1,), (1, 2))


def test_build_universal_counts_head_one_canonical_words():
    u3 = build_universal(3)
    head_one = [w for w in canonical_words(3, 6) if w and head(w) == 1]
    assert len(u3.state_sets[0]) == len(head_one) + 1


def test_build_universal_tables_close_into_state_sets():
    usys = build_universal(4)
    for v in range(1, 5):
        pool = set(usys.state_sets[v - 1])
        for out in usys.system.vertex_functions[v - 1].values():
            assert out in pool


def test_build_universal_guard():
    with pytest.raises(ResourceGuardError):
        build_universal(7)
    with pytest.raises(ValueError):
        build_universal(0)


def test_predicted_state_examples():
    assert predicted_state((2, 1), 2).components == ((1,), (2,))
    assert predicted_state((1, 2), 2).components == ((1, 2), (2,))
    assert predicted_state(STAR, 3).components == (STAR, STAR, STAR)


@given(words_over(4, 10))
def test_predicted_state_invariants(w):
    for i, p in enumerate(predicted_state(w, 4).components, start=1):
        assert all(x >= i for x in p)
        assert is_canonical(p)


def test_reconstruct_examples():
    assert reconstruct_canonical(PredictedState(((1, 2), (2,)))) == (1, 2)
    assert reconstruct_canonical(((1,), (2,))) == (2, 1)
    assert reconstruct_canonical((STAR, STAR)) == STAR


def test_theorem_exhaustive_small():
    for n in (1, 2, 3):
        report = verify_theorem(n, exhaustive_words(n, 6))
        assert report.ok
        assert report.checked == sum(n ** k for k in range(7))


def test_theorem_randomized_smoke():
    report = verify_theorem(4, random_words(4, 300, 14, seed=5))
    assert report.ok and report.checked == 300


def test_theorem_on_the_empty_word():
    report = verify_theorem(3, [STAR])
    assert report.ok


def test_theorem_verification_reports_counterexamples():
    from kiselman.sds import UpdateSystem
    from kiselman.universal import UniversalSystem

    good = build_universal(2)
    tables = [dict(t) for t in good.system.vertex_functions]
    tables[0][((2,),)] = (1,)  # break f_1 on one argument
    broken = UniversalSystem(
        2, UpdateSystem(good.system.graph, good.state_sets, tables), good.state_sets
    )
    report = verify_theorem(2, exhaustive_words(2, 4), system=broken)
    assert not report.ok
    assert any(ce["kind"] == "vertex-states" for ce in report.counterexamples)
    with pytest.raises(ValueError):
        verify_theorem(3, [STAR], system=good)


@settings(max_examples=80, deadline=None)
@given(words_over(4, 10))
def test_fold_up_to_the_head_already_recovers_the_canonical_form(w):
    usys = _u4()
    evolved = usys.system.evolve(w, star_state(4))
    canw = canonical_form(w)
    if not canw:
        return
    j = head(canw)
    assert fold_join(evolved[:j]) == canw


_U4 = None


def _u4():
    global _U4
    if _U4 is None:
        _U4 = build_universal(4)
    return _U4


@settings(max_examples=80, deadline=None)
@given(words_over(4, 10))
def test_partial_folds_are_truncations(w):
    usys = _u4()
    evolved = usys.system.evolve(w, star_state(4))
    canw = canonical_form(w)
    for k in range(1, 5):
        assert fold_join(evolved[:k]) == truncate_set(canw, range(1, k + 1))


def test_every_reachable_state_is_canonical():
    for n in (2, 3, 4):
        usys = build_universal(n)
        for state in reachable_states(usys.system, star_state(n)):
            for p in state:
                assert is_canonical(p)


def test_reachability_report_counts():
    usys = build_universal(3)
    report = reachability_report(usys)
    assert report.defined_sizes == (6, 3, 2)
    assert all(r <= d for r, d in zip(report.reachable_sizes, report.defined_sizes))
    assert report.reachable_state_count >= 1


def test_isomorphism_small():
    r1 = verify_isomorphism(1, pair_samples=40, seed=3)
    assert r1.ok and r1.kn_size == 2 and r1.dynamics_size == 2
    r2 = verify_isomorphism(2, pair_samples=80, seed=3)
    assert r2.ok and r2.kn_size == 5 and r2.dynamics_size == 5
    r3 = verify_isomorphism(3, pair_samples=80, seed=3)
    assert r3.ok and r3.kn_size == 18 and r3.dynamics_size == 18
    r4 = verify_isomorphism(4, pair_samples=80, seed=3)
    assert r4.ok and r4.kn_size == 115 and r4.dynamics_size == 115


def test_random_words_is_reproducible():
    a = list(random_words(4, 50, 10, seed=9))
    b = list(random_words(4, 50, 10, seed=9))
    assert a == b
    assert all(len(w) <= 10 and all(1 <= x <= 4 for x in w) for w in a)


def test_report_json_rendering():
    report = verify_theorem(2, exhaustive_words(2, 4))
    blob = report.to_json()
    assert blob["n"] == 2 and blob["checked"] == report.checked
    iso = verify_isomorphism(2, pair_samples=10, seed=0)
    blob = iso.to_json()
    assert blob["kn_size"] == blob["dynamics_size"] == 5
