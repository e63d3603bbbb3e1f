"""The universal update system on the complete acyclic graph.

On the graph with n vertices and edges i -> j for i < j, give vertex i the
word-valued state set

    S_n     = {STAR, a_n}
    S_(n-1) = {STAR, a_(n-1), a_(n-1) a_n}
    S_i     = {STAR} + a_i . [S_n, [ ... , [S_(i+2), S_(i+1)] ... ]]

(the bracket set taken elementwise over argument tuples), and the vertex
function

    f_i(s_(i+1), ..., s_n) = a_i . [s_n, [ ... , [s_(i+2), s_(i+1)] ... ]].

The single formula covers the base cases: the empty fold is STAR, so
f_n = a_n is constant and f_(n-1)(s_n) = a_(n-1) s_n.

Evolving the all-STAR state by a schedule word w fills vertex i with
``canonical_form_restricted(truncate(w, i), i)``, and folding the reached
states with joins recovers the canonical form of w itself; two schedule
words therefore induce the same dynamics exactly when their canonical forms
agree, which makes the dynamics monoid of this system a faithful copy of
Kiselman's monoid K_n.  ``verify_theorem`` and ``verify_isomorphism``
machine-check those statements on word samples.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from collections.abc import Iterable, Iterator, Sequence

from .canonical import (
    canonical_form,
    canonical_form_restricted,
    enumerate_kn,
    random_fiber_word,
)
from .errors import ResourceGuardError
from .sds import UpdateSystem, complete_dag, reachable_states
from .words import STAR, Word, format_word, join, truncate, truncate_set


def fold_join(states: Sequence[Word]) -> Word:
    """Right fold of the join over states listed in ascending vertex order.

    ``(s_(i+1), ..., s_n)`` folds to ``[s_n, [ ..., [s_(i+2), s_(i+1)] ... ]]``;
    the empty fold is STAR and a single state folds to itself.
    """
    acc = STAR
    for k, s in enumerate(states):
        acc = s if k == 0 else join(s, acc)
    return acc


@dataclass(frozen=True)
class UniversalSystem:
    n: int
    system: UpdateSystem
    state_sets: tuple[tuple[Word, ...], ...]


@dataclass(frozen=True)
class PredictedState:
    """The vertex states a schedule word must produce from all-STAR."""

    components: tuple[Word, ...]


def star_state(n: int) -> tuple[Word, ...]:
    return (STAR,) * n


def build_universal(n: int, max_alphabet: int = 6) -> UniversalSystem:
    """Materialise the state sets and tables of the universal system.

    The sets are built exactly as defined, top vertex first; whether every
    listed state is reachable from all-STAR is reported separately by
    ``reachability_report`` and asserted nowhere.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    if n > max_alphabet:
        raise ResourceGuardError(
            f"universal system on {n} vertices exceeds the configured maximum {max_alphabet}"
        )
    pools: list[tuple[Word, ...] | None] = [None] * n
    tables: list[dict] = [dict() for _ in range(n)]
    for v in range(n, 0, -1):
        arg_pools = [pools[j - 1] for j in range(v + 1, n + 1)]
        table = {}
        words = {STAR}
        for args in itertools.product(*arg_pools):
            out = (v,) + fold_join(args)
            table[args] = out
            words.add(out)
        pools[v - 1] = tuple(sorted(words, key=lambda w: (len(w), w)))
        tables[v - 1] = table
    state_sets = tuple(pools)  # type: ignore[arg-type]
    system = UpdateSystem(complete_dag(n), state_sets, tables)
    return UniversalSystem(n, system, state_sets)


def predicted_state(w: Word, n: int) -> PredictedState:
    """Vertex i holds the restricted canonical form of the i-truncation of w."""
    return PredictedState(
        tuple(canonical_form_restricted(truncate(w, i), i) for i in range(1, n + 1))
    )


def reconstruct_canonical(p: PredictedState | Sequence[Word]) -> Word:
    """Fold the vertex states back into one word: [p_n, [..., [p_2, p_1]...]]."""
    components = p.components if isinstance(p, PredictedState) else tuple(p)
    return fold_join(components)


def exhaustive_words(n: int, max_len: int) -> Iterator[Word]:
    alphabet = range(1, n + 1)
    for length in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


def random_words(n: int, count: int, max_len: int, seed: int) -> Iterator[Word]:
    rng = random.Random(seed)
    for _ in range(count):
        length = rng.randint(0, max_len)
        yield tuple(rng.randint(1, n) for _ in range(length))


@dataclass
class TheoremReport:
    n: int
    checked: int
    counterexamples: list[dict]

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self, style: str = "letters") -> dict:
        return {
            "n": self.n,
            "checked": self.checked,
            "counterexamples": [
                {**ce, "word": format_word(ce["word"], style)}
                for ce in self.counterexamples
            ],
        }


def verify_theorem(n: int, words: Iterable[Word],
                   system: UniversalSystem | None = None,
                   max_counterexamples: int = 20) -> TheoremReport:
    """Check, word by word, that the universal system computes canonical forms.

    For each word w: (a) evolving all-STAR matches the predicted vertex
    states; (b) folding the evolved states reproduces canonical_form(w);
    (c) every partial fold over vertices 1..k equals the {1..k}-truncation
    of canonical_form(w).
    """
    usys = system if system is not None else build_universal(n)
    if usys.n != n:
        raise ValueError("system size does not match n")
    sysm = usys.system
    star = star_state(n)
    checked = 0
    counterexamples: list[dict] = []

    def note(w, kind, **extra):
        if len(counterexamples) < max_counterexamples:
            counterexamples.append({"word": w, "kind": kind, **extra})

    for w in words:
        checked += 1
        evolved = sysm.evolve(w, star)
        pred = predicted_state(w, n).components
        if evolved != pred:
            note(w, "vertex-states")
            continue
        canw = canonical_form(w)
        if reconstruct_canonical(evolved) != canw:
            note(w, "reconstruction")
            continue
        acc = evolved[0]
        for k in range(1, n + 1):
            if k > 1:
                acc = join(evolved[k - 1], acc)
            if acc != truncate_set(canw, range(1, k + 1)):
                note(w, "partial-fold", k=k)
                break
    return TheoremReport(n, checked, counterexamples)


@dataclass
class IsoReport:
    n: int
    kn_size: int
    dynamics_size: int
    checked: int
    counterexamples: list[dict]

    @property
    def ok(self) -> bool:
        return self.kn_size == self.dynamics_size and not self.counterexamples

    def to_json(self, style: str = "letters") -> dict:
        return {
            "n": self.n,
            "kn_size": self.kn_size,
            "dynamics_size": self.dynamics_size,
            "checked": self.checked,
            "counterexamples": [
                {
                    "left": format_word(ce["left"], style),
                    "right": format_word(ce["right"], style),
                    "kind": ce["kind"],
                }
                for ce in self.counterexamples
            ],
        }


def verify_isomorphism(n: int, pair_samples: int = 200, seed: int = 0,
                       max_states: int = 10 ** 6,
                       max_size: int = 10 ** 6) -> IsoReport:
    """Compare |D| with |K_n| and spot-check F_u = F_v iff Can u = Can v.

    Half of the sampled pairs share a class by construction (random
    class-preserving edits), the other half are independent words.
    """
    usys = build_universal(n)
    monoid = usys.system.dynamics_monoid(max_size=max_size, max_states=max_states)
    kn = enumerate_kn(n)
    rng = random.Random(seed)
    counterexamples: list[dict] = []
    max_len = 2 * n + 4
    for t in range(pair_samples):
        lu = rng.randint(0, max_len)
        u = tuple(rng.randint(1, n) for _ in range(lu))
        if t % 2 == 0:
            v = random_fiber_word(u, rng, edits=4)
        else:
            lv = rng.randint(0, max_len)
            v = tuple(rng.randint(1, n) for _ in range(lv))
        same_map = usys.system.evolution_table(u, max_states) == \
            usys.system.evolution_table(v, max_states)
        same_can = canonical_form(u) == canonical_form(v)
        if same_map != same_can:
            counterexamples.append({"left": u, "right": v,
                                    "kind": "map-vs-canonical"})
    return IsoReport(n, len(kn), monoid.size, pair_samples, counterexamples)


@dataclass(frozen=True)
class ReachabilityReport:
    n: int
    defined_sizes: tuple[int, ...]
    reachable_sizes: tuple[int, ...]
    reachable_state_count: int


def reachability_report(usys: UniversalSystem) -> ReachabilityReport:
    """Count, per vertex, the defined states versus those reachable from all-STAR."""
    reached = reachable_states(usys.system, star_state(usys.n))
    per_vertex = [set() for _ in range(usys.n)]
    for state in reached:
        for v, tok in enumerate(state):
            per_vertex[v].add(tok)
    return ReachabilityReport(
        usys.n,
        tuple(len(s) for s in usys.state_sets),
        tuple(len(s) for s in per_vertex),
        len(reached),
    )
