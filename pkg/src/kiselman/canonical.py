"""Canonical forms in Kiselman's monoid K_n.

K_n is the monoid on idempotent generators a_1, ..., a_n subject to

    a_i a_j a_i = a_j a_i a_j = a_i a_j      whenever i < j.

A factor ``a_i u a_i`` of a word is *special* when ``u`` contains both a
strictly smaller and a strictly larger letter than ``i``.  A word is
*canonical* when all its factors of that shape are special; every word can
be rewritten to a unique canonical word in its congruence class by repeatedly
dropping one of two equal letters:

* ``ADJACENT``     -- the two equal letters touch; drop the right one;
* ``ALL_LARGER``   -- everything between is strictly larger; drop the right;
* ``ALL_SMALLER``  -- everything between is strictly smaller; drop the left.

Any order of application reaches the same normal form, so a fixed scan
strategy (leftmost pair first) makes ``canonical_form`` deterministic, and
randomised strategies are used as a test oracle.

Canonicity only needs to be checked on consecutive occurrences of each
letter: between two non-consecutive equal letters there is a whole
consecutive pair, whose mixed in-between letters already witness speciality.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from collections.abc import Iterator

from .errors import ResourceGuardError
from .words import STAR, Word, delete


class StepKind(enum.Enum):
    ADJACENT = 1
    ALL_LARGER = 2
    ALL_SMALLER = 3


@dataclass(frozen=True)
class StepSite:
    """A pair of equal letters at 0-based positions ``left < right``."""

    left: int
    right: int
    kind: StepKind


def is_special(w: Word, left: int, right: int) -> bool:
    """Is the factor ``w[left..right]`` (equal endpoints) special?"""
    if not 0 <= left < right < len(w):
        raise ValueError(f"bad span ({left}, {right}) for a word of length {len(w)}")
    a = w[left]
    if w[right] != a:
        raise ValueError("span endpoints carry different letters")
    seg = w[left + 1:right]
    return any(x > a for x in seg) and any(x < a for x in seg)


def is_canonical(w: Word) -> bool:
    n = len(w)
    for left in range(n - 1):
        a = w[left]
        try:
            right = w.index(a, left + 1)
        except ValueError:
            continue
        if right == left + 1:
            return False
        seg = w[left + 1:right]
        if min(seg) > a or max(seg) < a:
            return False
    return True


def _site_at(w: Word, left: int) -> StepSite | None:
    """Eligible site whose left endpoint is ``left``, if any.

    Only the consecutive occurrence pair can be eligible: a repeated letter
    inside the gap is neither larger nor smaller than itself.
    """
    a = w[left]
    try:
        right = w.index(a, left + 1)
    except ValueError:
        return None
    if right == left + 1:
        return StepSite(left, right, StepKind.ADJACENT)
    seg = w[left + 1:right]
    if min(seg) > a:
        return StepSite(left, right, StepKind.ALL_LARGER)
    if max(seg) < a:
        return StepSite(left, right, StepKind.ALL_SMALLER)
    return None


def find_step(w: Word) -> StepSite | None:
    """Leftmost eligible site, or None iff ``w`` is canonical."""
    for left in range(len(w) - 1):
        site = _site_at(w, left)
        if site is not None:
            return site
    return None


def eligible_steps(w: Word) -> list[StepSite]:
    """All eligible sites of ``w``, by left endpoint."""
    sites = []
    for left in range(len(w) - 1):
        site = _site_at(w, left)
        if site is not None:
            sites.append(site)
    return sites


def apply_step(w: Word, site: StepSite) -> Word:
    """Drop one letter of the pair; the result lies in the same class."""
    left, right, kind = site.left, site.right, site.kind
    if not 0 <= left < right < len(w):
        raise ValueError(f"site {site} out of range for length {len(w)}")
    a = w[left]
    if w[right] != a:
        raise ValueError("site endpoints carry different letters")
    seg = w[left + 1:right]
    if kind is StepKind.ADJACENT:
        if right != left + 1:
            raise ValueError("ADJACENT site with letters apart")
        return w[:right] + w[right + 1:]
    if kind is StepKind.ALL_LARGER:
        if any(x <= a for x in seg):
            raise ValueError("ALL_LARGER site with a non-larger letter between")
        return w[:right] + w[right + 1:]
    if kind is StepKind.ALL_SMALLER:
        if any(x >= a for x in seg):
            raise ValueError("ALL_SMALLER site with a non-smaller letter between")
        return w[:left] + w[left + 1:]
    raise ValueError(f"unknown step kind {kind!r}")


def canonical_form(w: Word) -> Word:
    """The unique canonical word in the congruence class of ``w``.

    It is the shortest word of its class and a quasi-subword of ``w``.
    """
    w = tuple(w)
    while True:
        site = find_step(w)
        if site is None:
            return w
        w = apply_step(w, site)


def canonical_form_restricted(w: Word, k: int) -> Word:
    """Canonical form of ``w`` after deleting every letter below ``k``."""
    if k < 1:
        raise ValueError("k is a 1-based letter index")
    return canonical_form(delete(w, range(1, k)))


def multiply(u: Word, v: Word) -> Word:
    """Product of the classes of ``u`` and ``v``, as a canonical word.

    The canonical form is constant on classes, so reducing the concatenation
    of any representatives is well defined.
    """
    return canonical_form(u + v)


def same_kn_element(u: Word, v: Word) -> bool:
    return canonical_form(u) == canonical_form(v)


def random_fiber_word(w: Word, rng: random.Random, edits: int = 4) -> Word:
    """A random word in the class of ``w``.

    Mixes forward simplifying steps with letter duplications (the inverse of
    an ADJACENT step); both preserve the class.
    """
    for _ in range(edits):
        if w and rng.random() < 0.5:
            p = rng.randrange(len(w))
            w = w[:p] + (w[p],) + w[p:]
        else:
            sites = eligible_steps(w)
            if sites:
                w = apply_step(w, rng.choice(sites))
    return w


def canonical_words(n: int, max_len: int) -> Iterator[Word]:
    """All canonical words over ``1..n`` of length at most ``max_len``.

    Direct generate-and-filter enumeration, independent of the closure in
    ``enumerate_kn``; the two must agree on every finite slice.
    """
    if n < 1:
        raise ValueError("alphabet size must be at least 1")
    alphabet = range(1, n + 1)
    for length in range(max_len + 1):
        for w in itertools.product(alphabet, repeat=length):
            if is_canonical(w):
                yield w


@dataclass(frozen=True)
class KnElement:
    """An element of K_n: its canonical word plus an interning handle."""

    canon: Word
    ident: int = field(compare=False)


class KnMonoid:
    """K_n enumerated as interned canonical words, closed under product."""

    def __init__(self, n: int, canons: list[Word]):
        self.n = n
        self.elements = tuple(KnElement(c, k) for k, c in enumerate(canons))
        self.index = {c: k for k, c in enumerate(canons)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self) -> KnElement:
        return self.elements[self.index[STAR]]

    def element_of(self, w: Word) -> KnElement:
        return self.elements[self.index[canonical_form(w)]]

    def multiply(self, a: KnElement, b: KnElement) -> KnElement:
        return self.elements[self.index[canonical_form(a.canon + b.canon)]]

    @property
    def max_word_length(self) -> int:
        return max(len(e.canon) for e in self.elements)


def enumerate_kn(n: int, max_alphabet: int = 7,
                 max_elements: int | None = None) -> KnMonoid:
    """Enumerate K_n by closing {STAR} under right products with generators.

    K_n is finite, so the closure terminates; ``max_alphabet`` (default 7)
    and the optional element cap are safety valves for desk-scale use.
    """
    if n < 1:
        raise ValueError("alphabet size must be at least 1")
    if n > max_alphabet:
        raise ResourceGuardError(
            f"alphabet size {n} exceeds the configured maximum {max_alphabet}"
        )
    seen = {STAR}
    order: list[Word] = [STAR]
    frontier: list[Word] = [STAR]
    while frontier:
        fresh: list[Word] = []
        for w in frontier:
            for g in range(1, n + 1):
                c = canonical_form(w + (g,))
                if c not in seen:
                    seen.add(c)
                    order.append(c)
                    fresh.append(c)
                    if max_elements is not None and len(order) > max_elements:
                        raise ResourceGuardError(
                            f"K_{n} enumeration exceeded {max_elements} elements"
                        )
        frontier = fresh
    return KnMonoid(n, order)
