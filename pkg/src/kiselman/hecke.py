"""Hecke-Kiselman monoids of finite directed acyclic graphs.

For a DAG with vertices 1..n the monoid HK is generated by idempotents
a_1, ..., a_n subject to

    a_i a_j a_i = a_j a_i a_j = a_i a_j    for every edge i -> j,
    a_i a_j = a_j a_i                      for non-adjacent i, j.

Elements are enumerated by two independent routes that must agree:

Algorithm A (primary): union-find over all words up to a length bound L,
merging words related by a single relation application (idempotent
contraction, the three-way edge relation in every direction, commutation
swaps).  The edge relation lengthens words, so words near the bound may miss
merges that pass through longer intermediates; classes and the right
generator action are therefore read off an interior horizon two letters
below the bound, and L grows by two until two consecutive bounds produce
identical class counts, representatives and action tables.  Rank arithmetic
turns the word set into integers, pair generation is vectorised, and the
union-find is one connected-components call.

Algorithm B (cross-check): over a topologically labelled DAG every defining
relation of Kiselman's monoid K_n already holds in HK (commutation plus
idempotence imply the three-way relation for non-edges), so HK is the
quotient of K_n by the congruence generated by commuting non-adjacent
generator pairs.  Starting from the enumerated K_n, swap non-adjacent
adjacent letters inside canonical representatives, re-canonicalise, and
saturate under left and right generator multiplication.

``enumerate_hk`` runs both and raises ``HkDisagreementError`` on any
mismatch; a mismatch is an implementation bug, never mathematics.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from .canonical import canonical_form, enumerate_kn
from .errors import HkDisagreementError, ResourceGuardError
from .sds import Dag
from .words import Word


@dataclass(frozen=True)
class HkPresentation:
    """A DAG relabelled topologically, so that i -> j implies i < j."""

    original: Dag
    graph: Dag
    order: tuple[int, ...]  # order[k - 1] = original vertex with new label k

    @classmethod
    def from_dag(cls, dag: Dag) -> "HkPresentation":
        topo = dag.topological_order()
        newlabel = {orig: k + 1 for k, orig in enumerate(topo)}
        edges = [(newlabel[i], newlabel[j]) for i, j in dag.edges]
        relabeled = Dag(dag.n, edges)
        assert all(i < j for i, j in relabeled.edges)
        return cls(dag, relabeled, tuple(topo))

    def relabel_word(self, w: Word) -> Word:
        """Original vertex labels to internal topological labels."""
        newlabel = {orig: k + 1 for k, orig in enumerate(self.order)}
        try:
            return tuple(newlabel[x] for x in w)
        except KeyError as exc:
            raise ValueError(f"unknown vertex {exc.args[0]} in word") from None

    def unrelabel_word(self, w: Word) -> Word:
        return tuple(self.order[x - 1] for x in w)


@dataclass(frozen=True)
class HkClasses:
    """The congruence classes: representatives plus right generator action.

    Representatives are length-lexicographic least words of their classes,
    over the internal (topological) labels; class 0 is the identity.
    """

    presentation: HkPresentation
    representatives: tuple[Word, ...]
    action: tuple[tuple[int, ...], ...]
    size: int
    explored_length: int

    def class_of(self, w: Word) -> int:
        """Class of a word over original vertex labels, via the action fold."""
        c = 0
        for g in self.presentation.relabel_word(w):
            c = self.action[c][g - 1]
        return c

    def representatives_original(self) -> tuple[Word, ...]:
        return tuple(self.presentation.unrelabel_word(r) for r in self.representatives)


def hk_element_of(w: Word, classes: HkClasses) -> int:
    return classes.class_of(w)


# -- algorithm A: bounded congruence closure over ranked words --------------


def _word_count(n: int, max_len: int) -> int:
    if n == 1:
        return max_len + 1
    return (n ** (max_len + 1) - 1) // (n - 1)


class _Partition:
    """Connected components of the one-step relation graph on words <= L."""

    def __init__(self, n: int, fwd0: np.ndarray, adj0: np.ndarray, L: int):
        self.n = n
        self.L = L
        offsets = [0] * (L + 2)
        for length in range(1, L + 2):
            offsets[length] = offsets[length - 1] + n ** (length - 1)
        self.offsets = offsets
        total = offsets[L + 1]
        srcs: list[np.ndarray] = []
        dsts: list[np.ndarray] = []
        for length in range(2, L + 1):
            self._pairs_for_length(length, fwd0, adj0, srcs, dsts)
        if srcs:
            src = np.concatenate(srcs)
            dst = np.concatenate(dsts)
        else:
            src = np.empty(0, dtype=np.int64)
            dst = np.empty(0, dtype=np.int64)
        graph = sparse.coo_matrix(
            (np.ones(len(src), dtype=np.int8), (src, dst)), shape=(total, total)
        )
        _, labels = connected_components(graph, directed=False)
        self.labels = labels
        # labels run 0..ncomp-1, so np.unique maps each label to its first,
        # i.e. least, member rank: the length-lexicographic representative.
        _, first = np.unique(labels, return_index=True)
        self.rep_rank = first
        self.interior_limit = offsets[L - 1]  # ranks of words of length <= L-2

    def _pairs_for_length(self, length, fwd0, adj0, srcs, dsts):
        n = self.n
        base = self.offsets[length]
        shorter = self.offsets[length - 1]
        m = n ** length
        pows = [n ** t for t in range(length + 1)]
        r = np.arange(m, dtype=np.int64)
        digs = [((r // pows[length - 1 - t]) % n).astype(np.int8) for t in range(length)]

        def deletion(ranks, q):
            keep = pows[length - 1 - q]
            drop = pows[length - q]
            return (ranks // drop) * keep + (ranks % keep)

        for p in range(length - 1):
            a, b = digs[p], digs[p + 1]
            eq = a == b
            if eq.any():
                rr = r[eq]
                srcs.append(base + rr)
                dsts.append(shorter + deletion(rr, p + 1))
            comm = (a != b) & ~adj0[a, b]
            if comm.any():
                rr = r[comm]
                delta = (b[comm].astype(np.int64) - a[comm]) * (
                    pows[length - 1 - p] - pows[length - 2 - p]
                )
                srcs.append(base + rr)
                dsts.append(base + rr + delta)
        for p in range(length - 2):
            a, t, c = digs[p], digs[p + 1], digs[p + 2]
            sts = (a == c) & (a != t) & adj0[a, t]
            if not sts.any():
                continue
            rr = r[sts]
            delta = (t[sts].astype(np.int64) - a[sts]) * (
                pows[length - 1 - p] - pows[length - 2 - p] + pows[length - 3 - p]
            )
            srcs.append(base + rr)
            dsts.append(base + rr + delta)
            fwd_hit = fwd0[a, t] & sts  # edge a -> t: a t a = a t, drop the right a
            if fwd_hit.any():
                rr2 = r[fwd_hit]
                srcs.append(base + rr2)
                dsts.append(shorter + deletion(rr2, p + 2))
            bwd = fwd0[t, a] & sts  # edge t -> a: a t a = t a, drop the left a
            if bwd.any():
                rr2 = r[bwd]
                srcs.append(base + rr2)
                dsts.append(shorter + deletion(rr2, p))

    def rank(self, w: Word) -> int:
        r = 0
        n = self.n
        for x in w:
            r = r * n + (x - 1)
        return self.offsets[len(w)] + r

    def unrank(self, rk: int) -> Word:
        length = bisect_right(self.offsets, rk) - 1
        r = rk - self.offsets[length]
        out = [0] * length
        n = self.n
        for t in range(length - 1, -1, -1):
            r, d = divmod(r, n)
            out[t] = d + 1
        return tuple(out)

    def label_of(self, w: Word) -> int:
        return int(self.labels[self.rank(w)])

    def rep_word(self, label: int) -> Word:
        return self.unrank(int(self.rep_rank[label]))

    def interior(self, label: int) -> bool:
        return int(self.rep_rank[label]) < self.interior_limit


def _rewrite_neighbors(u: Word, fwd, adj, cap: int) -> list[Word]:
    """All single relation applications at ``u``, up to length ``cap``."""
    ln = len(u)
    out = []
    for p in range(ln - 1):
        a, b = u[p], u[p + 1]
        if a == b:
            out.append(u[:p] + u[p + 1:])
        elif not adj[a][b]:
            out.append(u[:p] + (b, a) + u[p + 2:])
    for p in range(ln - 2):
        a, t = u[p], u[p + 1]
        if u[p + 2] == a and a != t and adj[a][t]:
            out.append(u[:p] + (t, a, t) + u[p + 3:])
            if fwd[a][t]:
                out.append(u[:p] + (a, t) + u[p + 3:])
            else:
                out.append(u[:p] + (t, a) + u[p + 3:])
    if ln < cap:
        for p in range(ln):
            out.append(u[:p] + (u[p],) + u[p:])
        for p in range(ln - 1):
            a, b = u[p], u[p + 1]
            if a != b and fwd[a][b]:
                out.append(u[:p] + (a, b, a) + u[p + 2:])
                out.append(u[:p] + (b, a, b) + u[p + 2:])
    return out


def _bridge(part: _Partition, x: Word, fwd, adj, budget: int) -> int | None:
    """Classify a word whose bounded class misses its short representatives.

    Breadth-first search through single relation applications, allowed to
    overshoot the bound by a couple of letters, until a word lands in an
    interior class; classes already explored are entered through their least
    member.  Returns the interior label, or None when the budget or length
    cap exhausts first.
    """
    cap = min(len(x) + 3, part.L + 2)
    seen = {x}
    queue = deque([x])
    pops = 0
    while queue:
        u = queue.popleft()
        pops += 1
        if pops > budget:
            return None
        if len(u) <= part.L:
            label = part.label_of(u)
            if part.interior(label):
                return label
            rep = part.rep_word(label)
            if rep not in seen:
                seen.add(rep)
                queue.append(rep)
        for v in _rewrite_neighbors(u, fwd, adj, cap):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return None


@dataclass
class _View:
    complete: bool
    count: int
    mapping: dict  # representative word -> tuple of target representatives

    def matches(self, other: "_View") -> bool:
        return (
            self.complete
            and other.complete
            and self.count == other.count
            and self.mapping == other.mapping
        )


def _action_view(part: _Partition, fwd, adj, bridge_budget: int) -> _View:
    """Classes reachable from the identity class via the right action."""
    n = part.n
    id_label = part.label_of(())
    order = [id_label]
    position = {id_label: 0}
    rows: list[list[int | None]] = []
    complete = True
    memo: dict[int, int | None] = {}
    qi = 0
    while qi < len(order):
        label = order[qi]
        qi += 1
        rep = part.rep_word(label)
        row: list[int | None] = []
        for g in range(1, n + 1):
            x = rep + (g,)
            t = part.label_of(x)
            if not part.interior(t):
                if t in memo:
                    t = memo[t]
                else:
                    bridged = _bridge(part, x, fwd, adj, bridge_budget)
                    memo[t] = bridged
                    t = bridged
            if t is None:
                complete = False
                row.append(None)
                continue
            if t not in position:
                position[t] = len(order)
                order.append(t)
            row.append(t)
        rows.append(row)
    mapping = {}
    for label, row in zip(order, rows):
        mapping[part.rep_word(label)] = tuple(
            None if t is None else part.rep_word(t) for t in row
        )
    return _View(complete, len(order), mapping)


# -- algorithm B: quotient of K_n by non-adjacent commutations ---------------


def kn_quotient_classes(pres: HkPresentation,
                        max_alphabet: int = 6) -> tuple[int, frozenset]:
    """Class count and representative set of HK as a quotient of K_n."""
    graph = pres.graph
    n = graph.n
    kn = enumerate_kn(n, max_alphabet=max_alphabet)
    canons = [e.canon for e in kn.elements]
    index = kn.index
    parent = list(range(len(canons)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    pending: deque[tuple[int, int]] = deque()
    for k, w in enumerate(canons):
        for p in range(len(w) - 1):
            i, j = w[p], w[p + 1]
            if i != j and not graph.adjacent(i, j):
                swapped = w[:p] + (j, i) + w[p + 2:]
                pending.append((k, index[canonical_form(swapped)]))
    while pending:
        a, b = pending.popleft()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[rb] = ra
        wa, wb = canons[ra], canons[rb]
        for g in range(1, n + 1):
            pending.append(
                (index[canonical_form((g,) + wa)], index[canonical_form((g,) + wb)])
            )
            pending.append(
                (index[canonical_form(wa + (g,))], index[canonical_form(wb + (g,))])
            )
    reps: dict[int, Word] = {}
    for k, w in enumerate(canons):
        root = find(k)
        best = reps.get(root)
        if best is None or (len(w), w) < (len(best), best):
            reps[root] = w
    return len(reps), frozenset(reps.values())


# -- the public enumeration ---------------------------------------------------


_HK_CACHE: dict[tuple, HkClasses] = {}


def enumerate_hk(dag: Dag | HkPresentation, start_length: int = 4,
                 max_words: int = 3_000_000, max_vertices: int = 6,
                 bridge_budget: int = 200_000) -> HkClasses:
    """Enumerate HK of a DAG; algorithms A and B must agree.

    Raises ``ResourceGuardError`` when the stabilisation would need more
    than ``max_words`` ranked words, and ``HkDisagreementError`` when the
    two enumerations differ.
    """
    pres = dag if isinstance(dag, HkPresentation) else HkPresentation.from_dag(dag)
    n = pres.graph.n
    if n < 1:
        raise ValueError("need at least one vertex")
    if n > max_vertices:
        raise ResourceGuardError(
            f"{n} vertices exceed the configured maximum {max_vertices}"
        )
    cache_key = (n, tuple(pres.graph.sorted_edges()), start_length)
    cached = _HK_CACHE.get(cache_key)
    if cached is not None:
        return cached

    fwd = [[False] * (n + 1) for _ in range(n + 1)]
    adj = [[False] * (n + 1) for _ in range(n + 1)]
    for i, j in pres.graph.edges:
        fwd[i][j] = True
        adj[i][j] = adj[j][i] = True
    fwd0 = np.array([row[1:] for row in fwd[1:]], dtype=bool)
    adj0 = np.array([row[1:] for row in adj[1:]], dtype=bool)

    L = max(start_length, 2)
    prev: _View | None = None
    view: _View | None = None
    while True:
        if _word_count(n, L) > max_words:
            raise ResourceGuardError(
                f"stabilisation at bound {L} needs {_word_count(n, L)} words, "
                f"over the limit {max_words}"
            )
        part = _Partition(n, fwd0, adj0, L)
        view = _action_view(part, fwd, adj, bridge_budget)
        if prev is not None and view.matches(prev):
            break
        prev = view
        L += 2

    reps = sorted(view.mapping, key=lambda w: (len(w), w))
    position = {rep: k for k, rep in enumerate(reps)}
    action = tuple(
        tuple(position[t] for t in view.mapping[rep]) for rep in reps
    )

    size_b, reps_b = kn_quotient_classes(pres)
    if view.count != size_b or frozenset(reps) != reps_b:
        raise HkDisagreementError(
            f"bounded closure found {view.count} classes, the K_n quotient "
            f"found {size_b}; this is an implementation bug"
        )

    classes = HkClasses(pres, tuple(reps), action, view.count, L)
    _HK_CACHE[cache_key] = classes
    return classes
