"""Component search, the two-type branching process, and their coupling.

The search explores one j-component of a hypergraph breadth-first: popping
a j-set queries every k-set containing it, popping a k-set activates its
undiscovered j-subsets.  The branching process mirrors the search but
never skips: every type-j vertex queries all C(n-j, k-j) candidate k-sets
independently with probability p, and each spawned type-k vertex attaches
c0 = C(k,j) - 1 fresh type-j children (labels may repeat across the tree).

`coupled_run` drives both from shared randomness: the first query of any
k-set (by either process) is answered by the hypergraph's membership
indicator, repeat queries by the branching process draw fresh Bernoulli(p)
outcomes.  Every k-set the search discovers is in the hypergraph, so its
first query created a branching vertex with that label; distinct labels
give distinct vertices, hence branching size >= component size on every
run, not merely in expectation.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from .combinatorics import TheoryParams, rank_subset, unrank_subset
from .errors import ValidationError
from .hypergraph import Hypergraph
from .rng import make_generator

DEFAULT_CAP = 1_000_000


@dataclass
class SearchTrace:
    """Breadth-first exploration record of one j-component.

    `pops` logs the FIFO queue discipline: ("J" | "K", label) per pop.
    `size` counts discovered k-sets, `order` discovered j-sets.
    """

    start: tuple[int, ...]
    pops: list[tuple[str, tuple[int, ...]]]
    size: int
    order: int
    discovered_jsets: frozenset[tuple[int, ...]]
    discovered_ksets: frozenset[tuple[int, ...]]


@dataclass
class TwoTypeTree:
    """Rooted labelled two-type tree produced by the branching process.

    Vertex 0 is the root (type "j").  Every type-k vertex has exactly c0
    type-j children, so a tree of size s has 1 + c0*s type-j vertices.
    """

    n: int
    k: int
    j: int
    types: list[str] = field(default_factory=list)
    labels: list[tuple[int, ...]] = field(default_factory=list)
    parents: list[Optional[int]] = field(default_factory=list)
    children: list[list[int]] = field(default_factory=list)
    truncated: bool = False

    def add(self, kind: str, label: tuple[int, ...], parent: Optional[int]) -> int:
        idx = len(self.types)
        self.types.append(kind)
        self.labels.append(label)
        self.parents.append(parent)
        self.children.append([])
        if parent is not None:
            self.children[parent].append(idx)
        return idx

    @property
    def size(self) -> int:
        return sum(1 for t in self.types if t == "k")

    def count_type_j(self) -> int:
        return sum(1 for t in self.types if t == "j")


def _validate_jset(start, n: int, j: int) -> tuple[int, ...]:
    s = tuple(start)
    if len(s) != j:
        raise ValidationError(f"start must have exactly {j} vertices, got {s}")
    rank_subset(s, n)  # validates sortedness, distinctness, range
    return s


def _complement_rank(kset: tuple[int, ...], jset: tuple[int, ...], pos: dict[int, int]) -> int:
    rest = sorted(pos[v] for v in kset if v not in jset)
    return sum(math.comb(a - 1, i) for i, a in enumerate(rest, start=1))


def search_component(h: Hypergraph, j: int, start) -> SearchTrace:
    """Explore the full j-component of `start` breadth-first.

    Candidate k-sets of a popped j-set are scanned in colex order of their
    (k-j)-vertex complement; component size and order do not depend on
    that order, traces do.
    """
    if not 1 <= j <= h.k - 1:
        raise ValidationError(f"j must satisfy 1 <= j <= k-1, got j={j}, k={h.k}")
    start = _validate_jset(start, h.n, j)
    discovered_j = {start}
    discovered_k: set[tuple[int, ...]] = set()
    queue: deque[tuple[str, tuple[int, ...]]] = deque([("J", start)])
    pops: list[tuple[str, tuple[int, ...]]] = []
    while queue:
        kind, label = queue.popleft()
        pops.append((kind, label))
        if kind == "J":
            jset = set(label)
            pool = [v for v in range(1, h.n + 1) if v not in jset]
            pos = {v: i + 1 for i, v in enumerate(pool)}
            hits = [e for e in h.edges if jset <= set(e)]
            hits.sort(key=lambda e: _complement_rank(e, label, pos))
            for e in hits:
                if e not in discovered_k:
                    discovered_k.add(e)
                    queue.append(("K", e))
        else:
            for sub in combinations(label, j):
                if sub not in discovered_j:
                    discovered_j.add(sub)
                    queue.append(("J", sub))
    return SearchTrace(
        start=start,
        pops=pops,
        size=len(discovered_k),
        order=len(discovered_j),
        discovered_jsets=frozenset(discovered_j),
        discovered_ksets=frozenset(discovered_k),
    )


def format_trace(trace: SearchTrace) -> list[str]:
    """Stable dump format: one `STEP <idx> POP <J|K> <label>` line per pop."""
    return [
        f"STEP {i} POP {kind} {','.join(str(v) for v in label)}"
        for i, (kind, label) in enumerate(trace.pops)
    ]


def _merge_label(jset: tuple[int, ...], extra: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(jset + extra))


class _Expander:
    """Per-run machinery for one type-j expansion step.

    Draws one uniform vector over the C(n-j, k-j) colex-ordered candidate
    k-sets; candidate i succeeds iff u[i] < p (overridden by the coupling
    rule when a hypergraph drives first queries).
    """

    def __init__(self, n: int, k: int, j: int, p: float, seed: int) -> None:
        self.n, self.k, self.j, self.p = n, k, j, p
        self.rng = make_generator(seed)
        self.n_candidates = math.comb(n - j, k - j)

    def pool(self, jset: tuple[int, ...]) -> list[int]:
        jset_set = set(jset)
        return [v for v in range(1, self.n + 1) if v not in jset_set]

    def candidate(self, jset: tuple[int, ...], pool: list[int], idx: int) -> tuple[int, ...]:
        posns = unrank_subset(idx, self.k - self.j, len(pool))
        return _merge_label(jset, tuple(pool[pm - 1] for pm in posns))

    def bernoulli_hits(self) -> np.ndarray:
        u = self.rng.random(self.n_candidates)
        return np.flatnonzero(u < self.p)


def branching_with_rate(
    n: int,
    k: int,
    j: int,
    p: float,
    root_label,
    seed: int,
    cap: int = DEFAULT_CAP,
) -> TwoTypeTree:
    """Run the two-type branching process with an explicit edge probability."""
    if cap < 1:
        raise ValidationError(f"cap must be >= 1, got {cap}")
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"p must lie in [0, 1], got {p}")
    root = _validate_jset(root_label, n, j)
    ex = _Expander(n, k, j, p, seed)
    tree = TwoTypeTree(n=n, k=k, j=j)
    tree.add("j", root, None)
    queue: deque[int] = deque([0])
    size = 0
    while queue:
        u_idx = queue.popleft()
        jlabel = tree.labels[u_idx]
        pool = ex.pool(jlabel)
        hits = ex.bernoulli_hits()
        for i in hits:
            if size >= cap:
                tree.truncated = True
                return tree
            klabel = ex.candidate(jlabel, pool, int(i))
            k_idx = tree.add("k", klabel, u_idx)
            size += 1
            for sub in combinations(klabel, j):
                if sub != jlabel:
                    queue.append(tree.add("j", sub, k_idx))
    return tree


def branching_process(params: TheoryParams, root_label, seed: int, cap: int = DEFAULT_CAP) -> TwoTypeTree:
    """Branching process at the subcritical rate p = (1 - epsilon) * p0."""
    return branching_with_rate(params.n, params.k, params.j, params.p, root_label, seed, cap)


def coupled_run(
    h: Hypergraph,
    params: TheoryParams,
    start,
    seed: int,
    cap: int = DEFAULT_CAP,
) -> tuple[int, int]:
    """Couple one component search on `h` with one branching process.

    Returns (component_size, branching_size); the construction guarantees
    branching_size >= component_size exactly (unless the branching run is
    truncated at `cap`, which cannot shrink it below the cap).

    A k-set has been queried before iff one of its j-subsets was already
    expanded, so the first-query bookkeeping tracks expanded labels only.
    """
    start = _validate_jset(start, h.n, params.j)
    if (h.n, h.k) != (params.n, params.k):
        raise ValidationError("hypergraph and params disagree on (n, k)")
    trace = search_component(h, params.j, start)

    ex = _Expander(params.n, params.k, params.j, params.p, seed)
    expanded: set[tuple[int, ...]] = set()
    queue: deque[tuple[int, ...]] = deque([start])
    branching_size = 0
    j = params.j

    def queried_before(klabel: tuple[int, ...]) -> bool:
        return any(sub in expanded for sub in combinations(klabel, j))

    while queue:
        jlabel = queue.popleft()
        pool = ex.pool(jlabel)
        pos = {v: i + 1 for i, v in enumerate(pool)}
        jset_set = set(jlabel)
        successes: dict[int, tuple[int, ...]] = {}
        # first queries answered by membership: present edges never seen before
        for e in h.edges:
            if jset_set <= set(e) and not queried_before(e):
                successes[_complement_rank(e, jlabel, pos)] = e
        # repeat queries draw fresh Bernoulli(p); first queries of absent
        # k-sets answer "no" regardless of the draw
        for i in ex.bernoulli_hits():
            i = int(i)
            if i in successes:
                continue
            klabel = ex.candidate(jlabel, pool, i)
            if queried_before(klabel):
                successes[i] = klabel
        expanded.add(jlabel)
        for i in sorted(successes):
            if branching_size >= cap:
                return trace.size, branching_size
            klabel = successes[i]
            branching_size += 1
            for sub in combinations(klabel, j):
                if sub != jlabel:
                    queue.append(sub)
    return trace.size, branching_size
