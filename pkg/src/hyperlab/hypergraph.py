"""Random k-uniform hypergraphs and their j-connected components.

Two hyperedges lie in the same j-component when they are joined by a walk
of hyperedges whose consecutive intersections have at least j vertices.
Decomposition works with a union-find over the j-subsets of present edges:
two edges sharing >= j vertices share at least one j-subset, so merging
every edge's j-subsets realizes exactly that walk relation.

A component of size s (edges) and order t (distinct j-sets) is a hypertree
iff t = 1 + (C(k,j) - 1) * s; the unique obstruction is a wheel, a cyclic
alternating sequence of distinct edges and distinct j-sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .combinatorics import TheoryParams, rank_subset, unrank_subset
from .errors import ResourceLimitError, ValidationError
from .rng import make_generator


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on [1, n] with edges stored in colex order."""

    n: int
    k: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.k < 2 or self.n < self.k:
            raise ValidationError(f"need n >= k >= 2, got n={self.n}, k={self.k}")
        prev_rank = -1
        for e in self.edges:
            if len(e) != self.k:
                raise ValidationError(f"edge {e} does not have arity {self.k}")
            r = rank_subset(e, self.n)  # also validates sortedness and range
            if r <= prev_rank:
                raise ValidationError(f"edges must be distinct and sorted by colex rank near {e}")
            prev_rank = r

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        """Build from edges in any order; sorts canonically and rejects duplicates."""
        canon = [tuple(sorted(e)) for e in edges]
        canon.sort(key=lambda e: rank_subset(e, n))
        return cls(n, k, tuple(canon))

    @property
    def edge_set(self) -> frozenset[tuple[int, ...]]:
        cached = self.__dict__.get("_edge_set")
        if cached is None:
            cached = frozenset(self.edges)
            self.__dict__["_edge_set"] = cached
        return cached

    def __contains__(self, edge: tuple[int, ...]) -> bool:
        return edge in self.edge_set


@dataclass(frozen=True)
class Wheel:
    """A cyclic pair of sequences: distinct edges K_1..K_l and distinct
    j-sets J_1..J_l with jsets[i] contained in edges[i] & edges[i+1 mod l].

    Wheels differing only by rotation or order reversal compare equal.
    """

    edges: tuple[tuple[int, ...], ...]
    jsets: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    def validate(self) -> None:
        ell = len(self.edges)
        if ell < 2 or len(self.jsets) != ell:
            raise ValidationError("wheel needs >= 2 edges and as many j-sets")
        if len(set(self.edges)) != ell or len(set(self.jsets)) != ell:
            raise ValidationError("wheel edges and j-sets must be distinct")
        for i in range(ell):
            a, b = set(self.edges[i]), set(self.edges[(i + 1) % ell])
            if not set(self.jsets[i]) <= (a & b):
                raise ValidationError(f"j-set {self.jsets[i]} not in consecutive intersection")

    def canonical(self) -> tuple[tuple[int, ...], ...]:
        """Lexicographically least interleaved listing over rotations/reversals."""
        ell = len(self.edges)
        seq: list[tuple[int, ...]] = []
        for i in range(ell):
            seq.append(self.edges[i])
            seq.append(self.jsets[i])
        rev = seq[::-1]
        rev = rev[1:] + rev[:1]  # realign so a K occupies position 0
        best = None
        for base in (seq, rev):
            for t in range(ell):
                cand = tuple(base[2 * t:] + base[:2 * t])
                if best is None or cand < best:
                    best = cand
        assert best is not None
        return best

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Wheel):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())


@dataclass(frozen=True)
class ComponentSummary:
    """One j-component: size counts hyperedges, order counts distinct j-sets."""

    id: int
    size: int
    order: int
    is_hypertree: bool
    wheel_witness: Optional[Wheel] = None


class UnionFind:
    """Disjoint sets over integer keys; path compression + union by size."""

    __slots__ = ("parent", "size")

    def __init__(self) -> None:
        self.parent: dict[int, int] = {}
        self.size: dict[int, int] = {}

    def find(self, x: int) -> int:
        parent = self.parent
        root = parent.setdefault(x, x)
        if root == x:
            self.size.setdefault(x, 1)
            return x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> int:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return rx


def sample(n: int, k: int, p: float, seed: int) -> Hypergraph:
    """Sample H^k(n, p): each k-set is an edge independently with probability p.

    Iterates edge colex ranks directly via geometric gap skipping (the gap G
    to the next present edge has P(G = g) = (1-p)^(g-1) * p), so absent
    edges are never touched.  Identical (n, k, p, seed) give identical
    hypergraphs, bit for bit.
    """
    if k < 2 or n < k:
        raise ValidationError(f"need n >= k >= 2, got n={n}, k={k}")
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"p must lie in [0, 1], got {p}")
    total = math.comb(n, k)
    if p == 0.0:
        return Hypergraph(n, k, ())
    rng = make_generator(seed)
    edges: list[tuple[int, ...]] = []
    if p == 1.0:
        for r in range(total):
            edges.append(tuple(unrank_subset(r, k, n)))
        return Hypergraph(n, k, tuple(edges))
    log1mp = math.log1p(-p)
    rank = -1
    while True:
        u = rng.random()
        gap = 1 + int(math.log1p(-u) / log1mp)
        rank += gap
        if rank >= total:
            break
        edges.append(tuple(unrank_subset(rank, k, n)))
    return Hypergraph(n, k, tuple(edges))


def sample_hypergraph(params: TheoryParams, seed: int) -> Hypergraph:
    """Sample with the subcritical probability p = (1 - epsilon) * p0."""
    return sample(params.n, params.k, params.p, seed)


def j_components(
    h: Hypergraph, j: int
) -> tuple[list[ComponentSummary], dict[int, int]]:
    """Decompose into j-components (those containing at least one edge).

    Returns the component summaries, ordered by first appearance along the
    colex edge order, and a map from the colex rank of every j-set touched
    by an edge to its component id.  Isolated j-sets (order 1, size 0) are
    not materialized; their count is C(n, j) minus the map's length.
    """
    if not 1 <= j <= h.k - 1:
        raise ValidationError(f"j must satisfy 1 <= j <= k-1, got j={j}, k={h.k}")
    c0 = math.comb(h.k, j) - 1
    uf = UnionFind()
    edge_first_rank: list[int] = []
    for e in h.edges:
        ranks = [rank_subset(sub, h.n) for sub in combinations(e, j)]
        first = ranks[0]
        for r in ranks[1:]:
            uf.union(first, r)
        edge_first_rank.append(first)

    root_to_id: dict[int, int] = {}
    comp_edges: list[list[tuple[int, ...]]] = []
    for e, first in zip(h.edges, edge_first_rank):
        root = uf.find(first)
        cid = root_to_id.get(root)
        if cid is None:
            cid = len(root_to_id)
            root_to_id[root] = cid
            comp_edges.append([])
        comp_edges[cid].append(e)

    jset_to_component: dict[int, int] = {}
    order = [0] * len(root_to_id)
    for r in list(uf.parent):
        cid = root_to_id[uf.find(r)]
        jset_to_component[r] = cid
        order[cid] += 1

    summaries: list[ComponentSummary] = []
    for cid, edges in enumerate(comp_edges):
        size = len(edges)
        t = order[cid]
        is_hypertree = t == 1 + c0 * size
        witness = None if is_hypertree else find_wheel(h, j, edges)
        summaries.append(ComponentSummary(cid, size, t, is_hypertree, witness))
    return summaries, jset_to_component


def find_wheel(
    h: Hypergraph, j: int, component_edges: list[tuple[int, ...]]
) -> Optional[Wheel]:
    """Return a wheel from one component's edges, or None if it is a hypertree.

    Runs a depth-first search on the bipartite incidence graph between the
    component's j-sets and edges (J adjacent to K iff J is a subset of K);
    any non-tree edge closes an alternating cycle, which is the wheel.  The
    returned witness is arbitrary, not canonical.
    """
    adj: dict[tuple, list[tuple]] = {}
    for e in component_edges:
        knode = ("K", e)
        adj.setdefault(knode, [])
        for sub in combinations(e, j):
            jnode = ("J", sub)
            adj[knode].append(jnode)
            adj.setdefault(jnode, []).append(knode)

    parent: dict[tuple, Optional[tuple]] = {}
    depth: dict[tuple, int] = {}
    for start in adj:
        if start in depth:
            continue
        parent[start] = None
        depth[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in depth:
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    stack.append(v)
                elif v != parent[u]:
                    return _wheel_from_cycle(u, v, parent, depth)
    return None


def _wheel_from_cycle(u: tuple, v: tuple, parent: dict, depth: dict) -> Wheel:
    # non-tree edge (u, v): the cycle runs through the lowest common ancestor
    up_u, up_v = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = parent[a]
        up_u.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        up_v.append(b)
    while a != b:
        a = parent[a]
        b = parent[b]
        up_u.append(a)
        up_v.append(b)
    path = up_u + up_v[-2::-1]  # u..lca + (lca..v reversed, lca dropped)
    if path[0][0] == "J":
        path = path[1:] + path[:1]
    edges = tuple(lbl for kind, lbl in path if kind == "K")
    jsets = tuple(lbl for kind, lbl in path if kind == "J")
    return Wheel(edges=edges, jsets=jsets)


def brute_force_wheel_census(n: int, k: int, j: int, ell: int) -> int:
    """Count distinct wheels of length ell with vertices from [1, n].

    Exhaustive generation with canonicalization; sequences equal up to
    rotation or reversal are identified.  Cost grows like C(n, k)^ell, so a
    guard refuses n > 10 or ell > 4.
    """
    if ell < 2:
        raise ValidationError(f"wheel length must be >= 2, got {ell}")
    if not 1 <= j <= k - 1 or n < k:
        raise ValidationError(f"need n >= k > j >= 1, got n={n}, k={k}, j={j}")
    if n > 10 or ell > 4:
        raise ResourceLimitError(f"census guard: need n <= 10 and ell <= 4, got n={n}, ell={ell}")

    ksets = [tuple(c) for c in combinations(range(1, n + 1), k)]
    seen: set[tuple] = set()

    def extend(edges: list[tuple[int, ...]], jsets: list[tuple[int, ...]]) -> None:
        i = len(jsets)  # about to pick J_{i+1} inside edges[i]
        if i == ell - 1:
            # last j-set must close the cycle into edges[0]
            closing = set(edges[-1]) & set(edges[0])
            for sub in combinations(sorted(closing), j):
                if sub in jsets:
                    continue
                w = Wheel(edges=tuple(edges), jsets=tuple(jsets) + (sub,))
                seen.add(w.canonical())
            return
        for sub in combinations(edges[-1], j):
            if sub in jsets:
                continue
            sub_set = set(sub)
            for cand in ksets:
                if cand in edges or not sub_set <= set(cand):
                    continue
                extend(edges + [cand], jsets + [sub])

    for first in ksets:
        extend([first], [])
    return len(seen)


# -- text format ------------------------------------------------------------
#
# First line: "n k m"; then m lines of k space-separated 1-based vertex ids,
# sorted ascending within a line, lines sorted by colex rank.


def write_hypergraph(h: Hypergraph) -> str:
    lines = [f"{h.n} {h.k} {len(h.edges)}"]
    lines.extend(" ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(lines) + "\n"


def read_hypergraph(text: str) -> Hypergraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValidationError("empty hypergraph file")
    head = lines[0].split()
    if len(head) != 3:
        raise ValidationError(f"header must be 'n k m', got {lines[0]!r}")
    try:
        n, k, m = (int(x) for x in head)
    except ValueError as exc:
        raise ValidationError(f"non-integer header field in {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ValidationError(f"header declares {m} edges but file has {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        try:
            e = tuple(int(x) for x in ln.split())
        except ValueError as exc:
            raise ValidationError(f"non-integer vertex id in line {ln!r}") from exc
        edges.append(e)
    return Hypergraph(n, k, tuple(edges))
