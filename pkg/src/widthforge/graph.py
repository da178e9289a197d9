"""Simple undirected graphs and exact induced-matching cut values.

Vertices are opaque strings kept in insertion order.  Adjacency is stored
as one bitmask per vertex, which keeps the exact searches usable up to a
few dozen vertices.  Everything in here is a pure function of immutable
inputs once a graph has been built.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class ValidationError(ValueError):
    """An input violates a structural precondition."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph over string-named vertices.

    No self-loops, no parallel edges.  Vertex iteration order is the
    insertion order, so every derived computation is deterministic.
    """

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[tuple[str, str]] = ()):
        self.names: list[str] = []
        self.index: dict[str, int] = {}
        self.adj: list[int] = []
        self._m = 0
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(self.names)

    def add_vertex(self, name: str) -> None:
        if not isinstance(name, str) or not name:
            raise ValidationError(f"vertex name must be a nonempty string, got {name!r}")
        if name in self.index:
            raise ValidationError(f"duplicate vertex {name!r}")
        self.index[name] = len(self.names)
        self.names.append(name)
        self.adj.append(0)

    def has_vertex(self, name: str) -> bool:
        return name in self.index

    def add_edge(self, u: str, v: str) -> None:
        if u not in self.index:
            raise ValidationError(f"edge endpoint {u!r} is not a declared vertex")
        if v not in self.index:
            raise ValidationError(f"edge endpoint {v!r} is not a declared vertex")
        if u == v:
            raise ValidationError(f"self-loop at {u!r}")
        i, j = self.index[u], self.index[v]
        if (self.adj[i] >> j) & 1:
            return
        self.adj[i] |= 1 << j
        self.adj[j] |= 1 << i
        self._m += 1

    def has_edge(self, u: str, v: str) -> bool:
        i = self.index.get(u)
        j = self.index.get(v)
        if i is None or j is None:
            return False
        return bool((self.adj[i] >> j) & 1)

    def neighbors(self, v: str) -> tuple[str, ...]:
        if v not in self.index:
            raise ValidationError(f"unknown vertex {v!r}")
        return tuple(self.names[i] for i in _bits(self.adj[self.index[v]]))

    def degree(self, v: str) -> int:
        if v not in self.index:
            raise ValidationError(f"unknown vertex {v!r}")
        return self.adj[self.index[v]].bit_count()

    def edges(self) -> list[tuple[str, str]]:
        out = []
        for i in range(self.n):
            for j in _bits(self.adj[i] >> (i + 1) << (i + 1)):
                out.append((self.names[i], self.names[j]))
        return out

    def copy(self) -> "Graph":
        g = Graph()
        g.names = list(self.names)
        g.index = dict(self.index)
        g.adj = list(self.adj)
        g._m = self._m
        return g

    def induced_subgraph(self, keep: Iterable[str]) -> "Graph":
        keep_set = set(keep)
        unknown = keep_set - set(self.index)
        if unknown:
            raise ValidationError(f"unknown vertices {sorted(unknown)}")
        g = Graph(v for v in self.names if v in keep_set)
        for u, v in self.edges():
            if u in keep_set and v in keep_set:
                g.add_edge(u, v)
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.names == other.names and self.adj == other.adj

    def __hash__(self):
        return hash((tuple(self.names), tuple(self.adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Cut:
    """Bipartition (side_a, side_b) of a graph's vertex set."""

    side_a: frozenset[str]
    side_b: frozenset[str]

    @classmethod
    def of(cls, side_a: Iterable[str], side_b: Iterable[str]) -> "Cut":
        return cls(frozenset(side_a), frozenset(side_b))

    def flipped(self) -> "Cut":
        return Cut(self.side_b, self.side_a)


@dataclass(frozen=True)
class Matching:
    """A set of edges with pairwise disjoint endpoints."""

    edges: frozenset[frozenset[str]]

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, str]]) -> "Matching":
        seen: set[str] = set()
        out = []
        for u, v in pairs:
            if u == v:
                raise ValidationError(f"degenerate matching edge {u!r}")
            if u in seen or v in seen:
                raise ValidationError(f"matching edges share endpoint at {u!r} or {v!r}")
            seen.update((u, v))
            out.append(frozenset((u, v)))
        return cls(frozenset(out))

    def __len__(self) -> int:
        return len(self.edges)


def _cut_masks(g: Graph, cut: Cut) -> tuple[int, int]:
    amask = 0
    for v in cut.side_a:
        i = g.index.get(v)
        if i is None:
            raise ValidationError(f"cut names unknown vertex {v!r}")
        amask |= 1 << i
    bmask = 0
    for v in cut.side_b:
        i = g.index.get(v)
        if i is None:
            raise ValidationError(f"cut names unknown vertex {v!r}")
        bmask |= 1 << i
    if amask & bmask:
        overlap = [g.names[i] for i in _bits(amask & bmask)]
        raise ValidationError(f"cut sides overlap on {overlap}")
    full = (1 << g.n) - 1
    if amask | bmask != full:
        missing = [g.names[i] for i in _bits(full & ~(amask | bmask))]
        raise ValidationError(f"cut misses vertices {missing}")
    return amask, bmask


def _subset_mask(g: Graph, xs: Iterable[str]) -> int:
    mask = 0
    for v in xs:
        i = g.index.get(v)
        if i is None:
            raise ValidationError(f"unknown vertex {v!r}")
        mask |= 1 << i
    return mask


def _cut_edge_pairs(g: Graph, amask: int, bmask: int) -> list[tuple[int, int]]:
    pairs = []
    for i in _bits(amask):
        for j in _bits(g.adj[i] & bmask):
            pairs.append((i, j))
    return pairs


def _conflict_masks(g: Graph, pairs: list[tuple[int, int]], see_a: bool, see_b: bool) -> list[int]:
    # Two cut edges conflict when they share an endpoint, a diagonal is an
    # edge, or a visible side-internal edge joins same-side endpoints.
    k = len(pairs)
    conf = [0] * k
    adj = g.adj
    for x in range(k):
        ax, bx = pairs[x]
        adj_ax = adj[ax]
        adj_bx = adj[bx]
        for y in range(x + 1, k):
            ay, by = pairs[y]
            if (
                ax == ay
                or bx == by
                or (adj_ax >> by) & 1
                or (adj_bx >> ay) & 1
                or (see_a and (adj_ax >> ay) & 1)
                or (see_b and (adj_bx >> by) & 1)
            ):
                conf[x] |= 1 << y
                conf[y] |= 1 << x
    return conf


def _max_independent(conf: list[int], cap: int | None = None) -> int:
    """Exact maximum independent set size of a conflict graph.

    Branch and bound over bitmasks: branch on the candidate with the most
    remaining conflicts, include-branch first, prune on best-so-far.  With
    ``cap`` given the search stops as soon as cap+1 is witnessed, so the
    return value is min(true size, cap + 1).
    """
    k = len(conf)
    if k == 0:
        return 0
    stop = k if cap is None else min(cap + 1, k)
    best = 0

    def grow(cand: int, size: int) -> bool:
        nonlocal best
        if size > best:
            best = size
            if best >= stop:
                return True
        if not cand or size + cand.bit_count() <= best:
            return False
        pick = -1
        pick_deg = -1
        m = cand
        while m:
            low = m & -m
            v = low.bit_length() - 1
            deg = (conf[v] & cand).bit_count()
            if deg > pick_deg:
                pick, pick_deg = v, deg
            m ^= low
        bit = 1 << pick
        if grow(cand & ~(conf[pick] | bit), size + 1):
            return True
        return grow(cand & ~bit, size)

    grow((1 << k) - 1, 0)
    return best


def _upper_from_masks(g: Graph, xmask: int, ymask: int, cap: int | None) -> int:
    # Matching across (X, Y) induced after deleting the edges inside Y.
    pairs = _cut_edge_pairs(g, xmask, ymask)
    conf = _conflict_masks(g, pairs, see_a=True, see_b=False)
    return _max_independent(conf, cap)


def cut_value_from_masks(g: Graph, amask: int, bmask: int, kind: str, cap: int | None = None) -> int:
    """Cut value by kind on a bitmask bipartition; min(value, cap+1) if capped."""
    if kind == "mim":
        pairs = _cut_edge_pairs(g, amask, bmask)
        conf = _conflict_masks(g, pairs, see_a=False, see_b=False)
        return _max_independent(conf, cap)
    if kind == "sim":
        pairs = _cut_edge_pairs(g, amask, bmask)
        conf = _conflict_masks(g, pairs, see_a=True, see_b=True)
        return _max_independent(conf, cap)
    if kind == "omim":
        ua = _upper_from_masks(g, amask, bmask, cap)
        ub = _upper_from_masks(g, bmask, amask, cap)
        return min(ua, ub)
    if kind == "Omim":
        ua = _upper_from_masks(g, amask, bmask, cap)
        ub = _upper_from_masks(g, bmask, amask, cap)
        return max(ua, ub)
    raise ValidationError(f"unknown cut-value kind {kind!r}")


def mim_value(g: Graph, cut: Cut) -> int:
    """Maximum induced matching of the bipartite cut graph (side edges ignored)."""
    amask, bmask = _cut_masks(g, cut)
    return cut_value_from_masks(g, amask, bmask, "mim")


def sim_value(g: Graph, cut: Cut) -> int:
    """Maximum matching across the cut that is an induced matching of the whole graph."""
    amask, bmask = _cut_masks(g, cut)
    return cut_value_from_masks(g, amask, bmask, "sim")


def upper_induced_matching_number(g: Graph, x: Iterable[str]) -> int:
    """Maximum cross-matching induced after deleting all edges outside ``x``."""
    xmask = _subset_mask(g, x)
    ymask = ((1 << g.n) - 1) & ~xmask
    return _upper_from_masks(g, xmask, ymask, None)


def omim_value(g: Graph, cut: Cut) -> int:
    """Minimum of the two sides' upper-induced matching numbers."""
    amask, bmask = _cut_masks(g, cut)
    return cut_value_from_masks(g, amask, bmask, "omim")


def Omim_value(g: Graph, cut: Cut) -> int:
    """Maximum of the two sides' upper-induced matching numbers."""
    amask, bmask = _cut_masks(g, cut)
    return cut_value_from_masks(g, amask, bmask, "Omim")


def max_induced_matching(g: Graph) -> int:
    """Size of a maximum induced matching of the whole graph (exact)."""
    pairs = []
    for i in range(g.n):
        for j in _bits(g.adj[i] >> (i + 1) << (i + 1)):
            pairs.append((i, j))
    k = len(pairs)
    conf = [0] * k
    for x in range(k):
        ux, vx = pairs[x]
        touch_x = (1 << ux) | (1 << vx)
        reach_x = g.adj[ux] | g.adj[vx] | touch_x
        for y in range(x + 1, k):
            uy, vy = pairs[y]
            if (reach_x >> uy) & 1 or (reach_x >> vy) & 1:
                conf[x] |= 1 << y
                conf[y] |= 1 << x
    return _max_independent(conf, None)


def has_induced_cycle_geq(g: Graph, k: int) -> tuple[bool, tuple[str, ...] | None]:
    """Whether the graph has a chordless cycle of length >= k, with a witness.

    DFS over chordless paths anchored at their minimum-index vertex: a path
    may only be extended by a vertex adjacent to its last vertex and to no
    earlier one, except possibly the anchor, which closes a cycle.
    """
    if k < 4:
        raise ValidationError(f"cycle length threshold must be >= 4, got {k}")
    n = g.n
    adj = g.adj

    for v0 in range(n):
        above = ~((1 << (v0 + 1)) - 1)

        def extend(path: list[int], pathmask: int, blocked: int) -> tuple[str, ...] | None:
            last = path[-1]
            cands = adj[last] & above & ~pathmask & ~blocked
            for w in _bits(cands):
                if (adj[w] >> v0) & 1:
                    if len(path) + 1 >= k:
                        return tuple(g.names[i] for i in path + [w])
                    # closing early leaves a chord for any longer cycle
                    continue
                found = extend(path + [w], pathmask | (1 << w), blocked | (adj[last] & ~(1 << w)))
                if found is not None:
                    return found
            return None

        for v1 in _bits(adj[v0] & above):
            witness = extend([v0, v1], (1 << v0) | (1 << v1), 0)
            if witness is not None:
                return True, witness
    return False, None


def complement(g: Graph) -> Graph:
    """Complement on the same vertex set."""
    out = Graph(g.names)
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if not (g.adj[i] >> j) & 1:
                out.add_edge(g.names[i], g.names[j])
    return out


def is_simplicial(g: Graph, v: str) -> bool:
    """True when the neighborhood of v is a clique."""
    if v not in g.index:
        raise ValidationError(f"unknown vertex {v!r}")
    nb = g.adj[g.index[v]]
    for i in _bits(nb):
        if (nb & ~(1 << i)) & ~g.adj[i]:
            return False
    return True


def parse_graph(text: str) -> Graph:
    """Parse the plain graph format: ``n m``, n vertex names, m edge lines.

    ``#`` starts a comment; blank lines are skipped.
    """
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise ValidationError("empty graph file")
    head = rows[0].split()
    if len(head) != 2:
        raise ValidationError(f"header must be 'n m', got {rows[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ValidationError(f"header must be two integers, got {rows[0]!r}") from None
    if n < 0 or m < 0:
        raise ValidationError("vertex and edge counts must be non-negative")
    if len(rows) != 1 + n + m:
        raise ValidationError(f"expected {1 + n + m} content lines, found {len(rows)}")
    g = Graph()
    for line in rows[1 : 1 + n]:
        if len(line.split()) != 1:
            raise ValidationError(f"vertex name must be a single token, got {line!r}")
        g.add_vertex(line)
    for line in rows[1 + n :]:
        parts = line.split()
        if len(parts) != 2:
            raise ValidationError(f"edge line must be 'u v', got {line!r}")
        if g.has_edge(parts[0], parts[1]):
            raise ValidationError(f"duplicate edge {line!r}")
        g.add_edge(parts[0], parts[1])
    return g


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(g.names)
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
