"""Branch decompositions: leaf-labelled ternary trees, caterpillars, cuts.

A branch decomposition is an unrooted tree whose internal nodes have degree
three and whose leaves are labelled bijectively with graph vertices.  Graphs
with fewer than four vertices get the degenerate single-node, single-edge,
or star tree.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Iterator, Sequence

from .graph import Cut, Graph, ValidationError

TotalOrder = Sequence[str]


class BranchDecomposition:
    """Unrooted tree with integer node ids and string leaf labels."""

    def __init__(self):
        self.adj: dict[int, list[int]] = {}
        self.leaf_label: dict[int, str] = {}
        self.node_of_label: dict[str, int] = {}
        self._next = 0

    # -- construction ------------------------------------------------------

    def new_node(self, label: str | None = None) -> int:
        node = self._next
        self._next += 1
        self.adj[node] = []
        if label is not None:
            if label in self.node_of_label:
                raise ValidationError(f"duplicate leaf label {label!r}")
            self.leaf_label[node] = label
            self.node_of_label[label] = node
        return node

    def link(self, a: int, b: int) -> None:
        if b in self.adj[a]:
            raise ValidationError(f"duplicate tree edge {(a, b)}")
        self.adj[a].append(b)
        self.adj[b].append(a)

    def unlink(self, a: int, b: int) -> None:
        self.adj[a].remove(b)
        self.adj[b].remove(a)

    @classmethod
    def from_parts(cls, edges: Iterable[tuple[int, int]], leaf_labels: dict[int, str]) -> "BranchDecomposition":
        t = cls()
        ids = sorted(set(leaf_labels) | {x for e in edges for x in e})
        remap = {}
        for i in ids:
            remap[i] = t.new_node(leaf_labels.get(i))
        for a, b in edges:
            t.link(remap[a], remap[b])
        t.validate()
        return t

    def copy(self) -> "BranchDecomposition":
        t = BranchDecomposition()
        t.adj = {k: list(v) for k, v in self.adj.items()}
        t.leaf_label = dict(self.leaf_label)
        t.node_of_label = dict(self.node_of_label)
        t._next = self._next
        return t

    # -- queries -----------------------------------------------------------

    @property
    def num_nodes(self) -> int:
        return len(self.adj)

    @property
    def num_leaves(self) -> int:
        return len(self.leaf_label)

    def nodes(self) -> list[int]:
        return sorted(self.adj)

    def degree(self, node: int) -> int:
        return len(self.adj[node])

    def is_leaf(self, node: int) -> bool:
        return node in self.leaf_label

    def leaves(self) -> list[int]:
        return sorted(self.leaf_label)

    def labels(self) -> frozenset[str]:
        return frozenset(self.node_of_label)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for a in sorted(self.adj):
            for b in self.adj[a]:
                if a < b:
                    out.append((a, b))
        return out

    def internal_nodes(self) -> list[int]:
        return [v for v in sorted(self.adj) if v not in self.leaf_label]

    def validate(self) -> None:
        n_nodes = len(self.adj)
        if n_nodes == 0:
            return
        n_edges = sum(len(v) for v in self.adj.values()) // 2
        if n_edges != n_nodes - 1:
            raise ValidationError(f"not a tree: {n_nodes} nodes, {n_edges} edges")
        start = next(iter(self.adj))
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != n_nodes:
            raise ValidationError("tree is disconnected")
        for node, nbrs in self.adj.items():
            deg = len(nbrs)
            if node in self.leaf_label:
                if deg > 1:
                    raise ValidationError(f"labelled node {node} has degree {deg}")
            else:
                if deg != 3:
                    raise ValidationError(f"internal node {node} has degree {deg}, want 3")

    # -- mutation used by the enumerators and searches ----------------------

    def insert_leaf(self, edge: tuple[int, int], label: str) -> tuple[int, int]:
        """Subdivide ``edge`` and hang a new leaf off the midpoint."""
        a, b = edge
        self.unlink(a, b)
        mid = self.new_node()
        leaf = self.new_node(label)
        self.link(a, mid)
        self.link(mid, b)
        self.link(mid, leaf)
        return leaf, mid

    def remove_leaf(self, leaf: int) -> None:
        """Undo insert_leaf: drop the leaf and splice its degree-2 midpoint."""
        (mid,) = self.adj[leaf]
        self.unlink(leaf, mid)
        u, v = self.adj[mid]
        self.unlink(mid, u)
        self.unlink(mid, v)
        self.link(u, v)
        label = self.leaf_label.pop(leaf)
        del self.node_of_label[label]
        del self.adj[leaf]
        del self.adj[mid]

    # -- structure ----------------------------------------------------------

    def path_between(self, label_u: str, label_v: str) -> list[int]:
        """Node ids on the tree path between two leaf labels, inclusive."""
        try:
            src = self.node_of_label[label_u]
            dst = self.node_of_label[label_v]
        except KeyError as missing:
            raise ValidationError(f"label {missing.args[0]!r} is not a leaf") from None
        parent = {src: src}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            if x == dst:
                break
            for y in self.adj[x]:
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        path = [dst]
        while path[-1] != src:
            path.append(parent[path[-1]])
        path.reverse()
        return path

    def restrict_to(self, labels: Iterable[str]) -> "BranchDecomposition":
        """Topological restriction to a leaf subset, degree-2 nodes suppressed."""
        keep = set(labels)
        unknown = keep - set(self.node_of_label)
        if unknown:
            raise ValidationError(f"labels {sorted(unknown)} are not leaves")
        adj = {k: set(v) for k, v in self.adj.items()}
        labels_of = dict(self.leaf_label)
        # prune leaves outside the kept set, then splice degree-2 nodes
        changed = True
        while changed:
            changed = False
            for node in list(adj):
                deg = len(adj[node])
                if deg <= 1 and labels_of.get(node) not in keep and len(adj) > 1:
                    for other in list(adj[node]):
                        adj[other].discard(node)
                    del adj[node]
                    labels_of.pop(node, None)
                    changed = True
                elif deg == 2 and node not in labels_of:
                    u, v = sorted(adj[node])
                    adj[u].discard(node)
                    adj[v].discard(node)
                    adj[u].add(v)
                    adj[v].add(u)
                    del adj[node]
                    changed = True
        edges = [(a, b) for a in adj for b in adj[a] if a < b]
        return BranchDecomposition.from_parts(edges, {k: v for k, v in labels_of.items() if v in keep})

    def canonical_form(self) -> str:
        """Canonical string: equal strings iff equal leaf-labelled trees.

        Rooted at the tree edge incident to the smallest leaf label, with
        subtrees sorted by their recursive form.
        """
        if not self.adj:
            return ""
        if self.num_nodes == 1:
            (node,) = self.adj
            return self.leaf_label.get(node, "?")
        min_label = min(self.node_of_label)
        root_leaf = self.node_of_label[min_label]
        (anchor,) = self.adj[root_leaf]

        def rec(node: int, parent: int) -> str:
            if node in self.leaf_label:
                return self.leaf_label[node]
            parts = sorted(rec(c, node) for c in self.adj[node] if c != parent)
            return "(" + ",".join(parts) + ")"

        return f"({min_label},{rec(anchor, root_leaf)})"

    def to_newick(self) -> str:
        """Deterministic Newick with unlabelled internal nodes."""
        if not self.adj:
            return ";"
        if self.num_nodes == 1:
            (node,) = self.adj
            return f"{self.leaf_label[node]};"
        if self.num_leaves == 2:
            a, b = sorted(self.node_of_label)
            return f"({a},{b});"
        min_label = min(self.node_of_label)
        root = self.adj[self.node_of_label[min_label]][0]

        def rec(node: int, parent: int) -> tuple[int, str, str]:
            if node in self.leaf_label:
                name = self.leaf_label[node]
                return (0, name, name)
            parts = sorted(rec(c, node) for c in self.adj[node] if c != parent)
            text = "(" + ",".join(p[2] for p in parts) + ")"
            return (1, text, text)

        children = sorted(rec(c, root) for c in self.adj[root])
        return "(" + ",".join(p[2] for p in children) + ");"

    def __repr__(self) -> str:
        return f"BranchDecomposition({self.to_newick()!r})"


def parse_newick(text: str) -> BranchDecomposition:
    """Parse Newick with unlabelled internal nodes into an unrooted tree.

    A rooted binary top level like ``((a,b),(c,d));`` is accepted; the
    degree-2 root is spliced away.  Internal labels and branch lengths are
    not supported.
    """
    s = text.strip()
    if not s.endswith(";"):
        raise ValidationError("newick must end with ';'")
    s = s[:-1].strip()
    if not s:
        raise ValidationError("empty newick")
    t = BranchDecomposition()
    pos = 0

    def parse_node() -> int:
        nonlocal pos
        if pos < len(s) and s[pos] == "(":
            pos += 1
            node = t.new_node()
            while True:
                child = parse_node()
                t.link(node, child)
                if pos >= len(s):
                    raise ValidationError("unbalanced parentheses")
                if s[pos] == ",":
                    pos += 1
                    continue
                if s[pos] == ")":
                    pos += 1
                    if pos < len(s) and s[pos] not in ",();":
                        raise ValidationError("internal node labels are not supported")
                    return node
                raise ValidationError(f"unexpected character {s[pos]!r} at {pos}")
        start = pos
        while pos < len(s) and s[pos] not in "(),;":
            pos += 1
        name = s[start:pos].strip()
        if not name:
            raise ValidationError(f"missing leaf name at position {start}")
        return t.new_node(name)

    root = parse_node()
    if pos != len(s):
        raise ValidationError(f"trailing characters {s[pos:]!r}")
    if len(t.adj[root]) == 2 and root not in t.leaf_label:
        u, v = t.adj[root]
        t.unlink(root, u)
        t.unlink(root, v)
        t.link(u, v)
        del t.adj[root]
    t.validate()
    return t


def caterpillar_from_order(order: TotalOrder) -> BranchDecomposition:
    """Ternary caterpillar realizing a total order.

    The spine carries one leaf per interior position; both spine ends carry
    two leaves.  Orders with fewer than four elements give the degenerate
    edge or star tree.
    """
    seq = list(order)
    if len(set(seq)) != len(seq):
        dupes = sorted({x for x in seq if seq.count(x) > 1})
        raise ValidationError(f"order has duplicate elements {dupes}")
    if not seq:
        raise ValidationError("order must be nonempty")
    t = BranchDecomposition()
    n = len(seq)
    if n == 1:
        t.new_node(seq[0])
        return t
    if n == 2:
        a = t.new_node(seq[0])
        b = t.new_node(seq[1])
        t.link(a, b)
        return t
    if n == 3:
        center = t.new_node()
        for name in seq:
            t.link(center, t.new_node(name))
        return t
    spine = [t.new_node() for _ in range(n - 2)]
    for a, b in zip(spine, spine[1:]):
        t.link(a, b)
    t.link(spine[0], t.new_node(seq[0]))
    for i, name in enumerate(seq[1:-1]):
        t.link(spine[i], t.new_node(name))
    t.link(spine[-1], t.new_node(seq[-1]))
    return t


def is_caterpillar(t: BranchDecomposition) -> bool:
    """True when the internal nodes induce a path.

    Internal nodes of a tree always induce a subtree, so it suffices that
    no internal node has three internal neighbors.
    """
    for node in t.internal_nodes():
        internal_deg = sum(1 for x in t.adj[node] if not t.is_leaf(x))
        if internal_deg > 2:
            return False
    return True


def realizes(t: BranchDecomposition, order: TotalOrder) -> bool:
    """Whether the caterpillar for ``order`` equals ``t`` as a labelled tree."""
    if set(order) != set(t.node_of_label):
        raise ValidationError("order and tree cover different ground sets")
    return caterpillar_from_order(order).canonical_form() == t.canonical_form()


def order_realized_by(t: BranchDecomposition) -> tuple[str, ...]:
    """Some total order realized by a caterpillar, chosen deterministically."""
    if not is_caterpillar(t):
        raise ValidationError("tree is not a caterpillar")
    labels = sorted(t.node_of_label)
    if t.num_leaves <= 3:
        return tuple(labels)
    internal = t.internal_nodes()
    ends = [v for v in internal if sum(1 for x in t.adj[v] if not t.is_leaf(x)) <= 1]

    def walk(start: int) -> tuple[str, ...]:
        seq: list[str] = []
        prev = -1
        node = start
        while True:
            leaves_here = sorted(t.leaf_label[x] for x in t.adj[node] if t.is_leaf(x))
            seq.extend(leaves_here)
            nxt = [x for x in t.adj[node] if not t.is_leaf(x) and x != prev]
            if not nxt:
                return tuple(seq)
            prev, node = node, nxt[0]

    return min(walk(ends[0]), walk(ends[-1]))


def edge_side_masks(t: BranchDecomposition, g: Graph) -> list[tuple[tuple[int, int], int]]:
    """One (tree edge, bitmask of one side's graph vertices) per tree edge.

    The mask covers the component on the far side from the traversal root;
    the other side is the complement within the tree's label set.
    """
    if t.labels() != frozenset(g.vertices):
        missing = sorted(frozenset(g.vertices) ^ t.labels())
        raise ValidationError(f"tree leaves and graph vertices differ on {missing}")
    if t.num_nodes <= 1:
        return []
    root = min(t.adj)
    order = []
    parent = {root: -1}
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in t.adj[x]:
            if y != parent[x]:
                parent[y] = x
                stack.append(y)
    below = {node: 0 for node in t.adj}
    for x in reversed(order):
        if t.is_leaf(x):
            below[x] |= 1 << g.index[t.leaf_label[x]]
        if parent[x] != -1:
            below[parent[x]] |= below[x]
    out = []
    for a, b in t.edges():
        child = b if parent.get(b) == a else a
        out.append(((a, b), below[child]))
    return out


def cuts_of(t: BranchDecomposition, g: Graph) -> list[tuple[tuple[int, int], Cut]]:
    """The cut of every tree edge: the bipartition by the two components of T - e."""
    full = frozenset(g.vertices)
    out = []
    for edge, mask in edge_side_masks(t, g):
        side = frozenset(g.names[i] for i in range(g.n) if (mask >> i) & 1)
        out.append((edge, Cut(side, full - side)))
    return out


def enumerate_ternary_trees(leaves: Iterable[str]) -> Iterator[BranchDecomposition]:
    """All leaf-labelled ternary trees, each exactly once, by leaf insertion.

    There are (2n-5)!! trees on n >= 3 leaves; below that the degenerate
    tree is the only one.
    """
    names = list(leaves)
    if len(set(names)) != len(names):
        raise ValidationError("leaf names must be distinct")
    if not names:
        return
    if len(names) <= 3:
        yield caterpillar_from_order(names)
        return
    t = caterpillar_from_order(names[:3])

    def rec(k: int) -> Iterator[BranchDecomposition]:
        if k == len(names):
            yield t.copy()
            return
        for edge in t.edges():
            leaf, _ = t.insert_leaf(edge, names[k])
            yield from rec(k + 1)
            t.remove_leaf(leaf)

    yield from rec(3)


def enumerate_orders(elements: Iterable[str], dedup_reversals: bool = False) -> Iterator[tuple[str, ...]]:
    """All total orders of the ground set, optionally one per reversal pair."""
    names = list(elements)
    if len(set(names)) != len(names):
        raise ValidationError("elements must be distinct")
    for perm in itertools.permutations(names):
        if dedup_reversals and perm > perm[::-1]:
            continue
        yield perm
