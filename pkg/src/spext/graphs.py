"""Immutable simple graphs and the structural machinery built on them.

A :class:`Graph` is a vertex count plus a canonically sorted tuple of
edges; everything else (adjacency, degrees, connectivity, biconnected
blocks, the cactus-family predicates, canonical labeling) is derived on
demand and cached.  All operations are pure, so graphs can be shared
freely between workers.

Canonical labeling is a brute-force search with color-refinement pruning,
hard-capped at ``CANONICAL_ORDER_CAP`` vertices.  It is a *complete*
isomorphism invariant: two graphs get the same label iff they are
isomorphic.
"""
from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

Edge = tuple[int, int]

CANONICAL_ORDER_CAP = 12


class GraphError(ValueError):
    """Invalid graph construction or structural query."""


class UnsupportedOrderError(GraphError):
    """Requested operation beyond its documented order cap."""


class EdgeListFormatError(GraphError):
    """Malformed edge-list text; carries the 1-based offending line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` holds each pair sorted and the tuple itself sorted
    lexicographically.  Build instances through :func:`make_graph`, which
    validates and canonicalizes; the raw constructor trusts its input.
    """

    n: int
    edges: tuple[Edge, ...]

    @functools.cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @functools.cached_property
    def bitrows(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.adjacency)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u] if 0 <= u < self.n else False

    def non_edges(self) -> list[Edge]:
        present = set(self.edges)
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (u, v) not in present
        ]

    def add_edge(self, u: int, v: int) -> "Graph":
        if self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) already present")
        return make_graph(self.n, self.edges + ((u, v),))

    def remove_edge(self, u: int, v: int) -> "Graph":
        e = (min(u, v), max(u, v))
        if e not in set(self.edges):
            raise GraphError(f"edge ({u}, {v}) not present")
        return Graph(self.n, tuple(x for x in self.edges if x != e))

    def __repr__(self) -> str:  # keep reprs short in assertion output
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def make_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Validate and canonicalize an edge list into a :class:`Graph`.

    Input order and pair orientation are irrelevant to the result.
    Rejects self-loops, duplicate edges and out-of-range endpoints,
    naming the offending pair.
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    seen: set[Edge] = set()
    for pair in edge_list:
        try:
            u, v = pair
        except (TypeError, ValueError):
            raise GraphError(f"edge {pair!r} is not a vertex pair") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v}) is not allowed")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise GraphError(f"duplicate edge ({u}, {v})")
        seen.add(e)
    return Graph(n, tuple(sorted(seen)))


def neighbors(G: Graph, v: int) -> frozenset[int]:
    """Vertices adjacent to ``v``."""
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} outside 0..{G.n - 1}")
    return G.adjacency[v]


def is_connected(G: Graph) -> bool:
    """True iff a traversal from vertex 0 reaches every vertex (n >= 1)."""
    if G.n < 1:
        raise GraphError("connectivity needs at least one vertex")
    seen = 1  # bitmask of reached vertices
    rows = G.bitrows
    frontier = deque([0])
    while frontier:
        u = frontier.popleft()
        fresh = rows[u] & ~seen
        seen |= fresh
        while fresh:
            b = fresh & -fresh
            frontier.append(b.bit_length() - 1)
            fresh ^= b
    return seen == (1 << G.n) - 1


def connected_components(G: Graph) -> list[frozenset[int]]:
    rows = G.bitrows
    unseen = (1 << G.n) - 1
    comps = []
    while unseen:
        start = (unseen & -unseen).bit_length() - 1
        comp = 1 << start
        frontier = deque([start])
        while frontier:
            u = frontier.popleft()
            fresh = rows[u] & ~comp
            comp |= fresh
            while fresh:
                b = fresh & -fresh
                frontier.append(b.bit_length() - 1)
                fresh ^= b
        comps.append(frozenset(i for i in range(G.n) if comp >> i & 1))
        unseen &= ~comp
    return comps


@dataclass(frozen=True)
class BlockDecomposition:
    """Biconnected blocks (as edge tuples) plus the cut vertices.

    Blocks partition the edge set; each block is a single edge or a
    2-connected subgraph.  Blocks and the edges inside them are sorted,
    so the decomposition is deterministic.
    """

    blocks: tuple[tuple[Edge, ...], ...]
    cut_vertices: frozenset[int]


def block_decomposition(G: Graph) -> BlockDecomposition:
    """Hopcroft-Tarjan biconnected components, iteratively (no recursion cap)."""
    n = G.n
    adj = [sorted(s) for s in G.adjacency]
    disc = [-1] * n
    low = [0] * n
    edge_stack: list[Edge] = []
    blocks: list[tuple[Edge, ...]] = []
    cuts: set[int] = set()
    timer = 0

    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_blocks = 0
        stack: list[tuple[int, int, object]] = [(root, -1, iter(adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            w = next(it, None)  # type: ignore[arg-type]
            if w is None:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    if low[u] < low[p]:
                        low[p] = low[u]
                    if low[u] >= disc[p]:
                        # close the block hanging off tree edge (p, u)
                        blk = []
                        target = (min(p, u), max(p, u))
                        while True:
                            e = edge_stack.pop()
                            blk.append(e)
                            if e == target:
                                break
                        blocks.append(tuple(sorted(blk)))
                        if p == root:
                            root_blocks += 1
                        else:
                            cuts.add(p)
                continue
            if disc[w] == -1:
                edge_stack.append((min(u, w), max(u, w)))
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, u, iter(adj[w])))
            elif w != parent and disc[w] < disc[u]:
                edge_stack.append((min(u, w), max(u, w)))
                if disc[w] < low[u]:
                    low[u] = disc[w]
        if root_blocks > 1:
            cuts.add(root)

    blocks.sort()
    return BlockDecomposition(tuple(blocks), frozenset(cuts))


def _block_vertex_count(block: tuple[Edge, ...]) -> int:
    verts: set[int] = set()
    for u, v in block:
        verts.add(u)
        verts.add(v)
    return len(verts)


def is_cactus(G: Graph) -> bool:
    """True iff every block is a single edge or a cycle.

    Equivalent to the pairwise condition that any two cycles share at
    most one vertex.  Disconnected inputs are legal; a forest of cacti
    is a cactus.
    """
    for block in block_decomposition(G).blocks:
        if len(block) == 1:
            continue
        if len(block) != _block_vertex_count(block):
            return False
    return True


def is_odd_cycle_graph(G: Graph) -> bool:
    """True iff every cycle of G has odd length.

    Checked block-wise: every block must be a single edge or an odd
    cycle.  (A 2-connected non-cycle block always contains an even
    cycle, so the block test is equivalent to the cycle-by-cycle one;
    the test suite cross-validates this against explicit cycle
    enumeration on small orders.)
    """
    for block in block_decomposition(G).blocks:
        if len(block) == 1:
            continue
        if len(block) != _block_vertex_count(block) or len(block) % 2 == 0:
            return False
    return True


def is_unicyclic(G: Graph) -> bool:
    """True iff G is connected with exactly n edges (one independent cycle)."""
    if G.n < 1:
        return False
    return G.m == G.n and is_connected(G)


def t_count(G: Graph) -> int:
    """Number of vertices of degree >= 3."""
    return sum(1 for d in G.degrees() if d >= 3)


# --------------------------------------------------------------------------
# canonical labeling


def _refined_colors(rows: Sequence[int], n: int) -> list[int]:
    """Stable vertex coloring by iterated neighbor-color refinement.

    Color ids are ranks of invariant signatures, so corresponding
    vertices of isomorphic graphs receive identical ids.
    """
    colors = [rows[v].bit_count() for v in range(n)]
    while True:
        sigs = []
        for v in range(n):
            nb = []
            r = rows[v]
            while r:
                b = r & -r
                nb.append(colors[b.bit_length() - 1])
                r ^= b
            nb.sort()
            sigs.append((colors[v], tuple(nb)))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        fresh = [ranking[s] for s in sigs]
        if len(ranking) == len(set(colors)):
            return fresh
        colors = fresh


def _twin_roots(rows: Sequence[int], n: int) -> list[int]:
    """Union-find roots of the twin relation.

    Two vertices are twins when swapping them is an automorphism: equal
    open neighborhoods, or equal closed neighborhoods when adjacent.
    Chained twins still yield pure transposition automorphisms, so one
    search branch per class suffices.
    """
    root = list(range(n))
    for u in range(n):
        if root[u] != u:
            continue
        ru = rows[u]
        for v in range(u + 1, n):
            if root[v] != v:
                continue
            if ru == rows[v] or (ru ^ (1 << v)) == (rows[v] ^ (1 << u)):
                root[v] = u
    return root


def _canon_code(rows: Sequence[int], n: int) -> tuple[int, ...]:
    """Lexicographically minimal adjacency code over color-respecting orders.

    The code has one integer per placement position p >= 1, holding the
    adjacency bits between the placed vertex and the p earlier ones.
    Minimizing it over all vertex orders that respect the refined color
    classes yields a complete isomorphism invariant.  Twin classes are
    collapsed to a single branch; that only removes automorphic
    duplicates from the search.
    """
    if n <= 1:
        return ()
    colors = _refined_colors(rows, n)
    twins = _twin_roots(rows, n)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    pos_color: list[int] = []
    for c in sorted(cells):
        pos_color.extend([c] * len(cells[c]))

    used = [False] * n
    chosen: list[int] = []
    cur: list[int] = []
    best: list[int] | None = None

    def dfs(p: int) -> None:
        nonlocal best
        if p == n:
            if best is None or cur < best:
                best = cur.copy()
            return
        cands = [v for v in cells[pos_color[p]] if not used[v]]
        if p == 0:
            seen_twin: set[int] = set()
            for v in cands:
                if twins[v] in seen_twin:
                    continue
                seen_twin.add(twins[v])
                used[v] = True
                chosen.append(v)
                dfs(1)
                chosen.pop()
                used[v] = False
            return
        scored = []
        for v in cands:
            r = rows[v]
            vec = 0
            for w in chosen:
                vec = (vec << 1) | (r >> w & 1)
            scored.append((vec, v))
        scored.sort()
        minvec = scored[0][0]
        # prune against the incumbent when our prefix ties it
        if best is not None and cur == best[: p - 1] and minvec > best[p - 1]:
            return
        seen_twin = set()
        for vec, v in scored:
            if vec != minvec:
                break
            if twins[v] in seen_twin:
                continue
            if best is not None and cur == best[: p - 1] and vec > best[p - 1]:
                continue
            seen_twin.add(twins[v])
            used[v] = True
            chosen.append(v)
            cur.append(vec)
            dfs(p + 1)
            cur.pop()
            chosen.pop()
            used[v] = False

    dfs(0)
    assert best is not None
    return tuple(best)


def _code_to_edges(code: Sequence[int], offset: int = 0) -> list[Edge]:
    edges = []
    for p, vec in enumerate(code, start=1):
        for i in range(p):
            if vec >> (p - 1 - i) & 1:
                edges.append((i + offset, p + offset))
    return edges


def _component_masks(rows: Sequence[int], n: int) -> list[int]:
    unseen = (1 << n) - 1
    masks = []
    while unseen:
        start = unseen & -unseen
        comp = start
        frontier = [start.bit_length() - 1]
        while frontier:
            fresh = rows[frontier.pop()] & ~comp
            comp |= fresh
            while fresh:
                b = fresh & -fresh
                frontier.append(b.bit_length() - 1)
                fresh ^= b
        masks.append(comp)
        unseen &= ~comp
    return masks


@functools.lru_cache(maxsize=1 << 18)
def _canon_code_cached(rows: tuple[int, ...], n: int) -> tuple[int, ...]:
    return _canon_code(rows, n)


def _canon_rows(rows: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Adjacency rows of the canonical representative.

    Disconnected graphs are canonicalized component by component; the
    components are then laid out in sorted (order, code) order.  This
    keeps the search cheap on the disjoint unions that enumeration
    passes through.
    """
    if n <= 1:
        return tuple([0] * n)
    masks = _component_masks(rows, n)
    if len(masks) == 1:
        code = _canon_code_cached(rows, n)
        out = [0] * n
        for u, v in _code_to_edges(code):
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)
    pieces = []
    for mask in masks:
        verts = []
        mm = mask
        while mm:
            b = mm & -mm
            verts.append(b.bit_length() - 1)
            mm ^= b
        index = {v: i for i, v in enumerate(verts)}
        k = len(verts)
        sub = [0] * k
        for v in verts:
            r = rows[v] & mask
            while r:
                b = r & -r
                sub[index[v]] |= 1 << index[b.bit_length() - 1]
                r ^= b
        pieces.append((k, _canon_code_cached(tuple(sub), k)))
    pieces.sort()
    out = [0] * n
    offset = 0
    for k, code in pieces:
        for u, v in _code_to_edges(code, offset):
            out[u] |= 1 << v
            out[v] |= 1 << u
        offset += k
    return tuple(out)


def _rows_to_edges(rows: Sequence[int], n: int) -> tuple[Edge, ...]:
    edges = []
    for u in range(n):
        r = rows[u] >> (u + 1)
        v = u + 1
        while r:
            if r & 1:
                edges.append((u, v))
            r >>= 1
            v += 1
    return tuple(edges)


def _check_canonical_cap(n: int) -> None:
    if n > CANONICAL_ORDER_CAP:
        raise UnsupportedOrderError(
            f"canonical labeling supports n <= {CANONICAL_ORDER_CAP}, got {n}"
        )


@functools.lru_cache(maxsize=1 << 16)
def canonical_label(G: Graph) -> bytes:
    """Complete isomorphism invariant for small graphs, as compact bytes."""
    _check_canonical_cap(G.n)
    rows = _canon_rows(G.bitrows, G.n)
    acc = 0
    for u in range(G.n):
        for v in range(u + 1, G.n):
            acc = (acc << 1) | (rows[u] >> v & 1)
    nbits = G.n * (G.n - 1) // 2
    return bytes([G.n]) + acc.to_bytes((nbits + 7) // 8, "big")


def canonical_graph(G: Graph) -> Graph:
    """The canonically labeled representative of G's isomorphism class."""
    _check_canonical_cap(G.n)
    rows = _canon_rows(G.bitrows, G.n)
    return Graph(G.n, _rows_to_edges(rows, G.n))


def isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or G.m != H.m:
        return False
    return canonical_label(G) == canonical_label(H)


# --------------------------------------------------------------------------
# edge-list text format


def parse_edge_list(text: str) -> Graph:
    """Read the plain edge-list format.

    Line 1 is ``n m``; the next m lines are ``u v`` with 0-based
    endpoints.  ``#`` starts a comment; blank lines are skipped.
    """
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    first_line: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise EdgeListFormatError(lineno, f"expected 'n m' header, got {raw!r}")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListFormatError(lineno, f"non-integer header {raw!r}") from None
            if n < 0 or m < 0:
                raise EdgeListFormatError(lineno, "n and m must be nonnegative")
            header = (n, m)
            continue
        if len(parts) != 2:
            raise EdgeListFormatError(lineno, f"expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListFormatError(lineno, f"non-integer endpoint in {raw!r}") from None
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListFormatError(lineno, f"endpoint outside 0..{n - 1} in {raw!r}")
        if u == v:
            raise EdgeListFormatError(lineno, f"self-loop {u} {v}")
        e = (min(u, v), max(u, v))
        if e in first_line:
            raise EdgeListFormatError(
                lineno, f"duplicate edge {u} {v} (first seen on line {first_line[e]})"
            )
        first_line[e] = lineno
        edges.append(e)
    if header is None:
        raise EdgeListFormatError(1, "empty input, expected 'n m' header")
    if len(edges) != header[1]:
        raise EdgeListFormatError(
            1, f"header declares {header[1]} edges but {len(edges)} were given"
        )
    return make_graph(header[0], edges)


def format_edge_list(G: Graph) -> str:
    """Canonical text form: header then lexicographically sorted edges."""
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"
