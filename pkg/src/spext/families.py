"""Constructors for the named extremal graphs and edge-count bounds.

``h_n`` is the star with its leaves paired off into triangles (plus one
leftover pendant leaf when the order is even); it is the spectral-radius
maximizer among cacti.  ``k1n_plus`` is the star with a single extra
leaf-leaf edge; it is the maximizer among unicyclic graphs.
"""
from __future__ import annotations

from .graphs import Graph, GraphError, is_cactus, is_connected, make_graph


def star(n: int) -> Graph:
    """K_{1,n-1}: vertex 0 adjacent to all others."""
    if n < 2:
        raise GraphError(f"star needs n >= 2, got {n}")
    return make_graph(n, [(0, i) for i in range(1, n)])


def h_n(n: int) -> Graph:
    """Star plus floor((n-1)/2) independent edges pairing leaves (1,2), (3,4), ...

    For odd n every leaf is matched into a triangle; for even n exactly
    one pendant leaf remains.  Total edges: n - 1 + floor((n-1)/2).
    """
    if n < 3:
        raise GraphError(f"h_n needs n >= 3, got {n}")
    edges = [(0, i) for i in range(1, n)]
    edges += [(i, i + 1) for i in range(1, n - 1, 2)]
    return make_graph(n, edges)


def k1n_plus(n: int) -> Graph:
    """Star plus the single leaf edge (1, 2); unicyclic with max degree n-1."""
    if n < 3:
        raise GraphError(f"k1n_plus needs n >= 3, got {n}")
    return make_graph(n, [(0, i) for i in range(1, n)] + [(1, 2)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def max_cactus_edges(n: int) -> int:
    """Maximum edge count of a connected cactus on n vertices.

    n - 1 + floor((n-1)/2) for n >= 3 (a spanning tree plus one extra
    edge per disjoint triangle); n - 1 below that.  The enumeration
    suite revalidates this against the exhaustive maximum for small n
    rather than trusting the closed form.
    """
    if n < 1:
        raise GraphError(f"order must be positive, got {n}")
    if n <= 2:
        return n - 1
    return n - 1 + (n - 1) // 2


def is_max_edge_cactus(G: Graph) -> bool:
    """Connected cactus attaining the maximum edge count for its order."""
    if G.n < 1:
        return False
    return G.m == max_cactus_edges(G.n) and is_connected(G) and is_cactus(G)


def is_edge_maximal_cactus(G: Graph) -> bool:
    """Connected cactus to which no edge can be added without breaking
    the cactus property.

    Implied by, but weaker than, :func:`is_max_edge_cactus`.
    """
    if G.n < 1 or not is_connected(G) or not is_cactus(G):
        return False
    for u, v in G.non_edges():
        if is_cactus(G.add_edge(u, v)):
            return False
    return True
