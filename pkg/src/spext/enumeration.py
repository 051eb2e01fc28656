"""Isomorph-free exhaustive generation and brute-force extremal checks.

Graphs of a class are generated by edge augmentation: starting from the
edgeless graph, each level adds one edge to every representative of the
previous level and deduplicates by canonical form.  Classes whose
defining property is hereditary under edge deletion (cactus, at most
one independent cycle, no even cycle) prune the search: once a partial
graph violates the property no supergraph can recover it.

:func:`verify_extremal` then computes the spectral radius of every
member of a class and checks that the expected family member is the
unique maximizer beyond the numerical guard.  A failure raises
:class:`CounterexampleError` with the offending graph serialized; this
is deliberately the loudest failure mode in the package.

The per-order caps keep everything desk-scale: class enumeration to
``MAX_CLASS_ORDER`` vertices and whole-graph sweeps to
``MAX_SWEEP_ORDER``.
"""
from __future__ import annotations

import enum
import functools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

from .families import h_n, k1n_plus, max_cactus_edges
from .graphs import (
    Graph,
    UnsupportedOrderError,
    _canon_rows,
    _rows_to_edges,
    canonical_label,
    format_edge_list,
    is_cactus,
    is_connected,
    is_odd_cycle_graph,
)
from .spectral import DEFAULT_TOL, PerronResult, spectral_radius

MAX_CLASS_ORDER = 9
MAX_SWEEP_ORDER = 8

VERIFY_GUARD = 1e-8


class ClassName(enum.Enum):
    CACTUS = "cactus"
    MAX_EDGE_CACTUS = "max_edge_cactus"
    UNICYCLIC = "unicyclic"
    ODD_CYCLE = "odd_cycle"


class CounterexampleError(RuntimeError):
    """An exhaustive check found a graph violating the claimed property."""

    def __init__(self, message: str, graph: Graph):
        super().__init__(f"{message}\ncounterexample:\n{format_edge_list(graph)}")
        self.graph = graph


@dataclass(frozen=True)
class ClassReport:
    """Outcome of one exhaustive extremal check.

    ``unique_argmax`` means exactly one isomorphism class attains the
    maximum spectral radius beyond the numerical guard.
    """

    class_name: ClassName
    n: int
    iso_class_count: int
    max_rho: float
    argmax_canonical: Graph
    unique_argmax: bool
    runtime_ms: float


Rows = tuple[int, ...]


def _graph_from_rows(rows: Rows, n: int) -> Graph:
    return Graph(n, _rows_to_edges(rows, n))


def _cyclomatic_at_most_one(G: Graph) -> bool:
    comps = 0
    rows = G.bitrows
    unseen = (1 << G.n) - 1
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
        comps += 1
        unseen &= ~comp
    return G.m - G.n + comps <= 1


def _augment_levels(
    n: int, max_edges: int, keep: Callable[[Graph], bool] | None
) -> list[list[Rows]]:
    """Levels of canonical row-tuples, level m holding all m-edge graphs.

    ``keep`` must be hereditary under edge deletion for the pruning to
    be exhaustive.
    """
    levels: list[list[Rows]] = [[tuple([0] * n)]]
    for m in range(max_edges):
        nxt: set[Rows] = set()
        seen_labeled: set[Rows] = set()
        for rows in levels[m]:
            for u in range(n):
                ru = rows[u]
                for v in range(u + 1, n):
                    if ru >> v & 1:
                        continue
                    child = list(rows)
                    child[u] |= 1 << v
                    child[v] |= 1 << u
                    trows = tuple(child)
                    if trows in seen_labeled:
                        continue
                    seen_labeled.add(trows)
                    if keep is not None and not keep(_graph_from_rows(trows, n)):
                        continue
                    nxt.add(_canon_rows(trows, n))
        levels.append(sorted(nxt))
    return levels


@functools.lru_cache(maxsize=32)
def _all_graph_levels(n: int) -> tuple[tuple[Rows, ...], ...]:
    return tuple(tuple(lv) for lv in _augment_levels(n, n * (n - 1) // 2, None))


@functools.lru_cache(maxsize=64)
def _class_members(n: int, class_name: ClassName) -> tuple[Graph, ...]:
    if class_name is ClassName.UNICYCLIC:
        levels = _augment_levels(n, n, _cyclomatic_at_most_one)
        pool = levels[n]
    elif class_name is ClassName.CACTUS:
        levels = _augment_levels(n, max_cactus_edges(n), is_cactus)
        pool = [rows for lv in levels for rows in lv]
    elif class_name is ClassName.MAX_EDGE_CACTUS:
        levels = _augment_levels(n, max_cactus_edges(n), is_cactus)
        pool = levels[max_cactus_edges(n)]
    elif class_name is ClassName.ODD_CYCLE:
        levels = _augment_levels(n, max_cactus_edges(n), is_odd_cycle_graph)
        pool = [rows for lv in levels for rows in lv]
    else:  # pragma: no cover - exhaustive enum
        raise ValueError(f"unknown class {class_name}")
    members = [_graph_from_rows(rows, n) for rows in pool]
    return tuple(G for G in members if is_connected(G))


def enumerate_class(n: int, class_name: ClassName) -> Iterator[Graph]:
    """One canonical representative per isomorphism class, connected only.

    Deterministic order: by edge count, then by canonical form.
    """
    if not 3 <= n <= MAX_CLASS_ORDER:
        raise UnsupportedOrderError(
            f"class enumeration supports 3 <= n <= {MAX_CLASS_ORDER}, got {n}"
        )
    yield from _class_members(n, class_name)


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """All connected graphs of order n up to isomorphism (sweep-scale cap)."""
    if not 1 <= n <= MAX_SWEEP_ORDER:
        raise UnsupportedOrderError(
            f"whole-graph sweeps support 1 <= n <= {MAX_SWEEP_ORDER}, got {n}"
        )
    for level in _all_graph_levels(n):
        for rows in level:
            G = _graph_from_rows(rows, n)
            if is_connected(G):
                yield G


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """All graphs of order n up to isomorphism, connected or not."""
    if not 1 <= n <= MAX_SWEEP_ORDER:
        raise UnsupportedOrderError(
            f"whole-graph sweeps support 1 <= n <= {MAX_SWEEP_ORDER}, got {n}"
        )
    for level in _all_graph_levels(n):
        for rows in level:
            yield _graph_from_rows(rows, n)


def all_cycles(G: Graph, max_order: int = MAX_CLASS_ORDER) -> list[tuple[int, ...]]:
    """Every simple cycle of G exactly once, up to rotation and reflection.

    Each cycle is reported as a vertex sequence starting at its smallest
    vertex, oriented toward the smaller neighbor.  Exponential-time DFS;
    fine at sweep scale.
    """
    if G.n > max_order:
        raise UnsupportedOrderError(
            f"cycle enumeration supports n <= {max_order}, got {G.n}"
        )
    rows = G.bitrows
    cycles: list[tuple[int, ...]] = []
    for s in range(G.n):
        sbit = 1 << s
        low_excl = (1 << (s + 1)) - 1  # forbid vertices <= s inside the cycle
        path = [s]
        mask = sbit
        stack: list[tuple[int, int]] = [(s, rows[s] & ~low_excl)]
        while stack:
            v, rem = stack[-1]
            if rem:
                b = rem & -rem
                stack[-1] = (v, rem ^ b)
                w = b.bit_length() - 1
                path.append(w)
                mask |= b
                if len(path) >= 3 and rows[w] & sbit and path[1] < path[-1]:
                    cycles.append(tuple(path))
                stack.append((w, rows[w] & ~mask & ~low_excl))
            else:
                stack.pop()
                if v != s:
                    mask ^= 1 << v
                    path.pop()
    cycles.sort(key=lambda c: (len(c), c))
    return cycles


def _expected_extremal(n: int, class_name: ClassName) -> Graph:
    if class_name is ClassName.UNICYCLIC:
        return k1n_plus(n)
    return h_n(n)


def _rho_many(graphs: list[Graph], jobs: int) -> list[PerronResult]:
    if jobs > 1 and len(graphs) >= 64:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(spectral_radius, graphs, chunksize=32))
    return [spectral_radius(G) for G in graphs]


def verify_extremal(
    n: int,
    class_name: ClassName,
    guard: float = VERIFY_GUARD,
    jobs: int = 1,
) -> ClassReport:
    """Exhaustively confirm the expected spectral-radius maximizer.

    Enumerates the class, computes every spectral radius, and asserts
    that the expected family member is the unique argmax beyond
    ``guard`` plus the solver residuals.  Raises
    :class:`CounterexampleError` otherwise.
    """
    t0 = time.perf_counter()
    members = list(enumerate_class(n, class_name))
    results = _rho_many(members, jobs)
    best = max(range(len(members)), key=lambda i: results[i].rho)
    rb = results[best]
    near = [
        i
        for i in range(len(members))
        if rb.rho - results[i].rho <= rb.residual + results[i].residual + guard
    ]
    unique = len(near) == 1
    argmax = members[best]
    expected = _expected_extremal(n, class_name)
    if canonical_label(argmax) != canonical_label(expected):
        raise CounterexampleError(
            f"argmax over {class_name.value} graphs of order {n} is not the "
            f"expected extremal family member (rho {rb.rho!r})",
            argmax,
        )
    if not unique:
        rival = members[next(i for i in near if i != best)]
        raise CounterexampleError(
            f"argmax over {class_name.value} graphs of order {n} is not unique "
            f"within guard {guard:g}",
            rival,
        )
    runtime_ms = (time.perf_counter() - t0) * 1e3
    return ClassReport(
        class_name=class_name,
        n=n,
        iso_class_count=len(members),
        max_rho=rb.rho,
        argmax_canonical=argmax,
        unique_argmax=unique,
        runtime_ms=runtime_ms,
    )


def verify_odd_cycle_implies_cactus(n: int) -> bool:
    """Check over all connected graphs of order n that having only odd
    cycles forces the cactus property, cross-validating the block-based
    odd-cycle test against explicit cycle parity on every graph."""
    if not 1 <= n <= MAX_SWEEP_ORDER:
        raise UnsupportedOrderError(
            f"sweep supports 1 <= n <= {MAX_SWEEP_ORDER}, got {n}"
        )
    for G in enumerate_connected_graphs(n):
        by_blocks = is_odd_cycle_graph(G)
        by_parity = all(len(c) % 2 == 1 for c in all_cycles(G))
        if by_blocks != by_parity:
            raise CounterexampleError(
                f"odd-cycle predicate disagrees with cycle parity "
                f"(blocks say {by_blocks}, parity says {by_parity})",
                G,
            )
        if by_blocks and not is_cactus(G):
            raise CounterexampleError(
                "graph with only odd cycles is not a cactus", G
            )
    return True


# --------------------------------------------------------------------------
# report serialization

CSV_HEADER = "n,class,iso_classes,max_rho,argmax,unique,runtime_ms"


def _edges_compact(G: Graph) -> str:
    return " ".join(f"{u}-{v}" for u, v in G.edges)


def report_to_csv_row(report: ClassReport) -> str:
    return (
        f"{report.n},{report.class_name.value},{report.iso_class_count},"
        f"{report.max_rho!r},\"{_edges_compact(report.argmax_canonical)}\","
        f"{str(report.unique_argmax).lower()},{report.runtime_ms:.1f}"
    )


def report_to_json_dict(report: ClassReport) -> dict:
    return {
        "n": report.n,
        "class": report.class_name.value,
        "iso_classes": report.iso_class_count,
        "max_rho": report.max_rho,
        "argmax": {
            "n": report.argmax_canonical.n,
            "edges": [list(e) for e in report.argmax_canonical.edges],
        },
        "unique": report.unique_argmax,
        "runtime_ms": report.runtime_ms,
    }
