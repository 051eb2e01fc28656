"""Spectral-radius-increasing rewrites and the ascent pipelines built on them.

The primitive is :func:`sigma_switch`: detach a set of one vertex's
private neighbors and reattach them to another vertex.  When the target
vertex carries at least as much Perron weight as the source, the switch
strictly increases the spectral radius; the pipelines orient every
switch that way and *verify* the increase afterwards with the guarded
comparison, aborting loudly rather than letting a numerical near-tie
pass as progress.

Two ascents are provided:

* :func:`maximize_cactus` drives any connected cactus to the extremal
  cactus (star with paired leaves) via :func:`normalize_to_max_edge`
  followed by :func:`cactus_ascent`.
* :func:`unicyclic_ascent` drives any unicyclic graph to the extremal
  unicyclic graph (star plus one leaf edge).

Every pipeline records its rewrites in a :class:`TransformTrace` whose
replay reproduces the final graph exactly and whose spectral radii are
strictly increasing at every switch, merge and edge addition.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .families import is_max_edge_cactus
from .graphs import (
    Graph,
    GraphError,
    block_decomposition,
    format_edge_list,
    is_cactus,
    is_connected,
    is_unicyclic,
    make_graph,
    t_count,
)
from .spectral import (
    DEFAULT_TOL,
    Ordering,
    PerronResult,
    compare_results,
    spectral_radius,
)

# Perron entries closer than this are treated as tied and the switch is
# oriented toward the lower vertex label.  Under an exact tie either
# orientation satisfies the increase theorem; the fixed choice makes
# traces reproducible.
PERRON_TIE_GUARD = 1e-9


class TransformError(GraphError):
    """A rewrite was requested outside its preconditions."""


class TransformInvariantError(RuntimeError):
    """A guaranteed post-state failed to hold; indicates a bug or a
    numerically unresolvable step.  Carries the offending graphs."""

    def __init__(self, message: str, before: Graph, after: Graph):
        super().__init__(
            f"{message}\nbefore:\n{format_edge_list(before)}after:\n{format_edge_list(after)}"
        )
        self.before = before
        self.after = after


class StepKind(enum.Enum):
    SWITCH = "SWITCH"
    ADD_EDGE = "ADD_EDGE"
    DELETE_EDGE = "DELETE_EDGE"
    MERGE = "MERGE"


@dataclass(frozen=True)
class TransformStep:
    """One rewrite: ``moved`` lists the vertices rewired from v to u
    (empty for pure edge additions/deletions)."""

    kind: StepKind
    u: int
    v: int
    moved: frozenset[int]
    rho_before: float
    rho_after: float


@dataclass(frozen=True)
class TransformTrace:
    initial: Graph
    steps: tuple[TransformStep, ...]
    final: Graph


def sigma_switch(G: Graph, u: int, v: int, S: Iterable[int]) -> Graph:
    """Delete the edges v-s and add the edges u-s for every s in S.

    Requirements: u != v, S nonempty, S inside N(v) and disjoint from
    N(u) and {u} (which is what keeps the result simple).  The
    spectral-radius increase additionally needs G connected and the
    Perron entry of u at least that of v; that is the caller's (or the
    test suite's) obligation, not enforced here.
    """
    S = sorted(set(S))
    if not (0 <= u < G.n and 0 <= v < G.n):
        raise TransformError(f"vertices ({u}, {v}) outside 0..{G.n - 1}")
    if u == v:
        raise TransformError("u and v must be distinct")
    if not S:
        raise TransformError("S must be nonempty")
    nv, nu = G.adjacency[v], G.adjacency[u]
    for s in S:
        if not 0 <= s < G.n:
            raise TransformError(f"moved vertex {s} outside 0..{G.n - 1}")
        if s not in nv:
            raise TransformError(f"moved vertex {s} is not a neighbor of v={v}")
        if s == u or s in nu:
            raise TransformError(
                f"moved vertex {s} is u or a neighbor of u={u}; switch would "
                f"create a loop or duplicate edge"
            )
    dropped = {(min(v, s), max(v, s)) for s in S}
    edges = [e for e in G.edges if e not in dropped]
    edges.extend((min(u, s), max(u, s)) for s in S)
    return make_graph(G.n, edges)


# --------------------------------------------------------------------------
# traces


def replay_step(G: Graph, step: TransformStep) -> Graph:
    if step.kind in (StepKind.SWITCH, StepKind.MERGE):
        return sigma_switch(G, step.u, step.v, step.moved)
    if step.kind is StepKind.ADD_EDGE:
        return G.add_edge(step.u, step.v)
    if step.kind is StepKind.DELETE_EDGE:
        return G.remove_edge(step.u, step.v)
    raise TransformError(f"unknown step kind {step.kind}")  # pragma: no cover


def replay(trace: TransformTrace) -> Graph:
    """Re-apply the recorded steps; must reproduce ``trace.final``."""
    G = trace.initial
    for step in trace.steps:
        G = replay_step(G, step)
    return G


def graph_to_json_dict(G: Graph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.edges]}


def graph_from_json_dict(d: dict) -> Graph:
    return make_graph(d["n"], [tuple(e) for e in d["edges"]])


def trace_to_json_dict(trace: TransformTrace) -> dict:
    return {
        "initial": graph_to_json_dict(trace.initial),
        "steps": [
            {
                "kind": s.kind.value,
                "u": s.u,
                "v": s.v,
                "moved": sorted(s.moved),
                "rho_before": s.rho_before,
                "rho_after": s.rho_after,
            }
            for s in trace.steps
        ],
        "final": graph_to_json_dict(trace.final),
    }


def trace_from_json_dict(d: dict) -> TransformTrace:
    steps = tuple(
        TransformStep(
            kind=StepKind(s["kind"]),
            u=s["u"],
            v=s["v"],
            moved=frozenset(s["moved"]),
            rho_before=s["rho_before"],
            rho_after=s["rho_after"],
        )
        for s in d["steps"]
    )
    return TransformTrace(
        initial=graph_from_json_dict(d["initial"]),
        steps=steps,
        final=graph_from_json_dict(d["final"]),
    )


# --------------------------------------------------------------------------
# structural helpers


def _cycle_blocks(G: Graph) -> list[tuple[tuple[int, int], ...]]:
    return [b for b in block_decomposition(G).blocks if len(b) >= 3]


def _cycle_edge_set(G: Graph) -> set[tuple[int, int]]:
    return {e for b in _cycle_blocks(G) for e in b}


def _bridge_edges(G: Graph) -> list[tuple[int, int]]:
    on_cycle = _cycle_edge_set(G)
    return [e for e in G.edges if e not in on_cycle]


def _all_cycles_triangles(G: Graph) -> bool:
    return all(len(b) == 3 for b in _cycle_blocks(G))


def _pendant_edges(G: Graph) -> list[tuple[int, int]]:
    """Bridges with a degree-1 endpoint, as (support, leaf) pairs."""
    out = []
    for u, v in _bridge_edges(G):
        du, dv = G.degree(u), G.degree(v)
        if dv == 1 and du > 1:
            out.append((u, v))
        elif du == 1 and dv > 1:
            out.append((v, u))
    return sorted(out)


def _private_neighbors(G: Graph, v: int, u: int) -> list[int]:
    """N(v) minus N(u) minus {u}: the vertices a switch may move to u."""
    return sorted(G.adjacency[v] - G.adjacency[u] - {u})


def _orient(x: Sequence[float], a: int, b: int) -> tuple[int, int]:
    """Order (winner, loser) by Perron entry, lower label on ties."""
    diff = x[a] - x[b]
    if diff > PERRON_TIE_GUARD:
        return a, b
    if diff < -PERRON_TIE_GUARD:
        return b, a
    return (a, b) if a < b else (b, a)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise TransformError(message)


# --------------------------------------------------------------------------
# rewrite proposals (deterministic: lexicographically least qualifying site)


def _propose_cactus_add(G: Graph) -> Optional[tuple[int, int]]:
    for u, v in G.non_edges():
        if is_cactus(G.add_edge(u, v)):
            return (u, v)
    return None


def _propose_consecutive_add(G: Graph) -> Optional[tuple[int, int]]:
    """Two bridges sharing a vertex close into a triangle."""
    incident: dict[int, list[int]] = {}
    for u, v in _bridge_edges(G):
        incident.setdefault(u, []).append(v)
        incident.setdefault(v, []).append(u)
    for v in sorted(incident):
        partners = sorted(incident[v])
        if len(partners) >= 2:
            return (partners[0], partners[1])
    return None


def _propose_shrink(G: Graph, x: Sequence[float]) -> Optional[tuple[int, int, tuple[int, ...]]]:
    for blk in _cycle_blocks(G):
        if len(blk) < 4:
            continue
        a, b = blk[0]
        winner, loser = _orient(x, a, b)
        ring_nbrs = {t for e in blk for t in e if loser in e} - {loser}
        y = (ring_nbrs - {winner}).pop()
        return (winner, loser, (y,))
    return None


def _propose_triangle_bridge(G: Graph, x: Sequence[float]) -> Optional[tuple[int, int, tuple[int, ...]]]:
    for a, b in _bridge_edges(G):
        if G.degree(a) >= 2 and G.degree(b) >= 2:
            winner, loser = _orient(x, a, b)
            S = _private_neighbors(G, loser, winner)
            return (winner, loser, tuple(S))
    return None


def _propose_pendant_migrate(G: Graph, x: Sequence[float]) -> Optional[tuple[int, int, tuple[int, ...]]]:
    pendants = _pendant_edges(G)
    if len(pendants) < 2:
        return None
    s0 = pendants[0][0]
    other = next((p for p in pendants[1:] if p[0] != s0), None)
    if other is None:
        return None
    winner_support, loser_support = _orient(x, s0, other[0])
    loser_leaf = min(l for s, l in pendants if s == loser_support)
    return (winner_support, loser_support, (loser_leaf,))


# --------------------------------------------------------------------------
# single-purpose operations


def find_switchable_pair(G: Graph) -> Optional[tuple[int, int]]:
    """First adjacent pair whose private-neighbor sets are both nonempty.

    For unicyclic graphs this fails exactly on the extremal star-plus-edge
    graph, so a None return certifies the ascent's fixed point.
    """
    _require(is_unicyclic(G), "input must be unicyclic")
    for a, b in G.edges:
        if _private_neighbors(G, a, b) and _private_neighbors(G, b, a):
            return (a, b)
    return None


def merge_high_degree(G: Graph, u: int, v: int) -> Graph:
    """Rewire v's private neighbors onto the adjacent high-degree vertex u.

    Preserves the max-edge connected cactus property and reduces the
    number of degree->=3 vertices by exactly one.  The caller is
    responsible for having oriented (u, v) by Perron weight when the
    spectral-radius increase is being claimed.
    """
    _require(is_max_edge_cactus(G), "input must be a max-edge connected cactus")
    _require(G.has_edge(u, v), f"({u}, {v}) must be an edge")
    _require(
        G.degree(u) >= 3 and G.degree(v) >= 3,
        f"both endpoints need degree >= 3 (got {G.degree(u)}, {G.degree(v)})",
    )
    S = _private_neighbors(G, v, u)
    _require(bool(S), f"v={v} has no private neighbors to move")
    out = sigma_switch(G, u, v, S)
    if not is_max_edge_cactus(out):
        raise TransformInvariantError("merge broke the max-edge cactus property", G, out)
    if t_count(out) != t_count(G) - 1:
        raise TransformInvariantError("merge did not reduce t by exactly one", G, out)
    if out.degree(v) > 2:
        raise TransformInvariantError("merged vertex kept degree above 2", G, out)
    return out


def shrink_cycle_once(G: Graph) -> Optional[Graph]:
    """Shorten one cycle of length >= 4 by a Perron-oriented switch.

    Returns None when every cycle is a triangle.  Intended for
    edge-maximal cacti (the normalization pipeline's context), but only
    connectivity and the cactus property are structurally required.
    """
    _require(is_connected(G) and is_cactus(G), "input must be a connected cactus")
    prop = _propose_shrink(G, spectral_radius(G).vector)
    if prop is None:
        return None
    winner, loser, S = prop
    return sigma_switch(G, winner, loser, S)


def add_consecutive_bridge_edges(G: Graph) -> Graph:
    """Close every pair of bridges sharing a vertex into a triangle.

    Each addition keeps the cactus property and strictly increases the
    spectral radius (adding an edge to a connected graph always does).
    """
    _require(is_connected(G) and is_cactus(G), "input must be a connected cactus")
    _require(_all_cycles_triangles(G), "all cycles must already be triangles")
    cur = G
    while True:
        prop = _propose_consecutive_add(cur)
        if prop is None:
            return cur
        cur = cur.add_edge(*prop)


def eliminate_triangle_bridge(G: Graph) -> Optional[Graph]:
    """Turn one bridge between two cycle-bearing sides into a pendant edge.

    Moves the whole private neighborhood of the lighter endpoint to the
    heavier one.  Returns None when no such bridge exists.
    """
    _require(is_connected(G) and is_cactus(G), "input must be a connected cactus")
    _require(_all_cycles_triangles(G), "all cycles must already be triangles")
    _require(
        _propose_consecutive_add(G) is None,
        "no two bridges may share a vertex at this stage",
    )
    prop = _propose_triangle_bridge(G, spectral_radius(G).vector)
    if prop is None:
        return None
    winner, loser, S = prop
    out = sigma_switch(G, winner, loser, S)
    if out.degree(loser) != 1:
        raise TransformInvariantError("bridge endpoint did not become pendant", G, out)
    return out


def consolidate_pendants(G: Graph) -> Graph:
    """Pair pendant edges up and close each pair into a triangle.

    Pendant pairs at a common support close immediately; pairs at
    distinct supports first migrate the lighter support's leaf to the
    heavier support.  At most one pendant edge remains.
    """
    _require(is_connected(G) and is_cactus(G), "input must be a connected cactus")
    _require(_all_cycles_triangles(G), "all cycles must already be triangles")
    bridges = _bridge_edges(G)
    pendant_set = {tuple(sorted((s, l))) for s, l in _pendant_edges(G)}
    _require(
        all(tuple(sorted(e)) in pendant_set for e in bridges),
        "every bridge must be a pendant edge at this stage",
    )
    cur = G
    while True:
        close = _propose_consecutive_add(cur)
        if close is not None:
            cur = cur.add_edge(*close)
            continue
        migrate = _propose_pendant_migrate(cur, spectral_radius(cur).vector)
        if migrate is None:
            return cur
        winner, loser, S = migrate
        cur = sigma_switch(cur, winner, loser, S)


# --------------------------------------------------------------------------
# verified pipelines


def _verified_step(
    cur: Graph,
    cur_res: PerronResult,
    nxt: Graph,
    kind: StepKind,
    u: int,
    v: int,
    moved: Iterable[int],
    tol: float,
) -> tuple[PerronResult, TransformStep]:
    nxt_res = spectral_radius(nxt, tol)
    if compare_results(nxt_res, cur_res, tol) is not Ordering.GREATER:
        raise TransformInvariantError(
            f"{kind.value} step failed to verifiably increase the spectral "
            f"radius ({cur_res.rho!r} -> {nxt_res.rho!r})",
            cur,
            nxt,
        )
    step = TransformStep(
        kind=kind,
        u=u,
        v=v,
        moved=frozenset(moved),
        rho_before=cur_res.rho,
        rho_after=nxt_res.rho,
    )
    return nxt_res, step


def normalize_to_max_edge(G: Graph, tol: float = DEFAULT_TOL) -> TransformTrace:
    """Drive a connected cactus to a max-edge cactus, radius up at every step.

    Repeatedly applies, in priority order: cactus-preserving edge
    additions, long-cycle shrinking, bridge-between-cycles elimination,
    and pendant migration, until no rewrite applies.  The fixed point
    provably attains the maximum edge count.
    """
    _require(is_connected(G), "input must be connected")
    _require(is_cactus(G), "input must be a cactus")
    steps: list[TransformStep] = []
    cur = G
    cur_res = spectral_radius(cur, tol)
    while True:
        add = _propose_cactus_add(cur)
        if add is not None:
            nxt = cur.add_edge(*add)
            cur_res, step = _verified_step(
                cur, cur_res, nxt, StepKind.ADD_EDGE, add[0], add[1], (), tol
            )
            steps.append(step)
            cur = nxt
            continue
        prop = (
            _propose_shrink(cur, cur_res.vector)
            or _propose_triangle_bridge(cur, cur_res.vector)
            or _propose_pendant_migrate(cur, cur_res.vector)
        )
        if prop is None:
            break
        winner, loser, S = prop
        nxt = sigma_switch(cur, winner, loser, S)
        if not is_cactus(nxt):
            raise TransformInvariantError("switch broke the cactus property", cur, nxt)
        cur_res, step = _verified_step(
            cur, cur_res, nxt, StepKind.SWITCH, winner, loser, S, tol
        )
        steps.append(step)
        cur = nxt
    if not is_max_edge_cactus(cur):
        raise TransformInvariantError(
            "normalization stalled below the maximum edge count", G, cur
        )
    return TransformTrace(initial=G, steps=tuple(steps), final=cur)


def cactus_ascent(G: Graph, tol: float = DEFAULT_TOL) -> TransformTrace:
    """Merge adjacent high-degree vertices until at most one remains.

    Each merge is oriented by the Perron vector and performs exactly
    t(G) - 1 strict radius increases.  When every cycle is a triangle
    the fixed point is the extremal cactus; inputs containing a 4-cycle
    can reach a t <= 1 plateau that is not (run
    :func:`normalize_to_max_edge` first, as :func:`maximize_cactus`
    does, to exclude that).
    """
    _require(is_max_edge_cactus(G), "input must be a max-edge connected cactus")
    steps: list[TransformStep] = []
    cur = G
    cur_res = spectral_radius(cur, tol)
    while t_count(cur) > 1:
        degs = cur.degrees()
        pair = next(
            ((a, b) for a, b in cur.edges if degs[a] >= 3 and degs[b] >= 3), None
        )
        if pair is None:
            raise TransformError(
                "no adjacent pair of degree->=3 vertices exists; this only "
                "happens when a cycle of length 4 is present, which the "
                "normalization pipeline removes first"
            )
        winner, loser = _orient(cur_res.vector, *pair)
        nxt = merge_high_degree(cur, winner, loser)
        moved = _private_neighbors(cur, loser, winner)
        cur_res, step = _verified_step(
            cur, cur_res, nxt, StepKind.MERGE, winner, loser, moved, tol
        )
        steps.append(step)
        cur = nxt
    return TransformTrace(initial=G, steps=tuple(steps), final=cur)


def _is_extremal_cactus_shape(G: Graph) -> bool:
    # max-edge + all cycles triangles + single high-degree hub
    # characterizes the star-with-paired-leaves cactus for n >= 3
    return is_max_edge_cactus(G) and _all_cycles_triangles(G) and t_count(G) <= 1


def maximize_cactus(G: Graph, tol: float = DEFAULT_TOL) -> TransformTrace:
    """Full ascent from any connected cactus to the extremal cactus.

    Normalization to a max-edge cactus followed by the high-degree
    merge loop; the concatenated trace is strictly radius-increasing at
    every switch, merge and addition, and the final graph is isomorphic
    to ``h_n(n)`` for n >= 3.
    """
    _require(is_cactus(G), "input must be a cactus")
    _require(is_connected(G), "input must be connected")
    first = normalize_to_max_edge(G, tol)
    second = cactus_ascent(first.final, tol)
    final = second.final
    if G.n >= 3 and not _is_extremal_cactus_shape(final):
        raise TransformInvariantError("ascent terminated off the extremal cactus", G, final)
    return TransformTrace(initial=G, steps=first.steps + second.steps, final=final)


def unicyclic_ascent(G: Graph, tol: float = DEFAULT_TOL) -> TransformTrace:
    """Switch toward the extremal unicyclic graph (star plus one edge).

    Every iterate stays unicyclic and the spectral radius strictly
    increases, so the loop terminates; the fixed point has maximum
    degree n - 1, which characterizes the extremal graph.
    """
    _require(is_unicyclic(G), "input must be unicyclic")
    _require(G.n >= 3, "unicyclic graphs need n >= 3")
    steps: list[TransformStep] = []
    cur = G
    cur_res = spectral_radius(cur, tol)
    while True:
        pair = find_switchable_pair(cur)
        if pair is None:
            break
        winner, loser = _orient(cur_res.vector, *pair)
        S = _private_neighbors(cur, loser, winner)
        nxt = sigma_switch(cur, winner, loser, S)
        if not is_unicyclic(nxt):
            raise TransformInvariantError("switch left the unicyclic class", cur, nxt)
        cur_res, step = _verified_step(
            cur, cur_res, nxt, StepKind.SWITCH, winner, loser, S, tol
        )
        steps.append(step)
        cur = nxt
    if cur.max_degree() != cur.n - 1:
        raise TransformInvariantError("ascent stalled before the extremal graph", G, cur)
    return TransformTrace(initial=G, steps=tuple(steps), final=cur)
