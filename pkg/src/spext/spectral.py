"""Dominant-eigenvalue computation for adjacency matrices.

The main entry point is :func:`spectral_radius`: power iteration with a
Rayleigh-quotient estimate, run on ``A + I`` rather than ``A``.  The
shift makes the dominant eigenvalue strictly dominant in modulus (plain
iteration stalls on bipartite graphs, whose spectra are symmetric),
preserves eigenvectors, and keeps the iterates positive, so convergence
to the Perron pair is unconditional for connected graphs.

The reported ``residual`` is the exact Euclidean norm of ``A x - rho x``
at termination.  Because adjacency matrices are symmetric, the true
spectral radius lies within ``residual`` of the reported value; that
bound is what :func:`compare_rho` uses to refuse orderings the numerics
cannot support.

An independent cross-check lives in :func:`charpoly` /
:func:`rho_from_charpoly`: the exact integer characteristic polynomial
(Faddeev-LeVerrier) and its largest real root via a Sturm-chain
bisection in rational arithmetic.  It shares no code with the power
iteration and is deliberately slow; it exists so the eigensolver can be
validated against something that cannot be wrong in the same way.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import Graph, GraphError

DEFAULT_TOL = 1e-10


class Ordering(enum.Enum):
    LESS = "LESS"
    GREATER = "GREATER"
    INDISTINGUISHABLE = "INDISTINGUISHABLE"


class ConvergenceError(RuntimeError):
    """Power iteration hit its cap; carries the best estimate found."""

    def __init__(self, message: str, result: "PerronResult"):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class PerronResult:
    """Spectral radius estimate with its eigenvector and error bound.

    ``vector`` has unit Euclidean norm and is strictly positive for
    connected graphs with at least one edge.  ``residual`` bounds the
    eigenvalue error: |rho - true rho| <= residual.
    """

    rho: float
    vector: np.ndarray
    residual: float
    iterations: int


def _adjacency_matrix(G: Graph) -> np.ndarray:
    A = np.zeros((G.n, G.n))
    for u, v in G.edges:
        A[u, v] = 1.0
        A[v, u] = 1.0
    return A


def spectral_radius(G: Graph, tol: float = DEFAULT_TOL) -> PerronResult:
    """Dominant eigenvalue and eigenvector of G's adjacency matrix.

    Converged when the residual drops to ``tol``; raises
    :class:`ConvergenceError` (carrying the best estimate) if the
    matvec budget of ``100 n^2`` runs out first.  Edgeless graphs
    return rho 0 with the uniform unit vector and residual 0.
    """
    if G.n < 1:
        raise GraphError("spectral radius needs at least one vertex")
    if tol <= 0:
        raise GraphError(f"tolerance must be positive, got {tol}")
    n = G.n
    uniform = np.full(n, 1.0 / np.sqrt(n))
    if G.m == 0:
        vec = uniform.copy()
        vec.flags.writeable = False
        return PerronResult(0.0, vec, 0.0, 0)

    A = _adjacency_matrix(G)
    x = uniform
    matvec_budget = 100 * n * n
    matvecs = 0
    iterations = 0
    rho = 0.0
    residual = np.inf
    while matvecs + 2 <= matvec_budget:
        y = A @ x + x  # (A + I) x; positive throughout
        x = y / np.linalg.norm(y)
        Ax = A @ x
        matvecs += 2
        iterations += 1
        rho = float(x @ Ax)
        residual = float(np.linalg.norm(Ax - rho * x))
        if residual <= tol:
            vec = x.copy()
            vec.flags.writeable = False
            return PerronResult(rho, vec, residual, iterations)
    vec = x.copy()
    vec.flags.writeable = False
    best = PerronResult(rho, vec, residual, iterations)
    raise ConvergenceError(
        f"no convergence to {tol:g} after {iterations} iterations "
        f"(residual {residual:g})",
        best,
    )


def compare_results(r1: PerronResult, r2: PerronResult, tol: float = DEFAULT_TOL) -> Ordering:
    """Three-valued comparison of two already-computed spectral radii.

    Strict orderings are asserted only when the gap exceeds the summed
    residuals plus the guard, so floating error can never fabricate one.
    """
    gap = r1.rho - r2.rho
    margin = r1.residual + r2.residual + tol
    if gap > margin:
        return Ordering.GREATER
    if -gap > margin:
        return Ordering.LESS
    return Ordering.INDISTINGUISHABLE


def compare_rho(G1: Graph, G2: Graph, tol: float = DEFAULT_TOL) -> Ordering:
    """Guarded comparison of the spectral radii of two graphs."""
    return compare_results(spectral_radius(G1), spectral_radius(G2), tol)


# --------------------------------------------------------------------------
# exact characteristic-polynomial oracle


def charpoly(G: Graph) -> list[int]:
    """Integer coefficients of det(xI - A), highest degree first.

    Faddeev-LeVerrier in exact integer arithmetic; every division is
    exact for integer matrices.
    """
    n = G.n
    A = [[0] * n for _ in range(n)]
    for u, v in G.edges:
        A[u][v] = 1
        A[v][u] = 1
    coeffs = [1]
    M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # identity
    for k in range(1, n + 1):
        AM = [
            [sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        tr = sum(AM[i][i] for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact"
        coeffs.append(q)
        M = [
            [AM[i][j] + (q if i == j else 0) for j in range(n)]
            for i in range(n)
        ]
    return coeffs


def _poly_eval(coeffs: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _poly_derivative(coeffs: list[Fraction]) -> list[Fraction]:
    deg = len(coeffs) - 1
    return [c * (deg - i) for i, c in enumerate(coeffs[:-1])]


def _poly_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    while len(a) >= len(b) and any(c != 0 for c in a):
        if a[0] == 0:
            a.pop(0)
            continue
        factor = a[0] / b[0]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i] -= factor * c
        a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return a


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [p, _poly_derivative(p)]
    while chain[-1]:
        rem = _poly_mod(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_variations_at(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for poly in chain:
        if not poly:
            continue
        val = _poly_eval(poly, x)
        if val != 0:
            signs.append(1 if val > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_variations_at_inf(chain: list[list[Fraction]]) -> int:
    signs = []
    for poly in chain:
        if not poly:
            continue
        lead = poly[0]
        if lead != 0:
            signs.append(1 if lead > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def rho_from_charpoly(G: Graph, tol: float = 1e-12) -> float:
    """Largest real root of the characteristic polynomial, by bisection.

    Counts roots above a point with a Sturm chain in exact rational
    arithmetic, so integer eigenvalues (cycles, complete graphs) cannot
    derail the bracketing.
    """
    if G.n < 1:
        raise GraphError("needs at least one vertex")
    if G.m == 0:
        return 0.0
    p = [Fraction(c) for c in charpoly(G)]
    chain = _sturm_chain(p)
    v_inf = _sign_variations_at_inf(chain)

    def roots_above(x: Fraction) -> int:
        # Sturm counts distinct roots in (x, inf); if x is itself a
        # root, probe slightly to its right instead.
        if _poly_eval(p, x) == 0:
            step = Fraction(1, 2)
            while True:
                probe = x + step
                if _poly_eval(p, probe) != 0:
                    return _sign_variations_at(chain, probe) - v_inf
                step /= 2
        return _sign_variations_at(chain, x) - v_inf

    hi = Fraction(G.max_degree() + 1)
    lo = Fraction(-(G.max_degree() + 1))
    # invariant: largest root in (lo, hi]
    while hi - lo > Fraction(tol).limit_denominator(10**15) / 2:
        mid = (lo + hi) / 2
        if _poly_eval(p, mid) == 0:
            # mid is an eigenvalue; the largest root is >= mid
            if roots_above(mid) == 0:
                return float(mid)
            lo = mid
        elif roots_above(mid) >= 1:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)
