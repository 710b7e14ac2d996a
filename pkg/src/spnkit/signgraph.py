"""Sign-pattern graphs and the threshold necessary condition for orbit
membership.

Entries in (-eps_ord, eps_ord) are edges of neither graph.  A graph is
threshold when repeatedly deleting a vertex that is isolated or adjacent to
every remaining vertex empties it; the elimination order doubles as a
certificate for logs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matcore import DEFAULT_TOL, SymMatrix, Tolerances

__all__ = [
    "SignGraphs",
    "extract_sign_graphs",
    "is_threshold",
    "threshold_elimination",
    "orbit_necessary_filter",
    "edges_to_dot",
]


@dataclass(frozen=True)
class SignGraphs:
    """Positive and negative edge sets on vertices 1..n (pairs i < j)."""

    n: int
    pos_edges: frozenset
    neg_edges: frozenset


def extract_sign_graphs(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> SignGraphs:
    arr = a.array
    n = a.n
    pos, neg = [], []
    for i in range(n):
        for j in range(i + 1, n):
            if arr[i, j] > tol.eps_ord:
                pos.append((i + 1, j + 1))
            elif arr[i, j] < -tol.eps_ord:
                neg.append((i + 1, j + 1))
    return SignGraphs(n, frozenset(pos), frozenset(neg))


def threshold_elimination(n: int, edges):
    """Elimination order [(vertex, "isolated"|"dominating"), ...] emptying
    the graph, or None when the graph is not threshold.

    Removing a dominating vertex deletes exactly its current degree in
    edges, so the order is also an edge-count ledger.
    """
    adjacency = {v: set() for v in range(1, n + 1)}
    for i, j in edges:
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ValueError(f"bad edge ({i}, {j}) for vertex set 1..{n}")
        adjacency[i].add(j)
        adjacency[j].add(i)
    remaining = set(range(1, n + 1))
    order = []
    while remaining:
        pick = None
        for v in sorted(remaining):
            deg = len(adjacency[v])
            if deg == 0:
                pick = (v, "isolated")
                break
            if deg == len(remaining) - 1:
                pick = (v, "dominating")
                break
        if pick is None:
            return None
        v, role = pick
        for u in adjacency[v]:
            adjacency[u].discard(v)
        adjacency[v] = set()
        remaining.discard(v)
        order.append(pick)
    return order


def is_threshold(n: int, edges) -> bool:
    """True when the graph can be built by adding isolated or universally
    connected vertices one at a time."""
    return threshold_elimination(n, edges) is not None


def orbit_necessary_filter(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Necessary condition for membership in the permutation/scaling orbit of
    the ordered class: both sign graphs must be threshold.

    False proves the matrix is outside the orbit; True is inconclusive.
    """
    graphs = extract_sign_graphs(a, tol)
    return is_threshold(graphs.n, graphs.pos_edges) and is_threshold(
        graphs.n, graphs.neg_edges
    )


def edges_to_dot(n: int, edges, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(1, n + 1):
        lines.append(f"  {v};")
    for i, j in sorted(edges):
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
