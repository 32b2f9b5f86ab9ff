"""Directed graphs with ordered edge lists on vertices {1..n}.

The edge list order is structural (it is the "ordering" of the generators
in the graph ring); repeated and cyclic edges are legal here and only die
in the quotient.  Long graphs -- disjoint unions of chains, each starting
at its block minimum with edges oriented away from it and listed
consecutively, chains concatenated in block order -- are the canonical
cohomology basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .errors import ParseError, ValidationError
from .trees import OrderedPartition, iter_ordered_partitions


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple  # tuple of (i, j) pairs, order significant

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2:
                raise ValidationError(f"edge {e!r} is not a pair")
            i, j = e
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValidationError(f"edge {e} out of range 1..{self.n}")
            if i == j:
                raise ValidationError(f"edge {e} is a self-loop")

    @cached_property
    def k(self):
        return len(self.edges)

    @cached_property
    def components(self):
        """Partition of {1..n} into undirected connected components."""
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.edges:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
        groups = {}
        for v in range(1, self.n + 1):
            groups.setdefault(find(v), []).append(v)
        return tuple(tuple(g) for g in sorted(groups.values()))

    @cached_property
    def is_long(self):
        return long_chain_order(self) is not None

    def __repr__(self):
        return f"Graph({render_graph(self)})"


def long_chain_order(g: Graph):
    """If g is long, its ordered partition blocks (chain sequences); else None."""
    succ = {}
    seen_pairs = set()
    for i, j in g.edges:
        pair = frozenset((i, j))
        if pair in seen_pairs or i in succ:
            return None
        seen_pairs.add(pair)
        succ[i] = j
    has_pred = set(succ.values())
    if len(has_pred) != len(g.edges):
        return None
    blocks = []
    for v in range(1, g.n + 1):
        if v in has_pred:
            continue
        chain = [v]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        if chain[0] != min(chain):
            return None
        blocks.append(tuple(chain))
    if sum(len(b) for b in blocks) != g.n:
        return None  # leftover cycle
    blocks.sort()
    # edge list must be the chains' edges, consecutively, in block order
    expected = [(b[a], b[a + 1]) for b in blocks for a in range(len(b) - 1)]
    if list(g.edges) != expected:
        return None
    return tuple(blocks)


def ordered_partition_of_graph(g: Graph) -> OrderedPartition:
    blocks = long_chain_order(g)
    if blocks is None:
        raise ValidationError("graph is not long")
    return OrderedPartition(blocks)


def graph_of_ordered_partition(p: OrderedPartition, n=None) -> Graph:
    edges = [(b[a], b[a + 1]) for b in p.blocks for a in range(len(b) - 1)]
    return Graph(n if n is not None else p.n, tuple(edges))


def enumerate_long_graphs(n, k):
    """All long n-graphs with k edges, aligned with enumerate_tall_forests."""
    if not 0 <= k <= max(n - 1, 0):
        raise ValidationError(f"degree k={k} out of range for n={n}")
    out = []
    for p in iter_ordered_partitions(n):
        if p.n - len(p.blocks) == k:
            out.append(graph_of_ordered_partition(p, n))
    return out


# ---------------------------------------------------------------------------
# text grammar:  "n=" INT ";" edge ("," edge)*     edge := INT "->" INT

_GRAPH_RE = re.compile(r"^\s*n\s*=\s*(\d+)\s*(?:;(.*))?$", re.S)
_EDGE_RE = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*$")


def parse_graph(text) -> Graph:
    m = _GRAPH_RE.match(text)
    if not m:
        raise ParseError("graph must start with 'n=<int>'", text, 0)
    n = int(m.group(1))
    rest = m.group(2) or ""
    edges = []
    if rest.strip():
        for chunk in rest.split(","):
            em = _EDGE_RE.match(chunk)
            if not em:
                raise ParseError(f"bad edge {chunk.strip()!r}", text, text.find(chunk))
            edges.append((int(em.group(1)), int(em.group(2))))
    return Graph(n, tuple(edges))


def parse_edges(text, n) -> Graph:
    """Parse a bare edge list 'i->j, k->l' against a known n."""
    return parse_graph(f"n={n}; {text}" if text.strip() else f"n={n}")


def render_graph(g: Graph) -> str:
    if not g.edges:
        return f"n={g.n}"
    return f"n={g.n}; " + ", ".join(f"{i}->{j}" for i, j in g.edges)


def graph_to_json(g: Graph):
    return {"kind": "graph", "n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_json(obj) -> Graph:
    return Graph(obj["n"], tuple((e[0], e[1]) for e in obj["edges"]))
