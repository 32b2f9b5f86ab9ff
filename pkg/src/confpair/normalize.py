"""Rewriting onto the canonical bases.

Tree side: anti-symmetry orients every vertex so the smaller minimal label
sits on the left, and the (graded) Jacobi identity pushes the minimal leaf
deeper-left until every tree is a tall comb.  With a = |T1|, b = |T2|
internal vertices, swapping the arguments of a bracket costs

    (-1)^(d + (a + b + ab)(d-1))

(the antipode on the swapped vertex's sphere factor plus the block
permutation of the vertex order; equivalently -(-1)^((a+1)(b+1)(d-1)) in
shifted degrees), and the cyclic Jacobi relation reads

    sum_cyc (-1)^((|X|+1)(|Z|+1)(d-1)) [[X, Y], Z]  =  0.

For odd d these reduce to the classical unsigned identities.

Graph side: repeated vertex pairs and cycles die; arrow reversal costs
(-1)^d per arrow and a transposition of edges costs (-1)^(d-1); the Arnold
identity a_jk a_kl + a_kl a_lj + a_lj a_jk = 0 eliminates branch vertices.
Each Arnold step pushes a subtree one level deeper, so the depth-sum
measure terminates at disjoint chains, which are then ordered canonically.

Correctness is certified post hoc by the pairing oracle (coefficients
against the dual basis), not by a critical-pair analysis.
"""

from __future__ import annotations

from .errors import ValidationError
from .graphs import Graph
from .lincombo import LinCombo
from .trees import Forest, Tree, sort_trees_with_parity


def eps(exponent: int, d: int) -> int:
    """(-1)^(exponent * (d-1))."""
    return -1 if (exponent * (d - 1)) % 2 else 1


def anti_sign(a: int, b: int, d: int) -> int:
    """Sign relating [T1,T2] and [T2,T1] with a, b internal vertices below."""
    return -1 if (d + (a + b + a * b) * (d - 1)) % 2 else 1


def jacobi_signs(a1: int, a2: int, a3: int, d: int):
    """Signs (s1, s2, s3) of [[T1,T2],T3], [[T2,T3],T1], [[T3,T1],T2]."""
    return (
        eps((a1 + 1) * (a3 + 1), d),
        eps((a2 + 1) * (a1 + 1), d),
        eps((a3 + 1) * (a2 + 1), d),
    )


def reversal_sign(flips: int, perm_parity: int, d: int) -> int:
    """Sign relating graphs differing by `flips` arrow reversals and an edge
    permutation of the given parity: (-1)^(flips*d) * (-1)^(parity*(d-1))."""
    return -1 if (flips * d + perm_parity * (d - 1)) % 2 else 1


def _node_min(node):
    if isinstance(node, int):
        return node
    return min(_node_min(node[0]), _node_min(node[1]))


def _node_size(node):
    if isinstance(node, int):
        return 0
    return _node_size(node[0]) + _node_size(node[1]) + 1


def _combine(a_node, b_node, d) -> LinCombo:
    """Tall combination of [A, B] for tall inputs A, B with disjoint labels."""
    if _node_min(a_node) > _node_min(b_node):
        s = anti_sign(_node_size(a_node), _node_size(b_node), d)
        return s * _combine(b_node, a_node, d)
    if isinstance(b_node, int):
        # A tall with the global minimum deepest-left, B a leaf: still a comb
        return LinCombo.single((a_node, b_node))
    b1, b2 = b_node
    s_swap = anti_sign(_node_size(a_node), _node_size(b_node), d)
    s1, s2, s3 = jacobi_signs(_node_size(a_node), _node_size(b1), _node_size(b2), d)
    # [A,[B1,B2]] = s_swap [[B1,B2],A];  s1[[A,B1],B2] + s2[[B1,B2],A] + s3[[B2,A],B1] = 0
    out = LinCombo.zero()
    c1 = -s_swap * s1 * s2  # s2 in {-1,1} so 1/s2 = s2
    for t, c in _combine(a_node, b1, d):
        out = out + (c1 * c) * _combine(t, b2, d)
    s_inner = anti_sign(_node_size(b2), _node_size(a_node), d)
    c2 = -s_swap * s3 * s2 * s_inner
    for t, c in _combine(a_node, b2, d):
        out = out + (c2 * c) * _combine(t, b1, d)
    return out


def tall_tree_combo(t: Tree, d: int) -> LinCombo:
    """Rewrite one tree into the tall basis (a LinCombo of tree nodes)."""
    def go(node):
        if isinstance(node, int):
            return LinCombo.single(node)
        left = go(node[0])
        right = go(node[1])
        out = LinCombo.zero()
        for ln, lc in left:
            for rn, rc in right:
                out = out + (lc * rc) * _combine(ln, rn, d)
        return out
    return go(t.node)


def normalize_forest(f: Forest, d: int) -> LinCombo:
    out = LinCombo.single((), 1)  # combos of tree-node tuples
    for t in f.trees:
        if t.is_tall:
            tree_combo = LinCombo.single(t.node)
        else:
            tree_combo = tall_tree_combo(t, d)
        nxt = LinCombo.zero()
        for nodes, c in out:
            for node, ct in tree_combo:
                nxt = nxt + LinCombo.single(nodes + (node,), c * ct)
        out = nxt
    result = LinCombo.zero()
    for nodes, c in out:
        trees = tuple(Tree(nd) for nd in nodes)
        ordered, parity = sort_trees_with_parity(trees)
        result = result + LinCombo.single(Forest(ordered, f.n), c * eps(parity, d))
    return result


def normalize_pois(x, d: int) -> LinCombo:
    """Express a forest combination in the tall basis; idempotent and linear."""
    combo = x if isinstance(x, LinCombo) else LinCombo.single(x)
    sizes = {f.n for f, _ in combo}
    if len(sizes) > 1:
        raise ValidationError(f"mixed n across terms: {sorted(sizes)}")
    out = LinCombo.zero()
    for f, c in combo:
        if f.is_tall:
            out = out + LinCombo.single(f, c)
        else:
            out = out + c * normalize_forest(f, d)
    return out


# ---------------------------------------------------------------------------
# graph side

def _component_data(n, edges):
    """Undirected components: list of (vertex set, edge indices)."""
    adj = {v: [] for v in range(1, n + 1)}
    for idx, (i, j) in enumerate(edges):
        adj[i].append((j, idx))
        adj[j].append((i, idx))
    seen = set()
    comps = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        stack, verts, eidx = [start], set(), set()
        seen.add(start)
        while stack:
            v = stack.pop()
            verts.add(v)
            for w, idx in adj[v]:
                eidx.add(idx)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append((verts, eidx))
    return comps


def _orient_away(n, edges):
    """Reorient each edge away from its component minimum.

    Returns (new edges, flip count) or None when some component has a cycle.
    """
    comps = _component_data(n, edges)
    parent = {}
    for verts, eidx in comps:
        if len(eidx) > len(verts) - 1:
            return None
        root = min(verts)
        adj = {v: [] for v in verts}
        for idx in eidx:
            i, j = edges[idx]
            adj[i].append(j)
            adj[j].append(i)
        parent[root] = None
        stack = [root]
        visited = {root}
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in visited:
                    visited.add(w)
                    parent[w] = v
                    stack.append(w)
    flips = 0
    oriented = []
    for i, j in edges:
        if parent.get(j) == i:
            oriented.append((i, j))
        elif parent.get(i) == j:
            oriented.append((j, i))
            flips += 1
        else:
            return None  # extra edge closing a cycle
    return tuple(oriented), flips


def _find_branch(edges):
    """Smallest vertex with two or more out-edges, with its two smallest
    children's edge positions; None when every component is a chain."""
    children = {}
    for idx, (i, j) in enumerate(edges):
        children.setdefault(i, []).append((j, idx))
    branches = {v: out for v, out in children.items() if len(out) >= 2}
    if not branches:
        return None
    v = min(branches)
    out = sorted(branches[v])
    (a, pa), (b, pb) = out[0], out[1]
    return v, a, pa, b, pb


def _long_order(n, edges):
    """Edge permutation parity from `edges` to canonical chain order."""
    succ = dict(edges)
    starts = sorted(set(succ) - set(succ.values()))
    target = []
    for s in starts:
        v = s
        while v in succ:
            target.append((v, succ[v]))
            v = succ[v]
    index = {}
    for pos, e in enumerate(edges):
        index[e] = pos
    seq = [index[e] for e in target]
    inv = sum(
        1 for x in range(len(seq)) for y in range(x + 1, len(seq)) if seq[x] > seq[y]
    )
    return tuple(target), inv % 2


def normalize_graph(g: Graph, d: int) -> LinCombo:
    pairs = [frozenset(e) for e in g.edges]
    if len(set(pairs)) != len(pairs):
        return LinCombo.zero()
    oriented = _orient_away(g.n, g.edges)
    if oriented is None:
        return LinCombo.zero()
    edges, flips = oriented
    sign = reversal_sign(flips, 0, d)
    out = LinCombo.zero()
    work = [(sign, edges)]
    while work:
        sign, edges = work.pop()
        branch = _find_branch(edges)
        if branch is None:
            target, parity = _long_order(g.n, edges)
            out = out + LinCombo.single(
                Graph(g.n, target), sign * reversal_sign(0, parity, d))
            continue
        v, a, pa, b, pb = branch
        # bring (v,a) just before (v,b), flip it to (a,v), then Arnold:
        #   a_av a_vb = -a_vb a_ba - a_ba a_av
        rest = list(edges)
        del rest[pa]
        insert_at = pb - 1 if pa < pb else pb
        moves = abs(insert_at - pa)
        sign *= reversal_sign(1, moves % 2, d)
        word1 = rest[:insert_at] + [(v, b), (b, a)] + rest[insert_at + 1:]
        word2 = rest[:insert_at] + [(a, b), (v, a)] + rest[insert_at + 1:]
        work.append((-sign, tuple(word1)))
        # (b,a),(a,v) reversed in place to stay oriented away: two flips
        work.append((-sign * reversal_sign(2, 0, d), tuple(word2)))
    return out


def normalize_siop(x, d: int) -> LinCombo:
    """Express a graph combination in the long basis; kills doubles and cycles."""
    combo = x if isinstance(x, LinCombo) else LinCombo.single(x)
    sizes = {g.n for g, _ in combo}
    if len(sizes) > 1:
        raise ValidationError(f"mixed n across terms: {sorted(sizes)}")
    out = LinCombo.zero()
    for g, c in combo:
        if g.is_long:
            out = out + LinCombo.single(g, c)
        else:
            out = out + c * normalize_graph(g, d)
    return out
