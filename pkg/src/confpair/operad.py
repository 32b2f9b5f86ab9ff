"""Operadic composition on forests and the dual structure map on graphs.

compose substitutes the inner bracket expression for a variable of the
outer one (inner variables relabel to x_i..x_{i+m-1}, later outer
variables shift up by m-1), Leibniz-reduces, and lands in the tall basis.
Substitution alone is not well-defined on the quotient when d is even: a
positive-degree element entering a degree-0 variable slot retroactively
changes every commutation the variable took part in.  The honest graded
composition therefore carries the Koszul factor

    (-1)^((d-1) * |inner| * #{outer internal vertices before leaf i})

(the inner block moves from the tensor position into the leaf slot).  It
is trivial for odd d, and with it the nested and disjoint composition
axioms hold (disjoint sites commute up to (-1)^((d-1)|x||y|)).

The graph-side structure map for an o-tree splits a graph into one factor
per internal vertex: each edge j->k lands at the nadir of the leaf paths,
as the edge between the branches carrying j and k; factor edge lists keep
the input order.  Its sign is (sign pi)^(d-1) for the permutation pi
relating the concatenated factor order (depth-first vertex order, root
first) to the input edge order.  Duality then holds in the form

  (sign pi)^(d-1) (-1)^((d-1)|F_0| sum_v |F_v|) prod_v <G_v, F_v>
      =  <G, compose_along(tau; F_0, F_*)>

with the composed side assembled by iterated composition, rightmost site
first; check_duality verifies this case by case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .brackets import forest_to_expr, reduce_expr, relabel_expr, substitute
from .errors import ValidationError
from .graphs import Graph, enumerate_long_graphs, render_graph
from .lincombo import LinCombo
from .normalize import eps, normalize_pois
from .otrees import LEAF, OTree, leaf_nadir, render_otree
from .pairing import pair_basis
from .trees import Forest, enumerate_tall_forests, render_forest, vertices_before_leaf


def compose_basis(f1: Forest, i: int, f2: Forest, d: int) -> LinCombo:
    n, m = f1.n, f2.n
    if not 1 <= i <= n:
        raise ValidationError(f"composition index {i} out of range 1..{n}")
    outer = relabel_expr(forest_to_expr(f1), lambda v: v + m - 1 if v > i else v)
    inner = relabel_expr(forest_to_expr(f2), lambda v: v + i - 1)
    combined = substitute(outer, i, inner)
    sign = eps(f2.size * vertices_before_leaf(f1, i), d)
    return sign * normalize_pois(reduce_expr(combined, d), d)


def compose(b1, i: int, b2, d: int) -> LinCombo:
    """Bilinear composition; slots accept a Forest or a LinCombo of forests."""
    left = b1 if isinstance(b1, LinCombo) else LinCombo.single(b1)
    right = b2 if isinstance(b2, LinCombo) else LinCombo.single(b2)
    out = LinCombo.zero()
    for f1, c1 in left:
        for f2, c2 in right:
            out = out + (c1 * c2) * compose_basis(f1, i, f2, d)
    return out


# ---------------------------------------------------------------------------
# cooperad structure map

@dataclass(frozen=True)
class CooperadOutput:
    sign: int
    vertices: tuple          # internal vertex paths of tau, depth-first
    factors: tuple           # one Graph per vertex, same order

    def to_json(self):
        return {
            "sign": self.sign,
            "factors": [
                {"vertex": list(v), "graph": render_graph(g)}
                for v, g in zip(self.vertices, self.factors)
            ],
        }


def _perm_parity(seq):
    return sum(
        1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b]
    ) % 2


def cooperad(g: Graph, tau: OTree, d: int) -> CooperadOutput:
    """Split g along tau; each edge lands at the nadir vertex of its leaves."""
    if g.n != tau.n_leaves:
        raise ValidationError(
            f"graph on {g.n} vertices vs o-tree with {tau.n_leaves} leaves")
    vertices = tau.internal_vertices
    factor_edges = {v: [] for v in vertices}
    placements = []
    for i, j in g.edges:
        v, branch_i, branch_j = leaf_nadir(tau, i, j)
        factor_edges[v].append((branch_i, branch_j))
        placements.append(v)
    # pi: edge positions in concatenated (vertex-major) order vs input order
    offsets, off = {}, 0
    for v in vertices:
        offsets[v] = off
        off += len(factor_edges[v])
    counters = {v: 0 for v in vertices}
    concat_pos = []
    for v in placements:
        concat_pos.append(offsets[v] + counters[v])
        counters[v] += 1
    sign = (-1) ** _perm_parity(concat_pos) if (d - 1) % 2 else 1
    factors = tuple(Graph(tau.arity(v), tuple(factor_edges[v])) for v in vertices)
    return CooperadOutput(sign, vertices, factors)


def cooperad_combo(x, tau: OTree, d: int) -> LinCombo:
    """Bilinear extension: LinCombo over factor tuples."""
    combo = x if isinstance(x, LinCombo) else LinCombo.single(x)
    out = LinCombo.zero()
    for g, c in combo:
        res = cooperad(g, tau, d)
        out = out + LinCombo.single(res.factors, c * res.sign)
    return out


# ---------------------------------------------------------------------------
# duality for two-level trees (May structure maps)

def two_level_sites(tau: OTree):
    """[(1-based root input, child arity)] for vertex children; validates shape."""
    sites = []
    for pos, child in enumerate(tau.node):
        if child == LEAF:
            continue
        if not isinstance(child, tuple) or any(c != LEAF for c in child):
            raise ValidationError("o-tree is not two-level")
        if len(child) == 0:
            raise ValidationError("arity-0 child has no composition meaning here")
        sites.append((pos + 1, len(child)))
    return sites


def compose_along(tau: OTree, f0: Forest, inner: dict, d: int) -> LinCombo:
    """Iterated composition over a two-level tree, rightmost site first."""
    sites = two_level_sites(tau)
    if f0.n != len(tau.node):
        raise ValidationError("outer arity mismatch")
    result = LinCombo.single(f0)
    for pos, arity in sorted(sites, reverse=True):
        f_inner = inner[pos]
        if f_inner.n != arity:
            raise ValidationError(f"inner arity mismatch at site {pos}")
        result = compose(result, pos, f_inner, d)
    return result


@dataclass
class DualityReport:
    tau: str
    d: int
    cases_checked: int
    failures: list

    @property
    def ok(self):
        return not self.failures

    def to_json(self):
        return {
            "tau": self.tau,
            "d": self.d,
            "cases_checked": self.cases_checked,
            "failures": [
                {"graph": render_graph(c["graph"]),
                 "outer": render_forest(c["outer"]),
                 "inner": {str(k): render_forest(v) for k, v in c["inner"].items()},
                 "lhs": c["lhs"], "rhs": c["rhs"]}
                for c in self.failures
            ],
        }


def check_duality(tau: OTree, d: int, max_cases=None) -> DualityReport:
    """Exhaustively compare the two routes over basis tuples and long graphs."""
    sites = two_level_sites(tau)
    r = len(tau.node)
    n_total = tau.n_leaves
    site_positions = [pos for pos, _ in sites]

    outer_basis = [f for k in range(r) for f in enumerate_tall_forests(r, k)]
    inner_bases = {
        pos: [f for k in range(m) for f in enumerate_tall_forests(m, k)]
        for pos, m in sites
    }

    vertices = tau.internal_vertices
    site_of_vertex = {}
    for v in vertices:
        if v == ():
            continue
        site_of_vertex[v] = v[0] + 1  # two-level: path = (input position,)

    cases = 0
    failures = []
    graphs_by_degree = {
        k: enumerate_long_graphs(n_total, k) for k in range(n_total)
    }
    for f0 in outer_basis:
        for picked in itertools.product(*(inner_bases[pos] for pos in site_positions)):
            inner = dict(zip(site_positions, picked))
            inner_total = sum(f.size for f in inner.values())
            total = f0.size + inner_total
            if total >= n_total:
                continue
            composed = compose_along(tau, f0, inner, d)
            koszul = eps(f0.size * inner_total, d)
            for g in graphs_by_degree[total]:
                res = cooperad(g, tau, d)
                lhs = res.sign * koszul
                for v, factor in zip(res.vertices, res.factors):
                    if lhs == 0:
                        break
                    if v == ():
                        lhs *= pair_basis(factor, f0, d).value
                    else:
                        lhs *= pair_basis(factor, inner[site_of_vertex[v]], d).value
                rhs = sum(
                    c * pair_basis(g, f, d).value for f, c in composed
                )
                cases += 1
                if lhs != rhs:
                    failures.append({
                        "graph": g, "outer": f0, "inner": inner,
                        "lhs": lhs, "rhs": rhs,
                    })
                if max_cases and cases >= max_cases:
                    return DualityReport(render_otree(tau), d, cases, failures)
    return DualityReport(render_otree(tau), d, cases, failures)


def sample_duality(tau: OTree, d: int, trials: int = 200, seed: int = 0) -> DualityReport:
    """Randomized duality spot-check for trees too large to exhaust."""
    import random

    rng = random.Random(seed)
    sites = two_level_sites(tau)
    r = len(tau.node)
    n_total = tau.n_leaves
    site_positions = [pos for pos, _ in sites]
    outer_basis = [f for k in range(r) for f in enumerate_tall_forests(r, k)]
    inner_bases = {
        pos: [f for k in range(m) for f in enumerate_tall_forests(m, k)]
        for pos, m in sites
    }
    graphs_by_degree = {k: enumerate_long_graphs(n_total, k) for k in range(n_total)}
    site_of_vertex = {v: v[0] + 1 for v in tau.internal_vertices if v != ()}

    cases = 0
    failures = []
    for _ in range(trials):
        f0 = rng.choice(outer_basis)
        inner = {pos: rng.choice(inner_bases[pos]) for pos in site_positions}
        inner_total = sum(f.size for f in inner.values())
        total = f0.size + inner_total
        composed = compose_along(tau, f0, inner, d)
        koszul = eps(f0.size * inner_total, d)
        g = rng.choice(graphs_by_degree[total])
        res = cooperad(g, tau, d)
        lhs = res.sign * koszul
        for v, factor in zip(res.vertices, res.factors):
            if lhs == 0:
                break
            fv = f0 if v == () else inner[site_of_vertex[v]]
            lhs *= pair_basis(factor, fv, d).value
        rhs = sum(c * pair_basis(g, f, d).value for f, c in composed)
        cases += 1
        if lhs != rhs:
            failures.append({"graph": g, "outer": f0, "inner": inner,
                             "lhs": lhs, "rhs": rhs})
    return DualityReport(render_otree(tau), d, cases, failures)


def all_two_level_trees(n_total: int):
    """Every two-level o-tree (root arity r, children arities summing to n)."""
    out = []
    for r in range(1, n_total + 1):
        for cuts in itertools.combinations(range(1, n_total), r - 1):
            bounds = (0,) + cuts + (n_total,)
            arities = [bounds[a + 1] - bounds[a] for a in range(r)]
            out.append(OTree(tuple(tuple([LEAF] * m) for m in arities)))
    return out
