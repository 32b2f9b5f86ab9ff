"""The dimension-d configuration pairing of graphs against forests.

Each graph edge i->j is sent to the nadir of the leaf path between i and j;
the pairing is zero unless that map is a bijection onto the internal
vertices (in particular zero whenever an edge joins two components, or the
edge count differs from the vertex count).  On a bijection the value is

    (prod_e sigma_e)^d  *  (sign pi)^(d-1)

where sigma_e is +1 when leaf i sits left of leaf j in the planar order and
-1 otherwise, and pi is the permutation relating the graph's edge order to
the forest's global in-order internal-vertex sequence.  For odd d this is
(-1)^#{right-pointing edges}; for even d it is sign pi -- the degree of the
sign-permutation torus map realized by the planetary systems.

Gram matrices over the long-graph x tall-forest bases, the Poincare
polynomial rank table, and the perfect-pairing verifier live here too.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field

from .errors import ValidationError
from .graphs import Graph, enumerate_long_graphs, render_graph
from .lincombo import LinCombo
from .trees import Forest, Tree, enumerate_tall_forests, render_forest, single_tree_forest

CACHE_SCHEMA = 1


@dataclass(frozen=True)
class PairingResult:
    value: int
    beta_witness: tuple | None = None  # ((edge, (tree_idx, path)), ...) when bijective


def _perm_sign(seq):
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return -1 if inv % 2 else 1


def pair_basis(g: Graph, f: Forest, d: int) -> PairingResult:
    """Configuration pairing of a single graph against a single forest."""
    if g.n != f.n:
        raise ValidationError(f"graph n={g.n} and forest n={f.n} differ")
    if len(g.edges) != f.size:
        return PairingResult(0)
    verts = []
    sigma = 1
    leaf_info = f.leaf_info
    for i, j in g.edges:
        ti, pi = leaf_info[i]
        tj, pj = leaf_info[j]
        if ti != tj:
            return PairingResult(0)
        c = 0
        while c < len(pi) and c < len(pj) and pi[c] == pj[c]:
            c += 1
        verts.append((ti, pi[:c]))
        if pi[c] == 1:  # leaf i over the right edge of the nadir
            sigma = -sigma
    if len(set(verts)) != len(verts):
        return PairingResult(0)
    positions = [f.vertex_index[v] for v in verts]
    value = (sigma if d % 2 else 1) * (_perm_sign(positions) if d % 2 == 0 else 1)
    return PairingResult(value, tuple(zip(g.edges, verts)))


def pair(g, f, d: int) -> int:
    """Bilinear extension: either slot may be a Graph/Forest or a LinCombo."""
    gs = list(g.terms.items()) if isinstance(g, LinCombo) else [(g, 1)]
    fs = list(f.terms.items()) if isinstance(f, LinCombo) else [(f, 1)]
    sizes = {graph.n for graph, _ in gs} | {forest.n for forest, _ in fs}
    if len(sizes) > 1:
        raise ValidationError(f"mismatched n across pairing arguments: {sorted(sizes)}")
    total = 0
    for graph, cg in gs:
        for forest, cf in fs:
            if len(graph.edges) != forest.size:
                continue
            total += cg * cf * pair_basis(graph, forest, d).value
    return total


# ---------------------------------------------------------------------------
# Gram matrices

@dataclass
class GramMatrix:
    n: int
    k: int
    parity: str  # "even" | "odd"
    entries: tuple  # rows: long graphs, cols: tall forests, canonical order
    graphs: list = field(default=None, repr=False)
    forests: list = field(default=None, repr=False)

    @property
    def size(self):
        return len(self.entries)

    def is_identity(self):
        return not self.failures()

    def failures(self):
        out = []
        for r, row in enumerate(self.entries):
            for c, v in enumerate(row):
                if v != (1 if r == c else 0):
                    out.append((r, c, v))
        return out


def parity_name(d: int) -> str:
    return "even" if d % 2 == 0 else "odd"


def gram_matrix(n: int, k: int, d: int, cache_dir=None) -> GramMatrix:
    """Pairing matrix over enumerate_long_graphs x enumerate_tall_forests.

    Rows and columns are both in canonical (ordered partition) order, so the
    Kronecker property of the pairing makes this the identity.  Cached to
    disk per (n, k, parity) when cache_dir is given; a schema mismatch
    triggers recomputation, never migration.
    """
    parity = parity_name(d)
    graphs = enumerate_long_graphs(n, k)
    forests = enumerate_tall_forests(n, k)
    cached = _cache_load(cache_dir, _gram_cache_name(n, k, parity))
    if cached is not None and cached.get("schema") == CACHE_SCHEMA:
        entries = tuple(tuple(row) for row in cached["entries"])
        return GramMatrix(n, k, parity, entries, graphs, forests)
    entries = tuple(
        tuple(pair_basis(g, f, d).value for f in forests) for g in graphs
    )
    _cache_store(cache_dir, _gram_cache_name(n, k, parity), {
        "schema": CACHE_SCHEMA, "n": n, "k": k, "parity": parity,
        "entries": [list(row) for row in entries],
    })
    return GramMatrix(n, k, parity, entries, graphs, forests)


def _gram_cache_name(n, k, parity):
    return f"gram_n{n}_k{k}_{parity}.json"


def _cache_load(cache_dir, name):
    if cache_dir is None:
        return None
    path = os.path.join(cache_dir, name)
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None


def _cache_store(cache_dir, name, payload):
    if cache_dir is None:
        return
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, name)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, path)  # atomic on POSIX
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)


# ---------------------------------------------------------------------------
# rank tables

@dataclass(frozen=True)
class RankTable:
    """Betti numbers of the n-point configuration space of R^d.

    coefficients[k] is the rank in degree k(d-1): the t^k coefficient of
    prod_{i=1}^{n-1} (1 + i t).  They sum to n!.
    """

    n: int
    d: int
    coefficients: tuple

    @property
    def degrees(self):
        return tuple(k * (self.d - 1) for k in range(len(self.coefficients)))

    def csv_rows(self):
        return [(deg, q) for deg, q in zip(self.degrees, self.coefficients)]


def poincare_coefficients(n: int):
    coeffs = [1]
    for i in range(1, n):
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += c
            nxt[k + 1] += c * i
        coeffs = nxt
    return tuple(coeffs)


def rank_table(n: int, d: int, cache_dir=None) -> RankTable:
    if n < 1:
        raise ValidationError("n must be >= 1")
    if d < 2:
        raise ValidationError("d must be >= 2")
    name = f"ranks_n{n}.json"
    cached = _cache_load(cache_dir, name)
    if cached is not None and cached.get("schema") == CACHE_SCHEMA:
        coeffs = tuple(cached["coefficients"])
    else:
        coeffs = poincare_coefficients(n)
        _cache_store(cache_dir, name, {
            "schema": CACHE_SCHEMA, "n": n, "coefficients": list(coeffs),
        })
    assert sum(coeffs) == math.factorial(n)
    return RankTable(n, d, coeffs)


# ---------------------------------------------------------------------------
# perfect-pairing verification

@dataclass
class DegreeReport:
    k: int
    size: int
    identity: bool
    failures: list  # (row index, col index, value) triples


@dataclass
class PerfectReport:
    n: int
    parity: str
    degrees: list
    first_degree_size: int
    first_degree_identity: bool
    first_degree_failures: list
    ok: bool

    def to_json(self):
        return {
            "n": self.n,
            "parity": self.parity,
            "degrees": [
                {"k": r.k, "size": r.size, "identity": r.identity,
                 "failures": [list(t) for t in r.failures]}
                for r in self.degrees
            ],
            "first_degree": {
                "size": self.first_degree_size,
                "identity": self.first_degree_identity,
                "failures": [list(t) for t in self.first_degree_failures],
            },
            "ok": self.ok,
        }


def first_degree_bases(n):
    """The degree-(d-1) dual bases: single edges i->j and single pairs [i,j], i<j."""
    graphs, forests = [], []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            graphs.append(Graph(n, ((i, j),)))
            forests.append(single_tree_forest(Tree((i, j)), n))
    return graphs, forests


def verify_perfect(n: int, d: int, pair_fn=None, cache_dir=None) -> PerfectReport:
    """Check the Gram identity in every degree plus the first-degree structure.

    pair_fn exists so tests can inject a corrupted sign convention as a
    negative control; the default is the real pairing.
    """
    if n > 7:
        raise ValidationError("verify_perfect is desk-scale: n <= 7")
    pf = pair_fn or pair_basis
    degrees = []
    ok = True
    for k in range(n):
        graphs = enumerate_long_graphs(n, k)
        forests = enumerate_tall_forests(n, k)
        failures = []
        if pair_fn is None:
            gm = gram_matrix(n, k, d, cache_dir=cache_dir)
            failures = [(r, c, v) for r, c, v in gm.failures()]
        else:
            for r, g in enumerate(graphs):
                for c, f in enumerate(forests):
                    v = pf(g, f, d).value
                    if v != (1 if r == c else 0):
                        failures.append((r, c, v))
        degrees.append(DegreeReport(k, len(graphs), not failures, failures))
        ok = ok and not failures
    fg, ff = first_degree_bases(n)
    fd_failures = []
    for r, g in enumerate(fg):
        for c, f in enumerate(ff):
            v = pf(g, f, d).value
            if v != (1 if r == c else 0):
                fd_failures.append((r, c, v))
    ok = ok and not fd_failures
    expected = n * (n - 1) // 2
    if len(fg) != expected:
        ok = False
    return PerfectReport(
        n, parity_name(d), degrees,
        len(fg), not fd_failures, fd_failures, ok,
    )


def describe_pair(g: Graph, f: Forest, d: int) -> dict:
    res = pair_basis(g, f, d)
    return {
        "graph": render_graph(g),
        "forest": render_forest(f),
        "d": d,
        "value": res.value,
        "beta": None if res.beta_witness is None else [
            {"edge": list(e), "vertex": {"tree": v[0], "path": list(v[1])}}
            for e, v in res.beta_witness
        ],
    }
